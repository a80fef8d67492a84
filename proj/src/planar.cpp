#include "framespec/planar.hpp"

#include "framespec/errors.hpp"

#include <sstream>

namespace framespec {

std::optional<PlanarSplit> detect_planar(const Frame& frame, double tol) {
  if (frame.edges.empty()) return std::nullopt;
  PlanarSplit s;
  s.normal = frame.edges[0].k;
  for (const auto& e : frame.edges)
    if ((e.k - s.normal).norm() > tol) return std::nullopt;
  const double scale = std::max(1.0, frame.diameter());
  const Vec3 p0 = frame.vertices.at(frame.edges[0].origin).pos;
  for (const auto& v : frame.vertices)
    if (std::abs((v.pos - p0).dot(s.normal)) > tol * scale) return std::nullopt;
  s.e1 = frame.edges[0].i;
  s.e2 = s.normal.cross(s.e1);
  return s;
}

namespace {

SecularAssembly block(std::shared_ptr<const Frame> fp, const PlanarSplit& split, bool out_of_plane) {
  const Frame& frame = *fp;
  SecularAssembly a;
  a.frame = fp;
  a.bases = assembly_bases(frame);
  std::vector<int> keep;
  for (const auto& b : a.bases) {
    a.offsets.push_back(a.nbase);
    auto f = b.fields();
    for (int c = 0; c < b.cols(); ++c) {
      const bool h1 = f[c] == Field::V || f[c] == Field::Eta;
      if (h1 == out_of_plane) keep.push_back(a.nbase + c);
    }
    a.nbase += b.cols();
  }
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(a.nbase, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) q(keep[c], c) = 1.0;
  a.Q = q;

  for (const auto& c : active_conditions(frame)) {
    const bool disp = is_displacement_type(c.kind);
    // H1: normal component of displacement-type rows, in-plane of rotation-type
    if (disp == out_of_plane) {
      a.rows.push_back(project_row(frame, c, split.normal, "[n]"));
    } else {
      a.rows.push_back(project_row(frame, c, split.e1, "[e1]"));
      a.rows.push_back(project_row(frame, c, split.e2, "[e2]"));
    }
  }
  a.label = out_of_plane ? "H1" : "H2";
  if (a.n_rows() != a.n_cols()) {
    std::ostringstream os;
    os << "planar block " << a.label << " is not square: " << a.n_rows() << " x " << a.n_cols();
    throw DomainError(os.str());
  }
  return a;
}

}  // namespace

std::pair<SecularAssembly, SecularAssembly> reduced_assemblies(std::shared_ptr<const Frame> frame,
                                                               const PlanarSplit& split) {
  return {block(frame, split, true), block(frame, split, false)};
}

std::pair<SecularAssembly, SecularAssembly> reduced_assemblies(const Frame& frame, const PlanarSplit& split) {
  return reduced_assemblies(std::make_shared<const Frame>(frame), split);
}

}  // namespace framespec
