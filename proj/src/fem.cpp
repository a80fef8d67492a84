#include "framespec/fem.hpp"

#include "framespec/errors.hpp"
#include "framespec/log.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <lapacke.h>

#include <array>
#include <cmath>
#include <sstream>

namespace framespec {

namespace {

using Entry = std::pair<int, double>;  // full DOF index, coefficient
using DofMap = std::vector<Entry>;

Eigen::Matrix4d hermite_stiffness(double h, double a) {
  Eigen::Matrix4d k;
  k << 12, 6 * h, -12, 6 * h,
       6 * h, 4 * h * h, -6 * h, 2 * h * h,
       -12, -6 * h, 12, -6 * h,
       6 * h, 2 * h * h, -6 * h, 4 * h * h;
  return a / (h * h * h) * k;
}

Eigen::Matrix4d hermite_mass(double h) {
  Eigen::Matrix4d m;
  m << 156, 22 * h, 54, -13 * h,
       22 * h, 4 * h * h, 13 * h, -3 * h * h,
       54, 13 * h, 156, -22 * h,
       -13 * h, -3 * h * h, -22 * h, 4 * h * h;
  return h / 420.0 * m;
}

// Lagrange element on [0, h] with equispaced nodes 0..p; stiffness and mass.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> lagrange_element(int p, double h, double kappa) {
  auto phi = [p](int m, double t) {
    double v = 1.0;
    for (int q = 0; q <= p; ++q)
      if (q != m) v *= (t - double(q) / p) / (double(m - q) / p);
    return v;
  };
  auto dphi = [p](int m, double t) {
    double s = 0.0;
    for (int r = 0; r <= p; ++r) {
      if (r == m) continue;
      double v = 1.0 / (double(m - r) / p);
      for (int q = 0; q <= p; ++q)
        if (q != m && q != r) v *= (t - double(q) / p) / (double(m - q) / p);
      s += v;
    }
    return s;
  };
  using boost::math::quadrature::gauss;
  Eigen::MatrixXd K(p + 1, p + 1), M(p + 1, p + 1);
  for (int a = 0; a <= p; ++a)
    for (int b = 0; b <= p; ++b) {
      K(a, b) = kappa / h * gauss<double, 8>::integrate([&](double t) { return dphi(a, t) * dphi(b, t); }, 0.0, 1.0);
      M(a, b) = h * gauss<double, 8>::integrate([&](double t) { return phi(a, t) * phi(b, t); }, 0.0, 1.0);
    }
  return {K, M};
}

struct Layout {
  int n_full = 0;
  std::vector<DofInfo> dofs;
  std::vector<int> edge_base;
};

Layout make_layout(const Frame& f, int n, int p) {
  Layout L;
  for (std::size_t v = 0; v < f.vertices.size(); ++v) {
    for (int c = 0; c < 3; ++c) L.dofs.push_back({DofKind::JointDisp, int(v), c});
    for (int c = 0; c < 3; ++c) L.dofs.push_back({DofKind::JointRot, int(v), c});
  }
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    L.edge_base.push_back(static_cast<int>(L.dofs.size()));
    for (int node = 1; node < n; ++node)
      for (DofKind k : {DofKind::V, DofKind::DV, DofKind::W, DofKind::DW, DofKind::U, DofKind::Eta})
        L.dofs.push_back({k, int(e), k == DofKind::U || k == DofKind::Eta ? node * p : node});
    for (int el = 0; el < n; ++el) {
      for (int m = 1; m < p; ++m) L.dofs.push_back({DofKind::U, int(e), el * p + m});
      for (int m = 1; m < p; ++m) L.dofs.push_back({DofKind::Eta, int(e), el * p + m});
    }
  }
  L.n_full = static_cast<int>(L.dofs.size());
  return L;
}

}  // namespace

int FemSystem::find(DofKind kind, int owner, int component) const {
  for (std::size_t k = 0; k < full_dofs.size(); ++k) {
    const auto& d = full_dofs[k];
    if (d.kind == kind && d.owner == owner && d.component == component) return static_cast<int>(k);
  }
  return -1;
}

FemSystem assemble_fem(std::shared_ptr<const Frame> fp, const FemOptions& opt) {
  const Frame& f = *fp;
  if (!(opt.shift > 0)) throw DomainError("fem: shift must be positive");
  if (opt.elements < 1) throw DomainError("fem: elements must be >= 1");
  if (opt.rod_order < 1 || opt.rod_order > 3) throw DomainError("fem: rod_order must be 1, 2 or 3");
  if ((opt.joint_frame.transpose() * opt.joint_frame - Mat3::Identity()).norm() > 1e-12)
    throw DomainError("fem: joint frame must be orthonormal");
  const int n = opt.elements, p = opt.rod_order;
  const Mat3& J = opt.joint_frame;
  Layout L = make_layout(f, n, p);

  FemSystem sys;
  sys.frame = fp;
  sys.opt = opt;
  sys.n_full = L.n_full;
  sys.full_dofs = L.dofs;
  std::vector<bool> keep(L.n_full, true);
  for (std::size_t v = 0; v < f.vertices.size(); ++v) {
    const auto& jk = f.vertices[v].joint;
    const bool isolated = f.degree(static_cast<int>(v)) == 0;
    if (isolated || jk.displacement_fixed())
      for (int c = 0; c < 3; ++c) keep[6 * v + c] = false;
    if (isolated || jk.rotation_fixed())
      for (int c = 0; c < 3; ++c) keep[6 * v + 3 + c] = false;
  }
  sys.full_to_kept.assign(L.n_full, -1);
  for (int k = 0; k < L.n_full; ++k)
    if (keep[k]) {
      sys.full_to_kept[k] = static_cast<int>(sys.kept.size());
      sys.kept.push_back(k);
    }
  const int nk = sys.size();
  sys.K = Eigen::MatrixXd::Zero(nk, nk);
  sys.G = Eigen::MatrixXd::Zero(nk, nk);

  auto scatter = [&](const std::vector<DofMap>& maps, const Eigen::MatrixXd& Kl, const Eigen::MatrixXd& Ml) {
    for (std::size_t a = 0; a < maps.size(); ++a)
      for (const auto& [ia, ca] : maps[a]) {
        const int ka = sys.full_to_kept[ia];
        if (ka < 0) continue;
        for (std::size_t b = 0; b < maps.size(); ++b)
          for (const auto& [ib, cb] : maps[b]) {
            const int kb = sys.full_to_kept[ib];
            if (kb < 0) continue;
            sys.K(ka, kb) += ca * cb * Kl(a, b);
            sys.G(ka, kb) += ca * cb * Ml(a, b);
          }
      }
  };

  for (std::size_t ei = 0; ei < f.edges.size(); ++ei) {
    const Edge& e = f.edges[ei];
    const double h = e.length / n;
    const int base = L.edge_base[ei];
    // joint projections: rows of (global -> joint-frame DOF) maps
    const Eigen::RowVector3d kJ = e.k.transpose() * J, jJ = e.j.transpose() * J, iJ = e.i.transpose() * J;
    auto joint = [&](int vx, bool rot, const Eigen::RowVector3d& w, double sgn) {
      DofMap m;
      for (int c = 0; c < 3; ++c)
        if (std::abs(w(c)) > 0) m.push_back({6 * vx + (rot ? 3 : 0) + c, sgn * w(c)});
      return m;
    };
    // DOF maps at a structural node for v, v', w, w', u, eta
    auto node = [&](int node_idx) -> std::array<DofMap, 6> {
      if (node_idx == 0 || node_idx == n) {
        const int vx = node_idx == 0 ? e.origin : e.terminus;
        return {joint(vx, false, kJ, 1.0), joint(vx, true, jJ, -1.0), joint(vx, false, jJ, 1.0),
                joint(vx, true, kJ, 1.0), joint(vx, false, iJ, 1.0), joint(vx, true, iJ, 1.0)};
      }
      const int b = base + 6 * (node_idx - 1);
      return {DofMap{{b, 1.0}}, DofMap{{b + 1, 1.0}}, DofMap{{b + 2, 1.0}},
              DofMap{{b + 3, 1.0}}, DofMap{{b + 4, 1.0}}, DofMap{{b + 5, 1.0}}};
    };
    const int internal_base = base + 6 * (n - 1);
    const auto [Ku, Mu] = lagrange_element(p, h, e.mat.c);
    const auto [Ke, Me] = lagrange_element(p, h, e.mat.d);
    const Eigen::Matrix4d Ma = hermite_mass(h);
    const Eigen::Matrix4d Kv = hermite_stiffness(h, e.mat.a), Kw = hermite_stiffness(h, e.mat.b);
    for (int el = 0; el < n; ++el) {
      auto n0 = node(el), n1 = node(el + 1);
      std::vector<DofMap> v{n0[0], n0[1], n1[0], n1[1]};
      std::vector<DofMap> w{n0[2], n0[3], n1[2], n1[3]};
      std::vector<DofMap> u{n0[4]}, eta{n0[5]};
      const int ib = internal_base + el * 2 * (p - 1);
      for (int m = 1; m < p; ++m) {
        u.push_back({{ib + m - 1, 1.0}});
        eta.push_back({{ib + (p - 1) + m - 1, 1.0}});
      }
      u.push_back(n1[4]);
      eta.push_back(n1[5]);
      scatter(v, Kv, Ma);
      scatter(w, Kw, Ma);
      scatter(u, Ku, Mu);
      scatter(eta, Ke, Me);
    }
  }
  // vertex springs
  for (std::size_t v = 0; v < f.vertices.size(); ++v) {
    const auto& jk = f.vertices[v].joint;
    for (int c = 0; c < 3; ++c) {
      int kd = sys.full_to_kept[6 * v + c], kr = sys.full_to_kept[6 * v + 3 + c];
      if (kd >= 0) sys.K(kd, kd) += jk.tan_alpha();
      if (kr >= 0) sys.K(kr, kr) += jk.tan_beta();
    }
  }
  return sys;
}

FemSystem assemble_fem(const Frame& frame, const FemOptions& opt) {
  return assemble_fem(std::make_shared<const Frame>(frame), opt);
}

namespace {

// Solved as G x = nu (K + shift G) x, lambda = 1 / nu - shift: the wanted
// low end of the spectrum is the top of this pencil and keeps full relative
// accuracy.
FemEigen run_sygvx(const FemSystem& sys, char range, double vl, double vu, int il, int iu, bool vectors) {
  const lapack_int n = sys.size();
  FemEigen out;
  if (n == 0) return out;
  const double shift = sys.opt.shift;
  Eigen::VectorXd D = sys.G.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd A = D.asDiagonal() * sys.G * D.asDiagonal();
  Eigen::MatrixXd B = D.asDiagonal() * (sys.K + shift * sys.G) * D.asDiagonal();
  Eigen::VectorXd w(n);
  const lapack_int ncol = range == 'I' ? std::max(1, iu - il + 1) : n;
  Eigen::MatrixXd Z(vectors ? n : 1, vectors ? ncol : 1);
  std::vector<lapack_int> ifail(n);
  lapack_int m = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  lapack_int info = LAPACKE_dsygvx(LAPACK_COL_MAJOR, 1, vectors ? 'V' : 'N', range, 'U', n, A.data(), n,
                                   B.data(), n, vl, vu, il, iu, abstol, &m, w.data(), Z.data(),
                                   vectors ? n : 1, ifail.data());
  if (info > n) throw NumericalError("fem: stiffness plus shift is not positive definite (dsygvx info " +
                                     std::to_string(info) + ")");
  if (info != 0) throw NumericalError("fem: dsygvx failed with info " + std::to_string(info));
  out.values.resize(m);
  if (vectors) out.vectors.resize(n, m);
  for (lapack_int k = 0; k < m; ++k) {
    const lapack_int src = m - 1 - k;  // descending nu is ascending lambda
    out.values(k) = 1.0 / w(src) - shift;
    if (vectors) {
      Eigen::VectorXd x = D.asDiagonal() * Z.col(src);
      out.vectors.col(k) = x / std::sqrt(x.dot(sys.G * x));
    }
  }
  return out;
}

}  // namespace

FemEigen solve_fem(const FemSystem& sys, int count, bool vectors) {
  if (count < 1) throw DomainError("fem: count must be >= 1");
  const int n = sys.size();
  const int k = std::min(count, n);
  return run_sygvx(sys, 'I', 0, 0, n - k + 1, n, vectors);
}

FemEigen solve_fem_interval(const FemSystem& sys, double lo, double hi, bool vectors) {
  if (!(hi > lo)) throw DomainError("fem: empty interval");
  if (lo + sys.opt.shift <= 0) throw DomainError("fem: interval must lie above -shift");
  // lambda in (lo, hi]  <=>  nu in [1/(hi+shift), 1/(lo+shift))
  const double vl = std::nextafter(1.0 / (hi + sys.opt.shift), 0.0);
  const double vu = std::nextafter(1.0 / (lo + sys.opt.shift), 0.0);
  return run_sygvx(sys, 'V', vl, vu, 0, 0, vectors);
}

int count_in_interval(const FemSystem& sys, double lo, double hi) {
  return static_cast<int>(solve_fem_interval(sys, lo, hi, false).values.size());
}

std::vector<FemSample> fem_samples(const FemSystem& sys, const Eigen::VectorXd& x, int edge) {
  const Frame& f = *sys.frame;
  const Edge& e = f.edges.at(edge);
  const int n = sys.opt.elements;
  const Mat3& J = sys.opt.joint_frame;
  auto val = [&](int full) {
    int k = sys.full_to_kept[full];
    return k >= 0 ? x(k) : 0.0;
  };
  std::vector<FemSample> out;
  for (int node = 0; node <= n; ++node) {
    Eigen::Vector4d s;
    if (node == 0 || node == n) {
      const int vx = node == 0 ? e.origin : e.terminus;
      Vec3 g(val(6 * vx), val(6 * vx + 1), val(6 * vx + 2));
      Vec3 om(val(6 * vx + 3), val(6 * vx + 4), val(6 * vx + 5));
      g = J * g;
      om = J * om;
      s << e.k.dot(g), e.j.dot(g), e.i.dot(g), e.i.dot(om);
    } else {
      const int b = sys.find(DofKind::V, edge, node);
      s << val(b), val(b + 2), val(b + 4), val(b + 5);
    }
    out.push_back({e.length * node / n, s});
  }
  return out;
}

std::pair<std::vector<int>, std::vector<int>> planar_dof_split(const FemSystem& sys) {
  std::vector<int> h1, h2;
  for (int k = 0; k < sys.size(); ++k) {
    const DofInfo& d = sys.full_dofs[sys.kept[k]];
    bool out_of_plane = false;
    switch (d.kind) {
      case DofKind::JointDisp: out_of_plane = d.component == 2; break;
      case DofKind::JointRot: out_of_plane = d.component != 2; break;
      case DofKind::V: case DofKind::DV: case DofKind::Eta: out_of_plane = true; break;
      default: out_of_plane = false;
    }
    (out_of_plane ? h1 : h2).push_back(k);
  }
  return {h1, h2};
}

}  // namespace framespec
