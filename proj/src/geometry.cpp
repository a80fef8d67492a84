#include "framespec/geometry.hpp"

#include "framespec/errors.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace framespec {

namespace {

bool is_half_pi(double a) { return std::abs(a - kHalfPi) < 1e-12; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

double JointKind::displacement_angle() const {
  switch (type) {
    case JointType::FreeRigid: return 0.0;
    case JointType::Clamped: return kHalfPi;
    case JointType::Pinned: return kHalfPi;
    case JointType::Guided: return 0.0;
    case JointType::Spring: return alpha;
  }
  return 0.0;
}

double JointKind::rotation_angle() const {
  switch (type) {
    case JointType::FreeRigid: return 0.0;
    case JointType::Clamped: return kHalfPi;
    case JointType::Pinned: return 0.0;
    case JointType::Guided: return kHalfPi;
    case JointType::Spring: return beta;
  }
  return 0.0;
}

bool JointKind::displacement_fixed() const { return is_half_pi(displacement_angle()); }
bool JointKind::rotation_fixed() const { return is_half_pi(rotation_angle()); }
double JointKind::tan_alpha() const { return displacement_fixed() ? 0.0 : std::tan(displacement_angle()); }
double JointKind::tan_beta() const { return rotation_fixed() ? 0.0 : std::tan(rotation_angle()); }

std::string JointKind::name() const {
  switch (type) {
    case JointType::FreeRigid: return "free";
    case JointType::Clamped: return "clamped";
    case JointType::Pinned: return "pinned";
    case JointType::Guided: return "guided";
    case JointType::Spring: return "spring";
  }
  return "?";
}

Mat3 Edge::basis_matrix() const {
  Mat3 m;
  m.col(0) = i;
  m.col(1) = j;
  m.col(2) = k;
  return m;
}

int Frame::vertex_index(const std::string& id) const {
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (vertices[v].id == id) return static_cast<int>(v);
  return -1;
}

int Frame::edge_index(const std::string& id) const {
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].id == id) return static_cast<int>(e);
  return -1;
}

int Frame::degree(int v) const {
  int n = 0;
  for (const auto& e : edges) n += (e.origin == v) + (e.terminus == v);
  return n;
}

double Frame::diameter() const {
  double d = 0.0;
  for (const auto& a : vertices)
    for (const auto& b : vertices) d = std::max(d, (a.pos - b.pos).norm());
  return d;
}

Basis auto_basis(const Vec3& origin, const Vec3& terminus, const std::optional<Vec3>& j_hint) {
  Vec3 d = terminus - origin;
  double len = d.norm();
  if (!(len > 0.0)) throw DomainError("auto_basis: coincident endpoints");
  Basis b;
  b.i = d / len;
  Vec3 j;
  if (j_hint) {
    j = *j_hint - j_hint->dot(b.i) * b.i;
    if (j.norm() < 1e-8 * std::max(1.0, j_hint->norm()))
      throw DomainError("auto_basis: j_hint parallel to the edge");
  } else {
    j = Vec3::UnitZ().cross(b.i);
    if (j.norm() < 1e-8) j = Vec3::UnitY();
  }
  b.j = j.normalized();
  b.k = b.i.cross(b.j);
  b.k.normalize();
  return b;
}

Frame make_frame(std::vector<Vertex> vertices, const std::vector<EdgeSpec>& edges) {
  Frame f;
  f.vertices = std::move(vertices);
  for (const auto& s : edges) {
    Edge e;
    e.id = s.id;
    e.origin = f.vertex_index(s.from);
    e.terminus = f.vertex_index(s.to);
    if (e.origin < 0) throw DomainError("edge " + s.id + ": unknown vertex '" + s.from + "'");
    if (e.terminus < 0) throw DomainError("edge " + s.id + ": unknown vertex '" + s.to + "'");
    const Vec3& po = f.vertices[e.origin].pos;
    const Vec3& pt = f.vertices[e.terminus].pos;
    e.length = (pt - po).norm();
    if (!(e.length > 0.0)) throw DomainError("edge " + s.id + ": zero length");
    Basis b = auto_basis(po, pt, s.j_hint);
    e.i = b.i;
    e.j = b.j;
    e.k = b.k;
    e.mat = s.mat;
    e.j_hint = s.j_hint;
    f.edges.push_back(e);
  }
  return f;
}

ValidationReport validate_frame(const Frame& frame, const ValidationOptions& opt) {
  ValidationReport rep;
  const int nv = static_cast<int>(frame.vertices.size());
  rep.degree.assign(nv, 0);

  for (int v = 0; v < nv; ++v) {
    const auto& jk = frame.vertices[v].joint;
    if (jk.type == JointType::Spring) {
      for (double ang : {jk.alpha, jk.beta}) {
        if (!(ang > -kHalfPi && ang <= kHalfPi + 1e-12))
          rep.violations.push_back("vertex " + frame.vertices[v].id +
                                   ": spring angle " + fmt(ang) + " outside (-pi/2, pi/2]");
      }
      if ((!jk.displacement_fixed() && jk.tan_alpha() < 0.0) ||
          (!jk.rotation_fixed() && jk.tan_beta() < 0.0))
        rep.warnings.push_back("vertex " + frame.vertices[v].id +
                               ": negative spring (energy form not positive)");
    }
    for (int w = 0; w < v; ++w)
      if (frame.vertices[w].id == frame.vertices[v].id)
        rep.violations.push_back("duplicate vertex id " + frame.vertices[v].id);
  }

  for (std::size_t ei = 0; ei < frame.edges.size(); ++ei) {
    const auto& e = frame.edges[ei];
    const std::string tag = "edge " + e.id + ": ";
    if (e.origin < 0 || e.origin >= nv || e.terminus < 0 || e.terminus >= nv) {
      rep.violations.push_back(tag + "endpoint vertex does not exist");
      continue;
    }
    ++rep.degree[e.origin];
    ++rep.degree[e.terminus];
    const double tol = opt.tol;
    bool unit = std::abs(e.i.norm() - 1) < tol && std::abs(e.j.norm() - 1) < tol &&
                std::abs(e.k.norm() - 1) < tol;
    bool orth = std::abs(e.i.dot(e.j)) < tol && std::abs(e.i.dot(e.k)) < tol &&
                std::abs(e.j.dot(e.k)) < tol;
    if (!unit || !orth) rep.violations.push_back(tag + "basis not orthonormal");
    else if (std::abs(e.i.dot(e.j.cross(e.k)) - 1.0) > tol)
      rep.violations.push_back(tag + "basis not right-handed (i != j x k)");
    Vec3 d = frame.vertices[e.terminus].pos - frame.vertices[e.origin].pos;
    if (!(e.length > 0.0)) rep.violations.push_back(tag + "non-positive length");
    else {
      if (std::abs(d.norm() - e.length) > tol * std::max(1.0, e.length))
        rep.violations.push_back(tag + "length does not match vertex positions");
      if ((d / d.norm() - e.i).norm() > tol)
        rep.violations.push_back(tag + "i does not point from origin to terminus");
    }
    const auto& m = e.mat;
    if (!(m.a > 0 && m.b > 0 && m.c > 0 && m.d > 0))
      rep.violations.push_back(tag + "materials must be strictly positive");
    for (std::size_t f = 0; f < ei; ++f)
      if (frame.edges[f].id == e.id) rep.violations.push_back("duplicate edge id " + e.id);
  }

  // connected components over vertices with union-find
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : frame.edges)
    if (e.origin >= 0 && e.origin < nv && e.terminus >= 0 && e.terminus < nv)
      parent[find(e.origin)] = find(e.terminus);
  for (int v = 0; v < nv; ++v) rep.components += (find(v) == v);
  for (int v = 0; v < nv; ++v)
    if (rep.degree[v] == 0) rep.warnings.push_back("vertex " + frame.vertices[v].id + " is isolated");
  if (rep.components > 1) rep.warnings.push_back("frame is not connected");
  return rep;
}

int signed_incidence(const Frame& frame, int vertex, int edge) {
  const auto& e = frame.edges.at(edge);
  if (e.origin == vertex) return +1;
  if (e.terminus == vertex) return -1;
  return 0;
}

Frame flip_edge(const Frame& frame, int edge) {
  if (edge < 0 || edge >= static_cast<int>(frame.edges.size()))
    throw DomainError("flip_edge: unknown edge index " + std::to_string(edge));
  Frame out = frame;
  Edge& e = out.edges[edge];
  std::swap(e.origin, e.terminus);
  e.i = -e.i;
  e.j = -e.j;
  if (e.j_hint) e.j_hint = -*e.j_hint;
  return out;
}

Frame flip_edge(const Frame& frame, const std::string& edge_id) {
  int e = frame.edge_index(edge_id);
  if (e < 0) throw DomainError("flip_edge: unknown edge id '" + edge_id + "'");
  return flip_edge(frame, e);
}

Frame split_edge(const Frame& frame, int edge, double t) {
  if (edge < 0 || edge >= static_cast<int>(frame.edges.size()))
    throw DomainError("split_edge: unknown edge index");
  if (!(t > 0.0 && t < 1.0)) throw DomainError("split_edge: t must lie in (0,1)");
  Frame out = frame;
  const Edge e = frame.edges[edge];
  Vertex mid;
  mid.id = e.id + "_mid";
  while (out.vertex_index(mid.id) >= 0) mid.id += "_";
  mid.pos = (1 - t) * frame.vertices[e.origin].pos + t * frame.vertices[e.terminus].pos;
  out.vertices.push_back(mid);
  const int m = static_cast<int>(out.vertices.size()) - 1;
  Edge a = e, b = e;
  a.terminus = m;
  a.length = (mid.pos - frame.vertices[e.origin].pos).norm();
  b.origin = m;
  b.length = (frame.vertices[e.terminus].pos - mid.pos).norm();
  b.id = e.id + "_b";
  while (out.edge_index(b.id) >= 0) b.id += "_";
  out.edges[edge] = a;
  out.edges.push_back(b);
  return out;
}

}  // namespace framespec
