#include "framespec/conditions.hpp"

#include "framespec/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

namespace framespec {

const char* condition_name(ConditionKind k) {
  switch (k) {
    case ConditionKind::DisplacementContinuity: return "disp-continuity";
    case ConditionKind::RotationContinuity: return "rot-continuity";
    case ConditionKind::ForceBalance: return "force-balance";
    case ConditionKind::MomentBalance: return "moment-balance";
    case ConditionKind::DisplacementFixed: return "disp-fixed";
    case ConditionKind::RotationFixed: return "rot-fixed";
  }
  return "?";
}

bool is_displacement_type(ConditionKind k) {
  return k == ConditionKind::DisplacementContinuity || k == ConditionKind::ForceBalance ||
         k == ConditionKind::DisplacementFixed;
}

std::string VectorCondition::label(const Frame& frame) const {
  std::string s = condition_name(kind);
  s += "@" + frame.vertices.at(vertex).id;
  if (edge >= 0) s += ":" + frame.edges.at(edge).id;
  return s;
}

std::vector<IncidentEnd> incident_ends(const Frame& frame, int vertex) {
  std::vector<IncidentEnd> out;
  for (int e = 0; e < static_cast<int>(frame.edges.size()); ++e) {
    const Edge& ed = frame.edges[e];
    if (ed.origin == vertex) out.push_back({e, 0, +1, 0.0});
    if (ed.terminus == vertex) out.push_back({e, 1, -1, ed.length});
  }
  return out;
}

TraceRow3 displacement_block(const Edge& e) {
  TraceRow3 r = TraceRow3::Zero();
  r.col(8) = e.i;
  r.col(4) = e.j;
  r.col(0) = e.k;
  return r;
}

TraceRow3 rotation_block(const Edge& e) {
  TraceRow3 r = TraceRow3::Zero();
  r.col(10) = e.i;
  r.col(1) = -e.j;
  r.col(5) = e.k;
  return r;
}

TraceRow3 force_block(const Edge& e) {
  TraceRow3 r = TraceRow3::Zero();
  r.col(9) = e.mat.c * e.i;
  r.col(7) = -e.mat.b * e.j;
  r.col(3) = -e.mat.a * e.k;
  return r;
}

TraceRow3 moment_block(const Edge& e) {
  TraceRow3 r = TraceRow3::Zero();
  r.col(11) = e.mat.d * e.i;
  r.col(2) = -e.mat.a * e.j;
  r.col(6) = e.mat.b * e.k;
  return r;
}

std::vector<VectorCondition> continuity_rows(const Frame& frame, int vertex) {
  std::vector<VectorCondition> out;
  auto ends = incident_ends(frame, vertex);
  if (ends.size() < 2) return out;
  const IncidentEnd& ref = ends[0];
  const Edge& er = frame.edges[ref.edge];
  for (std::size_t n = 1; n < ends.size(); ++n) {
    const IncidentEnd& o = ends[n];
    const Edge& eo = frame.edges[o.edge];
    VectorCondition d{ConditionKind::DisplacementContinuity, vertex, o.edge, {}};
    d.terms.push_back({o.edge, o.end, displacement_block(eo)});
    d.terms.push_back({ref.edge, ref.end, -displacement_block(er)});
    out.push_back(d);
    VectorCondition r{ConditionKind::RotationContinuity, vertex, o.edge, {}};
    r.terms.push_back({o.edge, o.end, rotation_block(eo)});
    r.terms.push_back({ref.edge, ref.end, -rotation_block(er)});
    out.push_back(r);
  }
  return out;
}

std::vector<VectorCondition> balance_rows(const Frame& frame, int vertex) {
  std::vector<VectorCondition> out;
  auto ends = incident_ends(frame, vertex);
  if (ends.empty()) return out;
  const JointKind& jk = frame.vertices.at(vertex).joint;
  const IncidentEnd& ref = ends[0];
  const Edge& er = frame.edges[ref.edge];

  if (jk.displacement_fixed()) {
    out.push_back({ConditionKind::DisplacementFixed, vertex, ref.edge,
                   {{ref.edge, ref.end, displacement_block(er)}}});
  } else {
    VectorCondition f{ConditionKind::ForceBalance, vertex, ref.edge, {}};
    if (jk.tan_alpha() != 0.0)
      f.terms.push_back({ref.edge, ref.end, jk.tan_alpha() * displacement_block(er)});
    for (const auto& e : ends)
      f.terms.push_back({e.edge, e.end, -double(e.sign) * force_block(frame.edges[e.edge])});
    out.push_back(f);
  }
  if (jk.rotation_fixed()) {
    out.push_back({ConditionKind::RotationFixed, vertex, ref.edge,
                   {{ref.edge, ref.end, rotation_block(er)}}});
  } else {
    VectorCondition m{ConditionKind::MomentBalance, vertex, ref.edge, {}};
    if (jk.tan_beta() != 0.0)
      m.terms.push_back({ref.edge, ref.end, jk.tan_beta() * rotation_block(er)});
    for (const auto& e : ends)
      m.terms.push_back({e.edge, e.end, -double(e.sign) * moment_block(frame.edges[e.edge])});
    out.push_back(m);
  }
  return out;
}

std::vector<VectorCondition> dirichlet_rows(const Frame& frame, int vertex) {
  std::vector<VectorCondition> out;
  for (auto& c : balance_rows(frame, vertex))
    if (c.kind == ConditionKind::DisplacementFixed || c.kind == ConditionKind::RotationFixed)
      out.push_back(std::move(c));
  return out;
}

std::vector<VectorCondition> vertex_conditions(const Frame& frame, int vertex) {
  auto out = continuity_rows(frame, vertex);
  for (auto& c : balance_rows(frame, vertex)) out.push_back(std::move(c));
  return out;
}

VertexConditionBlock vertex_block(const Frame& frame, int vertex) {
  VertexConditionBlock b;
  b.ends = incident_ends(frame, vertex);
  const int deg = static_cast<int>(b.ends.size());
  auto conds = vertex_conditions(frame, vertex);
  b.matrix = Eigen::MatrixXd::Zero(3 * conds.size(), 12 * deg);
  for (std::size_t c = 0; c < conds.size(); ++c) {
    for (const auto& t : conds[c].terms) {
      int slot = -1;
      for (int n = 0; n < deg; ++n)
        if (b.ends[n].edge == t.edge && b.ends[n].end == t.end) slot = n;
      b.matrix.block<3, 12>(3 * c, 12 * slot) += t.coef;
    }
    const std::string l = conds[c].label(frame);
    for (const char* ax : {"[0]", "[1]", "[2]"}) b.labels.push_back(l + ax);
  }
  return b;
}

Eigen::VectorXd vertex_residual(const Frame& frame, int vertex,
                                const std::function<Trace(int, int)>& trace) {
  auto conds = vertex_conditions(frame, vertex);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(3 * conds.size());
  for (std::size_t c = 0; c < conds.size(); ++c)
    for (const auto& t : conds[c].terms) r.segment<3>(3 * c) += t.coef * trace(t.edge, t.end);
  return r;
}

namespace {

template <class F>
double composite_gauss(double a, double b, int panels, F&& f) {
  using boost::math::quadrature::gauss;
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, hi = lo + h;
    sum += gauss<double, 16>::integrate(f, lo, hi);
  }
  return sum;
}

void check_finite(const Jet& j, const Edge& e) {
  if (!j.allFinite()) throw DomainError("field on edge " + e.id + " is not finite");
}

}  // namespace

double greens_identity_residual(const Frame& frame, const FrameField& f, const FrameField& g,
                                int panels) {
  if (panels < 1) throw DomainError("panels must be >= 1");
  auto apply_h = [](const Edge& e, const Jet& j) {
    Eigen::Vector4d h;
    h << e.mat.a * j[4], e.mat.b * j[9], -e.mat.c * j[12], -e.mat.d * j[15];
    return h;
  };
  auto values = [](const Jet& j) { return Eigen::Vector4d(j[0], j[5], j[10], j[13]); };
  double total = 0.0;
  for (int e = 0; e < static_cast<int>(frame.edges.size()); ++e) {
    const Edge& ed = frame.edges[e];
    total += composite_gauss(0.0, ed.length, panels, [&](double x) {
      Jet jf = f(e, x), jg = g(e, x);
      check_finite(jf, ed);
      check_finite(jg, ed);
      return values(jf).dot(apply_h(ed, jg)) - apply_h(ed, jf).dot(values(jg));
    });
  }
  return std::abs(total);
}

double l2_inner(const Frame& frame, const FrameField& f, const FrameField& g, int panels) {
  double total = 0.0;
  for (int e = 0; e < static_cast<int>(frame.edges.size()); ++e) {
    const Edge& ed = frame.edges[e];
    total += composite_gauss(0.0, ed.length, panels, [&](double x) {
      Jet jf = f(e, x), jg = g(e, x);
      return jf[0] * jg[0] + jf[5] * jg[5] + jf[10] * jg[10] + jf[13] * jg[13];
    });
  }
  return total;
}

}  // namespace framespec
