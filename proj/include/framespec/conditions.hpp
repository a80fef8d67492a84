#pragma once

#include "framespec/edge_solutions.hpp"
#include "framespec/geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace framespec {

enum class ConditionKind {
  DisplacementContinuity,
  RotationContinuity,
  ForceBalance,
  MomentBalance,
  DisplacementFixed,
  RotationFixed,
};

const char* condition_name(ConditionKind k);
// Displacement-type rows vs rotation-type rows (used by the planar split).
bool is_displacement_type(ConditionKind k);

struct IncidentEnd {
  int edge = -1;
  int end = 0;   // 0 origin, 1 terminus
  int sign = 0;  // +1 origin, -1 terminus
  double x = 0;  // 0 or length
};

// Ordered by edge index; reference end is the first.
std::vector<IncidentEnd> incident_ends(const Frame& frame, int vertex);

using TraceRow3 = Eigen::Matrix<double, 3, 12>;

struct TraceTerm {
  int edge = -1;
  int end = 0;
  TraceRow3 coef = TraceRow3::Zero();
};

// Three scalar equations sum_terms coef * trace = 0, in global coordinates.
struct VectorCondition {
  ConditionKind kind = ConditionKind::ForceBalance;
  int vertex = -1;
  int edge = -1;  // compared edge for continuity rows, reference edge otherwise
  std::vector<TraceTerm> terms;
  std::string label(const Frame& frame) const;
};

// g = u i + w j + v k
TraceRow3 displacement_block(const Edge& e);
// omega = eta i - v' j + w' k
TraceRow3 rotation_block(const Edge& e);
// F = c u' i - b w''' j - a v''' k
TraceRow3 force_block(const Edge& e);
// M = d eta' i - a v'' j + b w'' k
TraceRow3 moment_block(const Edge& e);

std::vector<VectorCondition> continuity_rows(const Frame& frame, int vertex);
// Force and moment rows; spring weights tan(alpha) g_ref - sum s F = 0 and
// tan(beta) omega_ref - sum s M = 0; a pi/2 angle gives the fixed rows instead.
std::vector<VectorCondition> balance_rows(const Frame& frame, int vertex);
// The fixed-displacement / fixed-rotation rows alone (empty for free kinds).
std::vector<VectorCondition> dirichlet_rows(const Frame& frame, int vertex);
// continuity followed by balance: 6*deg scalar rows
std::vector<VectorCondition> vertex_conditions(const Frame& frame, int vertex);

struct VertexConditionBlock {
  std::vector<IncidentEnd> ends;
  Eigen::MatrixXd matrix;  // 6 deg x 12 deg acting on stacked end traces
  std::vector<std::string> labels;
};

VertexConditionBlock vertex_block(const Frame& frame, int vertex);

// Residual of all vertex rows of a vertex for given per-end traces.
Eigen::VectorXd vertex_residual(const Frame& frame, int vertex,
                                const std::function<Trace(int edge, int end)>& trace);

// A frame field given edge-wise in closed form: jet of (v, w, u, eta).
using FrameField = std::function<Jet(int edge, double x)>;

// |<f, H g> - <H f, g>| with H = (a v'''', b w'''', -c u'', -d eta'').
double greens_identity_residual(const Frame& frame, const FrameField& f, const FrameField& g,
                                int panels = 64);
// Plain L2(frame) product of the (v, w, u, eta) values.
double l2_inner(const Frame& frame, const FrameField& f, const FrameField& g, int panels = 64);

}  // namespace framespec
