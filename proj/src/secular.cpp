#include "framespec/secular.hpp"

#include "framespec/errors.hpp"
#include "framespec/log.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <queue>
#include <sstream>
#include <thread>

namespace framespec {

RowFunctional project_row(const Frame& frame, const VectorCondition& c, const Vec3& dir,
                          const std::string& axis) {
  RowFunctional r;
  r.kind = c.kind;
  r.vertex = c.vertex;
  r.label = c.label(frame) + axis;
  for (const auto& t : c.terms) {
    Eigen::Matrix<double, 1, 12> coef = dir.transpose() * t.coef;
    bool merged = false;
    for (auto& ex : r.terms)
      if (ex.edge == t.edge && ex.end == t.end) {
        ex.coef += coef;
        merged = true;
      }
    if (!merged) r.terms.push_back({t.edge, t.end, coef});
  }
  return r;
}

std::vector<RowFunctional> scalar_rows(const Frame& frame, const std::vector<VectorCondition>& conds,
                                       bool local_continuity) {
  std::vector<RowFunctional> out;
  for (const auto& c : conds) {
    const bool cont = c.kind == ConditionKind::DisplacementContinuity ||
                      c.kind == ConditionKind::RotationContinuity;
    std::array<Vec3, 3> dirs{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
    std::array<const char*, 3> names{"[E1]", "[E2]", "[E3]"};
    if (local_continuity && cont) {
      const Edge& e = frame.edges.at(c.edge);
      dirs = {e.i, e.j, e.k};
      names = {"[i]", "[j]", "[k]"};
    }
    for (int a = 0; a < 3; ++a) out.push_back(project_row(frame, c, dirs[a], names[a]));
  }
  return out;
}

std::vector<int> reduced_ends(const Frame& frame) {
  std::vector<int> out(frame.edges.size(), -1);
  for (std::size_t e = 0; e < frame.edges.size(); ++e) {
    const Edge& ed = frame.edges[e];
    if (ed.origin == ed.terminus) continue;
    if (frame.degree(ed.origin) == 1) out[e] = 0;
    else if (frame.degree(ed.terminus) == 1) out[e] = 1;
  }
  return out;
}

std::vector<EdgeBasis> assembly_bases(const Frame& frame) {
  const auto red = reduced_ends(frame);
  std::vector<EdgeBasis> out;
  for (std::size_t e = 0; e < frame.edges.size(); ++e)
    out.push_back(red[e] < 0 ? full_basis(static_cast<int>(e))
                             : reduced_basis(frame, static_cast<int>(e), red[e]));
  return out;
}

std::vector<VectorCondition> active_conditions(const Frame& frame) {
  const auto red = reduced_ends(frame);
  std::vector<bool> skip(frame.vertices.size(), false);
  for (std::size_t e = 0; e < frame.edges.size(); ++e)
    if (red[e] >= 0) skip[red[e] == 0 ? frame.edges[e].origin : frame.edges[e].terminus] = true;
  std::vector<VectorCondition> conds;
  for (int v = 0; v < static_cast<int>(frame.vertices.size()); ++v) {
    if (skip[v]) continue;
    for (auto& c : vertex_conditions(frame, v)) conds.push_back(std::move(c));
  }
  return conds;
}

SecularAssembly assemble(std::shared_ptr<const Frame> fp) {
  const Frame& frame = *fp;
  SecularAssembly a;
  a.frame = fp;
  a.bases = assembly_bases(frame);
  for (const auto& b : a.bases) {
    a.offsets.push_back(a.nbase);
    a.nbase += b.cols();
  }
  a.rows = scalar_rows(frame, active_conditions(frame), false);
  if (a.n_rows() != a.nbase) {
    std::ostringstream os;
    os << "secular assembly is not square: " << a.n_rows() << " rows, " << a.nbase << " columns";
    throw DomainError(os.str());
  }
  return a;
}

SecularAssembly assemble(const Frame& frame) {
  return assemble(std::make_shared<const Frame>(frame));
}

Eigen::MatrixXd assemble(const Frame& frame, double lambda) {
  return assemble(frame).evaluate(lambda);
}

Eigen::MatrixXd SecularAssembly::base_matrix(double lambda, const std::vector<RowFunctional>& rs) const {
  const Frame& f = *frame;
  const std::size_t ne = f.edges.size();
  std::vector<std::array<Eigen::MatrixXd, 2>> cache(ne);
  std::vector<std::array<bool, 2>> have(ne, {false, false});
  auto block = [&](int e, int end) -> const Eigen::MatrixXd& {
    if (!have[e][end]) {
      const Edge& ed = f.edges[e];
      const double x = end == 0 ? 0.0 : ed.length;
      cache[e][end] = trace_map(ed, lambda, x, bases[e].anchor) * bases[e].matrix(ed, lambda);
      have[e][end] = true;
    }
    return cache[e][end];
  };
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rs.size(), nbase);
  for (std::size_t r = 0; r < rs.size(); ++r)
    for (const auto& t : rs[r].terms) {
      const Eigen::MatrixXd& b = block(t.edge, t.end);
      m.row(r).segment(offsets[t.edge], b.cols()) += t.coef * b;
    }
  return m;
}

Eigen::VectorXd SecularAssembly::row_scales(double lambda) const { return row_scales(lambda, rows); }

Eigen::VectorXd SecularAssembly::row_scales(double lambda, const std::vector<RowFunctional>& rows) const {
  const Frame& f = *frame;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& t : rows[r].terms) {
      const Wavenumbers k = Wavenumbers::of(f.edges[t.edge].mat, lambda);
      for (int q = 0; q < 12; ++q) {
        if (t.coef(q) == 0.0) continue;
        double mag = 1.0;
        if (q < 4) mag = std::pow(k.mu_a, q);
        else if (q < 8) mag = std::pow(k.mu_b, q - 4);
        else if (q < 10) mag = std::pow(k.beta_c, q - 8);
        else mag = std::pow(k.beta_d, q - 10);
        s(r) = std::max(s(r), std::abs(t.coef(q)) * mag);
      }
    }
  return s;
}

namespace {

// rows are scaled by their natural magnitude (coefficient times wavenumber
// powers), which stays away from zero when a row vanishes at an eigenvalue
template <class M>
void scale_rows_inplace(M& m, const Eigen::VectorXd& s) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    if (s(r) > 0) m.row(r) /= s(r);
}

}  // namespace

Eigen::MatrixXcd SecularAssembly::evaluate_complex(double lambda) const {
  Eigen::MatrixXd b = base_matrix(lambda, rows);
  Eigen::MatrixXcd m = Q ? Eigen::MatrixXcd(b.cast<cd>() * (*Q)) : Eigen::MatrixXcd(b.cast<cd>());
  if (row_phase.size() == m.rows()) m = row_phase.asDiagonal() * m;
  if (scale_rows) scale_rows_inplace(m, row_scales(lambda));
  return m;
}

Eigen::MatrixXd SecularAssembly::evaluate(double lambda) const {
  if (!real) throw DomainError("assembly '" + label + "' is complex; use evaluate_complex");
  if (!Q && row_phase.size() == 0) {
    Eigen::MatrixXd b = base_matrix(lambda, rows);
    if (scale_rows) scale_rows_inplace(b, row_scales(lambda));
    return b;
  }
  return evaluate_complex(lambda).real();
}

std::vector<Eigen::Matrix<cd, 12, 1>> SecularAssembly::lift(double lambda, const Eigen::VectorXcd& z) const {
  Eigen::VectorXcd full = Q ? Eigen::VectorXcd((*Q) * z) : z;
  const Frame& f = *frame;
  std::vector<Eigen::Matrix<cd, 12, 1>> out;
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    Eigen::MatrixXd B = bases[e].matrix(f.edges[e], lambda);
    out.push_back(B.cast<cd>() * full.segment(offsets[e], B.cols()));
  }
  return out;
}

Eigen::VectorXd singular_values(const SecularAssembly& a, double lambda) {
  if (a.real) return Eigen::JacobiSVD<Eigen::MatrixXd>(a.evaluate(lambda)).singularValues();
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(a.evaluate_complex(lambda)).singularValues();
}

Probe probe(const SecularAssembly& a, double lambda) {
  Probe p;
  p.lambda = lambda;
  Eigen::VectorXd sv;
  if (a.real) {
    Eigen::MatrixXd m = a.evaluate(lambda);
    sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
    p.det_scaled = m.rows() == m.cols() ? m.partialPivLu().determinant()
                                        : std::numeric_limits<double>::quiet_NaN();
  } else {
    sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(a.evaluate_complex(lambda)).singularValues();
    p.det_scaled = std::numeric_limits<double>::quiet_NaN();
  }
  p.sigma_max = sv.size() ? sv(0) : 0.0;
  p.sigma_min = sv.size() ? sv(sv.size() - 1) : 0.0;
  return p;
}

bool realify(SecularAssembly& a, const std::vector<double>& probes, double tol) {
  if (probes.empty()) return false;
  SecularAssembly raw = a;
  raw.row_phase.resize(0);
  raw.scale_rows = true;
  std::vector<Eigen::MatrixXcd> mats;
  for (double l : probes) mats.push_back(raw.evaluate_complex(l));
  const Eigen::Index nr = mats[0].rows(), nc = mats[0].cols();

  auto pick = [&](Eigen::Index i, Eigen::Index j) -> cd {
    cd best = 0.0;
    for (const auto& m : mats)
      if (std::abs(m(i, j)) > std::abs(best)) best = m(i, j);
    return std::abs(best) > 1e-8 ? best : cd(0.0);
  };
  auto unit = [](cd z) { return z / std::abs(z); };
  auto half_plane = [](cd z) {
    double arg = std::arg(z);
    if (arg < -kHalfPi - 1e-12 || arg >= kHalfPi - 1e-12) return -z;
    return z;
  };

  Eigen::VectorXcd rp = Eigen::VectorXcd::Zero(nr), cp = Eigen::VectorXcd::Zero(nc);
  std::vector<bool> rset(nr, false), cset(nc, false);
  for (Eigen::Index start = 0; start < nc; ++start) {
    if (cset[start]) continue;
    cp(start) = 1.0;
    cset[start] = true;
    std::queue<std::pair<bool, Eigen::Index>> q;  // (is_row, index)
    q.push({false, start});
    while (!q.empty()) {
      auto [is_row, k] = q.front();
      q.pop();
      if (!is_row) {
        for (Eigen::Index i = 0; i < nr; ++i) {
          cd z = pick(i, k);
          if (rset[i] || z == 0.0) continue;
          rp(i) = std::conj(unit(z * cp(k)));
          rset[i] = true;
          q.push({true, i});
        }
      } else {
        for (Eigen::Index j = 0; j < nc; ++j) {
          cd z = pick(k, j);
          if (cset[j] || z == 0.0) continue;
          cp(j) = half_plane(std::conj(unit(rp(k) * z)));
          cset[j] = true;
          q.push({false, j});
        }
      }
    }
  }
  for (Eigen::Index i = 0; i < nr; ++i)
    if (!rset[i]) rp(i) = 1.0;

  for (const auto& m : mats) {
    Eigen::MatrixXcd t = rp.asDiagonal() * m * cp.asDiagonal();
    for (Eigen::Index i = 0; i < nr; ++i) {
      double s = t.row(i).cwiseAbs().maxCoeff();
      for (Eigen::Index j = 0; j < nc; ++j)
        if (std::abs(t(i, j).imag()) > tol * std::max(s, 1e-300)) return false;
    }
  }
  Eigen::MatrixXcd q0 = a.Q ? *a.Q : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(a.nbase, a.nbase));
  a.Q = q0 * cp.asDiagonal();
  a.row_phase = rp;
  a.real = true;
  return true;
}

const char* detector_name(Detector d) {
  switch (d) {
    case Detector::Det: return "det";
    case Detector::SigmaMin: return "smin";
    case Detector::Both: return "both";
  }
  return "?";
}

int default_steps(double lmin, double lmax) {
  double decades = std::log10(lmax / lmin);
  return std::max(2, static_cast<int>(std::ceil(2000.0 * decades)) + 1);
}

std::vector<double> scan_grid(const ScanOptions& opt) {
  if (!(opt.lmin > 0 && opt.lmax > opt.lmin))
    throw DomainError("scan interval must satisfy 0 < lmin < lmax");
  int n = opt.steps > 0 ? opt.steps : default_steps(opt.lmin, opt.lmax);
  if (n < 2) throw DomainError("steps must be >= 2");
  std::vector<double> g(n);
  const double r = std::log(opt.lmax / opt.lmin);
  for (int k = 0; k < n; ++k) g[k] = opt.lmin * std::exp(r * k / (n - 1));
  g.front() = opt.lmin;
  g.back() = opt.lmax;
  return g;
}

ScanResult scan(const SecularAssembly& a, const ScanOptions& opt) {
  const auto grid = scan_grid(opt);
  ScanResult res;
  res.samples.resize(grid.size());
  unsigned nt = opt.threads > 0 ? static_cast<unsigned>(opt.threads)
                                : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, static_cast<unsigned>(grid.size()));
  std::vector<std::exception_ptr> errs(nt);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t k = t; k < grid.size(); k += nt) res.samples[k] = probe(a, grid[k]);
        } catch (...) {
          errs[t] = std::current_exception();
        }
      });
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);

  const auto& s = res.samples;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    double d0 = s[k].det_scaled, d1 = s[k + 1].det_scaled;
    if (std::isfinite(d0) && std::isfinite(d1) && ((d0 < 0) != (d1 < 0)) && d0 != 0.0)
      res.hits.push_back({s[k].lambda, s[k + 1].lambda, 0.5 * (s[k].lambda + s[k + 1].lambda),
                          Detector::Det});
  }
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    double r = s[k].ratio();
    if (r < s[k - 1].ratio() && r <= s[k + 1].ratio() && r < opt.dip_threshold)
      res.hits.push_back({s[k - 1].lambda, s[k + 1].lambda, s[k].lambda, Detector::SigmaMin});
  }
  std::sort(res.hits.begin(), res.hits.end(),
            [](const ScanHit& x, const ScanHit& y) { return x.seed < y.seed; });
  return res;
}

namespace {

// Golden-section search for the minimum of a V-shaped function on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, int max_iter) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter; ++it) {
    if (b - a <= 4 * std::numeric_limits<double>::epsilon() * std::abs(b)) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

bool spurious(const SecularAssembly& a, double lambda, double tol) {
  if (a.check_rows.empty()) return false;
  Eigen::MatrixXd b = a.base_matrix(lambda, a.check_rows);
  Eigen::MatrixXcd m = a.Q ? Eigen::MatrixXcd(b.cast<cd>() * (*a.Q)) : Eigen::MatrixXcd(b.cast<cd>());
  scale_rows_inplace(m, a.row_scales(lambda, a.check_rows));
  Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  return sv(sv.size() - 1) > tol * sv(0);
}

}  // namespace

std::optional<Eigenvalue> refine(const SecularAssembly& a, const ScanHit& hit, const ScanOptions& opt) {
  double lam = hit.seed;
  if (hit.detector == Detector::Det) {
    auto f = [&](double l) { return probe(a, l).det_scaled; };
    double fa = f(hit.lo), fb = f(hit.hi);
    if (fa == 0.0) lam = hit.lo;
    else if (fb == 0.0) lam = hit.hi;
    else {
      std::uintmax_t it = 200;
      auto r = boost::math::tools::toms748_solve(f, hit.lo, hit.hi, fa, fb,
                                                 boost::math::tools::eps_tolerance<double>(44), it);
      if (it >= 200) throw NumericalError("root refinement did not converge near " + std::to_string(hit.seed));
      lam = 0.5 * (r.first + r.second);
    }
  } else {
    lam = golden_min([&](double l) { return probe(a, l).ratio(); }, hit.lo, hit.hi, 200);
  }
  Eigen::VectorXd sv = singular_values(a, lam);
  Eigenvalue ev;
  ev.lambda = lam;
  ev.detector = hit.detector;
  ev.sigma_ratio = sv(sv.size() - 1) / sv(0);
  ev.label = a.label;
  const double accept = hit.detector == Detector::Det ? opt.det_accept_tol : opt.accept_tol;
  if (ev.sigma_ratio > accept) {
    if (hit.detector == Detector::Det)
      log::warn("det sign change near " + std::to_string(lam) + " rejected (sigma ratio " +
                std::to_string(ev.sigma_ratio) + ")");
    return std::nullopt;
  }
  if (spurious(a, lam, 1e-6)) {
    log::info("candidate " + std::to_string(lam) + " rejected by the full row set");
    return std::nullopt;
  }
  ev.nullity = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) ev.nullity += sv(k) < opt.nullity_tol * sv(0);
  ev.nullity = std::max(ev.nullity, 1);
  return ev;
}

std::vector<Eigenvalue> solve(const SecularAssembly& a, const ScanOptions& opt) {
  ScanResult sr = scan(a, opt);
  std::vector<Eigenvalue> found;
  for (const auto& h : sr.hits) {
    auto ev = refine(a, h, opt);
    if (ev) found.push_back(*ev);
  }
  std::sort(found.begin(), found.end(),
            [](const Eigenvalue& x, const Eigenvalue& y) { return x.lambda < y.lambda; });
  std::vector<Eigenvalue> merged;
  for (const auto& ev : found) {
    if (!merged.empty() && std::abs(ev.lambda - merged.back().lambda) <= opt.merge_tol * ev.lambda) {
      auto& m = merged.back();
      if (m.detector != ev.detector) m.detector = Detector::Both;
      m.nullity = std::max(m.nullity, ev.nullity);
      // keep the better-resolved location
      if (ev.sigma_ratio < m.sigma_ratio) {
        m.lambda = ev.lambda;
        m.sigma_ratio = ev.sigma_ratio;
      }
      continue;
    }
    merged.push_back(ev);
  }
  return merged;
}

std::vector<double> expand_multiplicity(const std::vector<Eigenvalue>& ev) {
  std::vector<double> out;
  for (const auto& e : ev)
    for (int k = 0; k < e.nullity; ++k) out.push_back(e.lambda);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Eigen::MatrixXcd kernel_vectors(const SecularAssembly& a, double lambda, double tol) {
  Eigen::MatrixXcd m = a.real ? Eigen::MatrixXcd(a.evaluate(lambda).cast<cd>()) : a.evaluate_complex(lambda);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int k = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) k += sv(i) < tol * sv(0);
  if (k == 0) {
    std::ostringstream os;
    os << "lambda " << lambda << " is not an eigenvalue (sigma ratio " << sv(sv.size() - 1) / sv(0) << ")";
    throw NumericalError(os.str());
  }
  return svd.matrixV().rightCols(k);
}

}  // namespace

std::vector<std::vector<Eigen::Matrix<cd, 12, 1>>> complex_kernel(const SecularAssembly& a, double lambda,
                                                                double nullity_tol) {
  Eigen::MatrixXcd z = kernel_vectors(a, lambda, nullity_tol);
  std::vector<std::vector<Eigen::Matrix<cd, 12, 1>>> out;
  for (Eigen::Index c = 0; c < z.cols(); ++c) out.push_back(a.lift(lambda, z.col(c)));
  return out;
}

Jet evaluate_jet(const ModeShape& m, int edge, double x) {
  const Edge& e = m.frame->edges.at(edge);
  return jet_map(e, m.lambda, x, m.edges[edge].anchor) * m.edges[edge].c;
}

FieldPoint evaluate_mode(const ModeShape& m, int edge, double x) {
  if (edge < 0 || edge >= static_cast<int>(m.frame->edges.size()))
    throw DomainError("evaluate_mode: unknown edge index");
  const Edge& e = m.frame->edges[edge];
  const double tol = 1e-12 * e.length;
  if (x < -tol || x > e.length + tol) throw DomainError("evaluate_mode: x outside [0, l]");
  FieldPoint fp;
  fp.trace = trace_map(e, m.lambda, x, m.edges[edge].anchor) * m.edges[edge].c;
  return fp;
}

FrameField mode_field(const ModeShape& m) {
  return [m](int edge, double x) { return evaluate_jet(m, edge, x); };
}

double mode_norm(const ModeShape& m, int panels) {
  auto f = mode_field(m);
  return std::sqrt(l2_inner(*m.frame, f, f, panels));
}

std::vector<ModeShape> mode_shapes(const SecularAssembly& a, double lambda, double nullity_tol) {
  auto kern = complex_kernel(a, lambda, nullity_tol);
  const std::size_t ne = a.frame->edges.size();
  std::vector<ModeShape> out;
  for (const auto& lifted : kern) {
    // align the phase of the largest coefficient, then take the real part
    cd big = 0.0;
    for (const auto& c : lifted)
      for (int k = 0; k < 12; ++k)
        if (std::abs(c(k)) > std::abs(big)) big = c(k);
    cd ph = std::abs(big) > 0 ? std::conj(big) / std::abs(big) : cd(1.0);
    ModeShape m;
    m.lambda = lambda;
    m.nullity = static_cast<int>(kern.size());
    m.frame = a.frame;
    for (std::size_t e = 0; e < ne; ++e)
      m.edges.push_back({a.bases[e].anchor, (ph * lifted[e]).real()});
    // Gram-Schmidt against earlier modes in L2(frame)
    auto fm = mode_field(m);
    for (const auto& p : out) {
      double c = l2_inner(*a.frame, mode_field(p), fm, 16);
      for (std::size_t e = 0; e < ne; ++e) m.edges[e].c -= c * p.edges[e].c;
      fm = mode_field(m);
    }
    double n = mode_norm(m);
    if (!(n > 1e-10)) continue;
    for (auto& ec : m.edges) ec.c /= n;
    out.push_back(m);
  }
  if (out.empty()) throw NumericalError("kernel at lambda collapsed after taking real parts");
  return out;
}

ModeShape mode_shape(const SecularAssembly& a, double lambda, double nullity_tol) {
  return mode_shapes(a, lambda, nullity_tol).front();
}

double mode_condition_residual(const ModeShape& m) {
  const Frame& f = *m.frame;
  double worst = 0.0, scale = 0.0;
  auto trace = [&](int e, int end) -> Trace {
    return evaluate_mode(m, e, end == 0 ? 0.0 : f.edges[e].length).trace;
  };
  for (std::size_t e = 0; e < f.edges.size(); ++e)
    for (int end = 0; end < 2; ++end) scale = std::max(scale, trace(static_cast<int>(e), end).cwiseAbs().maxCoeff());
  for (int v = 0; v < static_cast<int>(f.vertices.size()); ++v) {
    if (f.degree(v) == 0) continue;
    Eigen::VectorXd r = vertex_residual(f, v, trace);
    if (r.size()) worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst / std::max(scale, 1.0);
}

}  // namespace framespec
