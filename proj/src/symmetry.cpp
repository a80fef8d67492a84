#include "framespec/symmetry.hpp"

#include "framespec/errors.hpp"
#include "framespec/fem.hpp"
#include "framespec/log.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace framespec {

namespace {

using cvec = std::complex<double>;

struct Lateral {
  double b00, b01, b10, b11;  // [w'; v'] = B [w; v]
  bool mixes(double tol) const { return std::abs(b01) > tol || std::abs(b10) > tol; }
};

Lateral lateral(const Edge& from, const Edge& to, const Mat3& T) {
  const Vec3 tj = T * from.j, tk = T * from.k;
  return {to.j.dot(tj), to.j.dot(tk), to.k.dot(tj), to.k.dot(tk)};
}

bool same_joint(const JointKind& a, const JointKind& b, double tol) {
  return a.type == b.type && std::abs(a.alpha - b.alpha) <= tol && std::abs(a.beta - b.beta) <= tol;
}

bool same_material(const Material& a, const Material& b, double tol) {
  auto eq = [&](double x, double y) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(x)); };
  return eq(a.a, b.a) && eq(a.b, b.b) && eq(a.c, b.c) && eq(a.d, b.d);
}

// Verify the element and fill its vertex permutation.
void check_element(const Frame& f, GroupElement& g, const SymmetryOptions& opt) {
  const double tol = opt.tol;
  if ((g.T.transpose() * g.T - Mat3::Identity()).norm() > 1e-9)
    throw DomainError("symmetry element " + g.name + ": matrix is not orthogonal");
  const int ne = static_cast<int>(f.edges.size());
  if (static_cast<int>(g.edge_perm.size()) != ne)
    throw DomainError("symmetry element " + g.name + ": edge permutation has wrong size");
  std::vector<int> seen(ne, 0);
  for (int p : g.edge_perm) {
    if (p < 0 || p >= ne || seen[p]++) throw DomainError("symmetry element " + g.name + ": not a permutation");
  }
  const double scale = std::max(1.0, f.diameter());
  g.vertex_perm.assign(f.vertices.size(), -1);
  for (std::size_t v = 0; v < f.vertices.size(); ++v) {
    Vec3 img = g.T * (f.vertices[v].pos - opt.center) + opt.center;
    for (std::size_t w = 0; w < f.vertices.size(); ++w)
      if ((f.vertices[w].pos - img).norm() <= tol * scale) g.vertex_perm[v] = static_cast<int>(w);
    if (g.vertex_perm[v] < 0)
      throw DomainError("symmetry element " + g.name + " does not preserve the frame: vertex " +
                        f.vertices[v].id + " has no image");
    if (!same_joint(f.vertices[v].joint, f.vertices[g.vertex_perm[v]].joint, tol))
      throw DomainError("symmetry element " + g.name + " maps vertex " + f.vertices[v].id +
                        " to a vertex with a different joint");
  }
  for (int e = 0; e < ne; ++e) {
    const Edge& a = f.edges[e];
    const Edge& b = f.edges[g.edge_perm[e]];
    const std::string tag = "symmetry element " + g.name + ", edge " + a.id + " -> " + b.id + ": ";
    if (b.origin == g.vertex_perm[a.terminus] && b.terminus == g.vertex_perm[a.origin] &&
        b.origin != b.terminus)
      throw DomainError(tag + "reverses the edge orientation; flip_edge the image edges first");
    if (b.origin != g.vertex_perm[a.origin] || b.terminus != g.vertex_perm[a.terminus])
      throw DomainError(tag + "edge permutation inconsistent with vertex images");
    if ((g.T * a.i - b.i).norm() > tol) throw DomainError(tag + "axis not mapped");
    if (std::abs(a.length - b.length) > tol * scale) throw DomainError(tag + "lengths differ");
    if (!same_material(a.mat, b.mat, tol)) throw DomainError(tag + "materials differ");
    Lateral L = lateral(a, b, g.T);
    if (L.mixes(1e-12) && (std::abs(a.mat.a - a.mat.b) > tol * a.mat.a))
      throw DomainError(tag + "mixes v and w but a != b");
  }
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  GroupElement out;
  out.T = g.T * h.T;
  out.edge_perm.resize(h.edge_perm.size());
  for (std::size_t e = 0; e < h.edge_perm.size(); ++e) out.edge_perm[e] = g.edge_perm[h.edge_perm[e]];
  out.vertex_perm.resize(h.vertex_perm.size());
  for (std::size_t v = 0; v < h.vertex_perm.size(); ++v) out.vertex_perm[v] = g.vertex_perm[h.vertex_perm[v]];
  out.name = h.name == "e" ? g.name : g.name + "*" + h.name;
  return out;
}

bool same_element(const GroupElement& a, const GroupElement& b) {
  return a.edge_perm == b.edge_perm && (a.T - b.T).norm() < 1e-9;
}

}  // namespace

FrameSymmetry FrameSymmetry::generate(const Frame& frame, const std::vector<GroupElement>& generators,
                                      const SymmetryOptions& opt) {
  FrameSymmetry s;
  s.frame_ = frame;
  GroupElement id;
  id.T = Mat3::Identity();
  id.name = "e";
  for (std::size_t e = 0; e < frame.edges.size(); ++e) id.edge_perm.push_back(static_cast<int>(e));
  check_element(frame, id, opt);
  s.elements_.push_back(id);

  std::vector<GroupElement> gens = generators;
  for (std::size_t n = 0; n < gens.size(); ++n) {
    if (gens[n].name.empty()) gens[n].name = "g" + std::to_string(n);
    check_element(frame, gens[n], opt);
  }
  for (const auto& g : gens) {
    int idx = -1;
    for (std::size_t k = 0; k < s.elements_.size(); ++k)
      if (same_element(s.elements_[k], g)) idx = static_cast<int>(k);
    if (idx < 0) {
      s.elements_.push_back(g);
      idx = static_cast<int>(s.elements_.size()) - 1;
    }
    s.generators_.push_back(idx);
  }
  for (std::size_t k = 0; k < s.elements_.size(); ++k) {
    for (const auto& g : gens) {
      GroupElement c = compose(g, s.elements_[k]);
      bool found = std::any_of(s.elements_.begin(), s.elements_.end(),
                               [&](const GroupElement& x) { return same_element(x, c); });
      if (!found) {
        s.elements_.push_back(c);
        if (static_cast<int>(s.elements_.size()) > opt.max_order)
          throw DomainError("symmetry group exceeds the maximum order");
      }
    }
  }
  const int n = s.order();
  s.table_.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      GroupElement c = compose(s.elements_[a], s.elements_[b]);
      for (int k = 0; k < n; ++k)
        if (same_element(s.elements_[k], c)) s.table_[a][b] = k;
      if (s.table_[a][b] < 0) throw DomainError("symmetry elements do not close into a group");
    }
  for (int a = 0; a < n; ++a)
    if (s.inverse(a) < 0) throw DomainError("symmetry table lacks an inverse");
  log::debug("symmetry group of order " + std::to_string(n));
  return s;
}

int FrameSymmetry::inverse(int a) const {
  for (int b = 0; b < order(); ++b)
    if (table_[a][b] == 0 && table_[b][a] == 0) return b;
  return -1;
}

bool FrameSymmetry::has_reflections() const {
  return std::any_of(elements_.begin(), elements_.end(), [](const GroupElement& g) { return g.det() < 0; });
}

std::vector<int> FrameSymmetry::rotation_subgroup() const {
  std::vector<int> out;
  for (int k = 0; k < order(); ++k)
    if (elements_[k].det() > 0) out.push_back(k);
  return out;
}

int FrameSymmetry::rotation_generator() const {
  for (int g : generators_)
    if (elements_[g].det() > 0 && g != 0) return g;
  return -1;
}

int FrameSymmetry::element_order(int g) const {
  int x = g, k = 1;
  while (x != 0) {
    x = table_[g][x];
    if (++k > order()) throw DomainError("element order exceeds group order");
  }
  return k;
}

std::vector<std::vector<int>> FrameSymmetry::edge_orbits() const {
  const int ne = static_cast<int>(frame_.edges.size());
  std::vector<bool> done(ne, false);
  std::vector<std::vector<int>> out;
  for (int e = 0; e < ne; ++e) {
    if (done[e]) continue;
    std::set<int> orb;
    for (const auto& g : elements_) orb.insert(g.edge_perm[e]);
    for (int x : orb) done[x] = true;
    out.emplace_back(orb.begin(), orb.end());
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return out;
}

IrrepSpec IrrepSpec::trivial(const FrameSymmetry& s) {
  IrrepSpec r;
  r.label = "trivial";
  for (int k = 0; k < s.order(); ++k) {
    r.support.push_back(k);
    r.chi.push_back(1.0);
  }
  return r;
}

IrrepSpec IrrepSpec::alternating(const FrameSymmetry& s) {
  IrrepSpec r;
  r.label = "alternating";
  for (int k = 0; k < s.order(); ++k) {
    r.support.push_back(k);
    r.chi.push_back(s.elements()[k].det() > 0 ? 1.0 : -1.0);
  }
  return r;
}

IrrepSpec IrrepSpec::cyclic(const FrameSymmetry& s, int j) {
  const int R = s.rotation_generator();
  if (R < 0) throw DomainError("group has no rotation generator for a cyclic character");
  const int n = s.element_order(R);
  IrrepSpec r;
  const int jj = ((j % n) + n) % n;
  if (n == 1 || jj == 0) r.label = "cyclic0";
  else if (jj == 1) r.label = "omega";
  else if (jj == n - 1) r.label = "omega_bar";
  else r.label = "omega" + std::to_string(jj);
  int x = 0;
  for (int k = 0; k < n; ++k) {
    r.support.push_back(x);
    r.chi.push_back(std::polar(1.0, 2.0 * std::numbers::pi * jj * k / n));
    x = s.product(R, x);
  }
  return r;
}

IrrepSpec IrrepSpec::omega_bar(const FrameSymmetry& s) {
  const int R = s.rotation_generator();
  if (R < 0) throw DomainError("group has no rotation generator");
  return cyclic(s, s.element_order(R) - 1);
}

IrrepSpec IrrepSpec::from_generators(const FrameSymmetry& s, const std::vector<cvec>& values,
                                     const std::string& label) {
  const auto& gens = s.generator_indices();
  if (values.size() != gens.size()) throw DomainError("one character value per generator required");
  std::vector<cvec> chi(s.order());
  std::vector<bool> set(s.order(), false);
  chi[0] = 1.0;
  set[0] = true;
  std::vector<int> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int x = queue[q];
    for (std::size_t n = 0; n < gens.size(); ++n) {
      const int y = s.product(gens[n], x);
      const cvec v = values[n] * chi[x];
      if (!set[y]) {
        chi[y] = v;
        set[y] = true;
        queue.push_back(y);
      } else if (std::abs(chi[y] - v) > 1e-9) {
        throw DomainError("character not a homomorphism");
      }
    }
  }
  IrrepSpec r;
  r.label = label;
  for (int k = 0; k < s.order(); ++k) {
    r.support.push_back(k);
    r.chi.push_back(chi[k]);
  }
  if (!r.is_homomorphism(s)) throw DomainError("character not a homomorphism");
  return r;
}

IrrepSpec IrrepSpec::by_name(const FrameSymmetry& s, const std::string& name) {
  if (name == "trivial") return trivial(s);
  if (name == "alternating") return alternating(s);
  if (name == "omega") return omega(s);
  if (name == "omega_bar") return omega_bar(s);
  if (name.rfind("cyclic:", 0) == 0) return cyclic(s, std::stoi(name.substr(7)));
  throw DomainError("unknown irrep '" + name + "'");
}

cvec IrrepSpec::value(int element) const {
  for (std::size_t k = 0; k < support.size(); ++k)
    if (support[k] == element) return chi[k];
  throw DomainError("element outside the support of irrep " + label);
}

bool IrrepSpec::is_homomorphism(const FrameSymmetry& s, double tol) const {
  std::map<int, cvec> m;
  for (std::size_t k = 0; k < support.size(); ++k) m[support[k]] = chi[k];
  for (const auto& [a, ca] : m) {
    if (std::abs(std::abs(ca) - 1.0) > tol) return false;
    for (const auto& [b, cb] : m) {
      auto it = m.find(s.product(a, b));
      if (it == m.end() || std::abs(it->second - ca * cb) > tol) return false;
    }
  }
  return true;
}

std::vector<IrrepSpec> full_decomposition(const FrameSymmetry& s) {
  std::vector<IrrepSpec> out;
  const int R = s.rotation_generator();
  if (s.has_reflections()) {
    out.push_back(IrrepSpec::trivial(s));
    out.push_back(IrrepSpec::alternating(s));
    if (R >= 0)
      for (int j = 1; j < s.element_order(R); ++j) out.push_back(IrrepSpec::cyclic(s, j));
  } else if (R >= 0) {
    for (int j = 0; j < s.element_order(R); ++j) out.push_back(IrrepSpec::cyclic(s, j));
  } else {
    out.push_back(IrrepSpec::trivial(s));
  }
  return out;
}

Eigen::MatrixXd action_matrix(const FrameSymmetry& s, const SecularAssembly& a, int element) {
  const Frame& f = *a.frame;
  const GroupElement& g = s.elements().at(element);
  const double det = g.det() > 0 ? 1.0 : -1.0;
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(a.nbase, a.nbase);
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    const int t = g.edge_perm[e];
    const auto fe = a.bases[e].fields();
    const auto ft = a.bases[t].fields();
    if (fe != ft) throw DomainError("symmetry maps edges with different solution bases");
    Lateral L = lateral(f.edges[e], f.edges[t], g.T);
    std::vector<int> vcols, wcols;
    for (std::size_t c = 0; c < fe.size(); ++c) {
      if (fe[c] == Field::V) vcols.push_back(static_cast<int>(c));
      if (fe[c] == Field::W) wcols.push_back(static_cast<int>(c));
    }
    const int oe = a.offsets[e], ot = a.offsets[t];
    for (std::size_t c = 0; c < fe.size(); ++c) {
      if (fe[c] == Field::U) U(ot + c, oe + c) = 1.0;
      if (fe[c] == Field::Eta) U(ot + c, oe + c) = det;
    }
    for (std::size_t n = 0; n < vcols.size(); ++n) {
      const int v = vcols[n], w = wcols[n];
      U(ot + v, oe + v) += L.b11;
      U(ot + v, oe + w) += L.b10;
      U(ot + w, oe + w) += L.b00;
      U(ot + w, oe + v) += L.b01;
    }
  }
  return U;
}

std::vector<EdgeSamples> action_on_fields(const FrameSymmetry& s, int element,
                                          const std::vector<EdgeSamples>& fields) {
  const Frame& f = s.frame();
  const GroupElement& g = s.elements().at(element);
  const double det = g.det() > 0 ? 1.0 : -1.0;
  std::vector<EdgeSamples> out(fields.size());
  for (std::size_t e = 0; e < fields.size(); ++e) {
    const int t = g.edge_perm[e];
    Lateral L = lateral(f.edges[e], f.edges[t], g.T);
    EdgeSamples& o = out[t];
    o.resize(fields[e].size());
    for (std::size_t k = 0; k < fields[e].size(); ++k) {
      const Eigen::Vector4d& p = fields[e][k];  // v, w, u, eta
      o[k] << L.b10 * p[1] + L.b11 * p[0], L.b00 * p[1] + L.b01 * p[0], p[2], det * p[3];
    }
  }
  return out;
}

std::vector<Eigen::Matrix<double, 12, 1>> action_on_coefficients(
    const FrameSymmetry& s, int element, const std::vector<Eigen::Matrix<double, 12, 1>>& coeffs) {
  const Frame& f = s.frame();
  const GroupElement& g = s.elements().at(element);
  const double det = g.det() > 0 ? 1.0 : -1.0;
  std::vector<Eigen::Matrix<double, 12, 1>> out(coeffs.size());
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    const int t = g.edge_perm[e];
    Lateral L = lateral(f.edges[e], f.edges[t], g.T);
    const auto& c = coeffs[e];
    auto& o = out[t];
    o.segment<4>(0) = L.b10 * c.segment<4>(4) + L.b11 * c.segment<4>(0);
    o.segment<4>(4) = L.b00 * c.segment<4>(4) + L.b01 * c.segment<4>(0);
    o.segment<2>(8) = c.segment<2>(8);
    o.segment<2>(10) = det * c.segment<2>(10);
  }
  return out;
}

Eigen::MatrixXcd isotypic_projector(const FrameSymmetry& s, const SecularAssembly& a, const IrrepSpec& irrep) {
  if (!irrep.is_homomorphism(s)) throw DomainError("character not a homomorphism");
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(a.nbase, a.nbase);
  // g acts on coefficients through the inverse of the transport map
  for (std::size_t k = 0; k < irrep.support.size(); ++k)
    P += std::conj(irrep.chi[k]) * action_matrix(s, a, s.inverse(irrep.support[k])).cast<cvec>();
  return P / static_cast<double>(irrep.support.size());
}

namespace {

bool independent(const std::vector<Eigen::VectorXcd>& basis, const Eigen::VectorXcd& v, double tol) {
  if (basis.empty()) return v.norm() > 0;
  Eigen::MatrixXcd A(v.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) A.col(k) = basis[k];
  Eigen::VectorXcd x = A.colPivHouseholderQr().solve(v);
  return (v - A * x).norm() > tol * v.norm();
}

}  // namespace

SecularAssembly quotient_assembly(const FrameSymmetry& s, const IrrepSpec& irrep, const QuotientOptions& opt) {
  SecularAssembly a = assemble(s.frame());
  const Eigen::MatrixXcd P = isotypic_projector(s, a, irrep);

  std::vector<Eigen::VectorXcd> cols;
  for (const auto& orbit : s.edge_orbits()) {
    const int rep = orbit.front();
    const auto fields = a.bases[rep].fields();
    for (Field fld : {Field::V, Field::W, Field::U, Field::Eta})
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (fields[c] != fld) continue;
        const int idx = a.offsets[rep] + static_cast<int>(c);
        Eigen::VectorXcd v = P.col(idx);
        if (v.norm() < 1e-12 || std::abs(v(idx)) < 1e-12) continue;
        if (!independent(cols, v, 1e-10)) continue;
        cols.push_back(v / v(idx));
      }
  }
  if (cols.empty()) throw DomainError("irrep " + irrep.label + " has an empty isotypic component");
  Eigen::MatrixXcd Q(a.nbase, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) Q.col(k) = cols[k];

  const auto cand = scalar_rows(s.frame(), active_conditions(s.frame()), true);
  std::vector<Eigen::MatrixXcd> C;
  for (double l : opt.probes) {
    Eigen::MatrixXcd m = a.base_matrix(l, cand).cast<cvec>() * Q;
    C.push_back(m);
  }
  std::vector<int> sel;
  std::vector<std::vector<Eigen::VectorXcd>> chosen(C.size());
  for (int r = 0; r < static_cast<int>(cand.size()); ++r) {
    bool ok = true;
    for (std::size_t k = 0; k < C.size() && ok; ++k) {
      Eigen::VectorXcd v = C[k].row(r).transpose();
      if (v.norm() < 1e-10 * C[k].cwiseAbs().maxCoeff()) ok = false;
      else if (!independent(chosen[k], v, 1e-9)) ok = false;
    }
    if (!ok) continue;
    sel.push_back(r);
    for (std::size_t k = 0; k < C.size(); ++k) chosen[k].push_back(C[k].row(r).transpose());
  }
  if (sel.size() != cols.size()) {
    std::ostringstream os;
    os << "irrep " << irrep.label << ": constraints inconsistent with the joint kinds (" << sel.size()
       << " independent rows for " << cols.size() << " unknowns)";
    throw DomainError(os.str());
  }

  SecularAssembly q = a;
  q.rows.clear();
  for (int r : sel) q.rows.push_back(cand[r]);
  q.check_rows = cand;
  q.label = irrep.label;
  if (Q.imag().cwiseAbs().maxCoeff() < 1e-14) {
    q.Q = Eigen::MatrixXcd(Q.real().cast<cvec>());
    q.real = true;
  } else {
    q.Q = Q;
    q.real = false;
    if (opt.realify && !realify(q, opt.probes))
      log::info("quotient " + irrep.label + " stays complex; sigma_min detector only");
  }
  return q;
}

UnionCheckReport spectrum_union_check(const Frame& frame, const FrameSymmetry& s, const ScanOptions& opt,
                                      double tol) {
  UnionCheckReport rep;
  rep.full = solve(assemble(frame), opt);
  for (auto& e : rep.full) e.label = "full";
  rep.full_list = expand_multiplicity(rep.full);
  for (const auto& irr : full_decomposition(s)) {
    auto ev = solve(quotient_assembly(s, irr), opt);
    for (auto& e : ev) {
      e.label = irr.label;
      rep.blocks.push_back(e);
    }
  }
  std::sort(rep.blocks.begin(), rep.blocks.end(),
            [](const Eigenvalue& x, const Eigenvalue& y) { return x.lambda < y.lambda; });
  rep.union_list = expand_multiplicity(rep.blocks);

  rep.ok = rep.full_list.size() == rep.union_list.size();
  const std::size_t n = std::min(rep.full_list.size(), rep.union_list.size());
  for (std::size_t k = 0; k < n; ++k) {
    double err = std::abs(rep.full_list[k] - rep.union_list[k]) / rep.full_list[k];
    rep.max_rel_error = std::max(rep.max_rel_error, err);
  }
  if (rep.max_rel_error > tol) rep.ok = false;
  for (const auto& f : rep.full) {
    UnionCheckEntry en;
    en.lambda = f.lambda;
    en.multiplicity = f.nullity;
    int claimed = 0;
    for (const auto& b : rep.blocks)
      if (std::abs(b.lambda - f.lambda) <= tol * f.lambda) {
        en.labels.push_back(b.label);
        claimed += b.nullity;
      }
    en.matched = claimed == f.nullity;
    if (!en.matched) rep.ok = false;
    rep.entries.push_back(en);
  }
  return rep;
}

UnionCheckReport spectrum_union_check(const FrameSymmetry& s, const ScanOptions& opt, double tol) {
  return spectrum_union_check(s.frame(), s, opt, tol);
}

Eigen::MatrixXd fem_action_matrix(const FrameSymmetry& s, const FemSystem& sys, int element) {
  const Frame& f = *sys.frame;
  const GroupElement& g = s.elements().at(element);
  const double det = g.det() > 0 ? 1.0 : -1.0;
  const Mat3& J = sys.opt.joint_frame;
  const Mat3 Tj = J.transpose() * g.T * J;
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(sys.n_full, sys.n_full);
  for (std::size_t v = 0; v < f.vertices.size(); ++v) {
    const int t = g.vertex_perm[v];
    U.block<3, 3>(6 * t, 6 * v) = Tj;
    U.block<3, 3>(6 * t + 3, 6 * v + 3) = det * Tj;
  }
  for (int k = 0; k < sys.n_full; ++k) {
    const DofInfo& d = sys.full_dofs[k];
    if (d.kind == DofKind::JointDisp || d.kind == DofKind::JointRot) continue;
    const int e = d.owner, t = g.edge_perm[e];
    const Lateral L = lateral(f.edges[e], f.edges[t], g.T);
    auto at = [&](DofKind kind) { return sys.find(kind, t, d.component); };
    switch (d.kind) {
      case DofKind::U: U(at(DofKind::U), k) = 1.0; break;
      case DofKind::Eta: U(at(DofKind::Eta), k) = det; break;
      case DofKind::V:
        U(at(DofKind::V), k) = L.b11;
        U(at(DofKind::W), k) = L.b01;
        break;
      case DofKind::DV:
        U(at(DofKind::DV), k) = L.b11;
        U(at(DofKind::DW), k) = L.b01;
        break;
      case DofKind::W:
        U(at(DofKind::V), k) = L.b10;
        U(at(DofKind::W), k) = L.b00;
        break;
      case DofKind::DW:
        U(at(DofKind::DV), k) = L.b10;
        U(at(DofKind::DW), k) = L.b00;
        break;
      default: break;
    }
  }
  Eigen::MatrixXd out(sys.size(), sys.size());
  for (int a = 0; a < sys.size(); ++a)
    for (int b = 0; b < sys.size(); ++b) out(a, b) = U(sys.kept[a], sys.kept[b]);
  return out;
}

}  // namespace framespec
