#include "cli.hpp"

#include "framespec/errors.hpp"
#include "framespec/fem.hpp"
#include "framespec/frame_io.hpp"
#include "framespec/log.hpp"
#include "framespec/planar.hpp"
#include "framespec/secular.hpp"
#include "framespec/symmetry.hpp"
#include "framespec/symmetry_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace framespec::cli {

namespace {

using json = nlohmann::ordered_json;

struct Config {
  std::string command;
  std::string frame_path;
  std::string symmetry_path;
  std::string irrep;
  std::string out;
  std::string format;
  double lmin = 1e-4;
  double lmax = 30.0;
  int steps = 0;
  double tol = 0.0;  // 0: default acceptance
  int threads = 0;
  int elements = 20;
  int rod_order = 2;
  int count = 8;
  int index = 0;
  int samples = 41;
  double at = 0.0;
  bool planar_split = false;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Writes to --out when given, else to the command stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator()() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

ScanOptions scan_options(const Config& c) {
  if (!(c.lmin > 0) || !(c.lmax > c.lmin)) throw DomainError("need 0 < lmin < lmax");
  if (c.steps != 0 && c.steps < 2) throw DomainError("steps must be >= 2");
  ScanOptions o;
  o.lmin = c.lmin;
  o.lmax = c.lmax;
  o.steps = c.steps;
  o.threads = c.threads;
  if (c.tol > 0) o.accept_tol = c.tol;
  return o;
}

Frame load_valid(const Config& c) {
  Frame f = load_frame(c.frame_path);
  auto rep = validate_frame(f);
  if (!rep.ok()) throw DomainError("invalid frame: " + rep.violations.front());
  return f;
}

std::string symmetry_path(const Config& c) {
  if (!c.symmetry_path.empty()) return c.symmetry_path;
  std::filesystem::path p(c.frame_path);
  auto guess = p.parent_path() / (p.stem().string() + ".symmetry.json");
  if (std::filesystem::exists(guess)) return guess.string();
  throw DomainError("--irrep needs --symmetry FILE (no " + guess.string() + ")");
}

FrameSymmetry load_group(const Frame& f, const Config& c) {
  auto d = load_symmetry(f, symmetry_path(c));
  return FrameSymmetry::generate(f, d.generators, d.options);
}

struct Block {
  std::string label;
  SecularAssembly a;
};

std::vector<Block> blocks(const Frame& f, const Config& c) {
  if (c.planar_split && !c.irrep.empty()) throw DomainError("--planar-split and --irrep are exclusive");
  auto fp = std::make_shared<const Frame>(f);
  std::vector<Block> out;
  if (c.planar_split) {
    auto split = detect_planar(f);
    if (!split) throw DomainError("frame is not planar");
    auto [h1, h2] = reduced_assemblies(fp, *split);
    out.push_back({"H1", std::move(h1)});
    out.push_back({"H2", std::move(h2)});
  } else if (!c.irrep.empty()) {
    FrameSymmetry s = load_group(f, c);
    std::vector<IrrepSpec> irreps =
        c.irrep == "all" ? full_decomposition(s) : std::vector<IrrepSpec>{IrrepSpec::by_name(s, c.irrep)};
    for (const auto& r : irreps) out.push_back({r.label, quotient_assembly(s, r)});
  } else {
    out.push_back({"full", assemble(fp)});
  }
  return out;
}

std::vector<Eigenvalue> eigen_table(const std::vector<Block>& bs, const ScanOptions& o) {
  std::vector<Eigenvalue> all;
  for (const auto& b : bs)
    for (auto e : solve(b.a, o)) {
      e.label = b.label;
      all.push_back(e);
    }
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.lambda < y.lambda; });
  return all;
}

bool labelled(const Config& c) { return c.planar_split || !c.irrep.empty(); }

json sampled_edges(const ModeShape& m, int samples) {
  json edges = json::array();
  const Frame& f = *m.frame;
  for (std::size_t e = 0; e < f.edges.size(); ++e) {
    json x = json::array(), v = json::array(), w = json::array(), u = json::array(), eta = json::array();
    for (int k = 0; k < samples; ++k) {
      const double s = f.edges[e].length * k / (samples - 1);
      FieldPoint p = evaluate_mode(m, static_cast<int>(e), s);
      x.push_back(s);
      v.push_back(p.v());
      w.push_back(p.w());
      u.push_back(p.u());
      eta.push_back(p.eta());
    }
    edges.push_back({{"id", f.edges[e].id}, {"x", x}, {"v", v}, {"w", w}, {"u", u}, {"eta", eta}});
  }
  return edges;
}

// ---- commands

int cmd_validate(const Config& c, std::ostream& os) {
  Frame f = load_frame(c.frame_path);
  auto rep = validate_frame(f);
  if (c.format == "json") {
    json deg = json::object();
    for (std::size_t v = 0; v < f.vertices.size(); ++v) deg[f.vertices[v].id] = rep.degree[v];
    json j{{"schema_version", kSchemaVersion}, {"valid", rep.ok()},       {"violations", rep.violations},
           {"warnings", rep.warnings},        {"degree", deg},            {"components", rep.components}};
    os << j.dump(2) << "\n";
  } else {
    os << (rep.ok() ? "valid" : "INVALID") << ": " << f.vertices.size() << " vertices, " << f.edges.size()
       << " edges, " << rep.components << " component(s)\n";
    for (const auto& v : rep.violations) os << "violation: " << v << "\n";
    for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_scan(const Config& c, std::ostream& os) {
  Frame f = load_valid(c);
  auto bs = blocks(f, c);
  ScanOptions o = scan_options(c);
  const bool tag = bs.size() > 1 || labelled(c);
  if (c.format == "json") {
    json jb = json::array();
    for (const auto& b : bs) {
      json lam = json::array(), det = json::array(), smin = json::array();
      for (const auto& p : scan(b.a, o).samples) {
        lam.push_back(p.lambda);
        det.push_back(std::isnan(p.det_scaled) ? json(nullptr) : json(p.det_scaled));
        smin.push_back(p.sigma_min);
      }
      jb.push_back({{"block", b.label}, {"lambda", lam}, {"det_scaled", det}, {"sigma_min", smin}});
    }
    os << json{{"schema_version", kSchemaVersion}, {"blocks", jb}}.dump(1) << "\n";
    return 0;
  }
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "lambda,det_scaled,sigma_min" << (tag ? ",block" : "") << "\n";
  for (const auto& b : bs)
    for (const auto& p : scan(b.a, o).samples) {
      os << num(p.lambda) << "," << num(p.det_scaled) << "," << num(p.sigma_min);
      if (tag) os << "," << b.label;
      os << "\n";
    }
  return 0;
}

int cmd_eig(const Config& c, std::ostream& os) {
  Frame f = load_valid(c);
  auto table = eigen_table(blocks(f, c), scan_options(c));
  const bool tag = labelled(c);
  if (c.format == "json") {
    json rows = json::array();
    for (std::size_t k = 0; k < table.size(); ++k) {
      json r{{"index", k}, {"lambda", table[k].lambda}, {"nullity", table[k].nullity},
             {"detector", detector_name(table[k].detector)}};
      if (tag) r["irrep"] = table[k].label;
      rows.push_back(r);
    }
    os << json{{"schema_version", kSchemaVersion}, {"eigenvalues", rows}}.dump(2) << "\n";
    return 0;
  }
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "index,lambda,nullity,detector" << (tag ? ",irrep" : "") << "\n";
  for (std::size_t k = 0; k < table.size(); ++k) {
    os << k << "," << num(table[k].lambda) << "," << table[k].nullity << "," << detector_name(table[k].detector);
    if (tag) os << "," << table[k].label;
    os << "\n";
  }
  return 0;
}

int cmd_mode(const Config& c, std::ostream& os) {
  if (c.samples < 2) throw DomainError("samples must be >= 2");
  Frame f = load_valid(c);
  auto bs = blocks(f, c);
  auto table = eigen_table(bs, scan_options(c));
  if (c.index < 0 || c.index >= static_cast<int>(table.size()))
    throw DomainError("mode index " + std::to_string(c.index) + " out of range (" +
                      std::to_string(table.size()) + " eigenvalues found)");
  const Eigenvalue& ev = table[c.index];
  const auto it = std::find_if(bs.begin(), bs.end(), [&](const Block& b) { return b.label == ev.label; });
  const SecularAssembly& a = it != bs.end() ? it->a : bs.front().a;
  auto modes = mode_shapes(a, ev.lambda);
  if (modes.empty()) throw NumericalError("no kernel vector at lambda = " + num(ev.lambda));
  if (c.format == "csv") {
    os << "# schema_version=" << kSchemaVersion << "\n";
    os << "# lambda=" << num(ev.lambda) << " nullity=" << ev.nullity << " block=" << ev.label << "\n";
    os << "mode,edge_id,x,v,w,u,eta\n";
    for (std::size_t m = 0; m < modes.size(); ++m)
      for (const auto& e : sampled_edges(modes[m], c.samples))
        for (std::size_t k = 0; k < e["x"].size(); ++k)
          os << m << "," << e["id"].get<std::string>() << "," << num(e["x"][k]) << "," << num(e["v"][k]) << ","
             << num(e["w"][k]) << "," << num(e["u"][k]) << "," << num(e["eta"][k]) << "\n";
    return 0;
  }
  json jm = json::array();
  for (const auto& m : modes)
    jm.push_back({{"residual", mode_condition_residual(m)}, {"edges", sampled_edges(m, c.samples)}});
  json j{{"schema_version", kSchemaVersion}, {"index", c.index},   {"lambda", ev.lambda},
         {"nullity", ev.nullity},            {"block", ev.label}, {"modes", jm}};
  os << j.dump(1) << "\n";
  return 0;
}

int cmd_fem(const Config& c, std::ostream& os) {
  Frame f = load_valid(c);
  FemOptions fo;
  fo.elements = c.elements;
  fo.rod_order = c.rod_order;
  if (c.planar_split) {
    auto split = detect_planar(f);
    if (!split) throw DomainError("frame is not planar");
    fo.joint_frame.col(0) = split->e1;
    fo.joint_frame.col(1) = split->e2;
    fo.joint_frame.col(2) = split->normal;
  }
  if (c.count < 1) throw DomainError("count must be >= 1");
  auto sys = assemble_fem(f, fo);
  auto eig = solve_fem(sys, c.count, true);
  const int in_range = count_in_interval(sys, c.lmin, c.lmax);
  if (c.format == "csv") {
    os << "# schema_version=" << kSchemaVersion << "\n";
    os << "# elements=" << c.elements << " dofs=" << sys.size() << " count(" << num(c.lmin) << ","
       << num(c.lmax) << "]=" << in_range << "\n";
    os << "index,lambda\n";
    for (int k = 0; k < eig.values.size(); ++k) os << k << "," << num(eig.values(k)) << "\n";
    return 0;
  }
  json modes = json::array();
  for (int k = 0; k < eig.values.size(); ++k) {
    json edges = json::array();
    for (std::size_t e = 0; e < f.edges.size(); ++e) {
      json x = json::array(), v = json::array(), w = json::array(), u = json::array(), eta = json::array();
      for (const auto& s : fem_samples(sys, eig.vectors.col(k), static_cast<int>(e))) {
        x.push_back(s.x);
        v.push_back(s.f(0));
        w.push_back(s.f(1));
        u.push_back(s.f(2));
        eta.push_back(s.f(3));
      }
      edges.push_back({{"id", f.edges[e].id}, {"x", x}, {"v", v}, {"w", w}, {"u", u}, {"eta", eta}});
    }
    modes.push_back({{"lambda", eig.values(k)}, {"edges", edges}});
  }
  json j{{"schema_version", kSchemaVersion},
         {"elements", c.elements},
         {"rod_order", c.rod_order},
         {"dofs", sys.size()},
         {"eigenvalues", std::vector<double>(eig.values.data(), eig.values.data() + eig.values.size())},
         {"count_in_interval", {{"lo", c.lmin}, {"hi", c.lmax}, {"count", in_range}}},
         {"modes", modes}};
  os << j.dump(1) << "\n";
  return 0;
}

int cmd_reduce(const Config& cin, std::ostream& os) {
  Config c = cin;
  Frame f = load_valid(c);
  if (!c.planar_split && c.irrep.empty()) {
    if (detect_planar(f)) c.planar_split = true;
    else c.irrep = "all";
  }
  auto bs = blocks(f, c);
  ScanOptions o = scan_options(c);
  auto full = solve(assemble(f), o);
  json jb = json::array();
  std::vector<Eigenvalue> all;
  for (const auto& b : bs) {
    json ev = json::array();
    for (auto e : solve(b.a, o)) {
      ev.push_back({{"lambda", e.lambda}, {"nullity", e.nullity}, {"detector", detector_name(e.detector)}});
      e.label = b.label;
      all.push_back(e);
    }
    json jbk{{"label", b.label}, {"rows", b.a.n_rows()}, {"cols", b.a.n_cols()}, {"real", b.a.real},
             {"eigenvalues", ev}};
    if (c.at > 0) {
      json m = json::array();
      if (b.a.real) {
        Eigen::MatrixXd M = b.a.evaluate(c.at);
        for (int r = 0; r < M.rows(); ++r) {
          json row = json::array();
          for (int k = 0; k < M.cols(); ++k) row.push_back(M(r, k));
          m.push_back(row);
        }
      } else {
        Eigen::MatrixXcd M = b.a.evaluate_complex(c.at);
        for (int r = 0; r < M.rows(); ++r) {
          json row = json::array();
          for (int k = 0; k < M.cols(); ++k) row.push_back({M(r, k).real(), M(r, k).imag()});
          m.push_back(row);
        }
      }
      jbk["matrix_at"] = c.at;
      jbk["matrix"] = m;
    }
    jb.push_back(jbk);
  }
  auto full_list = expand_multiplicity(full), union_list = expand_multiplicity(all);
  double worst = 0;
  bool match = full_list.size() == union_list.size();
  for (std::size_t k = 0; match && k < full_list.size(); ++k)
    worst = std::max(worst, std::abs(full_list[k] - union_list[k]) / full_list[k]);
  match = match && worst <= 1e-6;
  if (c.format == "csv") {
    os << "# schema_version=" << kSchemaVersion << "\n";
    os << "# union_matches_full=" << (match ? "true" : "false") << " max_rel_error=" << num(worst) << "\n";
    os << "block,rows,cols,lambda,nullity,detector\n";
    std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.lambda < y.lambda; });
    for (const auto& e : all) {
      auto it = std::find_if(bs.begin(), bs.end(), [&](const Block& b) { return b.label == e.label; });
      os << e.label << "," << it->a.n_rows() << "," << it->a.n_cols() << "," << num(e.lambda) << "," << e.nullity
         << "," << detector_name(e.detector) << "\n";
    }
    return match ? 0 : 1;
  }
  json j{{"schema_version", kSchemaVersion},
         {"blocks", jb},
         {"full", full_list},
         {"union", union_list},
         {"union_matches_full", match},
         {"max_rel_error", worst}};
  os << j.dump(2) << "\n";
  return match ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  log::init_from_env();
  Config c;
  CLI::App app{"Spectral analysis of rigid-jointed beam frames"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto frame_arg = [&](CLI::App* s) { s->add_option("frame", c.frame_path, "frame JSON file")->required(); };
  auto out_opt = [&](CLI::App* s, const std::string& def) {
    s->add_option("--out", c.out, "output file (default stdout)");
    s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}))
        ->default_str(def);
  };
  auto scan_opts = [&](CLI::App* s) {
    s->add_option("--lmin", c.lmin, "lower end of the lambda interval")->capture_default_str();
    s->add_option("--lmax", c.lmax, "upper end of the lambda interval")->capture_default_str();
    s->add_option("--steps", c.steps, "grid points (0: 2000 per decade)")->capture_default_str();
    s->add_option("--tol", c.tol, "sigma ratio accepting an eigenvalue (default 1e-8)");
    s->add_option("--threads", c.threads, "worker threads (0: all cores)")->capture_default_str();
    s->add_option("--irrep", c.irrep, "trivial, alternating, omega, omega_bar, cyclic:J or all");
    s->add_option("--symmetry", c.symmetry_path, "symmetry JSON (default FRAME.symmetry.json)");
    s->add_flag("--planar-split", c.planar_split, "solve the out-of-plane and in-plane blocks");
  };

  std::map<std::string, std::string> default_format{
      {"validate", "text"}, {"scan", "csv"}, {"eig", "csv"}, {"mode", "json"}, {"fem", "json"}, {"reduce", "json"}};

  auto* v = app.add_subcommand("validate", "check frame invariants");
  frame_arg(v);
  out_opt(v, "text");
  auto* s = app.add_subcommand("scan", "sample det and sigma_min over a lambda grid");
  frame_arg(s);
  scan_opts(s);
  out_opt(s, "csv");
  auto* e = app.add_subcommand("eig", "eigenvalues from the secular equation");
  frame_arg(e);
  scan_opts(e);
  out_opt(e, "csv");
  auto* m = app.add_subcommand("mode", "sampled mode shape of one eigenvalue");
  frame_arg(m);
  scan_opts(m);
  m->add_option("--index", c.index, "row of the eig table")->capture_default_str();
  m->add_option("--samples", c.samples, "samples per edge")->capture_default_str();
  out_opt(m, "json");
  auto* fm = app.add_subcommand("fem", "finite-element reference spectrum");
  frame_arg(fm);
  fm->add_option("--elements", c.elements, "elements per edge")->capture_default_str();
  fm->add_option("--rod-order", c.rod_order, "Lagrange order for u and eta (1..3)")->capture_default_str();
  fm->add_option("--count", c.count, "number of eigenvalues")->capture_default_str();
  fm->add_option("--lmin", c.lmin, "interval for eigenvalue counting")->capture_default_str();
  fm->add_option("--lmax", c.lmax, "interval for eigenvalue counting")->capture_default_str();
  fm->add_flag("--planar-split", c.planar_split, "joint DOFs in the plane frame");
  out_opt(fm, "json");
  auto* r = app.add_subcommand("reduce", "reduced blocks and union check against the full frame");
  frame_arg(r);
  scan_opts(r);
  r->add_option("--at", c.at, "also emit the block matrices at this lambda");
  out_opt(r, "json");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  auto* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  if (c.format.empty()) c.format = default_format[c.command];

  try {
    Sink sink(c.out, out);
    if (c.command == "validate") return cmd_validate(c, sink());
    if (c.command == "scan") return cmd_scan(c, sink());
    if (c.command == "eig") return cmd_eig(c, sink());
    if (c.command == "mode") return cmd_mode(c, sink());
    if (c.command == "fem") return cmd_fem(c, sink());
    if (c.command == "reduce") return cmd_reduce(c, sink());
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return ex.exit_code();
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 3;
  }
  return 1;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace framespec::cli
