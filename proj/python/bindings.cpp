#include "framespec/errors.hpp"
#include "framespec/fem.hpp"
#include "framespec/frame_io.hpp"
#include "framespec/geometry.hpp"
#include "framespec/planar.hpp"
#include "framespec/reference_frames.hpp"
#include "framespec/secular.hpp"
#include "framespec/symmetry.hpp"
#include "framespec/symmetry_io.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace framespec;

namespace {

ScanOptions scan_opts(double lmin, double lmax, int steps, int threads) {
  ScanOptions o;
  o.lmin = lmin;
  o.lmax = lmax;
  o.steps = steps;
  o.threads = threads;
  return o;
}

py::list table(const std::vector<Eigenvalue>& ev) {
  py::list out;
  for (const auto& e : ev)
    out.append(py::dict(py::arg("lambda") = e.lambda, py::arg("nullity") = e.nullity,
                        py::arg("detector") = detector_name(e.detector), py::arg("label") = e.label));
  return out;
}

}  // namespace

PYBIND11_MODULE(_framespec, m) {
  m.doc() = "Spectra of rigid-jointed beam frames";
  m.attr("schema_version") = kSchemaVersion;

  // later registrations are tried first, so the base class goes first
  auto base = py::register_exception<Error>(m, "FrameError");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<Frame>(m, "Frame")
      .def_property_readonly("vertex_ids",
                             [](const Frame& f) {
                               std::vector<std::string> ids;
                               for (const auto& v : f.vertices) ids.push_back(v.id);
                               return ids;
                             })
      .def_property_readonly("edge_ids",
                             [](const Frame& f) {
                               std::vector<std::string> ids;
                               for (const auto& e : f.edges) ids.push_back(e.id);
                               return ids;
                             })
      .def("edge_basis",
           [](const Frame& f, int e) { return f.edges.at(e).basis_matrix(); })
      .def("edge_length", [](const Frame& f, int e) { return f.edges.at(e).length; })
      .def("degree", &Frame::degree)
      .def("to_json", [](const Frame& f) { return frame_to_json(f); });

  m.def("load_frame", &load_frame, py::arg("path"));
  m.def("frame_from_json", &frame_from_json, py::arg("text"));
  m.def("planar_star", [] { return planar_star(); });
  m.def("antenna_tower", [](double alpha) { return antenna_tower(alpha); }, py::arg("alpha") = 0.5235987755982988);
  m.def("flip_edge", py::overload_cast<const Frame&, int>(&flip_edge));
  m.def("split_edge", &split_edge, py::arg("frame"), py::arg("edge"), py::arg("t") = 0.5);

  m.def("validate", [](const Frame& f) {
    auto r = validate_frame(f);
    return py::dict(py::arg("valid") = r.ok(), py::arg("violations") = r.violations,
                    py::arg("warnings") = r.warnings, py::arg("degree") = r.degree,
                    py::arg("components") = r.components);
  });

  m.def(
      "secular_matrix", [](const Frame& f, double lambda) { return assemble(f, lambda); }, py::arg("frame"),
      py::arg("lam"));

  m.def(
      "eigenvalues",
      [](const Frame& f, double lmin, double lmax, int steps, int threads) {
        std::vector<Eigenvalue> ev;
        {
          py::gil_scoped_release nogil;
          ev = solve(assemble(f), scan_opts(lmin, lmax, steps, threads));
        }
        return table(ev);
      },
      py::arg("frame"), py::arg("lmin") = 1e-4, py::arg("lmax") = 30.0, py::arg("steps") = 0,
      py::arg("threads") = 0);

  m.def(
      "planar_eigenvalues",
      [](const Frame& f, double lmin, double lmax) {
        auto split = detect_planar(f);
        if (!split) throw DomainError("frame is not planar");
        auto [h1, h2] = reduced_assemblies(f, *split);
        auto o = scan_opts(lmin, lmax, 0, 0);
        auto a = solve(h1, o), b = solve(h2, o);
        for (auto& e : a) e.label = "H1";
        for (auto& e : b) e.label = "H2";
        a.insert(a.end(), b.begin(), b.end());
        return table(a);
      },
      py::arg("frame"), py::arg("lmin") = 1e-4, py::arg("lmax") = 30.0);

  m.def(
      "irrep_eigenvalues",
      [](const Frame& f, const std::string& symmetry_path, const std::string& irrep, double lmin, double lmax) {
        auto d = load_symmetry(f, symmetry_path);
        auto s = FrameSymmetry::generate(f, d.generators, d.options);
        std::vector<IrrepSpec> irreps =
            irrep == "all" ? full_decomposition(s) : std::vector<IrrepSpec>{IrrepSpec::by_name(s, irrep)};
        std::vector<Eigenvalue> all;
        for (const auto& r : irreps)
          for (auto e : solve(quotient_assembly(s, r), scan_opts(lmin, lmax, 0, 0))) {
            e.label = r.label;
            all.push_back(e);
          }
        return table(all);
      },
      py::arg("frame"), py::arg("symmetry"), py::arg("irrep") = "all", py::arg("lmin") = 1e-4,
      py::arg("lmax") = 30.0);

  m.def(
      "fem_eigenvalues",
      [](const Frame& f, int elements, int count, int rod_order) {
        FemOptions o;
        o.elements = elements;
        o.rod_order = rod_order;
        Eigen::VectorXd v = solve_fem(assemble_fem(f, o), count).values;
        return v;
      },
      py::arg("frame"), py::arg("elements") = 20, py::arg("count") = 8, py::arg("rod_order") = 2,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "fem_matrices",
      [](const Frame& f, int elements) {
        FemOptions o;
        o.elements = elements;
        auto s = assemble_fem(f, o);
        return py::make_tuple(s.K, s.G);
      },
      py::arg("frame"), py::arg("elements") = 20);
}
