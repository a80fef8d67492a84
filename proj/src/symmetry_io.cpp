#include "framespec/symmetry_io.hpp"

#include "framespec/frame_io.hpp"
#include "json_util.hpp"

namespace framespec {

using detail::Json;
using detail::OJson;

SymmetryDescription symmetry_from_json(const Frame& frame, const std::string& text) {
  Json doc = detail::parse_json(text);
  const std::string top = "symmetry";
  detail::require_object(doc, top);
  detail::check_keys(doc, top, {"generators", "center", "tol", "schema_version"});
  SymmetryDescription d;
  if (doc.contains("center")) d.options.center = detail::get_vec3(doc, "center", top);
  if (doc.contains("tol")) d.options.tol = detail::get_number<double>(doc, "tol", top);
  const Json& gens = detail::get_array(doc, "generators", top);
  for (std::size_t n = 0; n < gens.size(); ++n) {
    const std::string where = "generators[" + std::to_string(n) + "]";
    const Json& g = gens[n];
    detail::require_object(g, where);
    detail::check_keys(g, where, {"name", "matrix", "edge_perm"});
    GroupElement el;
    el.name = g.contains("name") ? detail::get_string(g, "name", where) : "g" + std::to_string(n);
    const Json& m = detail::get_array(g, "matrix", where);
    if (m.size() != 3) throw ParseError(where + ".matrix: expected 3 rows");
    for (int r = 0; r < 3; ++r) el.T.row(r) = detail::to_vec3(m[r], where + ".matrix").transpose();
    el.edge_perm.resize(frame.edges.size());
    for (std::size_t e = 0; e < frame.edges.size(); ++e) el.edge_perm[e] = static_cast<int>(e);
    const Json& p = detail::get(g, "edge_perm", where);
    if (!p.is_object()) throw ParseError(where + ".edge_perm: expected an object of edge ids");
    for (auto it = p.begin(); it != p.end(); ++it) {
      if (!it.value().is_string()) throw ParseError(where + ".edge_perm: expected edge id strings");
      int from = frame.edge_index(it.key());
      int to = frame.edge_index(it.value().get<std::string>());
      if (from < 0 || to < 0) throw ParseError(where + ".edge_perm: unknown edge id");
      el.edge_perm[from] = to;
    }
    d.generators.push_back(el);
  }
  return d;
}

std::string symmetry_to_json(const Frame& frame, const SymmetryDescription& d, int indent) {
  OJson doc;
  doc["schema_version"] = kSchemaVersion;
  OJson gens = OJson::array();
  for (const auto& g : d.generators) {
    OJson jg;
    jg["name"] = g.name;
    OJson m = OJson::array();
    for (int r = 0; r < 3; ++r) m.push_back({g.T(r, 0), g.T(r, 1), g.T(r, 2)});
    jg["matrix"] = m;
    OJson p = OJson::object();
    for (std::size_t e = 0; e < g.edge_perm.size(); ++e)
      p[frame.edges[e].id] = frame.edges[g.edge_perm[e]].id;
    jg["edge_perm"] = p;
    gens.push_back(jg);
  }
  doc["generators"] = gens;
  doc["center"] = {d.options.center.x(), d.options.center.y(), d.options.center.z()};
  return doc.dump(indent) + "\n";
}

SymmetryDescription load_symmetry(const Frame& frame, const std::string& path) {
  return symmetry_from_json(frame, detail::read_file(path));
}

}  // namespace framespec
