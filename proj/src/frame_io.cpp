#include "framespec/frame_io.hpp"

#include "framespec/errors.hpp"
#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace framespec {

using detail::Json;
using detail::OJson;

JointKind joint_from_name(const std::string& kind, double alpha, double beta) {
  if (kind == "free") return JointKind::free_rigid();
  if (kind == "clamped") return JointKind::clamped();
  if (kind == "pinned") return JointKind::pinned();
  if (kind == "guided") return JointKind::guided();
  if (kind == "spring") return JointKind::spring(alpha, beta);
  throw ParseError("unknown joint kind '" + kind + "'");
}

Frame frame_from_json(const std::string& text) {
  Json doc = detail::parse_json(text);
  const std::string top = "frame";
  detail::require_object(doc, top);
  detail::check_keys(doc, top, {"vertices", "edges", "schema_version"});
  if (doc.contains("schema_version")) {
    int ver = detail::get_number<int>(doc, "schema_version", top);
    if (ver != kSchemaVersion)
      throw ParseError("unsupported schema_version " + std::to_string(ver));
  }

  std::vector<Vertex> verts;
  const Json& jv = detail::get_array(doc, "vertices", top);
  for (std::size_t n = 0; n < jv.size(); ++n) {
    const std::string where = "vertices[" + std::to_string(n) + "]";
    const Json& v = jv[n];
    detail::require_object(v, where);
    detail::check_keys(v, where, {"id", "pos", "joint"});
    Vertex vx;
    vx.id = detail::get_string(v, "id", where);
    vx.pos = detail::get_vec3(v, "pos", where);
    if (v.contains("joint")) {
      const Json& j = v.at("joint");
      const std::string jw = where + ".joint";
      detail::require_object(j, jw);
      detail::check_keys(j, jw, {"kind", "alpha", "beta"});
      std::string kind = detail::get_string(j, "kind", jw);
      bool has_angles = j.contains("alpha") || j.contains("beta");
      if (kind != "spring" && has_angles)
        throw ParseError(jw + ": alpha/beta only allowed for kind 'spring'");
      double a = j.contains("alpha") ? detail::get_number<double>(j, "alpha", jw) : 0.0;
      double b = j.contains("beta") ? detail::get_number<double>(j, "beta", jw) : 0.0;
      vx.joint = joint_from_name(kind, a, b);
    }
    verts.push_back(vx);
  }

  std::vector<EdgeSpec> specs;
  const Json& je = detail::get_array(doc, "edges", top);
  for (std::size_t n = 0; n < je.size(); ++n) {
    const std::string where = "edges[" + std::to_string(n) + "]";
    const Json& e = je[n];
    detail::require_object(e, where);
    detail::check_keys(e, where, {"id", "from", "to", "j_hint", "materials"});
    EdgeSpec s;
    s.id = detail::get_string(e, "id", where);
    s.from = detail::get_string(e, "from", where);
    s.to = detail::get_string(e, "to", where);
    if (e.contains("j_hint")) s.j_hint = detail::get_vec3(e, "j_hint", where);
    if (e.contains("materials")) {
      const Json& m = e.at("materials");
      const std::string mw = where + ".materials";
      detail::require_object(m, mw);
      detail::check_keys(m, mw, {"a", "b", "c", "d"});
      s.mat.a = detail::get_number<double>(m, "a", mw);
      s.mat.b = detail::get_number<double>(m, "b", mw);
      s.mat.c = detail::get_number<double>(m, "c", mw);
      s.mat.d = detail::get_number<double>(m, "d", mw);
    }
    specs.push_back(s);
  }
  return make_frame(std::move(verts), specs);
}

std::string frame_to_json(const Frame& frame, int indent) {
  OJson doc;
  doc["schema_version"] = kSchemaVersion;
  OJson verts = OJson::array();
  for (const auto& v : frame.vertices) {
    OJson jv;
    jv["id"] = v.id;
    jv["pos"] = {v.pos.x(), v.pos.y(), v.pos.z()};
    OJson jk;
    jk["kind"] = v.joint.name();
    if (v.joint.type == JointType::Spring) {
      jk["alpha"] = v.joint.alpha;
      jk["beta"] = v.joint.beta;
    }
    jv["joint"] = jk;
    verts.push_back(jv);
  }
  doc["vertices"] = verts;
  OJson edges = OJson::array();
  for (const auto& e : frame.edges) {
    OJson je;
    je["id"] = e.id;
    je["from"] = frame.vertices[e.origin].id;
    je["to"] = frame.vertices[e.terminus].id;
    if (e.j_hint) je["j_hint"] = {e.j_hint->x(), e.j_hint->y(), e.j_hint->z()};
    je["materials"] = {{"a", e.mat.a}, {"b", e.mat.b}, {"c", e.mat.c}, {"d", e.mat.d}};
    edges.push_back(je);
  }
  doc["edges"] = edges;
  return doc.dump(indent) + "\n";
}

Frame load_frame(const std::string& path) {
  return frame_from_json(detail::read_file(path));
}

void save_frame(const Frame& frame, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << frame_to_json(frame);
}

}  // namespace framespec
