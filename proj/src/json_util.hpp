#pragma once
// Small helpers shared by the JSON readers. Internal header.

#include "framespec/errors.hpp"
#include "framespec/geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

namespace framespec::detail {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1 + std::count(text.begin(), text.begin() + pos, '\n');
    std::size_t nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    std::size_t col = (nl == std::string::npos || pos == 0) ? pos + 1 : pos - nl;
    throw ParseError("JSON parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
}

inline void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
}

inline void check_keys(const Json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = std::any_of(allowed.begin(), allowed.end(),
                          [&](const char* k) { return it.key() == k; });
    if (!ok) throw ParseError(where + ": unknown key '" + it.key() + "'");
  }
}

inline const Json& get(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  return j.at(key);
}

inline std::string get_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = get(j, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

template <class T>
T get_number(const Json& j, const char* key, const std::string& where) {
  const Json& v = get(j, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  }
  return v.get<T>();
}

inline const Json& get_array(const Json& j, const char* key, const std::string& where) {
  const Json& v = get(j, key, where);
  if (!v.is_array()) throw ParseError(where + "." + key + ": expected an array");
  return v;
}

inline Vec3 to_vec3(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) throw ParseError(where + ": expected [x, y, z]");
  Vec3 out;
  for (int k = 0; k < 3; ++k) {
    if (!v[k].is_number()) throw ParseError(where + ": expected numbers");
    out[k] = v[k].get<double>();
  }
  return out;
}

inline Vec3 get_vec3(const Json& j, const char* key, const std::string& where) {
  return to_vec3(get(j, key, where), where + "." + key);
}

}  // namespace framespec::detail
