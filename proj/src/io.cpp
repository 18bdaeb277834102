#include "qspectral/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qspectral::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& field, const std::string& what) {
  throw FormatError(where + ": " + field + ": " + what);
}

void require_object(const json& doc, const std::string& where, const std::string& field) {
  if (!doc.is_object()) fail(where, field, "expected an object");
}

void require_keys(const json& doc, const std::string& where, const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  for (const auto& k : required)
    if (!doc.contains(k)) fail(where, k, "missing field");
  for (const auto& [key, value] : doc.items())
    if (!required.count(key) && !optional.count(key)) fail(where, key, "unexpected field");
}

void require_format(const json& doc, const std::string& where, const std::string& format) {
  const json& f = doc.at("format");
  if (!f.is_string() || f.get<std::string>() != format)
    fail(where, "format", "expected \"" + format + "\", got " + f.dump());
}

double number(const json& v, const std::string& where, const std::string& field) {
  if (!v.is_number()) fail(where, field, "expected a number, got " + v.dump());
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, field, "non-finite number");
  return x;
}

json finite_number(double x, const std::string& field) {
  if (!std::isfinite(x)) throw FormatError("cannot serialize non-finite value in " + field);
  return x;
}

std::size_t count(const json& v, const std::string& where, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(where, field, "expected a nonnegative integer, got " + v.dump());
  return static_cast<std::size_t>(v.get<long long>());
}

json map_to_json(const std::map<std::string, double>& m, const std::string& field) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = finite_number(v, field + "." + k);
  return out;
}

std::map<std::string, double> map_from_json(const json& v, const std::string& where, const std::string& field) {
  require_object(v, where, field);
  std::map<std::string, double> out;
  for (const auto& [k, x] : v.items()) out[k] = number(x, where, field + "." + k);
  return out;
}

}  // namespace

json qmat_to_json(const HMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.size(); ++j) {
      const Quaternion& q = a(i, j);
      row.push_back(json::array({finite_number(q.a, "entries"), finite_number(q.b, "entries"),
                                 finite_number(q.c, "entries"), finite_number(q.d, "entries")}));
    }
    rows.push_back(std::move(row));
  }
  json doc = json::object();
  doc["format"] = "qmat-1";
  doc["n"] = a.size();
  doc["entries"] = std::move(rows);
  return doc;
}

HMatrix qmat_from_json(const json& doc, const std::string& where) {
  require_object(doc, where, "(document)");
  require_keys(doc, where, {"format", "n", "entries"}, {});
  require_format(doc, where, "qmat-1");
  const std::size_t n = count(doc.at("n"), where, "n");
  const json& rows = doc.at("entries");
  if (!rows.is_array() || rows.size() != n)
    fail(where, "entries", "expected an array of " + std::to_string(n) + " rows");
  HMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_field = "entries[" + std::to_string(i) + "]";
    const json& row = rows[i];
    if (!row.is_array() || row.size() != n) fail(where, row_field, "expected an array of " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      const std::string field = row_field + "[" + std::to_string(j) + "]";
      const json& q = row[j];
      if (!q.is_array() || q.size() != 4) fail(where, field, "expected [a, b, c, d]");
      a(i, j) = {number(q[0], where, field + "[0]"), number(q[1], where, field + "[1]"),
                 number(q[2], where, field + "[2]"), number(q[3], where, field + "[3]")};
    }
  }
  return a;
}

json qspec_to_json(const Spectrum& s, const Tolerances& tolerances) {
  json spheres = json::array();
  for (const auto& e : s.spheres)
    spheres.push_back({{"u", finite_number(e.sphere.u, "u")}, {"v", finite_number(e.sphere.v, "v")}, {"mult", e.mult}});
  json doc = json::object();
  doc["format"] = "qspec-1";
  doc["spheres"] = std::move(spheres);
  Tolerances tol = tolerances;
  tol.emplace("sphere", s.tol_sphere);
  doc["tolerances"] = map_to_json(tol, "tolerances");
  return doc;
}

Spectrum qspec_from_json(const json& doc, const std::string& where) {
  require_object(doc, where, "(document)");
  require_keys(doc, where, {"format", "spheres"}, {"tolerances"});
  require_format(doc, where, "qspec-1");
  const json& spheres = doc.at("spheres");
  if (!spheres.is_array()) fail(where, "spheres", "expected an array");
  Spectrum s;
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    const std::string field = "spheres[" + std::to_string(i) + "]";
    const json& e = spheres[i];
    require_object(e, where, field);
    for (const auto& [key, value] : e.items())
      if (key != "u" && key != "v" && key != "mult") fail(where, field + "." + key, "unexpected field");
    for (const char* key : {"u", "v", "mult"})
      if (!e.contains(key)) fail(where, field + "." + key, "missing field");
    SphereEntry entry;
    entry.sphere.u = number(e.at("u"), where, field + ".u");
    entry.sphere.v = number(e.at("v"), where, field + ".v");
    if (entry.sphere.v < 0.0) fail(where, field + ".v", "must be nonnegative");
    const std::size_t mult = count(e.at("mult"), where, field + ".mult");
    if (mult == 0) fail(where, field + ".mult", "must be positive");
    entry.mult = static_cast<int>(mult);
    s.spheres.push_back(entry);
  }
  if (doc.contains("tolerances")) {
    const auto tol = map_from_json(doc.at("tolerances"), where, "tolerances");
    if (auto it = tol.find("sphere"); it != tol.end()) s.tol_sphere = it->second;
  }
  return s;
}

json qdrz_to_json(const DrazinDocument& d) {
  json doc = json::object();
  doc["format"] = "qdrz-1";
  doc["index"] = d.result.index;
  doc["inverse"] = qmat_to_json(d.result.inverse);
  doc["projection"] = qmat_to_json(d.result.projection);
  doc["residuals"] = map_to_json(d.residuals, "residuals");
  doc["route"] = d.result.route;
  if (d.result.deferred) doc["deferred"] = true;
  doc["tolerances"] = map_to_json(d.tolerances, "tolerances");
  return doc;
}

DrazinDocument qdrz_from_json(const json& doc, const std::string& where) {
  require_object(doc, where, "(document)");
  require_keys(doc, where, {"format", "index", "inverse", "projection", "residuals"}, {"route", "deferred", "tolerances"});
  require_format(doc, where, "qdrz-1");
  DrazinDocument d;
  d.result.index = static_cast<unsigned>(count(doc.at("index"), where, "index"));
  d.result.inverse = qmat_from_json(doc.at("inverse"), where + ": inverse");
  d.result.projection = qmat_from_json(doc.at("projection"), where + ": projection");
  if (d.result.inverse.size() != d.result.projection.size())
    fail(where, "projection", "size differs from inverse");
  d.residuals = map_from_json(doc.at("residuals"), where, "residuals");
  if (doc.contains("route")) {
    if (!doc.at("route").is_string()) fail(where, "route", "expected a string");
    d.result.route = doc.at("route").get<std::string>();
  }
  if (doc.contains("deferred")) {
    if (!doc.at("deferred").is_boolean()) fail(where, "deferred", "expected a boolean");
    d.result.deferred = doc.at("deferred").get<bool>();
  }
  if (doc.contains("tolerances")) d.tolerances = map_from_json(doc.at("tolerances"), where, "tolerances");
  return d;
}

json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // The library message already carries "line L, column C".
    throw FormatError(where + ": " + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

std::string dump(const json& doc) { return doc.dump() + "\n"; }

void write_file(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path + ": cannot open file for writing");
  out << dump(doc);
  if (!out) throw FormatError(path + ": write failed");
}

HMatrix read_qmat_file(const std::string& path) { return qmat_from_json(read_file(path), path); }

}  // namespace qspectral::io
