#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "qspectral/drazin.hpp"
#include "qspectral/hmat.hpp"
#include "qspectral/sspec.hpp"

namespace qspectral::io {

using json = nlohmann::json;
using Tolerances = std::map<std::string, double>;

/// { "format": "qmat-1", "n": n, "entries": [[[a,b,c,d], ...], ...] }, row-major.
json qmat_to_json(const HMatrix& a);
/// Rejects any other shape with a FormatError naming the offending field;
/// where is prefixed to the message.
HMatrix qmat_from_json(const json& doc, const std::string& where = "qmat-1");

/// { "format": "qspec-1", "spheres": [{"u":..,"v":..,"mult":..}], "tolerances": {...} }
json qspec_to_json(const Spectrum& s, const Tolerances& tolerances = {});
Spectrum qspec_from_json(const json& doc, const std::string& where = "qspec-1");

struct DrazinDocument {
  DrazinResult result;
  std::map<std::string, double> residuals;
  Tolerances tolerances;
};

/// { "format": "qdrz-1", "index": k, "inverse": qmat-1, "projection": qmat-1,
///   "residuals": {...}, "route": "...", "tolerances": {...} }
json qdrz_to_json(const DrazinDocument& d);
DrazinDocument qdrz_from_json(const json& doc, const std::string& where = "qdrz-1");

/// Parses JSON text; syntax errors carry the line and column.
json parse_text(const std::string& text, const std::string& where);
json read_file(const std::string& path);
/// Compact single line with a trailing newline.
std::string dump(const json& doc);
void write_file(const std::string& path, const json& doc);

HMatrix read_qmat_file(const std::string& path);

}  // namespace qspectral::io
