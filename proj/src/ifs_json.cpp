#include "saffine/ifs_json.hpp"

#include "saffine/errors.hpp"

namespace saffine {

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw InputError("expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

QVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of rational strings");
  QVector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
  std::vector<QVector> rows;
  for (const auto& row : j) rows.push_back(vector_from_json(row));
  return QMatrix::from_rows(rows);
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Json to_json(const AffineMap& f) {
  Json out = Json::object();
  out["matrix"] = to_json(f.linear());
  out["translation"] = to_json(f.translation());
  return out;
}

AffineMap affine_map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("matrix") || !j.contains("translation"))
    throw InputError("map needs \"matrix\" and \"translation\"");
  QMatrix m = matrix_from_json(j["matrix"]);
  if (!m.is_square()) throw InputError("matrix is not square");
  return {std::move(m), vector_from_json(j["translation"])};
}

IteratedFunctionSystem ifs_from_json(const Json& doc, Json* meta) {
  if (!doc.is_object()) throw InputError("IFS document must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() <= 0)
    throw InputError("\"dim\" must be a positive integer");
  if (!doc.contains("maps") || !doc["maps"].is_array() || doc["maps"].empty())
    throw InputError("\"maps\" must be a non-empty array");
  const auto dim = static_cast<std::size_t>(doc["dim"].get<long long>());
  std::vector<AffineMap> maps;
  for (std::size_t i = 0; i < doc["maps"].size(); ++i) {
    try {
      maps.push_back(affine_map_from_json(doc["maps"][i]));
    } catch (const InputError& e) {
      throw InputError("map " + std::to_string(i) + ": " + e.what());
    }
    if (maps.back().dim() != dim)
      throw InputError("map " + std::to_string(i) + " has dimension " + std::to_string(maps.back().dim()) +
                       ", document says " + std::to_string(dim));
  }
  if (meta) *meta = doc.contains("meta") ? doc["meta"] : Json();
  return IteratedFunctionSystem(std::move(maps));
}

IteratedFunctionSystem parse_ifs_json(std::string_view text, Json* meta) {
  return ifs_from_json(parse_json_text(text), meta);
}

std::string ifs_to_json(const IteratedFunctionSystem& ifs, const Json& meta) {
  Json doc = Json::object();
  doc["dim"] = ifs.dim();
  Json maps = Json::array();
  for (const auto& f : ifs.maps()) maps.push_back(to_json(f));
  doc["maps"] = std::move(maps);
  if (!meta.is_null()) doc["meta"] = meta;
  return doc.dump(2) + "\n";
}

}  // namespace saffine
