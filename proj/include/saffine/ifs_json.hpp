// JSON interchange for affine maps and IFS:
//   {"dim": n, "maps": [{"matrix": [["p/q", ...], ...], "translation": ["p/q", ...]}, ...],
//    "meta": {...optional...}}
// Every number is a rational string; JSON numbers are rejected.
#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "saffine/affine.hpp"

namespace saffine {

using Json = nlohmann::ordered_json;

/// Rational from a JSON string element; throws InputError otherwise.
Rational rational_from_json(const Json& j);
QVector vector_from_json(const Json& j);
/// Non-empty rectangular matrix; squareness is the caller's concern.
QMatrix matrix_from_json(const Json& j);

Json to_json(const Rational& q);
Json to_json(const QVector& v);
Json to_json(const QMatrix& m);
Json to_json(const AffineMap& f);

AffineMap affine_map_from_json(const Json& j);

/// Parses the document and validates it as an IFS (square matrices, one
/// dimension, invertible, contractive). `meta`, when given, receives the
/// document's "meta" object (or null).
IteratedFunctionSystem parse_ifs_json(std::string_view text, Json* meta = nullptr);
IteratedFunctionSystem ifs_from_json(const Json& doc, Json* meta = nullptr);

std::string ifs_to_json(const IteratedFunctionSystem& ifs, const Json& meta = Json());

/// Parses text as JSON, converting parse failures to InputError.
Json parse_json_text(std::string_view text);

}  // namespace saffine
