#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "djt/cartan/lform.hpp"
#include "djt/error.hpp"

namespace djt::io {

using Json = nlohmann::ordered_json;

/// Structurally invalid problem file (missing key, wrong type, bad degree, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Tensor literal: a JSON array of [index-list, expression] pairs.
///
///   [ [["q", "p"], "1"], [["u", "p"], "p"] ]
///
/// Index lists name coordinates in any order (the antisymmetry sign is applied)
/// and must have the tensor's degree; repeated pairs add up. A degree-0 tensor
/// uses the empty index list. Expressions follow the parse_expr grammar over the
/// chart's coordinates and parameters.
Multivector read_multivector(const Json& j, const Chart& chart, int degree);
DiffForm read_form(const Json& j, const Chart& chart, int degree);
/// {"plain": tensor of degree k, "jet": tensor of degree k-1}; a missing part is zero.
LForm read_lform(const Json& j, const Chart& chart, int degree);

/// {"name": ..., "coordinates": [...], "parameters": [...]}; parameters optional.
Chart read_chart(const Json& j);
/// Object mapping symbol names to exact values, given as integers or strings like "-3/4".
Point read_point(const Json& j, const Chart& chart);
Rational read_rational(const Json& j, const std::string& what);

/// Canonical forms: index lists in increasing coordinate order, components in
/// increasing index-set order, expressions in canonical text.
Json write_tensor(const Multivector& t);
Json write_tensor(const DiffForm& t);
Json write_lform(const LForm& w);
Json write_chart(const Chart& c);

/// Canonical file text: one top-level key per line, values compact, trailing newline.
std::string write_document(const Json& doc);

/// One-line canonical text: "0" or "{q,p}: 1; {u,p}: p".
std::string tensor_text(const Multivector& t);
std::string tensor_text(const DiffForm& t);
std::string point_text(const Point& p, const Chart& chart);

/// Required member of an object; throws InputError naming the key.
const Json& require(const Json& obj, const std::string& key);

}  // namespace djt::io
