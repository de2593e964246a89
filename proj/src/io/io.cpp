#include "djt/io/io.hpp"

#include <algorithm>
#include <sstream>

namespace djt::io {
namespace {

template <class T>
T read_tensor(const Json& j, const Chart& chart, int degree, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of [indices, expression] pairs");
  T out(chart, degree);
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() || !entry[1].is_string()) {
      throw InputError(std::string(what) + ": each entry must be [[names...], \"expression\"], got " + entry.dump());
    }
    if (static_cast<int>(entry[0].size()) != degree) {
      throw InputError(std::string(what) + ": index list " + entry[0].dump() + " does not have degree " +
                       std::to_string(degree));
    }
    std::vector<std::size_t> idx;
    for (const auto& name : entry[0]) {
      if (!name.is_string()) throw InputError(std::string(what) + ": index names must be strings");
      auto i = chart.coordinate_index(name.get<std::string>());
      if (!i) throw InputError(std::string(what) + ": '" + name.get<std::string>() + "' is not a coordinate of chart " + chart.name());
      if (std::find(idx.begin(), idx.end(), *i) != idx.end()) {
        throw InputError(std::string(what) + ": repeated index in " + entry[0].dump());
      }
      idx.push_back(*i);
    }
    out.add(idx, parse_expr(entry[1].get<std::string>(), chart));
  }
  return out;
}

template <class T>
Json write_any(const T& t) {
  Json out = Json::array();
  const Chart& c = t.chart();
  for (const auto& [s, v] : t.components()) {
    Json names = Json::array();
    for (auto i : indices_of(s)) names.push_back(c.symbol(i));
    out.push_back(Json::array({names, to_string(v, c)}));
  }
  return out;
}

template <class T>
std::string text_any(const T& t) {
  if (t.is_zero()) return "0";
  std::ostringstream os;
  const Chart& c = t.chart();
  bool first = true;
  for (const auto& [s, v] : t.components()) {
    if (!first) os << "; ";
    first = false;
    os << '{';
    bool inner = false;
    for (auto i : indices_of(s)) {
      if (inner) os << ',';
      inner = true;
      os << c.symbol(i);
    }
    os << "}: " << to_string(v, c);
  }
  return os.str();
}

std::vector<std::string> names(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of names");
  std::vector<std::string> out;
  for (const auto& n : j) {
    if (!n.is_string()) throw InputError(std::string(what) + " must be an array of names");
    out.push_back(n.get<std::string>());
  }
  return out;
}

}  // namespace

const Json& require(const Json& obj, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError("missing key '" + key + "'");
  return obj.at(key);
}

Multivector read_multivector(const Json& j, const Chart& chart, int degree) {
  return read_tensor<Multivector>(j, chart, degree, "multivector");
}

DiffForm read_form(const Json& j, const Chart& chart, int degree) { return read_tensor<DiffForm>(j, chart, degree, "form"); }

LForm read_lform(const Json& j, const Chart& chart, int degree) {
  if (!j.is_object()) throw InputError("LForm must be an object with keys 'plain' and 'jet'");
  for (const auto& [k, v] : j.items()) {
    if (k != "plain" && k != "jet") throw InputError("LForm: unknown key '" + k + "'");
  }
  DiffForm plain = j.contains("plain") ? read_form(j.at("plain"), chart, degree) : DiffForm(chart, degree);
  DiffForm jet = j.contains("jet") ? read_form(j.at("jet"), chart, degree - 1) : DiffForm(chart, degree - 1);
  return LForm(plain, jet);
}

Chart read_chart(const Json& j) {
  if (!require(j, "name").is_string()) throw InputError("chart name must be a string");
  std::string name = j.at("name").get<std::string>();
  std::vector<std::string> coords = names(require(j, "coordinates"), "chart coordinates");
  std::vector<std::string> params = j.contains("parameters") ? names(j.at("parameters"), "chart parameters") : std::vector<std::string>{};
  try {
    return Chart(name, coords, params);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

Rational read_rational(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return Rational::from_string(j.get<std::string>());
    } catch (const Error&) {
      throw InputError(what + ": '" + j.get<std::string>() + "' is not an exact rational");
    }
  }
  throw InputError(what + " must be an integer or a rational string like \"-3/4\"");
}

Point read_point(const Json& j, const Chart& chart) {
  if (!j.is_object()) throw InputError("point must be an object of symbol values");
  Point p;
  for (const auto& [k, v] : j.items()) {
    if (!chart.slot_of(k)) throw InputError("point: '" + k + "' is not a symbol of chart " + chart.name());
    p[k] = read_rational(v, "point value for '" + k + "'");
  }
  return p;
}

Json write_tensor(const Multivector& t) { return write_any(t); }
Json write_tensor(const DiffForm& t) { return write_any(t); }

Json write_lform(const LForm& w) {
  Json out = Json::object();
  out["plain"] = write_tensor(w.plain());
  out["jet"] = write_tensor(w.jetpart());
  return out;
}

Json write_chart(const Chart& c) {
  Json out = Json::object();
  out["name"] = c.name();
  out["coordinates"] = c.coordinates();
  if (!c.parameters().empty()) out["parameters"] = c.parameters();
  return out;
}

std::string write_document(const Json& doc) {
  if (!doc.is_object() || doc.empty()) return doc.dump() + "\n";
  std::string out = "{\n";
  std::size_t i = 0;
  for (const auto& [k, v] : doc.items()) {
    out += "  " + Json(k).dump() + ": " + v.dump() + (++i < doc.size() ? ",\n" : "\n");
  }
  return out + "}\n";
}

std::string tensor_text(const Multivector& t) { return text_any(t); }
std::string tensor_text(const DiffForm& t) { return text_any(t); }

std::string point_text(const Point& p, const Chart& chart) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (std::size_t s = 0; s < chart.symbol_count(); ++s) {
    auto it = p.find(chart.symbol(s));
    if (it == p.end()) continue;
    if (!first) os << ", ";
    first = false;
    os << it->first << '=' << it->second.str();
  }
  os << ')';
  return os.str();
}

}  // namespace djt::io
