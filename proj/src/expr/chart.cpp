#include "djt/expr/chart.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "djt/error.hpp"
#include "djt/expr/polynomial.hpp"

namespace djt {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Chart::Chart(std::string name, std::vector<std::string> coordinates, std::vector<std::string> parameters)
    : Chart(std::move(name), std::move(coordinates), std::move(parameters), false) {}

Chart::Chart(std::string name, std::vector<std::string> coordinates, std::vector<std::string> parameters,
             bool allow_empty) {
  if (!allow_empty && coordinates.empty()) throw DomainError("chart needs at least one coordinate");
  if (coordinates.size() + parameters.size() > kMaxSymbols) {
    throw DomainError("chart has more than " + std::to_string(kMaxSymbols) + " symbols");
  }
  std::set<std::string> seen;
  for (const auto* list : {&coordinates, &parameters}) {
    for (const auto& s : *list) {
      if (!is_identifier(s)) throw DomainError("invalid symbol name '" + s + "'");
      if (!seen.insert(s).second) throw DomainError("duplicate symbol '" + s + "' in chart");
    }
  }
  data_ = std::make_shared<const Data>(Data{std::move(name), std::move(coordinates), std::move(parameters)});
}

const std::string& Chart::symbol(std::size_t slot) const {
  if (slot < dim()) return data_->coordinates[slot];
  return data_->parameters.at(slot - dim());
}

std::optional<std::size_t> Chart::slot_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbol_count(); ++i) {
    if (symbol(i) == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Chart::coordinate_index(std::string_view name) const {
  auto s = slot_of(name);
  if (s && *s < dim()) return s;
  return std::nullopt;
}

std::size_t Chart::require_slot(std::string_view name) const {
  auto s = slot_of(name);
  if (!s) throw DomainError("unknown symbol '" + std::string(name) + "' on chart " + data_->name);
  return *s;
}

std::vector<Rational> Chart::values(const Point& p) const {
  std::vector<Rational> out;
  out.reserve(symbol_count());
  for (std::size_t i = 0; i < symbol_count(); ++i) {
    auto it = p.find(symbol(i));
    if (it == p.end()) throw DomainError("point does not assign '" + symbol(i) + "'");
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::optional<Rational>> Chart::partial_values(const Point& p) const {
  std::vector<std::optional<Rational>> out(symbol_count());
  for (std::size_t i = 0; i < symbol_count(); ++i) {
    auto it = p.find(symbol(i));
    if (it != p.end()) out[i] = it->second;
  }
  return out;
}

void require_same_chart(const Chart& a, const Chart& b, std::string_view what) {
  if (!(a == b)) {
    throw ChartMismatch(std::string(what) + ": chart mismatch (" + a.name() + " vs " + b.name() + ")");
  }
}

std::vector<int> slot_map(const Chart& from, const Chart& to) {
  std::vector<int> map(from.symbol_count(), -1);
  for (std::size_t i = 0; i < from.symbol_count(); ++i) {
    if (auto s = to.slot_of(from.symbol(i))) map[i] = static_cast<int>(*s);
  }
  return map;
}

}  // namespace djt
