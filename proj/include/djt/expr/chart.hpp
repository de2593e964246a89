#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "djt/expr/rational.hpp"

namespace djt {

/// Evaluation point: symbol name -> exact value.
using Point = std::map<std::string, Rational>;

/// A coordinate chart: ordered coordinates plus optional formal parameters.
///
/// Coordinates index tensor components; parameters (e.g. a time variable) are
/// extra symbols of the coefficient field that tensor calculus never differentiates
/// along. Expression slot i is coordinate i for i < dim(), parameter i - dim() after.
class Chart {
 public:
  Chart() : Chart("R0", {}, {}, true) {}
  Chart(std::string name, std::vector<std::string> coordinates, std::vector<std::string> parameters = {});

  const std::string& name() const { return data_->name; }
  const std::vector<std::string>& coordinates() const { return data_->coordinates; }
  const std::vector<std::string>& parameters() const { return data_->parameters; }
  std::size_t dim() const { return data_->coordinates.size(); }
  std::size_t symbol_count() const { return data_->coordinates.size() + data_->parameters.size(); }
  const std::string& symbol(std::size_t slot) const;
  std::optional<std::size_t> slot_of(std::string_view name) const;
  std::optional<std::size_t> coordinate_index(std::string_view name) const;
  /// Slot of `name`; throws DomainError naming the symbol when unknown.
  std::size_t require_slot(std::string_view name) const;

  /// All symbols valued: coordinates first, then parameters. Throws when one is missing.
  std::vector<Rational> values(const Point& p) const;
  /// Values for the symbols present in `p`; the others stay symbolic.
  std::vector<std::optional<Rational>> partial_values(const Point& p) const;

  /// Same symbols, same order (names of charts are labels only).
  friend bool operator==(const Chart& a, const Chart& b) {
    return a.data_ == b.data_ ||
           (a.data_->coordinates == b.data_->coordinates && a.data_->parameters == b.data_->parameters);
  }

 private:
  struct Data {
    std::string name;
    std::vector<std::string> coordinates;
    std::vector<std::string> parameters;
  };
  Chart(std::string name, std::vector<std::string> coordinates, std::vector<std::string> parameters, bool allow_empty);
  std::shared_ptr<const Data> data_;
};

/// Throws ChartMismatch unless a == b.
void require_same_chart(const Chart& a, const Chart& b, std::string_view what);

/// Slot map from `from` into `to` by symbol name (-1 where `to` lacks the symbol).
std::vector<int> slot_map(const Chart& from, const Chart& to);

}  // namespace djt
