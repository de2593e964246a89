#include "djt/cartan/tensor.hpp"

#include <algorithm>
#include <bit>

#include "djt/error.hpp"

namespace djt {

std::vector<std::size_t> indices_of(IndexSet s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

IndexSet index_set(std::initializer_list<std::size_t> indices) {
  IndexSet s = 0;
  for (auto i : indices) s |= IndexSet{1} << i;
  return s;
}

int merge_sign(IndexSet a, IndexSet b) {
  // Count pairs (i in a, j in b) with i > j.
  int inversions = 0;
  for (IndexSet rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

namespace {

// Sorts an index list; returns 0 on repeats, else the permutation sign.
int sort_sign(std::vector<std::size_t>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

IndexSet to_set(const std::vector<std::size_t>& idx) {
  IndexSet s = 0;
  for (auto i : idx) s |= IndexSet{1} << i;
  return s;
}

}  // namespace

template <Variance V>
Tensor<V> Tensor<V>::scalar(const Chart& chart, const ScalarExpr& value) {
  Tensor t(chart, 0);
  t.set(0, value);
  return t;
}

template <Variance V>
Tensor<V> Tensor<V>::basis(const Chart& chart, std::initializer_list<std::size_t> indices) {
  std::vector<std::size_t> idx(indices);
  for (auto i : idx) {
    if (i >= chart.dim()) throw DomainError("basis index out of range");
  }
  int sign = sort_sign(idx);
  if (sign == 0) throw DomainError("repeated basis index");
  Tensor t(chart, static_cast<int>(idx.size()));
  t.set(to_set(idx), ScalarExpr(sign));
  return t;
}

template <Variance V>
ScalarExpr Tensor<V>::operator[](IndexSet s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? ScalarExpr() : it->second;
}

template <Variance V>
ScalarExpr Tensor<V>::at(const std::vector<std::size_t>& indices) const {
  std::vector<std::size_t> idx = indices;
  int sign = sort_sign(idx);
  if (sign == 0) return ScalarExpr();
  ScalarExpr v = (*this)[to_set(idx)];
  return sign > 0 ? v : -v;
}

template <Variance V>
void Tensor<V>::set(IndexSet s, const ScalarExpr& value) {
  if (std::popcount(s) != degree_ || (chart_.dim() < 32 && (s >> chart_.dim()) != 0)) {
    throw DomainError("index set does not match tensor degree or chart dimension");
  }
  if (value.is_zero()) coeffs_.erase(s);
  else coeffs_[s] = value;
}

template <Variance V>
void Tensor<V>::add(IndexSet s, const ScalarExpr& value) {
  if (value.is_zero()) return;
  auto it = coeffs_.find(s);
  if (it == coeffs_.end()) {
    set(s, value);
    return;
  }
  it->second += value;
  if (it->second.is_zero()) coeffs_.erase(it);
}

template <Variance V>
void Tensor<V>::add(const std::vector<std::size_t>& indices, const ScalarExpr& value) {
  std::vector<std::size_t> idx = indices;
  int sign = sort_sign(idx);
  if (sign == 0) return;
  add(to_set(idx), sign > 0 ? value : -value);
}

template <Variance V>
Tensor<V> Tensor<V>::operator-() const {
  Tensor r = *this;
  for (auto& [s, v] : r.coeffs_) v = -v;
  return r;
}

template <Variance V>
Tensor<V>& Tensor<V>::operator+=(const Tensor& o) {
  require_same_chart(chart_, o.chart_, "tensor sum");
  if (degree_ != o.degree_) throw DomainError("tensor sum: degree mismatch");
  for (const auto& [s, v] : o.coeffs_) add(s, v);
  return *this;
}

template <Variance V>
Tensor<V>& Tensor<V>::operator-=(const Tensor& o) {
  return *this += -o;
}

template <Variance V>
Tensor<V> Tensor<V>::scaled(const ScalarExpr& f) const {
  Tensor r(chart_, degree_);
  if (f.is_zero()) return r;
  for (const auto& [s, v] : coeffs_) r.coeffs_.emplace(s, v * f);
  return r;
}

template <Variance V>
Tensor<V> Tensor<V>::mapped(const std::function<ScalarExpr(const ScalarExpr&)>& f) const {
  Tensor r(chart_, degree_);
  for (const auto& [s, v] : coeffs_) {
    ScalarExpr w = f(v);
    if (!w.is_zero()) r.coeffs_.emplace(s, std::move(w));
  }
  return r;
}

template <Variance V>
Tensor<V> Tensor<V>::partial(std::size_t slot) const {
  return mapped([slot](const ScalarExpr& e) { return e.partial(slot); });
}

template class Tensor<Variance::Contravariant>;
template class Tensor<Variance::Covariant>;

namespace {

template <Variance V>
Tensor<V> wedge_impl(const Tensor<V>& a, const Tensor<V>& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  Tensor<V> r(a.chart(), a.degree() + b.degree());
  if (r.degree() > static_cast<int>(a.chart().dim())) return r;
  for (const auto& [sa, va] : a.components()) {
    for (const auto& [sb, vb] : b.components()) {
      if (sa & sb) continue;
      ScalarExpr v = va * vb;
      r.add(sa | sb, merge_sign(sa, sb) > 0 ? v : -v);
    }
  }
  return r;
}

template <Variance Out, Variance In>
Tensor<Out> contract_impl(const Tensor<In>& a, const Tensor<Out>& p) {
  require_same_chart(a.chart(), p.chart(), "contraction");
  if (a.degree() != 1) throw DomainError("contraction needs a degree-1 argument");
  Tensor<Out> r(p.chart(), p.degree() - 1);
  for (const auto& [s, v] : p.components()) {
    int m = 0;
    for (auto i : indices_of(s)) {
      ScalarExpr ai = a[IndexSet{1} << i];
      if (!ai.is_zero()) {
        ScalarExpr term = ai * v;
        r.add(s & ~(IndexSet{1} << i), (m % 2 == 0) ? term : -term);
      }
      ++m;
    }
  }
  return r;
}

template <Variance V>
std::map<IndexSet, Rational> evaluate_impl(const Tensor<V>& t, std::span<const Rational> values) {
  std::map<IndexSet, Rational> out;
  for (const auto& [s, v] : t.components()) {
    Rational x = v.evaluate(values);
    if (!x.is_zero()) out.emplace(s, x);
  }
  return out;
}

template <Variance V>
Tensor<V> transfer_impl(const Tensor<V>& t, const Chart& to) {
  const Chart& from = t.chart();
  std::vector<int> map = slot_map(from, to);
  Tensor<V> r(to, t.degree());
  for (const auto& [s, v] : t.components()) {
    std::vector<std::size_t> idx;
    for (auto i : indices_of(s)) {
      int j = map[i];
      if (j < 0 || static_cast<std::size_t>(j) >= to.dim()) {
        throw DomainError("tensor component along '" + from.symbol(i) + "' has no counterpart on chart " + to.name());
      }
      idx.push_back(static_cast<std::size_t>(j));
    }
    for (std::size_t k = 0; k < from.symbol_count(); ++k) {
      if (map[k] < 0 && v.depends_on(k)) {
        throw DomainError("coefficient depends on '" + from.symbol(k) + "', absent from chart " + to.name());
      }
    }
    // add() re-sorts the image indices and applies the permutation sign.
    r.add(idx, v.remap(map));
  }
  return r;
}

}  // namespace

Multivector wedge(const Multivector& a, const Multivector& b) { return wedge_impl(a, b); }
DiffForm wedge(const DiffForm& a, const DiffForm& b) { return wedge_impl(a, b); }

Multivector vector_field(const Chart& chart, const std::vector<ScalarExpr>& coeffs) {
  if (coeffs.size() != chart.dim()) throw DomainError("vector_field: wrong number of coefficients");
  Multivector x(chart, 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) x.set(IndexSet{1} << i, coeffs[i]);
  return x;
}

DiffForm one_form(const Chart& chart, const std::vector<ScalarExpr>& coeffs) {
  if (coeffs.size() != chart.dim()) throw DomainError("one_form: wrong number of coefficients");
  DiffForm a(chart, 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) a.set(IndexSet{1} << i, coeffs[i]);
  return a;
}

DiffForm differential(const Chart& chart, const ScalarExpr& f) {
  DiffForm a(chart, 1);
  for (std::size_t i = 0; i < chart.dim(); ++i) a.set(IndexSet{1} << i, f.partial(i));
  return a;
}

DiffForm d(const DiffForm& w) {
  const Chart& c = w.chart();
  DiffForm r(c, w.degree() + 1);
  if (w.degree() < 0 || r.degree() > static_cast<int>(c.dim())) return r;
  for (const auto& [s, v] : w.components()) {
    for (std::size_t j = 0; j < c.dim(); ++j) {
      IndexSet bit = IndexSet{1} << j;
      if (s & bit) continue;
      ScalarExpr dv = v.partial(j);
      if (dv.is_zero()) continue;
      r.add(s | bit, merge_sign(bit, s) > 0 ? dv : -dv);
    }
  }
  return r;
}

Multivector contract(const DiffForm& a, const Multivector& p) { return contract_impl(a, p); }
DiffForm contract(const Multivector& x, const DiffForm& w) { return contract_impl(x, w); }

Multivector schouten(const Multivector& p, const Multivector& q) {
  require_same_chart(p.chart(), q.chart(), "schouten");
  const Chart& c = p.chart();
  const int dp = p.degree(), dq = q.degree();
  Multivector r(c, dp + dq - 1);
  if (dp < 0 || dq < 0 || r.degree() < 0 || r.degree() > static_cast<int>(c.dim())) return r;
  // sum_i (A d^R/d theta_i) wedge d_i B, with the right derivative of theta_I at
  // position m (0-based) of k carrying sign (-1)^(k-1-m).
  auto half = [&](const Multivector& a, const Multivector& b, bool negate) {
    const int ka = a.degree();
    for (const auto& [sa, va] : a.components()) {
      int m = 0;
      for (auto i : indices_of(sa)) {
        IndexSet rest = sa & ~(IndexSet{1} << i);
        bool odd = ((ka - 1 - m) % 2) != 0;
        ++m;
        for (const auto& [sb, vb] : b.components()) {
          if (rest & sb) continue;
          ScalarExpr db = vb.partial(i);
          if (db.is_zero()) continue;
          ScalarExpr v = va * db;
          bool neg = odd ^ negate ^ (merge_sign(rest, sb) < 0);
          r.add(rest | sb, neg ? -v : v);
        }
      }
    }
  };
  half(p, q, false);
  bool even = (((dp - 1) * (dq - 1)) % 2) == 0;
  half(q, p, even);
  return r;
}

Multivector lie(const Multivector& x, const Multivector& p) {
  if (x.degree() != 1) throw DomainError("lie: first argument must be a vector field");
  return schouten(x, p);
}

ScalarExpr apply(const Multivector& x, const ScalarExpr& f) {
  if (x.degree() != 1) throw DomainError("apply: argument must be a vector field");
  ScalarExpr r;
  for (const auto& [s, v] : x.components()) r += v * f.partial(static_cast<std::size_t>(std::countr_zero(s)));
  return r;
}

std::map<IndexSet, Rational> evaluate(const Multivector& t, std::span<const Rational> values) {
  return evaluate_impl(t, values);
}
std::map<IndexSet, Rational> evaluate(const DiffForm& t, std::span<const Rational> values) {
  return evaluate_impl(t, values);
}

Multivector transfer(const Multivector& t, const Chart& to) { return transfer_impl(t, to); }
DiffForm transfer(const DiffForm& t, const Chart& to) { return transfer_impl(t, to); }

Multivector pushforward(const Multivector& t, const Chart& target, const std::vector<ScalarExpr>& phi,
                        const std::vector<ScalarExpr>& psi) {
  const Chart& source = t.chart();
  if (phi.size() != target.dim()) throw DomainError("pushforward: phi must give every target coordinate");
  if (psi.size() != source.symbol_count()) throw DomainError("pushforward: psi must give every source symbol");
  // Images of the coordinate fields, still in source coefficients.
  std::vector<Multivector> images;
  for (std::size_t i = 0; i < source.dim(); ++i) {
    std::vector<ScalarExpr> col(target.dim());
    for (std::size_t a = 0; a < target.dim(); ++a) col[a] = phi[a].partial(i);
    Multivector v(target, 1);
    for (std::size_t a = 0; a < target.dim(); ++a) v.set(IndexSet{1} << a, col[a]);
    images.push_back(std::move(v));
  }
  Multivector r(target, t.degree());
  for (const auto& [s, v] : t.components()) {
    Multivector w = Multivector::scalar(target, v);
    for (auto i : indices_of(s)) w = wedge(w, images[i]);
    r += w;
  }
  return r.mapped([&](const ScalarExpr& e) { return e.compose(psi); });
}

}  // namespace djt
