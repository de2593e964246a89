#include "djt/cartan/lform.hpp"

#include "djt/error.hpp"

namespace djt {

LForm::LForm(DiffForm plain, DiffForm jet) : plain_(std::move(plain)), jet_(std::move(jet)) {
  require_same_chart(plain_.chart(), jet_.chart(), "LForm parts");
  if (jet_.degree() != plain_.degree() - 1) throw DomainError("LForm parts must have degrees k and k-1");
}

LForm LForm::section(const Chart& chart, const ScalarExpr& value) {
  return LForm(DiffForm::scalar(chart, value), DiffForm(chart, -1));
}

LForm LForm::jet(const DiffForm& alpha, const ScalarExpr& r) {
  if (alpha.degree() != 1) throw DomainError("jet section needs a 1-form");
  return LForm(alpha, DiffForm::scalar(alpha.chart(), r));
}

LForm& LForm::operator+=(const LForm& o) {
  plain_ += o.plain_;
  jet_ += o.jet_;
  return *this;
}

Derivation::Derivation(Multivector symbol, ScalarExpr scalar) : symbol_(std::move(symbol)), scalar_(std::move(scalar)) {
  if (symbol_.degree() != 1) throw DomainError("derivation symbol must be a vector field");
}

Derivation& Derivation::operator+=(const Derivation& o) {
  symbol_ += o.symbol_;
  scalar_ += o.scalar_;
  return *this;
}

ScalarExpr act(const Derivation& delta, const ScalarExpr& section) {
  return apply(delta.symbol(), section) + delta.scalar() * section;
}

Derivation commutator(const Derivation& a, const Derivation& b) {
  require_same_chart(a.chart(), b.chart(), "derivation commutator");
  return Derivation(schouten(a.symbol(), b.symbol()),
                    apply(a.symbol(), b.scalar()) - apply(b.symbol(), a.scalar()));
}

LForm wedge(const LForm& a, const LForm& b) {
  require_same_chart(a.chart(), b.chart(), "LForm wedge");
  DiffForm plain = wedge(a.plain(), b.plain());
  DiffForm jet = wedge(a.jetpart(), b.plain());
  DiffForm mixed = wedge(a.plain(), b.jetpart());
  jet += (a.degree() % 2 == 0) ? mixed : -mixed;
  return LForm(std::move(plain), std::move(jet));
}

LForm dL(const LForm& w) {
  DiffForm jet = w.plain() - d(w.jetpart());
  return LForm(d(w.plain()), std::move(jet));
}

LForm iota(const Derivation& delta, const LForm& w) {
  require_same_chart(delta.chart(), w.chart(), "iota");
  if (w.degree() < 1) throw DomainError("iota needs an LForm of degree >= 1");
  DiffForm plain = contract(delta.symbol(), w.plain()) + w.jetpart().scaled(delta.scalar());
  DiffForm jet = -contract(delta.symbol(), w.jetpart());
  return LForm(std::move(plain), std::move(jet));
}

LForm lieD(const Derivation& delta, const LForm& w) {
  LForm r = iota(delta, dL(w));
  if (w.degree() >= 1) r += dL(iota(delta, w));
  return r;
}

ScalarExpr pair(const LForm& psi, const Derivation& delta) {
  if (psi.degree() != 1) throw DomainError("pairing needs a degree-1 LForm");
  return iota(delta, psi).plain()[0];
}

LForm transfer(const LForm& w, const Chart& to) { return LForm(transfer(w.plain(), to), transfer(w.jetpart(), to)); }

Derivation transfer(const Derivation& d, const Chart& to) {
  std::vector<int> map = slot_map(d.chart(), to);
  for (std::size_t k = 0; k < d.chart().symbol_count(); ++k) {
    if (map[k] < 0 && d.scalar().depends_on(k)) {
      throw DomainError("coefficient depends on '" + d.chart().symbol(k) + "', absent from chart " + to.name());
    }
  }
  return Derivation(transfer(d.symbol(), to), d.scalar().remap(map));
}

}  // namespace djt
