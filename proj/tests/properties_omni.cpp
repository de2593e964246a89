#include "djt/omni/omni.hpp"
#include "fixtures.hpp"
#include "properties.hpp"
#include "support.hpp"

namespace djt::testing {

namespace {

Point random_point(Gen& g, const Chart& c) {
  Point p;
  for (const auto& v : c.coordinates()) p[v] = g.small_rational();
  return p;
}

OmniSection section(Gen& g, const Chart& c, unsigned coeff_degree) {
  return {g.derivation(c, coeff_degree), g.lform(c, 1, coeff_degree)};
}

}  // namespace

Sweep graph_isotropy(int points_per_fixture, std::uint64_t seed) {
  Gen g(seed);
  Sweep s;
  for (const auto& f : omni_fixtures()) {
    const Chart& c = f.pair.chart();
    for (int i = 0; i < points_per_fixture; ++i) {
      OmniFiberSubspace sub = graph_subspace(f.pair, random_point(g, c));
      bool ok = sub.dimension() == static_cast<Eigen::Index>(c.dim() + 1) && rank(sub.basis) == sub.dimension() &&
                is_isotropic(sub);
      s.record(ok, f.name + " point #" + std::to_string(i));
    }
  }
  return s;
}

AgreementSweep involutivity_agreement(int random_pairs, std::uint64_t seed) {
  Gen g(seed);
  std::vector<NamedPair> corpus = omni_fixtures();
  for (int i = 0; i < random_pairs; ++i) {
    Chart c = Gen::chart(3);
    JacobiPair jp = i % 2 == 0 ? known_jacobi_pair(g, c) : JacobiPair(g.multivector(c, 2, 1), g.multivector(c, 1, 1));
    corpus.push_back({"random #" + std::to_string(i), std::move(jp)});
  }
  AgreementSweep out;
  for (const auto& f : corpus) {
    bool jacobi = jacobi_defect(f.pair).is_zero();
    (jacobi ? out.jacobi : out.non_jacobi)++;
    out.agreement.record(involutivity_check(f.pair).involutive() == jacobi, f.name);
  }
  return out;
}

Sweep dorfman_leibniz(int count, std::uint64_t seed, bool twisted) {
  Gen g(seed);
  Sweep s;
  for (int i = 0; i < count; ++i) {
    Chart c = Gen::chart(static_cast<std::size_t>(g.integer(2, 3)));
    OmniSection a = section(g, c, 1), b = section(g, c, 1), e = section(g, c, 1);
    std::optional<TwistForm> h;
    if (twisted) h.emplace(dL(g.lform(c, 2, 1)));
    const TwistForm* hp = h ? &*h : nullptr;
    OmniSection lhs = dorfman(a, dorfman(b, e, hp), hp);
    OmniSection rhs = dorfman(dorfman(a, b, hp), e, hp) + dorfman(b, dorfman(a, e, hp), hp);
    s.record(lhs == rhs, "Leibniz #" + std::to_string(i));
  }
  return s;
}

Sweep dorfman_symmetric_part(int count, std::uint64_t seed) {
  Gen g(seed);
  Sweep s;
  for (int i = 0; i < count; ++i) {
    Chart c = Gen::chart(static_cast<std::size_t>(g.integer(1, 4)));
    OmniSection a = section(g, c, 2);
    OmniSection aa = dorfman(a, a);
    LForm half = LForm::section(c, pairing(a, a) * ScalarExpr(Rational(1, 2)));
    s.record(aa.der.is_zero() && aa.jet == dL(half), "symmetric part #" + std::to_string(i));
  }
  return s;
}

Sweep bfield_pairing(int count, std::uint64_t seed) {
  Gen g(seed);
  Sweep s;
  for (int i = 0; i < count; ++i) {
    Chart c = Gen::chart(static_cast<std::size_t>(g.integer(1, 4)));
    LForm b = g.lform(c, 2);
    OmniSection x = section(g, c, 2), y = section(g, c, 2);
    s.record(pairing(bfield(b, x), bfield(b, y)) == pairing(x, y), "pairing #" + std::to_string(i));
  }
  return s;
}

Sweep bfield_group_law(int count, std::uint64_t seed) {
  Gen g(seed);
  Sweep s;
  for (int i = 0; i < count; ++i) {
    Chart c = Gen::chart(static_cast<std::size_t>(g.integer(1, 4)));
    LForm b1 = g.lform(c, 2), b2 = g.lform(c, 2);
    OmniSection x = section(g, c, 2);
    bool ok = bfield(b1, bfield(b2, x)) == bfield(b1 + b2, x) && bfield(LForm(c, 2), x) == x;
    s.record(ok, "group law #" + std::to_string(i));
  }
  return s;
}

Sweep bfield_closed_morphism(int count, std::uint64_t seed) {
  Gen g(seed);
  Sweep s;
  for (int i = 0; i < count; ++i) {
    Chart c = Gen::chart(static_cast<std::size_t>(g.integer(2, 3)));
    LForm b = dL(g.lform(c, 1, 2));
    OmniSection x = section(g, c, 1), y = section(g, c, 1);
    s.record(dorfman(bfield(b, x), bfield(b, y)) == bfield(b, dorfman(x, y)), "closed B #" + std::to_string(i));
  }
  return s;
}

}  // namespace djt::testing
