#include "djt/moser/moser.hpp"
#include "properties.hpp"
#include "support.hpp"

namespace djt::testing {

MoserSweep moser_identities(int count, std::uint64_t seed) {
  Gen g(seed);
  MoserSweep s;
  for (int i = 0; i < count; ++i) {
    auto n = static_cast<std::size_t>(g.integer(1, 3));
    Chart c = Gen::chart(n);
    JacobiPair base = n == 3 && g.coin() ? known_jacobi_pair(g, c) : JacobiPair(g.multivector(c, 2, 1), g.multivector(c, 1, 1));
    Chart tc = DeformationFamily::time_chart(c);
    ScalarExpr t = ScalarExpr::symbol(n);
    LForm b1 = transfer(g.lform(c, 1, 1), tc), b2 = transfer(g.lform(c, 1, 1), tc);
    DeformationFamily fam(base, dL(b1.scaled(t) + b2.scaled(t * t)));
    std::string tag = "family #" + std::to_string(i);
    s.identity.record(moser_identity_holds(fam), tag);
    Mat<ScalarExpr> jt = deformed_sharp_scaled(fam).adjugate;
    Mat<ScalarExpr> sum = jt + Mat<ScalarExpr>(jt.transpose());
    s.antisymmetry.record(is_zero_matrix(sum), tag);
    Point p;
    for (const auto& v : c.coordinates()) p[v] = g.small_rational();
    QMat at0 = deformed_sharp(fam, Rational(0), p);
    s.initial.record(at0 == evaluate(sharp_matrix(base), c.values(p)), tag);
  }
  return s;
}

}  // namespace djt::testing
