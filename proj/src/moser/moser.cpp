#include "djt/moser/moser.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "djt/error.hpp"

namespace djt {

namespace {

JacobiPair on_chart(const JacobiPair& jp, const Chart& c) {
  return JacobiPair(transfer(jp.bivector(), c), transfer(jp.reeb(), c));
}

Mat<ScalarExpr> identity(Eigen::Index n) {
  Mat<ScalarExpr> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = ScalarExpr(i == j ? 1 : 0);
  }
  return m;
}

Mat<ScalarExpr> mapped(const Mat<ScalarExpr>& m, const std::function<ScalarExpr(const ScalarExpr&)>& f) {
  Mat<ScalarExpr> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  }
  return out;
}

Mat<ScalarExpr> product(const Mat<ScalarExpr>& a, const Mat<ScalarExpr>& b) {
  Mat<ScalarExpr> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      ScalarExpr acc;
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        if (!a(i, k).is_zero() && !b(k, j).is_zero()) acc += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

std::vector<Rational> time_values(const DeformationFamily& fam, const Point& point, const Rational& t) {
  Point p = point;
  p[fam.time_variable()] = t;
  return fam.chart().values(p);
}

// Coordinates and base parameters fixed at the point, t kept symbolic.
std::vector<std::optional<Rational>> at_point(const DeformationFamily& fam, const Point& point) {
  Point p = point;
  p.erase(fam.time_variable());
  const Chart& c = fam.chart();
  std::vector<std::optional<Rational>> vals(c.symbol_count());
  for (std::size_t i = 0; i < c.symbol_count(); ++i) {
    if (i == fam.time_slot()) continue;
    auto it = p.find(c.symbol(i));
    if (it == p.end()) throw DomainError("point has no value for '" + c.symbol(i) + "'");
    vals[i] = it->second;
  }
  return vals;
}

QVec alpha_vector(const LForm& alpha, std::span<const Rational> vals) {
  const auto n = static_cast<Eigen::Index>(alpha.chart().dim());
  QVec v(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = alpha.plain()[IndexSet{1} << i].evaluate(vals);
  v(n) = alpha.jetpart()[0].evaluate(vals);
  return v;
}

std::string describe(const Rational& t, const Point& p) {
  std::string s = "deformation is singular at t=" + t.str() + " (";
  bool first = true;
  for (const auto& [k, v] : p) {
    s += (first ? "" : ", ") + k + "=" + v.str();
    first = false;
  }
  return s + ")";
}

// Floating-point evaluator for a ScalarExpr.
class Compiled {
 public:
  Compiled() = default;
  explicit Compiled(const ScalarExpr& e) : num_(terms(e.numerator())), den_(terms(e.denominator())) {}
  double operator()(std::span<const double> v) const { return eval(num_, v) / eval(den_, v); }

 private:
  struct Term {
    double c;
    std::vector<std::pair<std::size_t, unsigned>> powers;
  };
  static std::vector<Term> terms(const Polynomial& p) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
      Term term{t.coeff.to_double(), {}};
      for (std::size_t s = 0; s < 16; ++s) {
        if (t.mono.exponent(s) > 0) term.powers.emplace_back(s, t.mono.exponent(s));
      }
      out.push_back(std::move(term));
    }
    return out;
  }
  static double eval(const std::vector<Term>& ts, std::span<const double> v) {
    double acc = 0;
    for (const auto& t : ts) {
      double x = t.c;
      for (const auto& [s, e] : t.powers) {
        for (unsigned k = 0; k < e; ++k) x *= v[s];
      }
      acc += x;
    }
    return acc;
  }
  std::vector<Term> num_, den_;
};

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

Chart DeformationFamily::time_chart(const Chart& base, const std::string& tvar) {
  if (base.slot_of(tvar)) throw DomainError("time variable '" + tvar + "' already names a symbol of " + base.name());
  std::vector<std::string> params = base.parameters();
  params.push_back(tvar);
  return Chart(base.name(), base.coordinates(), params);
}

DeformationFamily::DeformationFamily(JacobiPair base, LForm sigma, std::string tvar)
    : base_(std::move(base)), sigma_(std::move(sigma)), tvar_(std::move(tvar)) {
  Chart tc = time_chart(base_.chart(), tvar_);
  require_same_chart(sigma_.chart(), tc, "deformation family");
  if (sigma_.degree() != 2) throw DomainError("deformation family: sigma must have degree 2");
  time_slot_ = *tc.slot_of(tvar_);
  std::vector<std::optional<Rational>> at0(tc.symbol_count());
  at0[time_slot_] = Rational(0);
  if (!sigma_.mapped([&](const ScalarExpr& v) { return v.substitute(at0); }).is_zero()) {
    throw DomainError("deformation family: sigma does not vanish at t=0");
  }
  if (!dL(sigma_).is_zero()) throw DomainError("deformation family: sigma is not d_L-closed");
}

Mat<ScalarExpr> flat_matrix(const LForm& w) {
  if (w.degree() != 2) throw DomainError("flat_matrix needs a degree-2 LForm");
  const Chart& c = w.chart();
  const auto n = static_cast<Eigen::Index>(c.dim());
  Mat<ScalarExpr> m(n + 1, n + 1);
  for (Eigen::Index j = 0; j <= n; ++j) {
    Derivation d = j < n ? Derivation(Multivector::basis(c, {static_cast<std::size_t>(j)}), ScalarExpr())
                         : Derivation::identity(c);
    LForm r = iota(d, w);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = r.plain()[IndexSet{1} << i];
    m(n, j) = r.jetpart()[0];
  }
  return m;
}

Mat<ScalarExpr> deformation_matrix(const DeformationFamily& fam) {
  Mat<ScalarExpr> s = sharp_matrix(on_chart(fam.base(), fam.chart()));
  Mat<ScalarExpr> d = product(flat_matrix(fam.sigma()), s);
  return Mat<ScalarExpr>(identity(d.rows()) + d);
}

ScaledInverse deformed_sharp_scaled(const DeformationFamily& fam) {
  Mat<ScalarExpr> s = sharp_matrix(on_chart(fam.base(), fam.chart()));
  ScaledInverse inv;
  try {
    inv = minor_scaled_inverse(deformation_matrix(fam));
  } catch (const DomainError&) {
    throw DomainError("deformation matrix is singular for all t");
  }
  return {product(s, inv.adjugate), inv.det};
}

Mat<ScalarExpr> deformed_sharp_symbolic(const DeformationFamily& fam) {
  ScaledInverse j = deformed_sharp_scaled(fam);
  ScalarExpr det(j.det);
  return mapped(j.adjugate, [&](const ScalarExpr& v) { return v / det; });
}

QMat deformed_sharp(const DeformationFamily& fam, const Rational& t0, const Point& point) {
  std::vector<Rational> vals = time_values(fam, point, t0);
  QMat s = evaluate(sharp_matrix(on_chart(fam.base(), fam.chart())), vals);
  QMat d = evaluate(deformation_matrix(fam), vals);
  try {
    return QMat(s * inverse(d));
  } catch (const DomainError&) {
    throw SingularDeformation(describe(t0, point), t0);
  }
}

LForm moser_alpha(const DeformationFamily& fam) {
  const Chart& c = fam.chart();
  const std::size_t ts = fam.time_slot();
  DiffForm theta = fam.sigma().jetpart();
  LForm alpha(-theta.partial(ts), DiffForm(c, 0));
  LForm rate = fam.sigma().mapped([ts](const ScalarExpr& v) { return v.partial(ts); });
  if (!(rate == -dL(alpha))) {
    throw DomainError("moser_alpha: d sigma/dt != -d_L alpha_t; contraction and d_L conventions disagree");
  }
  return alpha;
}

QVec moser_derivation(const DeformationFamily& fam, const Rational& t0, const Point& point) {
  QMat j = deformed_sharp(fam, t0, point);
  return QVec(-(j * alpha_vector(moser_alpha(fam), time_values(fam, point, t0))));
}

MoserDerivativeReport verify_moser_derivative(const DeformationFamily& fam, const Rational& t0, const Point& point,
                                              const Rational& h) {
  if (h.sign() <= 0) throw DomainError("finite-difference step must be positive");
  auto fix = at_point(fam, point);
  auto sub = [&](const ScalarExpr& v) { return v.substitute(fix); };
  const std::size_t ts = fam.time_slot();
  auto dt = [ts](const ScalarExpr& v) { return v.partial(ts); };

  Mat<ScalarExpr> s = mapped(sharp_matrix(on_chart(fam.base(), fam.chart())), sub);
  Mat<ScalarExpr> flat = mapped(flat_matrix(fam.sigma()), sub);
  Mat<ScalarExpr> deform = identity(s.rows()) + product(flat, s);
  if (minor_determinant(deform).is_zero()) throw DomainError("deformation matrix is singular for all t at the point");
  Mat<ScalarExpr> jt = product(s, minor_inverse(deform));
  Mat<ScalarExpr> lhs = mapped(jt, dt);
  Mat<ScalarExpr> rhs = -product(jt, product(mapped(flat, dt), jt));

  MoserDerivativeReport r;
  r.exact_identity = lhs == rhs;
  std::vector<Rational> vals = time_values(fam, point, t0);
  try {
    r.derivative = evaluate(lhs, vals);
  } catch (const DomainError&) {
    throw SingularDeformation(describe(t0, point), t0);
  }
  r.difference = (deformed_sharp(fam, t0 + h, point) - deformed_sharp(fam, t0 - h, point)) / (Rational(2) * h);
  r.deviation = to_double(QMat(r.difference - r.derivative)).cwiseAbs().maxCoeff();
  return r;
}

bool moser_identity_holds(const DeformationFamily& fam) {
  const std::size_t ts = fam.time_slot();
  auto dt = [ts](const ScalarExpr& v) { return v.partial(ts); };
  // J = N / det: N' det - N det' = -N (d sigma/dt)-flat N.
  ScaledInverse j = deformed_sharp_scaled(fam);
  ScalarExpr det(j.det), ddet = det.partial(ts);
  Mat<ScalarExpr> lhs = mapped(j.adjugate, [&](const ScalarExpr& v) { return v.partial(ts) * det - v * ddet; });
  return lhs == -product(j.adjugate, product(mapped(flat_matrix(fam.sigma()), dt), j.adjugate));
}

SingularTimes singular_times(const DeformationFamily& fam, const Point& point) {
  auto fix = at_point(fam, point);
  Mat<ScalarExpr> d = mapped(deformation_matrix(fam), [&](const ScalarExpr& v) { return v.substitute(fix); });
  ScalarExpr det = minor_determinant(d);
  if (det.is_zero()) throw DomainError("deformation matrix is singular for all t at the point");
  const std::size_t ts = fam.time_slot();
  // Square-free part, so repeated roots still change sign.
  Polynomial num = det.numerator();
  Polynomial g = gcd(num, num.derivative(ts));
  if (!g.is_constant()) num = num.divide_exact(g);
  auto coeffs = num.coefficients_in(ts);

  // Integer coefficients a_0..a_m of the determinant's numerator in t.
  unsigned deg = coeffs.empty() ? 0 : coeffs.rbegin()->first;
  std::vector<Rational> a(deg + 1, Rational(0));
  for (const auto& [e, p] : coeffs) a[e] = p.constant_value();
  mpz_class l = 1;
  for (const auto& c : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : a) z.push_back(c.numerator() * (l / c.denominator()));

  SingularTimes out;
  auto value = [&](const Rational& t) {
    Rational acc(0);
    for (std::size_t k = z.size(); k-- > 0;) acc = acc * t + Rational(z[k]);
    return acc;
  };
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) out.exact.push_back(Rational(0));
  if (deg > low && abs(z[low]) < mpz_class("1000000000000") && abs(z[deg]) < mpz_class("1000000000000")) {
    for (const auto& p : divisors(z[low])) {
      for (const auto& q : divisors(z[deg])) {
        Rational cand{mpq_class(p, q)};
        if (cand > Rational(1) || cand.is_zero()) continue;
        if (value(cand).is_zero() && std::find(out.exact.begin(), out.exact.end(), cand) == out.exact.end()) {
          out.exact.push_back(cand);
        }
      }
    }
  }
  std::sort(out.exact.begin(), out.exact.end());

  auto f = [&](double t) {
    double acc = 0;
    for (std::size_t k = z.size(); k-- > 0;) acc = acc * t + z[k].get_d();
    return acc;
  };
  const int grid = 1024;
  for (int i = 0; i < grid; ++i) {
    double lo = static_cast<double>(i) / grid, hi = static_cast<double>(i + 1) / grid;
    bool known = std::any_of(out.exact.begin(), out.exact.end(), [&](const Rational& r) {
      double v = r.to_double();
      return v >= lo - 1e-12 && v <= hi + 1e-12;
    });
    if (known || f(lo) * f(hi) >= 0) continue;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
    }
    out.approximate.push_back(0.5 * (lo + hi));
  }
  return out;
}

FlowReport flow_invariance_probe(const DeformationFamily& fam, const Point& point, int steps) {
  if (steps < 1) throw DomainError("flow probe needs at least one step");
  const Chart& c = fam.chart();
  const auto n = static_cast<Eigen::Index>(fam.dim());
  const std::size_t ts = fam.time_slot();

  ScaledInverse jt = deformed_sharp_scaled(fam);
  Mat<ScalarExpr> deform = deformation_matrix(fam);
  LForm alpha = moser_alpha(fam);
  std::vector<ScalarExpr> avec;
  for (Eigen::Index i = 0; i < n; ++i) avec.push_back(alpha.plain()[IndexSet{1} << i]);
  avec.push_back(alpha.jetpart()[0]);
  // Flow generator J_t-sharp(alpha_t) = (X, f).
  std::vector<ScalarExpr> gen(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i <= n; ++i) {
    for (Eigen::Index j = 0; j <= n; ++j) gen[static_cast<std::size_t>(i)] += jt.adjugate(i, j) * avec[static_cast<std::size_t>(j)];
    gen[static_cast<std::size_t>(i)] /= ScalarExpr(jt.det);
  }
  std::vector<Compiled> cgen, cgrad;  // cgrad[i * n + k] = d gen_i / dx_k
  for (Eigen::Index i = 0; i <= n; ++i) {
    cgen.emplace_back(gen[static_cast<std::size_t>(i)]);
    for (Eigen::Index k = 0; k < n; ++k) cgrad.emplace_back(gen[static_cast<std::size_t>(i)].partial(static_cast<std::size_t>(k)));
  }
  std::vector<Compiled> cj, cd;  // row-major (n+1) x (n+1)
  for (Eigen::Index i = 0; i <= n; ++i) {
    for (Eigen::Index j = 0; j <= n; ++j) {
      cj.emplace_back(jt.adjugate(i, j));
      cd.emplace_back(deform(i, j));
    }
  }
  auto at = [n](Eigen::Index i, Eigen::Index j) { return static_cast<std::size_t>(i * (n + 1) + j); };
  // Square-free part in t of det's numerator: a double root like (1 - 2 t q)^2 still changes its sign.
  Polynomial sqf = jt.det;
  if (sqf.is_zero()) throw DomainError("deformation matrix is singular for all t");
  Polynomial rep = gcd(sqf, sqf.derivative(ts));
  if (!rep.is_constant()) sqf = sqf.divide_exact(rep);
  Compiled csqf{ScalarExpr(sqf)}, cdet{ScalarExpr(jt.det)};
  double sign0 = 0;

  std::vector<double> vals(c.symbol_count());
  {
    Point p = point;
    p[fam.time_variable()] = Rational(0);
    std::vector<Rational> q = c.values(p);
    for (std::size_t i = 0; i < q.size(); ++i) vals[i] = q[i].to_double();
  }
  auto set = [&](double t, const Eigen::VectorXd& x) {
    for (Eigen::Index i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = x(i);
    vals[ts] = t;
  };
  auto check = [&](double t) {
    Eigen::MatrixXd d(n + 1, n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
      for (Eigen::Index j = 0; j <= n; ++j) d(i, j) = cd[at(i, j)](vals);
    }
    // det = 1 at t = 0, so a regular flow keeps it positive.
    double det = d.determinant();
    double side = csqf(vals) * sign0;
    if (!std::isfinite(det) || det < 1e-12 || !(side > 0)) {
      Rational rt{mpq_class(t)};
      throw SingularDeformation("deformation is singular along the flow near t=" + std::to_string(t), rt);
    }
  };

  // State: x (n), F (n x n, column-major), log G, H (n).
  const Eigen::Index size = n + n * n + 1 + n;
  auto rhs = [&](double t, const Eigen::VectorXd& y) {
    Eigen::VectorXd x = y.head(n);
    set(t, x);
    check(t);
    Eigen::Map<const Eigen::MatrixXd> f(y.data() + n, n, n);
    Eigen::MatrixXd dx(n, n);
    Eigen::VectorXd grad_f(n), xdot(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      xdot(i) = cgen[static_cast<std::size_t>(i)](vals);
      for (Eigen::Index k = 0; k < n; ++k) dx(i, k) = cgrad[static_cast<std::size_t>(i * n + k)](vals);
    }
    for (Eigen::Index k = 0; k < n; ++k) grad_f(k) = cgrad[static_cast<std::size_t>(n * n + k)](vals);
    Eigen::VectorXd out(size);
    out.head(n) = xdot;
    Eigen::MatrixXd fdot = dx * f;
    out.segment(n, n * n) = Eigen::Map<Eigen::VectorXd>(fdot.data(), n * n);
    out(n + n * n) = cgen[static_cast<std::size_t>(n)](vals);
    out.tail(n) = f.transpose() * grad_f;
    return out;
  };
  auto transported = [&](double t, const Eigen::VectorXd& y) {
    set(t, y.head(n));
    Eigen::MatrixXd s(n + 1, n + 1);
    double det = cdet(vals);
    for (Eigen::Index i = 0; i <= n; ++i) {
      for (Eigen::Index j = 0; j <= n; ++j) s(i, j) = cj[at(i, j)](vals) / det;
    }
    Eigen::Map<const Eigen::MatrixXd> f(y.data() + n, n, n);
    Eigen::MatrixXd finv_t = f.transpose().inverse();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
    a.topLeftCorner(n, n) = finv_t;
    a.topRightCorner(n, 1) = -finv_t * y.tail(n);
    a(n, n) = 1;
    return Eigen::MatrixXd(a.transpose() * s * a / std::exp(y(n + n * n)));
  };

  Eigen::VectorXd y = Eigen::VectorXd::Zero(size);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = vals[static_cast<std::size_t>(i)];
  Eigen::Map<Eigen::MatrixXd>(y.data() + n, n, n).setIdentity();
  sign0 = csqf(vals) < 0 ? -1 : 1;
  check(0);
  Eigen::MatrixXd j0 = transported(0, y);

  FlowReport r;
  r.steps = steps;
  r.table.emplace_back(0.0, 0.0);
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    double t = k * h;
    Eigen::VectorXd k1 = rhs(t, y);
    Eigen::VectorXd k2 = rhs(t + h / 2, y + h / 2 * k1);
    Eigen::VectorXd k3 = rhs(t + h / 2, y + h / 2 * k2);
    Eigen::VectorXd k4 = rhs(t + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    double tn = (k + 1) * h;
    set(tn, y.head(n));
    check(tn);
    double drift = (transported(tn, y) - j0).cwiseAbs().maxCoeff();
    if (!std::isfinite(drift)) throw SingularDeformation("flow left the domain near t=" + std::to_string(tn), Rational{mpq_class(tn)});
    r.drift = std::max(r.drift, drift);
    r.table.emplace_back(tn, drift);
  }
  r.endpoint.assign(y.data(), y.data() + n);
  return r;
}

std::string drift_csv(const FlowReport& r) {
  std::string out = "t,drift\n";
  char buf[64];
  for (const auto& [t, d] : r.table) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6e\n", t, d);
    out += buf;
  }
  return out;
}

}  // namespace djt
