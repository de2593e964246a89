#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "djt/homog/homog.hpp"
#include "djt/io/io.hpp"
#include "djt/moser/moser.hpp"
#include "djt/omni/omni.hpp"
#include "djt/split/split.hpp"

using namespace djt;
using io::InputError;
using io::Json;

namespace {

struct Options {
  std::string in;
  std::string out;
  std::string points;
  bool json = false;
  int steps = -1;
  double tol = 1e-6;
};

struct Check {
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
};

struct Report {
  std::string command;
  std::string input;
  std::vector<Check> checks;
  Json emitted;
  std::string error;

  Check& add(std::string name, bool pass) {
    checks.push_back({std::move(name), pass, {}});
    return checks.back();
  }
  int exit_code() const {
    if (!error.empty()) return 2;
    for (const auto& c : checks) {
      if (!c.pass) return 1;
    }
    return 0;
  }
  std::string result() const {
    switch (exit_code()) {
      case 0: return "pass";
      case 1: return "fail";
      default: return "invalid input";
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string matrix_text(const QMat& m) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string vector_text(const QVec& v) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i).str();
  os << ']';
  return os.str();
}

std::string basis_text(const Chart& c, bool with_one) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.dim(); ++i) s += (i ? ", d/d" : "d/d") + c.symbol(i);
  if (with_one) s += c.dim() ? ", 1" : "1";
  return s + ")";
}

Json load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void allow_keys(const Json& doc, std::initializer_list<const char*> keys) {
  if (!doc.is_object()) throw InputError("problem file must be a JSON object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : doc.items()) {
    if (!ok.count(k)) throw InputError("unknown key '" + k + "'");
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

JacobiPair read_pair(const Json& doc, const Chart& chart) {
  return JacobiPair(io::read_multivector(io::require(doc, "bivector"), chart, 2),
                    io::read_multivector(io::require(doc, "reeb"), chart, 1));
}

HomogeneousPoisson read_hp(const Json& doc, const Chart& chart) {
  return HomogeneousPoisson(io::read_multivector(io::require(doc, "bivector"), chart, 2),
                            io::read_multivector(io::require(doc, "homogeneity"), chart, 1));
}

Json pair_json(const JacobiPair& jp) {
  Json out = Json::object();
  out["chart"] = io::write_chart(jp.chart());
  out["bivector"] = io::write_tensor(jp.bivector());
  out["reeb"] = io::write_tensor(jp.reeb());
  return out;
}

Json hp_json(const HomogeneousPoisson& hp) {
  Json out = Json::object();
  out["chart"] = io::write_chart(hp.chart());
  out["bivector"] = io::write_tensor(hp.bivector());
  out["homogeneity"] = io::write_tensor(hp.homogeneity());
  return out;
}

void jacobi_check(Report& r, const std::string& name, const JacobiPair& jp) {
  JacobiDefect d = jacobi_defect(jp);
  Check& c = r.add(name, d.is_zero());
  c.details.push_back("1/2 [L,L] + E ^ L: " + io::tensor_text(d.structure));
  c.details.push_back("Lie_E L: " + io::tensor_text(d.reeb));
}

void homogeneity_check(Report& r, const std::string& name, const HomogeneousPoisson& hp) {
  HomogeneityDefect d = homogeneity_defect(hp);
  Check& c = r.add(name, d.is_zero());
  c.details.push_back("[pi,pi]: " + io::tensor_text(d.poisson));
  c.details.push_back("Lie_Z pi + pi: " + io::tensor_text(d.homogeneity));
}

std::string variable_of(const Json& doc) {
  const Json& v = io::require(doc, "variable");
  if (!v.is_string()) throw InputError("'variable' must be a string");
  return v.get<std::string>();
}

std::vector<Point> read_points(const Json& doc, const Chart& chart, const Options& opt) {
  Json list;
  if (!opt.points.empty()) {
    list = load(opt.points);
    if (list.is_object() && list.contains("points")) list = Json(list.at("points"));
  } else {
    list = io::require(doc, "points");
  }
  if (!list.is_array() || list.empty()) throw InputError("points must be a nonempty array of point objects");
  std::vector<Point> out;
  for (const auto& p : list) out.push_back(io::read_point(p, chart));
  return out;
}

// check-jacobi

void cmd_check_jacobi(Report& r, const Json& doc, const Options&) {
  allow_keys(doc, {"chart", "bivector", "reeb"});
  Chart chart = io::read_chart(io::require(doc, "chart"));
  JacobiPair jp = read_pair(doc, chart);
  jacobi_check(r, "jacobi_defect", jp);
  InvolutivityReport inv = involutivity_check(jp);
  Check& c = r.add("involutivity", inv.involutive());
  c.details.push_back("brackets: " + std::to_string(inv.brackets) + ", failures: " + std::to_string(inv.failures));
  if (inv.first_mismatch) {
    c.details.push_back("first mismatch: X = " + io::tensor_text(inv.first_mismatch->symbol()) +
                        ", f = " + to_string(inv.first_mismatch->scalar(), chart));
  }
}

// homogenize / dehomogenize

void cmd_homogenize(Report& r, const Json& doc, const Options&) {
  allow_keys(doc, {"chart", "bivector", "reeb", "variable"});
  Chart chart = io::read_chart(io::require(doc, "chart"));
  JacobiPair jp = read_pair(doc, chart);
  std::string u = variable_of(doc);
  if (chart.slot_of(u)) throw InputError("variable '" + u + "' collides with a symbol of chart " + chart.name());
  HomogeneousPoisson hp = homogenize(jp, u);
  homogeneity_check(r, "homogeneity_defect", hp);
  r.emitted = hp_json(hp);
  r.emitted["variable"] = u;
}

void cmd_dehomogenize(Report& r, const Json& doc, const Options&) {
  allow_keys(doc, {"chart", "bivector", "homogeneity", "variable"});
  Chart chart = io::read_chart(io::require(doc, "chart"));
  HomogeneousPoisson hp = read_hp(doc, chart);
  std::string u = variable_of(doc);
  auto ui = chart.coordinate_index(u);
  if (!ui) throw InputError("variable '" + u + "' is not a coordinate of chart " + chart.name());
  Multivector euler(chart, 1);
  euler.set(IndexSet{1} << *ui, ScalarExpr::symbol(*ui));
  if (!(hp.homogeneity() == euler)) {
    throw InputError("dehomogenize requires Z = " + u + " d/d" + u + " exactly, got " + io::tensor_text(hp.homogeneity()));
  }
  homogeneity_check(r, "homogeneity_defect", hp);
  if (!r.checks.back().pass) return;
  JacobiPair jp;
  try {
    jp = dehomogenize(hp, u);
  } catch (const DomainError& e) {
    r.add("dehomogenize", false).details.push_back(e.what());
    return;
  }
  jacobi_check(r, "jacobi_defect", jp);
  r.emitted = pair_json(jp);
}

// split

void cmd_split(Report& r, const Json& doc, const Options&) {
  allow_keys(doc, {"chart", "kind", "k", "fiber_dim", "bivector", "reeb", "homogeneity"});
  const Json& kj = io::require(doc, "kind");
  if (!kj.is_string()) throw InputError("'kind' must be a string");
  SplitKind kind;
  try {
    kind = parse_split_kind(kj.get<std::string>());
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  if (doc.contains("k") == doc.contains("fiber_dim")) throw InputError("give exactly one of 'k' and 'fiber_dim'");
  int fiber_dim = 0;
  if (doc.contains("k")) {
    if (!doc.at("k").is_number_integer()) throw InputError("'k' must be an integer");
    int k = doc.at("k").get<int>();
    fiber_dim = kind == SplitKind::Contact ? 2 * k + 1 : 2 * k;
  } else {
    if (!doc.at("fiber_dim").is_number_integer()) throw InputError("'fiber_dim' must be an integer");
    fiber_dim = doc.at("fiber_dim").get<int>();
  }
  Chart chart = io::read_chart(io::require(doc, "chart"));
  SplitModel model;
  try {
    model = SplitModel::make(kind, fiber_dim, chart.coordinates());
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  for (const auto& p : chart.parameters()) {
    for (const auto& f : model.fiber_vars) {
      if (p == f) throw InputError("parameter '" + p + "' collides with fiber variable '" + f + "'");
    }
  }
  if (kind == SplitKind::Cosymplectic) {
    if (doc.contains("homogeneity")) throw InputError("cosymplectic transversal data is (bivector, reeb)");
    JacobiPair base = read_pair(doc, chart);
    jacobi_check(r, "transversal_defect", base);
    JacobiPair m = assemble_cosymplectic(base, model.k());
    jacobi_check(r, "model_defect", m);
    r.emitted = pair_json(m);
  } else {
    if (doc.contains("reeb")) throw InputError(to_string(kind) + " transversal data is (bivector, homogeneity)");
    HomogeneousPoisson base = read_hp(doc, chart);
    homogeneity_check(r, "transversal_defect", base);
    if (kind == SplitKind::Contact) {
      JacobiPair m = assemble_contact(base, model.k());
      jacobi_check(r, "model_defect", m);
      r.emitted = pair_json(m);
    } else {
      HomogeneousPoisson m = assemble_homogeneous_poisson(base, model.k(), kind == SplitKind::HomogeneousPoissonCaseI);
      homogeneity_check(r, "model_defect", m);
      r.emitted = hp_json(m);
    }
  }
}

// dirac

void cmd_dirac(Report& r, const Json& doc, const Options& opt) {
  allow_keys(doc, {"chart", "bivector", "reeb", "normal", "connection", "points", "expect"});
  Chart chart = io::read_chart(io::require(doc, "chart"));
  JacobiPair jp = read_pair(doc, chart);
  const Json& nj = io::require(doc, "normal");
  if (!nj.is_array()) throw InputError("'normal' must be an array of coordinate names");
  std::vector<std::string> normal;
  for (const auto& v : nj) {
    if (!v.is_string()) throw InputError("'normal' must be an array of coordinate names");
    normal.push_back(v.get<std::string>());
  }
  std::optional<TransversalSpec> spec;
  try {
    spec.emplace(chart, normal);
    if (doc.contains("connection")) spec.emplace(chart, normal, io::read_form(doc.at("connection"), spec->submanifold(), 1));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  std::optional<TransversalKind> expect;
  if (doc.contains("expect")) {
    const Json& e = doc.at("expect");
    for (auto k : {TransversalKind::Cosymplectic, TransversalKind::Cocontact, TransversalKind::Neither}) {
      if (e.is_string() && e.get<std::string>() == to_string(k)) expect = k;
    }
    if (!expect) throw InputError("'expect' must be one of cosymplectic, cocontact, neither");
  }
  std::vector<Point> points = read_points(doc, chart, opt);
  for (const Point& p : points) {
    for (const auto& v : chart.coordinates()) {
      if (!p.count(v)) throw InputError("point " + io::point_text(p, chart) + " does not give coordinate '" + v + "'");
    }
    try {
      spec->require_on_submanifold(p);
    } catch (const DomainError& e) {
      throw InputError("point " + io::point_text(p, chart) + " is off N: " + e.what());
    }
    TransversalClass tc;
    try {
      tc = classify_transversal(jp, *spec, p);
    } catch (const TransversalityError& e) {
      throw InputError("point " + io::point_text(p, chart) + ": " + e.what());
    }
    bool ok = tc.kind != TransversalKind::Neither && (!expect || *expect == tc.kind);
    std::vector<std::string> lines;
    lines.push_back("kind: " + to_string(tc.kind) + ", rank " + std::to_string(tc.intersection_rank));
    if (tc.kind == TransversalKind::Cosymplectic) {
      ThetaForm th = theta(jp, *spec, p);
      bool antisym = is_zero_matrix(QMat(th.matrix + th.matrix.transpose()));
      bool nondeg = rank(th.matrix) == th.matrix.rows();
      ok = ok && antisym && nondeg;
      std::string order;
      for (const auto& v : th.normal_vars) order += (order.empty() ? "" : ", ") + v;
      lines.push_back(std::string("theta ") + (nondeg ? "nondegenerate" : "degenerate") +
                      (antisym ? "" : " (not antisymmetric)") + " in (" + order + "): " + matrix_text(th.matrix));
    } else if (tc.kind == TransversalKind::Cocontact) {
      HomogeneousPoissonType hp = homogeneous_poisson_type_check(tc.backwards, spec->connection());
      ok = ok && hp.is_type;
      const Chart& n = spec->submanifold();
      if (hp.generator) lines.push_back("generator in " + basis_text(n, true) + ": " + vector_text(*hp.generator));
      if (hp.homogeneity) lines.push_back("generator = r (1 - Z), Z in " + basis_text(n, false) + ": " + vector_text(*hp.homogeneity));
    }
    if (expect && *expect != tc.kind) lines.push_back("expected " + to_string(*expect));
    Check& c = r.add("transversal " + io::point_text(p, chart), ok);
    c.details = lines;
  }
}

// moser

void cmd_moser(Report& r, const Json& doc, const Options& opt) {
  allow_keys(doc, {"chart", "bivector", "reeb", "time", "sigma", "points", "t0", "h", "steps"});
  Chart chart = io::read_chart(io::require(doc, "chart"));
  JacobiPair base = read_pair(doc, chart);
  std::string tvar = "t";
  if (doc.contains("time")) {
    if (!doc.at("time").is_string()) throw InputError("'time' must be a string");
    tvar = doc.at("time").get<std::string>();
  }
  std::optional<DeformationFamily> fam;
  try {
    Chart tc = DeformationFamily::time_chart(chart, tvar);
    fam.emplace(base, io::read_lform(io::require(doc, "sigma"), tc, 2), tvar);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  Rational t0 = doc.contains("t0") ? io::read_rational(doc.at("t0"), "t0") : Rational(1, 4);
  Rational h = doc.contains("h") ? io::read_rational(doc.at("h"), "h") : Rational(1, 64);
  if (!(h > Rational(0)) || t0 - h < Rational(0) || t0 + h > Rational(1)) throw InputError("need h > 0 and 0 <= t0 - h, t0 + h <= 1");
  int steps = opt.steps;
  if (steps < 0) {
    steps = 0;
    if (doc.contains("steps")) {
      if (!doc.at("steps").is_number_integer() || doc.at("steps").get<int>() < 0) throw InputError("'steps' must be a nonnegative integer");
      steps = doc.at("steps").get<int>();
    }
  }
  if (!opt.out.empty() && steps == 0) throw InputError("--out writes the drift table and needs a positive step count");
  std::vector<Point> points = read_points(doc, chart, opt);
  for (const Point& p : points) {
    for (const auto& v : chart.coordinates()) {
      if (!p.count(v)) throw InputError("point " + io::point_text(p, chart) + " does not give coordinate '" + v + "'");
    }
    for (const auto& v : chart.parameters()) {
      if (!p.count(v)) throw InputError("point " + io::point_text(p, chart) + " does not give parameter '" + v + "'");
    }
  }

  try {
    moser_alpha(*fam);
    r.add("alpha_identity", true).details.push_back("d sigma/dt = -d_L alpha");
  } catch (const DomainError& e) {
    r.add("alpha_identity", false).details.push_back(e.what());
    return;
  }
  r.add("moser_identity", moser_identity_holds(*fam)).details.push_back("d/dt J_t = -J_t (d sigma/dt)-flat J_t, symbolic");

  FlowReport combined;
  for (const Point& p : points) {
    std::string where = io::point_text(p, chart);
    SingularTimes st = singular_times(*fam, p);
    if (!st.empty()) {
      Check& c = r.add("regular " + where, false);
      for (const auto& t : st.exact) c.details.push_back("singular at t=" + t.str() + " " + where);
      for (double t : st.approximate) c.details.push_back("singular at t~" + fmt("%.12g", t) + " " + where);
      continue;
    }
    MoserDerivativeReport a = verify_moser_derivative(*fam, t0, p, h);
    MoserDerivativeReport b = verify_moser_derivative(*fam, t0, p, h / Rational(2));
    Check& c = r.add("derivative " + where, a.exact_identity && b.exact_identity);
    c.details.push_back("t0 = " + t0.str() + ", exact identity " + (a.exact_identity ? "holds" : "fails"));
    c.details.push_back("fd deviation h=" + h.str() + ": " + fmt("%.6e", a.deviation));
    c.details.push_back("fd deviation h=" + (h / Rational(2)).str() + ": " + fmt("%.6e", b.deviation));
    c.details.push_back("ratio: " + (a.deviation > 0 && b.deviation > 0 ? fmt("%.4f", a.deviation / b.deviation) : std::string("-")));
    if (steps == 0) continue;
    try {
      FlowReport f = flow_invariance_probe(*fam, p, steps);
      Check& fc = r.add("flow " + where, f.drift < opt.tol);
      fc.details.push_back("steps " + std::to_string(steps) + ", drift " + fmt("%.6e", f.drift) + " (tol " + fmt("%.1e", opt.tol) + ")");
      std::string end;
      for (std::size_t i = 0; i < f.endpoint.size(); ++i) end += (i ? ", " : "") + chart.symbol(i) + "=" + fmt("%.12g", f.endpoint[i]);
      fc.details.push_back("endpoint (" + end + ")");
      if (combined.table.empty()) {
        combined = f;
      } else {
        combined.drift = std::max(combined.drift, f.drift);
        for (std::size_t i = 0; i < f.table.size(); ++i) combined.table[i].second = std::max(combined.table[i].second, f.table[i].second);
      }
    } catch (const SingularDeformation& e) {
      r.add("flow " + where, false).details.push_back(std::string(e.what()) + " " + where);
    }
  }
  if (!opt.out.empty()) {
    if (combined.table.empty()) {
      combined.table.emplace_back(0.0, 0.0);
    }
    write_file(opt.out, drift_csv(combined));
  }
}

void print_human(const Report& r, double ms) {
  std::cout << "command: " << r.command << "\n";
  std::cout << "input: " << r.input << "\n";
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "\n";
    for (const auto& d : c.details) std::cout << "  " << d << "\n";
  }
  if (!r.error.empty()) std::cout << "error: " << r.error << "\n";
  if (!r.emitted.is_null()) std::cout << "emitted: " << r.emitted.dump() << "\n";
  std::cout << "result: " << r.result() << "\n";
  std::cout << "exit: " << r.exit_code() << "\n";
  std::cout << "time_ms: " << fmt("%.3f", ms) << "\n";
}

void print_json(const Report& r, double ms) {
  Json out = Json::object();
  out["command"] = r.command;
  out["input"] = r.input;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  out["checks"] = checks;
  if (!r.error.empty()) out["error"] = r.error;
  if (!r.emitted.is_null()) out["emitted"] = r.emitted;
  out["result"] = r.result();
  out["exit_code"] = r.exit_code();
  out["time_ms"] = std::round(ms * 1000) / 1000;
  std::cout << out.dump(2) << "\n";
}

using Command = void (*)(Report&, const Json&, const Options&);

int run(const std::string& name, Command cmd, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  Report r;
  r.command = name;
  r.input = opt.in;
  try {
    cmd(r, load(opt.in), opt);
    if (!r.emitted.is_null() && !opt.out.empty()) write_file(opt.out, io::write_document(r.emitted));
  } catch (const InputError& e) {
    r.error = e.what();
  } catch (const ParseError& e) {
    r.error = std::string("expression: ") + e.what();
  } catch (const ChartMismatch& e) {
    r.error = e.what();
  } catch (const Error& e) {
    r.error = std::string("cannot evaluate: ") + e.what();
  }
  if (!r.error.empty()) {
    r.checks.clear();
    r.emitted = Json();
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (opt.json) {
    print_json(r, ms);
  } else {
    print_human(r, ms);
  }
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for Jacobi structures on charts with a trivialized line bundle"};
  app.require_subcommand(1);
  Options opt;
  struct Entry {
    const char* name;
    const char* help;
    Command cmd;
    bool points, out, steps;
  };
  const std::vector<Entry> entries{
      {"check-jacobi", "Check the Jacobi conditions and graph involutivity of (L, E)", cmd_check_jacobi, false, false, false},
      {"homogenize", "Homogenize (L, E) to a homogeneous Poisson pair (pi, Z)", cmd_homogenize, false, true, false},
      {"dehomogenize", "Recover (L, E) from (pi, Z = u d/du)", cmd_dehomogenize, false, true, false},
      {"split", "Assemble a splitting model from transversal data", cmd_split, false, true, false},
      {"dirac", "Classify a transversal and tabulate the intersection ranks", cmd_dirac, true, false, false},
      {"moser", "Check the Moser identities and probe the flow", cmd_moser, true, true, true},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    CLI::App* s = app.add_subcommand(e.name, e.help);
    s->add_option("--in", opt.in, "Problem file (JSON)")->required();
    s->add_flag("--json", opt.json, "Machine-readable report");
    if (e.out) s->add_option("--out", opt.out, e.steps ? "Drift table (CSV)" : "Emitted tensors (JSON)");
    if (e.points) s->add_option("--points", opt.points, "Evaluation points (JSON array), replacing the file's");
    if (e.steps) {
      s->add_option("--steps", opt.steps, "RK4 steps for the flow probe; 0 skips it")->check(CLI::NonNegativeNumber);
      s->add_option("--tol", opt.tol, "Drift tolerance")->check(CLI::PositiveNumber);
    }
    subs.emplace_back(s, &e);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (const auto& [s, e] : subs) {
    if (s->parsed()) return run(e->name, e->cmd, opt);
  }
  return 2;
}
