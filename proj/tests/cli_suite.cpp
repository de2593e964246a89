#include "cli_suite.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "djt/io/io.hpp"
#include "djt/jacobi/jacobi.hpp"

namespace fs = std::filesystem;

namespace djt::testing {
namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string expand(std::string s, const std::string& scratch) {
  for (std::size_t i = s.find('@'); i != std::string::npos; i = s.find('@', i + scratch.size())) s.replace(i, 1, scratch);
  return s;
}

struct Tally {
  CliSweep& s;
  void check(bool ok, const std::string& what) {
    ++s.runs;
    if (!ok && s.failures++ == 0) s.first_failure = what;
  }
};

}  // namespace

std::string data_dir() { return DJT_DATA_DIR; }

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(DJT_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string strip_timing(const std::string& report) {
  std::istringstream in(report);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("time_ms:", 0) == 0 || line.find("\"time_ms\":") != std::string::npos) continue;
    out += line + "\n";
  }
  return out;
}

std::vector<CliCase> cli_cases() {
  return {
      {"check-jacobi", "zero_r3.json", "", 0, {"[pass] jacobi_defect", "[pass] involutivity"}},
      {"check-jacobi", "contact_r3.json", "", 0, {"[pass] jacobi_defect", "failures: 0"}},
      {"check-jacobi", "perturbed_contact_r3.json", "", 1, {"1/2 [L,L] + E ^ L: {u,q,p}: -q*p", "Lie_E L: {q,p}: -1"}},
      {"check-jacobi", "unknown_symbol.json", "", 2, {"unknown symbol 'w'"}},
      {"homogenize", "homogenize_contact.json", "--out @/h.json", 0, {"[pass] homogeneity_defect"}},
      {"homogenize", "homogenize_zero.json", "", 0, {"\"bivector\":[]", "\"homogeneity\":[[[\"s\"],\"s\"]]"}},
      {"homogenize", "homogenize_perturbed.json", "", 1, {"[FAIL] homogeneity_defect", "emitted:"}},
      {"homogenize", "homogenize_collision.json", "", 2, {"collides"}},
      {"dehomogenize", "dehomogenize_contact.json", "", 0, {"[pass] jacobi_defect"}},
      {"dehomogenize", "dehomogenize_not_homogeneous.json", "", 1, {"Lie_Z pi + pi: {q,p}: 1"}},
      {"dehomogenize", "dehomogenize_bad_z.json", "", 2, {"requires Z = s d/ds"}},
      {"split", "split_contact.json", "", 0, {"\"bivector\":[[[\"u\",\"p\"],\"p\"],[[\"q\",\"p\"],\"1\"]],\"reeb\":[[[\"u\"],\"1\"]]"}},
      {"split", "split_cosymplectic.json", "", 0, {"[pass] model_defect"}},
      {"split", "split_cosymplectic_fail.json", "", 1, {"[FAIL] transversal_defect", "[FAIL] model_defect"}},
      {"split", "split_case_i.json", "", 0, {"\"bivector\":[[[\"q\",\"p\"],\"-1\"]]", "\"homogeneity\":[[[\"p\"],\"p + 1\"]]"}},
      {"split", "split_case_ii.json", "", 0, {"[pass] model_defect"}},
      {"split", "split_parity.json", "", 2, {"parity"}},
      {"dirac", "dirac_cosymplectic.json", "", 0, {"kind: cosymplectic, rank 0", "theta nondegenerate in (q, p): [[0, 1], [-1, 0]]"}},
      {"dirac", "dirac_contact.json", "", 0, {"kind: cocontact, rank 1", "generator in (d/dy, 1): [-1, 1]", "Z in (d/dy): [1]"}},
      {"dirac", "dirac_contact_connection.json", "", 0, {"Z in (d/dy): [1/4]"}},
      {"dirac", "dirac_expect_mismatch.json", "", 1, {"expected cocontact"}},
      {"dirac", "dirac_off_n.json", "", 2, {"is off N"}},
      {"dirac", "dirac_nontransversal.json", "", 2, {"not transversal"}},
      {"moser", "moser_zero.json", "", 0, {"drift 0.000000e+00"}},
      {"moser", "moser_r2.json", "--out @/drift.csv", 0, {"exact identity holds", "ratio: 4.0", "[pass] flow (q=1, p=2)"}},
      {"moser", "moser_r2.json", "--points " + data_dir() + "/moser_points.json --steps 0", 0, {"derivative (q=1/3, p=7/2)"}},
      {"moser", "moser_singular.json", "", 1, {"singular at t=1/2 (q=1, p=2)"}},
      {"moser", "moser_not_closed.json", "", 2, {"not d_L-closed"}},
  };
}

CliSweep cli_end_to_end() {
  CliSweep sweep;
  Tally t{sweep};
  fs::path scratch = fs::temp_directory_path() / ("djt_cli_" + std::to_string(getpid()));
  fs::create_directories(scratch);
  std::set<std::string> used;

  for (const auto& c : cli_cases()) {
    used.insert(c.fixture);
    for (const auto& entry : fs::directory_iterator(data_dir())) {
      if (c.extra.find(entry.path().filename().string()) != std::string::npos) used.insert(entry.path().filename().string());
    }
    std::string args = c.command + " --in " + data_dir() + "/" + c.fixture + " " + expand(c.extra, scratch.string());
    std::string label = c.command + " " + c.fixture;
    CliRun a = run_cli(args);
    CliRun b = run_cli(args);
    t.check(a.exit == c.exit, label + ": exit " + std::to_string(a.exit) + ", expected " + std::to_string(c.exit) + "\n" + a.out);
    t.check(b.exit == a.exit && strip_timing(a.out) == strip_timing(b.out), label + ": reports differ between runs");
    for (const auto& e : c.expect) t.check(a.out.find(e) != std::string::npos, label + ": missing '" + e + "'\n" + a.out);
    t.check(a.out.find("exit: " + std::to_string(c.exit) + "\n") != std::string::npos, label + ": report exit line");
    CliRun ja = run_cli(args + " --json");
    CliRun jb = run_cli(args + " --json");
    t.check(ja.exit == c.exit, label + " --json: exit " + std::to_string(ja.exit));
    t.check(strip_timing(ja.out) == strip_timing(jb.out), label + " --json: reports differ between runs");
    bool parses = io::Json::accept(ja.out);
    t.check(parses && io::Json::parse(ja.out).value("exit_code", -1) == c.exit, label + " --json: exit_code member");
  }

  // Round trip through the emitted files, against the canonical form of the source pair.
  io::Json src = io::Json::parse(slurp(fs::path(data_dir()) / "homogenize_contact.json"));
  Chart chart = io::read_chart(src.at("chart"));
  io::Json canon = io::Json::object();
  canon["chart"] = io::write_chart(chart);
  canon["bivector"] = io::write_tensor(io::read_multivector(src.at("bivector"), chart, 2));
  canon["reeb"] = io::write_tensor(io::read_multivector(src.at("reeb"), chart, 1));
  t.check(slurp(scratch / "h.json") == slurp(fs::path(data_dir()) / "dehomogenize_contact.json"),
          "homogenize output differs from the shipped dehomogenize fixture");
  CliRun back = run_cli("dehomogenize --in " + (scratch / "h.json").string() + " --out " + (scratch / "back.json").string());
  t.check(back.exit == 0, "round trip: dehomogenize exit " + std::to_string(back.exit));
  t.check(slurp(scratch / "back.json") == io::write_document(canon), "round trip: dehomogenized file differs from canonical input");

  // CSV drift table: header plus steps + 1 rows, max drift over points.
  std::istringstream csv(slurp(scratch / "drift.csv"));
  std::string line;
  int rows = 0;
  bool header = std::getline(csv, line) && line == "t,drift";
  bool shaped = true;
  while (std::getline(csv, line)) {
    ++rows;
    shaped = shaped && line.size() > 9 && line[8] == ',';
  }
  t.check(header && shaped && rows == 1001, "drift CSV shape (" + std::to_string(rows) + " rows)");

  for (const auto& entry : fs::directory_iterator(data_dir())) {
    std::string name = entry.path().filename().string();
    t.check(used.count(name) == 1, "fixture " + name + " is not exercised");
  }
  fs::remove_all(scratch);
  return sweep;
}

}  // namespace djt::testing
