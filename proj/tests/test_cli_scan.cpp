#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "acs/errors.hpp"
#include "acs/io.hpp"
#include "acs/moments.hpp"
#include "acs/scan.hpp"
#include "acs/states.hpp"

using namespace acs;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "acs_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with stdout and stderr captured; returns the exit status.
int run_cli(const std::string& args, std::string* out = nullptr, std::string* err = nullptr) {
  const auto o = scratch("stdout.txt"), e = scratch("stderr.txt");
  const std::string cmd = std::string(ACS_CLI_PATH) + " " + args + " >" + o.string() + " 2>" + e.string();
  const int status = std::system(cmd.c_str());
  if (out) *out = slurp(o);
  if (err) *err = slurp(e);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ScanConfig fig1_config() {
  ScanConfig c;
  c.family = "w0_family";
  c.sweep = "x";
  c.lo = 0.0;
  c.hi = 4.0;
  c.points = 3;
  c.observables = {"p", "Y"};
  c.trunc = 800;
  c.z_re = 1.0;
  return c;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  FAIL("missing column " << name);
  return -1;
}

}  // namespace

TEST_CASE("format_double: shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-2.5) == "-2.5");
  for (double x : {1.0 / 3.0, 1e-300, 6.02214076e23, 0.30000000000000004}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("ScanConfig: serialize and parse round trip") {
  ScanConfig c = fig1_config();
  c.observables = {"q", "p", "X", "Y", "K1", "K2", "mandel_q", "schrodinger"};
  c.z_im = 1.0 / 3.0;
  c.u_im = -0.1;
  c.out = "fig1.csv";
  CHECK(parse_scan_config(serialize_scan_config(c)) == c);

  ScanConfig s;
  s.family = "squeezed_cat";
  s.sweep = "r";
  s.r = 0.31;
  s.theta = 1.5707963267948966;
  s.flavor = Flavor::bosonic_odd;
  s.k = 0.75;
  s.z_dir_re = 0.0;
  s.z_dir_im = 1.0;
  CHECK(parse_scan_config(serialize_scan_config(s)) == s);

  ScanConfig a;
  a.flavor = Flavor::abstract;
  a.k = 1.5;
  a.observables = {"K1", "K2", "schrodinger"};
  a.sweep = "w_im";
  CHECK(parse_scan_config(serialize_scan_config(a)) == a);
}

TEST_CASE("ScanConfig: comments, whitespace and errors") {
  const auto c = parse_scan_config("# scan\n  family = w0_family  # trailing\nsweep=x\n\nhi = 2\r\n");
  CHECK(c.family == "w0_family");
  CHECK(c.hi == 2.0);
  CHECK_THROWS_AS(parse_scan_config("colour = red\n"), DomainError);
  CHECK_THROWS_AS(parse_scan_config("lo = abc\n"), DomainError);
  CHECK_THROWS_AS(parse_scan_config("no equals sign\n"), DomainError);
  CHECK_THROWS_AS(parse_scan_config("lo = 2\nhi = 1\n"), DomainError);
  CHECK_THROWS_AS(parse_scan_config("points = 1\n"), DomainError);
  CHECK_THROWS_AS(parse_scan_config("trunc = 49\n"), DomainError);
  CHECK_THROWS_AS(parse_scan_config("observables = q,Z\n"), DomainError);
  CHECK_THROWS_AS(parse_scan_config("flavor = abstract\nk = 1\nobservables = q\n"), DomainError);
  CHECK_THROWS_AS(parse_scan_config("family = w0_family\nsweep = d\n"), DomainError);
  CHECK_THROWS_AS(parse_scan_config("family = torus\n"), DomainError);
}

TEST_CASE("run_scan: first figure family at x = 0, 2, 4") {
  std::ostringstream diag;
  const auto t = run_scan(fig1_config(), diag);
  CHECK(t.uncertified == 0);
  CHECK(diag.str().empty());
  REQUIRE(t.rows.size() == 3);
  const int y = column(t.header, "var_Y");
  CHECK(std::stod(t.rows[0][y]) > std::stod(t.rows[1][y]));
  CHECK(std::stod(t.rows[1][y]) > std::stod(t.rows[2][y]));
  CHECK(t.rows[2][0] == "4");
  CHECK(t.header == std::vector<std::string>{"x", "var_p", "var_Y", "q_sq", "p_sq", "x_sq", "y_sq",
                                             "tail_norm", "certified"});
}

TEST_CASE("run_scan: uncertified rows are flagged and reported") {
  ScanConfig c = fig1_config();
  c.trunc = 60;
  std::ostringstream diag;
  const auto t = run_scan(c, diag);
  CHECK(t.uncertified == 2);
  CHECK(t.rows[0].back() == "1");
  CHECK(t.rows[2].back() == "0");
  CHECK(diag.str().find("warning") != std::string::npos);
}

TEST_CASE("run_scan: agrees with a direct state evaluation") {
  ScanConfig c;
  c.family = "acs";
  c.sweep = "z_im";
  c.lo = -5.0;
  c.hi = 1.0;
  c.points = 2;
  c.z_re = -0.5;
  c.u_re = std::sqrt(1.25);
  c.v_re = -0.5;
  c.observables = {"q", "p", "X", "Y", "K1", "K2", "mandel_q", "schrodinger"};
  std::ostringstream diag;
  const auto t = run_scan(c, diag);
  const auto psi = solve_acs({cplx(-0.5, -5.0), std::sqrt(1.25), -0.5, 0.0, ReprIndex::bosonic_even()}, 400);
  const auto m = k_moments(psi);
  const auto& row = t.rows[0];
  CHECK(row[column(t.header, "var_q")] == format_double(m.bosonic->var_q));
  CHECK(row[column(t.header, "var_Y")] == format_double(m.bosonic->var_Y));
  CHECK(row[column(t.header, "var_K2")] == format_double(m.var_K2));
  CHECK(row[column(t.header, "mandel_q")] == format_double(*m.mandel_q));
  CHECK(row[column(t.header, "schrodinger_rhs")] == format_double(m.schrodinger_rhs));
  CHECK(row[column(t.header, "tail_norm")] == format_double(psi.tail_norm()));
}

TEST_CASE("run_scan: second figure family at d = 0.2, 0.25, 0.3") {
  ScanConfig c;
  c.family = "squeezed_cat";
  c.sweep = "d";
  c.lo = 0.2;
  c.hi = 0.3;
  c.points = 3;
  c.r = 0.31;
  c.trunc = 200;
  std::ostringstream diag;
  const auto t = run_scan(c, diag);
  const int q = column(t.header, "q_sq"), x = column(t.header, "x_sq");
  for (const auto& row : t.rows) {
    CHECK(row[q] == "1");
    CHECK(row[x] == "1");
  }
}

TEST_CASE("run_scan: missing values are empty fields") {
  ScanConfig c;
  c.sweep = "z_re";
  c.lo = 0.0;
  c.hi = 1.0;
  c.points = 2;
  c.observables = {"mandel_q"};
  std::ostringstream diag;
  const auto t = run_scan(c, diag);
  CHECK(t.rows[0][1].empty());
  CHECK_FALSE(t.rows[1][1].empty());
}

TEST_CASE("write_csv: LF endings and header") {
  ScanTable t{{"a", "b"}, {{"1", "2"}, {"3", ""}}, 0};
  std::ostringstream o;
  write_csv(t, o);
  CHECK(o.str() == "a,b\n1,2\n3,\n");
}

TEST_CASE("figure_table: contents and determinism") {
  const auto f1 = figure_table("fig1");
  CHECK(f1.header == std::vector<std::string>{"x", "var_p", "var_Y"});
  REQUIRE(f1.rows.size() == 251);
  CHECK(std::stod(f1.rows[0][1]) < 0.5);
  int crossing = -1;
  for (int i = 1; i < 251; ++i)
    if (std::stod(f1.rows[i][2]) < 1.0 && std::stod(f1.rows[i - 1][2]) >= 1.0) crossing = i;
  REQUIRE(crossing > 0);
  CHECK(std::abs(std::stod(f1.rows[crossing][0]) - 1.8) < 0.15);

  const auto f2 = figure_table("fig2");
  CHECK(f2.header == std::vector<std::string>{"d", "two_var_q", "var_X"});
  REQUIRE(f2.rows.size() == 241);
  CHECK(f2.rows.back()[0] == "0.6");
  for (const auto& row : f2.rows) {
    const double d = std::stod(row[0]), vx = std::stod(row[2]);
    if (d > 0.12 && d < 0.29) CHECK(vx < 1.0);
    if (d < 0.08 || d > 0.33) CHECK(vx > 1.0);
  }

  std::ostringstream a, b;
  write_csv(figure_table("fig2"), a);
  write_csv(f2, b);
  CHECK(a.str() == b.str());
  CHECK_THROWS_AS(figure_table("fig3"), DomainError);
}

TEST_CASE("state JSON round trip") {
  const AcsParams p{cplx(0.3, -0.2), cplx(1.0, 0.1), 0.2, cplx(0.0, 0.3), ReprIndex::bosonic_odd()};
  const auto psi = solve_acs(p, 400);
  const auto doc = state_to_json(psi, &p);
  const auto back = state_from_json(nlohmann::json::parse(doc.dump()));
  REQUIRE(back.params);
  CHECK(back.params->z == p.z);
  CHECK(back.params->w == p.w);
  CHECK(back.state.repr() == psi.repr());
  REQUIRE(back.state.size() == psi.size());
  for (std::size_t m = 0; m < psi.size(); ++m) CHECK(back.state[m] == psi[m]);
  CHECK(doc["tail_norm"].get<double>() == psi.tail_norm());

  const auto bare = state_to_json(psi);
  CHECK(bare["params"].is_null());
  CHECK_FALSE(state_from_json(bare).params);
  CHECK_THROWS_AS(state_from_json(nlohmann::json::parse(R"({"repr": {"k": 0.25}})")), DomainError);
  CHECK_THROWS_AS(state_from_json(nlohmann::json::parse(
                      R"({"repr": {"k": 0.25, "flavor": "even"}, "amplitudes": [[1]]})")),
                  DomainError);
}

TEST_CASE("moment JSON: absent fields are null with a reason") {
  std::vector<cplx> a(20, 0.0);
  a[1] = 1.0;
  const auto j = moments_to_json(k_moments(StateVector(ReprIndex::abstract(1.0), a)));
  CHECK(j["var_q"].is_null());
  CHECK(j["var_q_reason"].is_string());
  CHECK(j["mandel_q"].is_null());
  CHECK(j["mandel_q_reason"].is_string());
  CHECK(j["var_K1"].get<double>() > 0.0);
}

TEST_CASE("cli: state") {
  std::string out, err;
  REQUIRE(run_cli("state", &out, &err) == 0);
  const auto doc = nlohmann::json::parse(out);
  CHECK(doc["moments"]["var_X"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(doc["moments"]["var_Y"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(doc["state"]["repr"]["flavor"] == "bosonic_even");

  REQUIRE(run_cli("state --z-re 1 --u-re 3.1622776601683795 --v-re -3", &out) == 0);
  CHECK(nlohmann::json::parse(out)["moments"]["y_sq"] == true);

  CHECK(run_cli("state --u-re 1 --w-re 3 --z-re 0.2", &out, &err) == 2);
  CHECK(err.find("violated") != std::string::npos);
  CHECK(run_cli("state --z-re 30 --trunc 20", &out, &err) == 3);
  CHECK(err.find("truncation") != std::string::npos);
  CHECK(run_cli("state --flavor abstract --k 0.3", &out, &err) == 2);
  CHECK(run_cli("state --bogus 1", &out, &err) != 0);
  CHECK(run_cli("", &out, &err) != 0);
}

TEST_CASE("cli: scan with a config file and overrides") {
  ScanConfig c = fig1_config();
  c.out = scratch("fig1_scan.csv").string();
  const auto cfg = scratch("fig1.cfg");
  std::ofstream(cfg) << serialize_scan_config(c);
  REQUIRE(run_cli("scan --config " + cfg.string()) == 0);
  const auto rows = parse_csv(slurp(c.out));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][0] == "x");

  std::string out, err;
  CHECK(run_cli("scan --config " + cfg.string() + " --trunc 60 --out " + scratch("low.csv").string(),
                &out, &err) == 3);
  CHECK(err.find("warning") != std::string::npos);
  CHECK(parse_csv(slurp(scratch("low.csv"))).size() == 4);

  CHECK(run_cli("scan --config " + cfg.string() + " --set points", &out, &err) != 0);
  CHECK(run_cli("scan --set family=w0_family --set sweep=x --set points=2 --set hi=0.5 --z-re 1", &out) == 0);
  CHECK(parse_csv(out).size() == 3);
  CHECK(run_cli("scan --set lo=3 --set hi=1", &out, &err) == 2);
}

TEST_CASE("cli: figure output is byte-identical across runs") {
  const auto a = scratch("fig2_a.csv"), b = scratch("fig2_b.csv");
  REQUIRE(run_cli("figure fig2 --out " + a.string()) == 0);
  REQUIRE(run_cli("figure fig2 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find('\r') == std::string::npos);
  CHECK(run_cli("figure fig9") != 0);
}

TEST_CASE("cli: check") {
  std::string out;
  CHECK(run_cli("check --only 4", &out) == 0);
  CHECK(out.rfind("PASS  4 ", 0) == 0);
  std::string again;
  run_cli("check --only 4", &again);
  CHECK(out == again);
  CHECK(run_cli("check --only 5 --trunc 50", &out) == 1);
  CHECK(out.rfind("FAIL  5 ", 0) == 0);
}
