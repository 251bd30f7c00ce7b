#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlde/config.hpp"
#include "nlde/output.hpp"
#include "nlde/run_study.hpp"

using namespace nlde;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> body(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : lines(text)) {
    if (!l.starts_with("#")) out.push_back(l);
  }
  return out;
}

std::string without_timestamp(const std::string& text) {
  std::string out;
  for (auto& l : lines(text)) {
    if (!l.starts_with("# generated:")) out += l + "\n";
  }
  return out;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("nlde_test_" + name)) {
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::string error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal long-time config gets its defaults") {
    const StudyConfig c = parse_config(
        R"({"study": "long-time", "data": "accuracy-1d", "M": 64, "tau": 0.01, "eps": [0.5, 0.25], "T": 1.0})");
    CHECK(c.kind == StudyKind::long_time);
    CHECK(c.lambda1 == 0.0);
    CHECK(c.lambda2 == 1.0);
    CHECK(c.scheme == SchemeKind::strang);
    CHECK(c.modes == std::vector<std::array<int, 2>>{{64, 1}});
    CHECK(c.steps == std::vector<double>{0.01});
    CHECK(c.eps == std::vector<double>{0.5, 0.25});
    CHECK(c.stride == 10);
    CHECK_FALSE(c.oscillatory);
    CHECK(c.domain.size() == 1);
    const std::string echoed = config_to_json(c);
    CHECK(echoed.find("\"lambda2\": 1.0") != std::string::npos);
    CHECK(echoed.find("\"scheme\": \"strang\"") != std::string::npos);
  }

  TEST_CASE("eps out of range") {
    try {
      parse_config(R"({"study": "temporal", "tau": 0.01, "eps": [1.5]})");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "eps");
      CHECK(std::string(e.what()).find("eps out of (0,1]") != std::string::npos);
    }
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "eps": 0})") == "eps");
  }

  TEST_CASE("duplicate keys are named") {
    try {
      parse_config(R"({"study": "temporal", "tau": 0.01, "tau": 0.02})");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "tau");
      CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
  }

  TEST_CASE("malformed and invalid input") {
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01)") == "");
    CHECK(error_key(R"({"study": "temporal", "tua": 0.01})") == "tua");
    CHECK(error_key(R"({"tau": 0.01})") == "study");
    CHECK(error_key(R"({"study": "sideways", "tau": 0.01})") == "study");
    CHECK(error_key(R"({"study": "temporal"})") == "tau");
    CHECK(error_key(R"({"study": "temporal", "tau": -0.01})") == "tau");
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "kappa": 0.01})") == "kappa");
    CHECK(error_key(R"({"study": "temporal", "kappa": 0.01})") == "kappa");
    CHECK(error_key(R"({"study": "oscillatory-table", "tau": 0.01})") == "kappa");
    CHECK(error_key(R"({"study": "spatial", "tau": 0.01})") == "tau");
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "M": 63})") == "M");
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "M": [32, 64]})") == "M");
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "eps": []})") == "eps");
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "T": 0})") == "T");
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "stride": 0})") == "stride");
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "scheme": "rk4"})") == "scheme");
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "domain": [1, 0]})") == "domain");
    CHECK(error_key(R"({"study": "temporal", "tau": 0.01, "data": "soliton"})") == "data");
    CHECK(error_key(R"({"study": "long-time", "tau": [0.01, 0.02]})") == "tau");
    CHECK(error_key(R"({"study": "run", "tau": 0.01, "eps": [0.5, 0.25]})") == "eps");
    CHECK(error_key(R"([1, 2])") == "");
  }

  TEST_CASE("comments are allowed") {
    const StudyConfig c = parse_config("{\n  // sweep\n  \"study\": \"temporal\", \"tau\": [0.01, 0.005]\n}");
    CHECK(c.steps.size() == 2);
  }

  TEST_CASE("study-specific defaults") {
    const StudyConfig t = parse_config(R"({"study": "oscillatory-table", "kappa": [0.05, 0.0125]})");
    CHECK(t.oscillatory);
    CHECK(t.data == "oscillatory-1d");
    CHECK(t.lambda1 == -1.0);
    CHECK(t.lambda2 == 0.0);
    const StudyConfig s = parse_config(R"({"study": "spatial", "eps": [0.5]})");
    CHECK(s.modes.size() == 4);
    CHECK(s.steps.empty());
    const StudyConfig d = parse_config(R"({"study": "temporal", "data": "irrational-2d", "tau": 0.01, "M": [[32, 16]]})");
    CHECK(d.dim() == 2);
    CHECK(d.modes == std::vector<std::array<int, 2>>{{32, 16}});
    CHECK(parse_config(R"({"study": "temporal", "data": "irrational-2d", "tau": 0.01})").modes[0] ==
          std::array<int, 2>{64, 64});
  }

  TEST_CASE("round trip through the effective config") {
    const char* inputs[] = {
        R"({"study": "long-time", "M": 64, "tau": 0.01, "eps": [0.5, 0.25], "T": 1.0})",
        R"({"study": "oscillatory-table", "kappa": [0.05, 0.0125, 0.003125], "eps": [1, 0.5], "stride": 3})",
        R"({"study": "spatial", "M": [8, 16, 32], "eps": [0.5, 0.25], "tau_ref": 0.001, "M_ref": 128})",
        R"({"study": "temporal", "data": "irrational-2d", "M": [[32, 16]], "tau": [0.01, 0.005],
            "lambda1": 0.3, "lambda2": -2, "scheme": "lie", "out": "x/y", "M_ref": [64, 32]})",
        R"({"study": "run", "kappa": 0.001, "eps": 0.3, "T": 0.1, "domain": [0, 6.283185307179586]})",
    };
    for (const char* text : inputs) {
      const StudyConfig c = parse_config(text);
      CHECK(parse_config(config_to_json(c)) == c);
    }
  }
}

TEST_SUITE("output") {
  TEST_CASE("six significant digits") {
    CHECK(format_sci(0.012611) == "1.26110e-02");
    CHECK(format_sci(1.0) == "1.00000e+00");
    CHECK(format_sci(-3.25e-9) == "-3.25000e-09");
  }

  TEST_CASE("1x1 table is a header and one row") {
    ConvergenceTable t;
    t.title = "one cell";
    t.row_axis = "eps";
    t.column_axis = "tau";
    t.row_values = {0.5};
    t.column_values = {0.01};
    t.errors = {{1.5e-4}};
    t.metadata = {{"scheme", "strang"}};
    t.compute_orders();
    std::ostringstream os;
    write_table(os, t, false);
    const auto all = lines(os.str());
    CHECK(all[0] == "# one cell");
    CHECK(all[1] == "# scheme: strang");
    CHECK(body(os.str()) == std::vector<std::string>{"eps\\tau,1.00000e-02", "5.00000e-01,1.50000e-04"});
  }

  TEST_CASE("rows interleave errors and orders with empty absent cells") {
    ConvergenceTable t;
    t.title = "t";
    t.row_axis = "eps";
    t.column_axis = "M";
    t.row_values = {1.0, 0.5};
    t.column_values = {8, 16};
    t.errors = {{1e-2, 1e-4}, {1e-2, 1e-15}};
    t.compute_orders();
    std::ostringstream os;
    write_table(os, t, true);
    const auto b = body(os.str());
    REQUIRE(b.size() == 5);
    CHECK(b[0] == "eps\\M,8,16");
    CHECK(b[1] == "1.00000e+00,1.00000e-02,1.00000e-04");
    CHECK(b[2] == "order,,6.64386e+00");
    CHECK(b[4] == "order,,");
    CHECK(os.str().find("# generated: ") != std::string::npos);
  }

  TEST_CASE("series columns") {
    ErrorRecord r;
    r.step = 10;
    r.time = 0.1;
    r.h1_error = 2e-6;
    r.running_max = 3e-6;
    std::ostringstream os;
    write_series(os, {r}, {{"eps", "0.5"}});
    const auto b = body(os.str());
    REQUIRE(b.size() == 2);
    CHECK(b[0] == "step,time,l2_error,h1_error,e_max,mass_drift,energy_drift");
    CHECK(b[1] == "10,1.00000e-01,0.00000e+00,2.00000e-06,3.00000e-06,0.00000e+00,0.00000e+00");
  }
}

TEST_SUITE("run_study") {
  TEST_CASE("run with zero steps writes the initial observables only") {
    TempDir dir("run0");
    const StudyConfig c = parse_config(R"({"study": "run", "tau": 0.01, "T": 0, "M": 32})");
    std::ostringstream log;
    CHECK(run_study(c, log, dir.path) == 0);
    const auto b = body(slurp(dir.path / "run_observables.csv"));
    REQUIRE(b.size() == 2);
    CHECK(b[1].starts_with("0,0.00000e+00,"));
    CHECK(parse_config(slurp(dir.path / "effective_config.json")).kind == StudyKind::run);
  }

  TEST_CASE("temporal study output is deterministic apart from the timestamp") {
    TempDir a("det_a");
    TempDir b("det_b");
    const StudyConfig c = parse_config(R"({"study": "temporal", "tau": [0.02, 0.01], "eps": [1, 0.5], "M": 32})");
    std::ostringstream log;
    REQUIRE(run_study(c, log, a.path, 1) == 0);
    REQUIRE(run_study(c, log, b.path, 2) == 0);
    CHECK(without_timestamp(slurp(a.path / "temporal.csv")) == without_timestamp(slurp(b.path / "temporal.csv")));
    CHECK(body(slurp(a.path / "temporal.csv")).size() == 5);
    CHECK(lines(log.str()).size() == 4);
  }

  TEST_CASE("long-time study writes one series per eps") {
    TempDir dir("lt");
    const StudyConfig c = parse_config(R"({"study": "long-time", "tau": 0.05, "eps": [1, 0.5], "M": 32, "stride": 4})");
    std::ostringstream log;
    REQUIRE(run_study(c, log, dir.path) == 0);
    CHECK(std::filesystem::exists(dir.path / "long_time_eps_1.csv"));
    CHECK(std::filesystem::exists(dir.path / "long_time_eps_0.5.csv"));
    CHECK(std::filesystem::exists(dir.path / "long_time_summary.csv"));
    const auto series = body(slurp(dir.path / "long_time_eps_0.5.csv"));
    CHECK(series[0] == "step,time,l2_error,h1_error,e_max,mass_drift,energy_drift");
    CHECK(series.size() == 1 + 21);
  }

  TEST_CASE("divisibility failure exits nonzero naming M and M_ref") {
    TempDir dir("div");
    const StudyConfig c = parse_config(R"({"study": "temporal", "tau": 0.01, "M": 64, "M_ref": 96})");
    std::ostringstream log;
    CHECK(run_study(c, log, dir.path) != 0);
    CHECK(log.str().find("M = 64") != std::string::npos);
    CHECK(log.str().find("M_ref = 96") != std::string::npos);
  }

  TEST_CASE("seed check passes") {
    std::ostringstream log;
    CHECK(run_seed_check(log));
    CHECK(log.str().find("FAIL") == std::string::npos);
  }
}
