#include "szf/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "szf/geodesics.hpp"

using namespace szf;

namespace {

const char* kGroupPath = SZF_SOURCE_DATA_DIR "/bolza.json";

int call_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "szf");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  // Expected failures print to stderr; keep the test log quiet.
  std::ostringstream sink;
  std::streambuf* old = std::cerr.rdbuf(sink.rdbuf());
  int rc = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cerr.rdbuf(old);
  return rc;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string tmp(const char* stem) { return std::string("/tmp/szf_clitest_") + stem; }

}  // namespace

TEST_CASE("complex literals that parse") {
  CHECK(parse_complex("4").sigma == 4.0);
  CHECK(parse_complex("4").t == 0.0);
  CHECK(parse_complex("2.5i").t == 2.5);
  CHECK(parse_complex("2.5i").sigma == 0.0);
  CHECK(parse_complex("1+2i").sigma == 1.0);
  CHECK(parse_complex("1+2i").t == 2.0);
  CHECK(parse_complex("1-2i").t == -2.0);
  CHECK(parse_complex("-0.5+i").t == 1.0);
  CHECK(parse_complex("3-i").t == -1.0);
  CHECK(parse_complex(" 1 + 2 i ").t == 2.0);
  CHECK(parse_complex("1e2").sigma == 100.0);
  CHECK(parse_complex("-3").sigma == -3.0);
}

TEST_CASE("complex literals that do not parse") {
  for (const char* bad : {"", "i", "abc", "2+3j", "1+2", "1i2", "nan", "inf", "1+2i3", "++1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_complex(bad), ParseError);
  }
}

TEST_CASE("argument parsing maps flags onto the run configuration") {
  RunConfig c = parse_args({"eval", "--s", "3+1i", "--s", "4", "--group", kGroupPath,
                            "--k-cutoff", "12", "--margin", "0.1", "--orientation", "unoriented"});
  CHECK(c.command == "eval");
  CHECK(c.group_path == kGroupPath);
  REQUIRE(c.eval_points.size() == 2);
  CHECK(c.eval_points[0].t == 1.0);
  CHECK(c.eval_points[1].sigma == 4.0);
  CHECK(c.k_cutoff == 12);
  CHECK(c.margin == 0.1);
  CHECK(c.orientation == OrientationMode::unoriented);

  RunConfig w = parse_args({"winding", "--center", "-2", "--radius", "0.25", "--samples", "128",
                            "--group", kGroupPath});
  CHECK(w.command == "winding");
  CHECK(w.contour.center.sigma == -2.0);
  CHECK(w.contour.radius == 0.25);
  CHECK(w.contour.initial_samples == 128);

  RunConfig v = parse_args({"verify", "zeros", "--group", kGroupPath, "--genus-override", "3"});
  CHECK(v.command == "verify");
  CHECK(v.verify_check == "zeros");
  CHECK(v.genus_override == 3);

  CHECK_THROWS_AS(parse_args({}), ParseError);
  CHECK_THROWS_AS(parse_args({"transmogrify"}), ParseError);
  CHECK_THROWS_AS(parse_args({"verify", "bogus", "--group", kGroupPath}), ParseError);
}

TEST_CASE("constraint violations are reported together") {
  try {
    parse_args({"eval", "--s", "3", "--group", kGroupPath, "--margin", "0.7", "--k-cutoff", "-2"});
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("margin") != std::string::npos);
    CHECK(msg.find("k-cutoff") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_args({"eval", "--group", kGroupPath}), ParseError);
  CHECK_THROWS_AS(parse_args({"winding", "--radius", "-1", "--group", kGroupPath}), ParseError);
  CHECK_THROWS_AS(parse_args({"winding", "--samples", "32", "--group", kGroupPath}), ParseError);
  CHECK_THROWS_AS(parse_args({"spectrum", "--max-word-len", "0", "--group", kGroupPath}),
                  ParseError);
  CHECK_THROWS_AS(parse_args({"spectrum", "--max-word-len", "41", "--group", kGroupPath}),
                  ParseError);
  CHECK_THROWS_AS(
      parse_args({"verify", "zeros", "--genus-override", "1", "--group", kGroupPath}), ParseError);
  CHECK_THROWS_AS(parse_args({"eval", "--s", "3", "--threads", "-1", "--group", kGroupPath}),
                  ParseError);
}

TEST_CASE("config file supplies defaults that flags override") {
  auto cfgpath = tmp("cfg.json");
  std::ofstream(cfgpath) << R"({"group": ")" << kGroupPath << R"(",
    "margin": 0.2, "k_cutoff": 7, "orientation": "unoriented",
    "max_word_length": 8, "s": ["2", "3+1i"]})";

  RunConfig c = parse_args({"eval", "--config", cfgpath});
  CHECK(c.group_path == kGroupPath);
  CHECK(c.margin == 0.2);
  CHECK(c.k_cutoff == 7);
  CHECK(c.orientation == OrientationMode::unoriented);
  CHECK(c.max_word_length == 8);
  REQUIRE(c.eval_points.size() == 2);
  CHECK(c.eval_points[1].t == 1.0);

  RunConfig o = parse_args({"eval", "--config=" + cfgpath, "--margin", "0.1", "--s", "5"});
  CHECK(o.margin == 0.1);
  CHECK(o.k_cutoff == 7);
  REQUIRE(o.eval_points.size() == 1);
  CHECK(o.eval_points[0].sigma == 5.0);

  auto badpath = tmp("bad_cfg.json");
  std::ofstream(badpath) << R"({"margim": 0.2})";
  CHECK_THROWS_AS(parse_args({"eval", "--s", "3", "--config", badpath}), ParseError);
  try {
    parse_args({"eval", "--s", "3", "--config", badpath});
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("margim") != std::string::npos);
  }
  std::remove(cfgpath.c_str());
  std::remove(badpath.c_str());
}

TEST_CASE("group file resolution order") {
  setenv("SZF_GROUP", kGroupPath, 1);
  RunConfig c = parse_args({"eval", "--s", "3"});
  CHECK(c.group_path == kGroupPath);

  setenv("SZF_GROUP", "/nonexistent/group.json", 1);
  CHECK_THROWS_AS(parse_args({"eval", "--s", "3"}), ConfigError);
  // An explicit flag wins over the environment.
  RunConfig f = parse_args({"eval", "--s", "3", "--group", kGroupPath});
  CHECK(f.group_path == kGroupPath);
  unsetenv("SZF_GROUP");

  CHECK_THROWS_AS(parse_args({"eval", "--s", "3", "--group", "/nonexistent/group.json"}),
                  ConfigError);
}

TEST_CASE("eval command writes one record or an array") {
  auto out = tmp("eval.json");
  int rc = call_cli({"eval", "--s", "4", "--group", kGroupPath, "--max-word-len", "8",
                     "--out", out});
  CHECK(rc == 0);
  auto rec = nlohmann::json::parse(slurp(out));
  CHECK(rec.is_object());
  CHECK(rec["s"] == "4+0i");
  CHECK(rec["value_re"].get<double>() == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(rec["value_im"].get<double>() == 0.0);
  CHECK(rec["method"] == "product");
  CHECK(rec["error_bound"].get<double>() < 1e-9);

  rc = call_cli({"eval", "--s", "4", "--s", "-2.5+0.3i", "--group", kGroupPath,
                 "--max-word-len", "8", "--out", out});
  CHECK(rc == 0);
  auto arr = nlohmann::json::parse(slurp(out));
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 2);
  CHECK(arr[1]["method"] == "continuation");

  std::remove(out.c_str());
}

TEST_CASE("eval represents exact zeros and log-scale overflow as nulls") {
  auto out = tmp("eval_edge.json");
  // Exact zero: finite value fields, null log_modulus.
  REQUIRE(call_cli({"eval", "--s", "-3", "--group", kGroupPath, "--max-word-len", "8",
                    "--out", out}) == 0);
  auto zero = nlohmann::json::parse(slurp(out));
  CHECK(zero["value_re"] == 0.0);
  CHECK(zero["log_modulus"].is_null());

  // Far left: the value overflows, so only the log survives.
  REQUIRE(call_cli({"eval", "--s", "-252.5", "--group", kGroupPath, "--max-word-len", "8",
                    "--out", out}) == 0);
  auto big = nlohmann::json::parse(slurp(out));
  CHECK(big["value_re"].is_null());
  CHECK(big["value_im"].is_null());
  CHECK(big["log_modulus"].get<double>() > 500.0);
  std::remove(out.c_str());
}

TEST_CASE("winding command reports the multiplicity data") {
  auto out = tmp("winding.json");
  int rc = call_cli({"winding", "--center", "-2", "--radius", "0.5", "--group", kGroupPath,
                     "--max-word-len", "8", "--out", out});
  CHECK(rc == 0);
  auto rec = nlohmann::json::parse(slurp(out));
  CHECK(rec["center"] == "-2+0i");
  CHECK(rec["winding"] == 10);
  CHECK(rec["predicted"] == 10);
  CHECK(rec["samples_used"].get<long>() >= 65);
  CHECK(rec["max_phase_step"].get<double>() < 1.5708);
  std::remove(out.c_str());
}

TEST_CASE("verify command exit codes follow the report verdicts") {
  auto out = tmp("verify.json");
  CHECK(call_cli({"verify", "t1p", "--grid", "2000", "--group", kGroupPath, "--out", out}) == 0);
  auto rec = nlohmann::json::parse(slurp(out));
  CHECK(rec["check_name"] == "t1p");
  CHECK(rec["passed"] == true);
  CHECK(rec["samples"] == 2000);

  // Wrong genus: the measured winding contradicts the prediction.
  CHECK(call_cli({"verify", "zeros", "--genus-override", "3", "--group", kGroupPath,
                  "--max-word-len", "8", "--out", out}) == 1);
  auto bad = nlohmann::json::parse(slurp(out));
  CHECK(bad["passed"] == false);
  std::remove(out.c_str());
}

TEST_CASE("spectrum command writes a loadable csv") {
  auto out = tmp("spec.csv");
  int rc = call_cli({"spectrum", "--max-word-len", "6", "--group", kGroupPath, "--out", out});
  CHECK(rc == 0);
  std::string text = slurp(out);
  CHECK(text.rfind("# group=bolza max_word_length=6\n", 0) == 0);
  LengthSpectrum s = load_spectrum(out);
  CHECK(s.classes.size() == 17);
  CHECK(s.classes.front().word == "a");
  CHECK(s.classes.front().multiplicity == 8);
  std::remove(out.c_str());
}

TEST_CASE("errors exit with code 2") {
  CHECK(call_cli({"eval", "--s", "0.5+14i", "--group", kGroupPath, "--max-word-len", "8"}) == 2);
  CHECK(call_cli({"eval", "--s", "2+3j", "--group", kGroupPath}) == 2);
  CHECK(call_cli({"eval", "--s", "3", "--group", "/nonexistent/group.json"}) == 2);
  CHECK(call_cli({"bogus"}) == 2);
}

TEST_CASE("help is a command of its own") {
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  RunConfig c = parse_args({"--help"});
  std::cout.rdbuf(old);
  CHECK(c.command == "help");
  CHECK(captured.str().find("szf") != std::string::npos);
  CHECK(run(c) == 0);
}
