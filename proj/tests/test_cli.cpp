#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

using namespace tfa;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result tfa_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = tfa::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

json tfa_json(std::vector<std::string> args) {
  Result r = tfa_run(std::move(args));
  INFO(r.err);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("tfa_cli_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string scratch(const std::string& name) { return (scratch_dir() / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("top-level usage", "[cli]") {
  CHECK(tfa_run({}).code == 2);
  Result help = tfa_run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("check") != std::string::npos);
  CHECK(tfa_run({"frobnicate"}).code == 2);
  CHECK(tfa_run({"check", "--help"}).code == 0);
}

TEST_CASE("check command", "[cli][check]") {
  json sj = tfa_json({"check", "--kind", "bpwm", "--p", "inf", "--q", "1", "--p1", "2", "--q1", "2", "--p2", "2",
                      "--q2", "2"});
  CHECK(sj["bounded"] == true);
  CHECK(sj["failed"].empty());

  json bf = tfa_json({"check", "--kind", "brwf", "--m", "1", "--p", "1", "--q", "1", "--pj", "2,2", "--qj", "2,2"});
  CHECK(bf["bounded"] == false);
  auto failed = bf["failed"].get<std::vector<std::string>>();
  CHECK(std::find(failed.begin(), failed.end(), "cd1") != failed.end());
  auto detailed = bf["failed_conditions"].get<std::vector<std::string>>();
  CHECK(std::find(detailed.begin(), detailed.end(), "cd1[p]") != detailed.end());

  json frac = tfa_json({"check", "--kind", "bessel", "--s", "1/4", "--d", "1", "--p1", "4", "--q1", "4", "--p2", "4",
                        "--q2", "4"});
  CHECK(frac["bounded"] == true);
  CHECK(frac["boundary"] == true);

  Result missing = tfa_run({"check", "--kind", "bpwm", "--p", "inf"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--q") != std::string::npos);

  Result bad = tfa_run({"check", "--kind", "bpwm", "--p", "abc", "--q", "1", "--p1", "2", "--q1", "2", "--p2", "2", "--q2",
                    "2"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("--p:") != std::string::npos);

  Result arity = tfa_run({"check", "--kind", "brwm", "--m", "2", "--p", "1", "--q", "1", "--pj", "2,2", "--qj", "2,2"});
  CHECK(arity.code == 1);
  CHECK(arity.err.find("--m") != std::string::npos);

  CHECK(tfa_run({"check", "--kind", "nonsense", "--p", "1"}).code == 1);
}

TEST_CASE("scan command", "[cli][scan]") {
  const std::vector<std::string> base{"scan", "--kind", "bpwm", "--p1", "2", "--q1", "2", "--p2", "2", "--q2", "2"};
  SECTION("diagonal sweep reproduces the Cordero-Nicola region") {
    auto args = base;
    for (std::string s : {"--sweep", "p=0:1:0.1", "--sweep", "q=0:1:1/10"}) args.push_back(s);
    Result r = tfa_run(args);
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 122);
    CHECK(rows[0] == std::vector<std::string>{"1/p", "1/q", "bounded", "failed", "boundary"});
    CHECK(rows[1][0] == "0");
    CHECK(rows[1][1] == "0");
    CHECK(rows[2][1] == "1/10");
    CHECK(rows[12][0] == "1/10");
    std::size_t agree = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      Rational rp = parse_rational(rows[i][0]), rq = parse_rational(rows[i][1]);
      bool expected = oracle::cordero_nicola_region(rp, rq, Rational(1, 2), Rational(1, 2));
      agree += (rows[i][2] == "true") == expected;
      CHECK((rows[i][2] == "true") == rows[i][3].empty());
    }
    CHECK(agree == 121);
  }
  SECTION("single-point range gives one row") {
    auto args = base;
    for (std::string s : {"--q", "1", "--sweep", "p=1/2:1/2"}) args.push_back(s);
    Result r = tfa_run(args);
    REQUIRE(r.code == 0);
    CHECK(csv_rows(r.out).size() == 2);
  }
  SECTION("reversed or empty ranges are rejected") {
    auto args = base;
    for (std::string s : {"--q", "1", "--sweep", "p=1:0:0.1"}) args.push_back(s);
    Result r = tfa_run(args);
    CHECK(r.code == 1);
    CHECK(r.err.find("empty range") != std::string::npos);
    auto zero = base;
    for (std::string s : {"--q", "1", "--sweep", "p=0:1:0"}) zero.push_back(s);
    CHECK(tfa_run(zero).code == 1);
  }
  SECTION("missing sweep is a usage error") { CHECK(tfa_run(base).code == 2); }
  SECTION("output file matches stdout") {
    auto args = base;
    for (std::string s : {"--q", "1", "--sweep", "p=0:1:1/4"}) args.push_back(s);
    Result r = tfa_run(args);
    args.push_back("--output");
    args.push_back(scratch("scan.csv"));
    REQUIRE(tfa_run(args).code == 0);
    CHECK(slurp(scratch("scan.csv")) == r.out);
  }
}

TEST_CASE("config files mirror flags", "[cli][config]") {
  const std::string cfg = scratch("check.json");
  spit(cfg, R"({"kind": "bpwm", "p": "inf", "q": "inf", "p1": 2, "q1": 2, "p2": 2, "q2": "2"})");
  CHECK(tfa_json({"check", "--config", cfg})["bounded"] == false);
  // The command line overrides the file.
  CHECK(tfa_json({"check", "--config", cfg, "--q", "1"})["bounded"] == true);

  const std::string lists = scratch("lists.json");
  spit(lists, R"({"kind": "brwm", "m": 1, "p": 2, "q": 2, "pj": [2, 2], "qj": ["2", "2"]})");
  CHECK(tfa_json({"check", "--config", lists})["bounded"] == true);

  const std::string unknown = scratch("unknown.json");
  spit(unknown, R"({"kind": "bpwm", "colour": "blue"})");
  Result r = tfa_run({"check", "--config", unknown});
  CHECK(r.code == 2);
  CHECK(r.err.find("colour") != std::string::npos);

  CHECK(tfa_run({"check", "--config", scratch("does_not_exist.json")}).code == 1);
}

TEST_CASE("rihaczek identity check", "[cli][rihaczek]") {
  json j = tfa_json({"rihaczek", "--check-identity", "--m", "1", "--N", "8", "--seed", "7"});
  CHECK(j["max_residual"].get<double>() < 1e-9);
  CHECK(j["pass"] == true);
  CHECK(j["seed"] == 7);

  REQUIRE(tfa_run({"generate", "--kind", "random", "--N", "4", "--alpha", "0.5", "--seed", "3", "--output",
               scratch("g.json")})
              .code == 0);
  REQUIRE(tfa_run({"generate", "--kind", "random", "--N", "4", "--alpha", "0.5", "--seed", "4", "--output",
               scratch("f1.json")})
              .code == 0);
  json files = tfa_json({"rihaczek", "--check-identity", "--g", scratch("g.json"), "--f", scratch("f1.json"), "--f",
                         scratch("f1.json")});
  CHECK(files["m"] == 2);
  CHECK(files["pass"] == true);

  REQUIRE(tfa_run({"rihaczek", "--g", scratch("g.json"), "--f", scratch("f1.json"), "--output", scratch("R.json")}).code ==
          0);
  PhaseSpaceSignal R = phase_space_from_json(read_json_file(scratch("R.json")));
  LatticeSignal g = signal_from_json(read_json_file(scratch("g.json")));
  LatticeSignal f = signal_from_json(read_json_file(scratch("f1.json")));
  auto expected = oracle::rihaczek(g, {f});
  REQUIRE(R.values().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(R.values()[i] - expected[i]) < 1e-12);

  Result missing = tfa_run({"rihaczek", "--g", scratch("g.json")});
  CHECK(missing.code == 2);
  Result bad_path = tfa_run({"rihaczek", "--g", scratch("nope.json"), "--f", scratch("f1.json")});
  CHECK(bad_path.code == 1);
  CHECK(bad_path.err.find("nope.json") != std::string::npos);
}

TEST_CASE("norm of a stored delta", "[cli][norm]") {
  REQUIRE(tfa_run({"generate", "--kind", "delta", "--N", "16", "--alpha", "0.5", "--output", scratch("delta.json")}).code ==
          0);
  json j = tfa_json({"norm", "--input", scratch("delta.json"), "--space", "modulation", "--p", "2", "--q", "2"});

  const Grid grid(1, 16, 0.5);
  LatticeSignal delta = LatticeSignal::delta(grid, {0});
  LatticeSignal w = gaussian_window(grid);
  auto V = oracle::stft(delta.values(), w.values(), 1, 16, 0.5);
  double s = 0;
  for (const auto& v : V) s += std::norm(v) * grid.alpha * grid.dual_alpha();
  CHECK(j["value"].get<double>() == Catch::Approx(std::sqrt(s)).epsilon(1e-12));
  CHECK(j["space"] == "modulation");

  json lp = tfa_json({"norm", "--input", scratch("delta.json"), "--space", "lp", "--p", "1"});
  CHECK(lp["value"].get<double>() == Catch::Approx(0.5));
  json wiener = tfa_json({"norm", "--input", scratch("delta.json"), "--space", "wiener", "--p", "1", "--q", "inf"});
  CHECK(wiener["value"].get<double>() > 0);
  CHECK(tfa_run({"norm", "--input", scratch("delta.json"), "--space", "sobolev", "--p", "1"}).code == 1);
  spit(scratch("broken.json"), "{\"d\": 1, ");
  Result broken = tfa_run({"norm", "--input", scratch("broken.json"), "--space", "lp", "--p", "1"});
  CHECK(broken.code == 1);
  CHECK(broken.err.find("broken.json") != std::string::npos);
}

TEST_CASE("experiment command", "[cli][experiment]") {
  SECTION("scaling demo") {
    json j = tfa_json({"experiment", "--kind", "scaling", "--tuple", "unbounded-demo", "--csv", scratch("scaling.csv")});
    CHECK(j["pass"] == true);
    CHECK(j["predicted"].get<double>() == Catch::Approx(1.0));
    CHECK(std::abs(j["slope"].get<double>() - 1.0) <= j["tolerance"].get<double>());
    CHECK(j["verdict_bounded"] == false);
    auto rows = csv_rows(slurp(scratch("scaling.csv")));
    CHECK(rows.size() == 5);
  }
  SECTION("growth kinds") {
    json star = tfa_json({"experiment", "--kind", "star-growth"});
    CHECK(star["pass"] == true);
    CHECK(star["predicted"].get<double>() == Catch::Approx(0.5));
    json tau = tfa_json({"experiment", "--kind", "tau-growth", "--p", "1", "--q", "1", "--qj", "2,2", "--Nmax", "64"});
    CHECK(tau["pass"] == true);
    for (std::string p : {"1", "2", "4"}) CHECK(tfa_json({"experiment", "--kind", "bump-norm", "--p", p})["pass"] == true);
  }
  SECTION("khinchin") {
    json j = tfa_json({"experiment", "--kind", "khinchin"});
    CHECK(j["pass"] == true);
    CHECK(j["seed"] == 0);
  }
  CHECK(tfa_run({"experiment", "--kind", "astrology"}).code == 1);
  CHECK(tfa_run({"experiment"}).code == 2);
}

TEST_CASE("written JSON is readable again", "[cli][roundtrip]") {
  std::mt19937_64 rng(15);
  LatticeSignal f = oracle::random_signal(Grid(2, 4, 0.5), rng);
  LatticeSignal back = signal_from_json(json::parse(to_json(f).dump()));
  CHECK(back.grid().d == 2);
  CHECK(back.grid().N == 4);
  CHECK(back.grid().alpha == 0.5);
  CHECK(back.values() == f.values());

  SeparableWeight w({1, 2}, {1.5, -0.5});
  SeparableWeight wb = weight_from_json(json::parse(to_json(w).dump()));
  CHECK(wb.blocks() == w.blocks());
  CHECK(wb.exponents() == w.exponents());

  TruncatedSequence s = oracle::random_sequence(2, -2, 2, 0.5, rng);
  TruncatedSequence sb = sequence_from_json(json::parse(to_json(s).dump()));
  CHECK(sb.entries() == s.entries());

  // Every CLI output file is accepted by a CLI reader.
  REQUIRE(tfa_run({"generate", "--kind", "bump", "--N", "64", "--balanced", "--lambda", "0.5", "--delta", "1", "--output",
               scratch("bump.json")})
              .code == 0);
  CHECK(tfa_run({"norm", "--input", scratch("bump.json"), "--space", "lp", "--p", "2"}).code == 0);
  REQUIRE(tfa_run({"norm", "--input", scratch("bump.json"), "--space", "modulation", "--p", "1", "--window",
               scratch("bump.json")})
              .code == 0);
  REQUIRE(tfa_run({"experiment", "--kind", "khinchin", "--output", scratch("k.json")}).code == 0);
  CHECK(tfa_run({"check", "--config", scratch("k.json")}).code == 2);  // valid JSON, wrong command
  CHECK_NOTHROW(read_json_file(scratch("k.json")));
}

TEST_CASE("identical inputs give byte-identical outputs", "[cli][reproducibility]") {
  auto twice = [](std::vector<std::string> args, const std::string& file) {
    args.push_back(scratch(file + "_a"));
    REQUIRE(tfa_run(args).code == 0);
    args.back() = scratch(file + "_b");
    REQUIRE(tfa_run(args).code == 0);
    CHECK(slurp(scratch(file + "_a")) == slurp(scratch(file + "_b")));
    CHECK(!slurp(scratch(file + "_a")).empty());
  };
  twice({"generate", "--kind", "random", "--N", "8", "--seed", "9", "--output"}, "rand");
  twice({"experiment", "--kind", "khinchin", "--trials", "100", "--seed", "2", "--csv"}, "khin");
  twice({"experiment", "--kind", "star-growth", "--Nmax", "64", "--output"}, "star");
  twice({"scan", "--kind", "conv", "--q", "1", "--qj", "1,1", "--sweep", "q=0:1:0.25", "--output"}, "conv");
  CHECK(slurp(scratch("conv_a")).find('\r') == std::string::npos);

  Result a = tfa_run({"rihaczek", "--check-identity", "--m", "2", "--N", "4", "--seed", "11"});
  Result b = tfa_run({"rihaczek", "--check-identity", "--m", "2", "--N", "4", "--seed", "11"});
  CHECK(a.out == b.out);
}
