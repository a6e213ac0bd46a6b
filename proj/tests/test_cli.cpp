#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fano/chow.hpp"
#include "fano/tower.hpp"
#include "report.hpp"
#include "test_util.hpp"

using namespace fano;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "fanodeg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("fanodeg_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
    std::ofstream(path) << content;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("construct prints the spec as JSON") {
  const auto r = run({"construct", "--prop2", "-n", "8", "-k", "3", "--json"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"base_dim\":4,\"levels\":[{\"r\":3,\"c\":1},{\"r\":1,\"c\":2}]}\n");
}

TEST_CASE("degree of P^4 from a spec file") {
  TempFile f(R"({"base_dim": 4, "levels": []})");
  const auto r = run({"degree", "--spec", f.str()});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "625");
  CHECK(r.out.find("delta [5.00000") != std::string::npos);
}

TEST_CASE("round trip through --spec keeps the invariants") {
  const std::vector<std::vector<std::string>> builders = {
      {"--batyrev", "-n", "7"},        {"--prop1", "-n", "12"},
      {"--index-variant", "-n", "20"}, {"--index-variant", "-n", "5", "--clamp"},
      {"--prop2", "-n", "30", "-k", "4"}, {"--prop2", "-n", "9", "-k", "4"},
  };
  for (const auto& b : builders) {
    std::vector<std::string> c = {"construct", "--json"};
    c.insert(c.end(), b.begin(), b.end());
    const auto spec = run(c);
    REQUIRE(spec.code == 0);
    TempFile f(spec.out);

    std::vector<std::string> direct = {"invariants", "--json", "--stages"};
    direct.insert(direct.end(), b.begin(), b.end());
    const auto a = run(direct);
    const auto via_file = run({"invariants", "--json", "--stages", "--spec", f.str()});
    CHECK(a.code == 0);
    CHECK(via_file.code == 0);
    CHECK(a.out == via_file.out);
  }
}

TEST_CASE("degree and oracle agree on specs of dimension at most 10") {
  std::mt19937_64 rng(20261015);
  int tested = 0;
  while (tested < 60) {
    const TowerSpec spec = testing::random_valid_spec(rng);
    if (spec.dim() > 10) continue;
    TempFile f(cli::spec_to_json(spec).dump());
    const auto d = run({"degree", "--spec", f.str()});
    const auto o = run({"oracle", "--spec", f.str(), "--check"});
    REQUIRE(d.code == 0);
    CHECK(o.code == 0);
    CHECK(first_line(d.out) == first_line(o.out));
    ++tested;
  }
}

TEST_CASE("oracle rewrite orders give the same degree") {
  const auto a = run({"oracle", "--prop2", "-n", "9", "-k", "4", "--order", "highest"});
  const auto b = run({"oracle", "--prop2", "-n", "9", "-k", "4", "--order", "shuffled", "--seed", "7"});
  const auto c = run({"oracle", "--prop2", "-n", "9", "-k", "4", "--order", "lowest"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("spec files are schema checked") {
  const std::vector<std::string> bad = {
      R"({"base_dim": 4, "levels": [], "extra": 1})",
      R"({"base_dim": 4, "levels": [{"r": 1, "c": 0, "x": 2}]})",
      R"({"base_dim": -1, "levels": []})",
      R"({"base_dim": 2, "levels": [{"r": -1, "c": 0}]})",
      R"({"base_dim": 2, "levels": [{"r": 1, "c": -2}]})",
      R"({"base_dim": 2.5, "levels": []})",
      R"({"levels": []})",
      R"({"base_dim": 2, "levels": {}})",
      R"([1, 2])",
      R"({"base_dim": 2,)",
  };
  for (const auto& doc : bad) {
    TempFile f(doc);
    const auto r = run({"degree", "--spec", f.str()});
    CHECK_MESSAGE(r.code == 2, doc);
    CHECK(r.out.empty());
  }
  // well formed, but c exceeds index - 1 of P^2
  TempFile f(R"({"base_dim": 2, "levels": [{"r": 1, "c": 3}]})");
  CHECK(run({"degree", "--spec", f.str()}).code == 2);
  CHECK(run({"degree", "--spec", "/nonexistent/spec.json"}).code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"construct", "--prop1"}).code == 2);
  CHECK(run({"construct", "--prop1", "--batyrev", "-n", "5"}).code == 2);
  CHECK(run({"construct", "--index-variant", "-n", "5"}).code == 2);
  CHECK(run({"construct", "--index-variant", "-n", "5", "--clamp"}).code == 0);
  CHECK(run({"construct", "--prop2", "-n", "8", "-k", "4"}).code == 2);
  CHECK(run({"verify", "prop1", "--from", "3", "--to", "40"}).code == 0);
  CHECK(run({"verify", "prop1", "--from", "2", "--to", "4"}).code == 2);
  CHECK(run({"verify", "index-variant", "--from", "4", "--to", "40"}).code == 0);
  CHECK(run({"verify", "prop2", "--from", "4", "--to", "40"}).code == 0);
  CHECK(run({"verify", "chain", "--from", "4", "--to", "30", "-k", "3"}).code == 0);
  CHECK(run({"verify", "prop1", "--precision-cap", "8"}).code == 2);
  CHECK(run({"search", "ratio-table", "--n-list", "3,10,50"}).code == 0);
  CHECK(run({"search", "ratio-table", "--n-list", "2"}).code == 2);
}

TEST_CASE("a precision cap too small to decide gives exit 3") {
  // 32 bits cannot separate the degree from the bound at n = 900
  const auto r = run({"verify", "prop1", "--from", "900", "--to", "900", "--precision-cap", "32", "--brief"});
  CHECK(r.code == 3);
  CHECK(r.out.find("\"verdict\":\"undecided\"") != std::string::npos);
}

TEST_CASE("verify records are line-delimited JSON in input order") {
  const auto r = run({"verify", "prop2", "--from", "4", "--to", "12", "--k-from", "2", "--k-to", "4", "--brief"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3 * 9 + 1);
  long prev_k = 2, prev_n = 3;
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    const auto j = cli::Json::parse(ls[i]);
    const long k = j["k"], n = j["n"];
    CHECK((k > prev_k || (k == prev_k && n == prev_n + 1)));
    prev_k = k;
    prev_n = n;
  }
  const auto summary = cli::Json::parse(ls.back());
  CHECK(summary["summary"] == "prop2");
  CHECK(summary["false"] == 0);
}

TEST_CASE("index variant sweep lists clamped dimensions") {
  const auto r = run({"verify", "index-variant", "--from", "4", "--to", "30", "--brief"});
  REQUIRE(r.code == 0);
  const auto summary = cli::Json::parse(lines(r.out).back());
  std::vector<long> expected;
  for (long n = 4; n <= 30; ++n) {
    if (n - 2 * floor_n_over_log_n(n) < 0) expected.push_back(n);
  }
  CHECK(summary["clamped_n"].get<std::vector<long>>() == expected);
}

TEST_CASE("ratio table CSV layout") {
  const auto r = run({"search", "ratio-table", "--n-list", "50,100", "--csv"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "n,r_star,a_star,degree_digits,delta_lo,delta_hi,ratio_lo,ratio_hi");
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(std::count(ls[i].begin(), ls[i].end(), ',') == 7);
  CHECK(ls[1].rfind("50,", 0) == 0);
  CHECK(ls[2].rfind("100,", 0) == 0);
}

TEST_CASE("output is deterministic and independent of the job count") {
  const std::vector<std::vector<std::string>> cmds = {
      {"verify", "prop2", "--from", "4", "--to", "40"},
      {"verify", "upper-bounds", "--from", "2", "--to", "25", "--kahler-einstein", "--picard-one"},
      {"search", "best-ra", "--from", "2", "--to", "25"},
      {"search", "ratio-table", "--from", "3", "--to", "30", "--json"},
      {"table", "degrees", "--family", "prop2", "-k", "3", "--from", "2", "--to", "30"},
      {"table", "prop2-min-n", "--max-n", "100"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c);
    const auto b = run(c);
    auto c4 = c;
    c4.insert(c4.end(), {"--jobs", "4"});
    const auto p = run(c4);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == p.out);
  }
}

TEST_CASE("timings only add fields") {
  const auto plain = run({"verify", "prop1", "--from", "3", "--to", "10"});
  const auto timed = run({"verify", "prop1", "--from", "3", "--to", "10", "--timings"});
  const auto pl = lines(plain.out), tl = lines(timed.out);
  REQUIRE(pl.size() == tl.size());
  for (std::size_t i = 0; i + 1 < pl.size(); ++i) {
    auto j = cli::Json::parse(tl[i]);
    CHECK(j.contains("elapsed_ms"));
    j.erase("elapsed_ms");
    CHECK(j.dump() == pl[i]);
  }
}

TEST_CASE("exact integers are lossless decimal strings") {
  const auto r = run({"degree", "--batyrev", "-n", "60", "--json"});
  REQUIRE(r.code == 0);
  const auto j = cli::Json::parse(r.out);
  CHECK(ExactInt(j["degree"]["value"].get<std::string>()) == degree(build_batyrev(60)));
  CHECK(j["degree"]["digits"] == j["degree"]["value"].get<std::string>().size());
  CHECK(j["delta"]["precision_bits"] == 128);
}

TEST_CASE("scientific field") {
  CHECK(cli::scientific(ExactInt(625)) == "6.25e+2");
  CHECK(cli::scientific(ExactInt(7)) == "7e+0");
  CHECK(cli::scientific(ExactInt("123456789")) == "1.23456e+8");
  CHECK(cli::decimal_digits(ExactInt("-1000")) == 4);
}
