#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wellsim/cli.hpp"

using namespace wellsim;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"wellsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "wellsim_cli_test") {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("time expressions cover numbers, pi fractions, and protocol names") {
  const double hom_t = pi / 4.0;
  const double rev_t = pi / 2.0;
  CHECK(cli::parse_time("0.5", hom_t, rev_t) == doctest::Approx(0.5));
  CHECK(cli::parse_time("pi", hom_t, rev_t) == doctest::Approx(pi));
  CHECK(cli::parse_time("pi/4", hom_t, rev_t) == doctest::Approx(pi / 4.0));
  CHECK(cli::parse_time("3pi/8", hom_t, rev_t) == doctest::Approx(3.0 * pi / 8.0));
  CHECK(cli::parse_time("2pi", hom_t, rev_t) == doctest::Approx(2.0 * pi));
  CHECK(cli::parse_time("2*pi", hom_t, rev_t) == doctest::Approx(2.0 * pi));
  CHECK(cli::parse_time("pi/sqrt2", hom_t, rev_t) == doctest::Approx(pi / sqrt2));
  CHECK(cli::parse_time("pi/2sqrt2", hom_t, rev_t) == doctest::Approx(pi / (2.0 * sqrt2)));
  CHECK(cli::parse_time("pi/1.5", hom_t, rev_t) == doctest::Approx(pi / 1.5));
  CHECK(cli::parse_time("hom", hom_t, rev_t) == doctest::Approx(hom_t));
  CHECK(cli::parse_time("REVIVAL", hom_t, rev_t) == doctest::Approx(rev_t));
  CHECK(cli::parse_time(" pi / 4 ", hom_t, rev_t) == doctest::Approx(pi / 4.0));
  CHECK_THROWS_AS(cli::parse_time("banana", hom_t, rev_t), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_time("1.2.3", hom_t, rev_t), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_time("", hom_t, rev_t), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_time("pi/zero", hom_t, rev_t), std::invalid_argument);
}

TEST_CASE("collision command writes a parseable csv") {
  TempDir tmp;
  auto out = tmp.path / "hom.csv";
  CHECK(run_cli({"hom", "--na", "2", "--nb", "2", "-o", out.string()}) == 0);
  std::string csv = read_file(out);
  CHECK(csv.find("# version=0.1.0") == 0);
  CHECK(csv.find("n,p_n") != std::string::npos);
  CHECK(csv.find("0,0.375") != std::string::npos);
  CHECK(csv.find("2,0.25") != std::string::npos);
}

TEST_CASE("repeated runs produce byte-identical output") {
  TempDir tmp;
  auto first = tmp.path / "a.json";
  auto second = tmp.path / "b.json";
  std::vector<std::string> base{"bell", "--xi-min", "2.7", "--xi-max", "2.8",
                                "--format", "json"};
  auto with_out = [&](const std::string& p) {
    auto v = base;
    v.push_back("-o");
    v.push_back(p);
    return v;
  };
  CHECK(run_cli(with_out(first.string())) == 0);
  CHECK(run_cli(with_out(second.string())) == 0);
  std::string a = read_file(first);
  CHECK(a == read_file(second));
  CHECK(!a.empty());

  nlohmann::ordered_json j = nlohmann::ordered_json::parse(a);
  double q_max = j["metadata"]["q_max"].get<double>();
  double xi_star = j["metadata"]["xi_star"].get<double>();
  CHECK(std::abs(q_max - 2.8154634) < 1e-5);
  CHECK(std::abs(xi_star - 2.7377) < 1e-3);
}

TEST_CASE("series and mean-field commands run end to end") {
  TempDir tmp;
  auto series = tmp.path / "series.csv";
  CHECK(run_cli({"hom-series", "--na", "1", "--nb", "1", "--t-max", "pi", "--points",
                 "11", "-o", series.string()}) == 0);
  std::string csv = read_file(series);
  CHECK(csv.find("t,p_0,p_1,p_2") != std::string::npos);

  auto mf = tmp.path / "mf.json";
  CHECK(run_cli({"meanfield", "--n", "4", "--gamma", "0", "--t-max", "2", "--points",
                 "21", "--format", "json", "-o", mf.string()}) == 0);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(read_file(mf));
  CHECK(j["metadata"]["gamma_critical"].get<double>() == doctest::Approx(1.0));
  REQUIRE(j["rows"].size() == 21);
  // free evolution: exact and mean-field agree at every sample
  for (const auto& row : j["rows"])
    CHECK(std::abs(row[1].get<double>() - row[2].get<double>()) < 1e-6);
}

TEST_CASE("well-loop commands accept protocol time names") {
  TempDir tmp;
  auto three = tmp.path / "three.csv";
  CHECK(run_cli({"three-well", "--t", "revival", "-o", three.string()}) == 0);
  CHECK(read_file(three).find("101,1") != std::string::npos);

  auto four = tmp.path / "four.csv";
  CHECK(run_cli({"four-well", "--t", "hom", "-o", four.string()}) == 0);
  std::string csv = read_file(four);
  CHECK(csv.find("2000,0.125") != std::string::npos);
  CHECK(csv.find("1010,0.25") != std::string::npos);
}

TEST_CASE("usage errors exit with one") {
  CHECK(run_cli({}) == 1);
  CHECK(run_cli({"no-such-command"}) == 1);
  CHECK(run_cli({"hom", "--na", "not_a_number"}) == 1);
  CHECK(run_cli({"hom", "--t", "garbage"}) == 1);
  CHECK(run_cli({"sweep", "--param", "temperature"}) == 1);
  CHECK(run_cli({"hom", "--na", "-2"}) == 1);
}

TEST_CASE("numerical failures exit with two") {
  // a frozen correlation landscape has no optimum to report
  CHECK(run_cli({"bell", "--t", "0"}) == 2);
}

TEST_CASE("unwritable output paths exit with three") {
  CHECK(run_cli({"hom", "-o", "/nonexistent_dir_zz/out.csv"}) == 3);
}

TEST_CASE("config files supply the same values as flags") {
  TempDir tmp;
  auto ini = tmp.path / "run.ini";
  {
    std::ofstream out(ini);
    out << "[hom]\n"
        << "na=2\n"
        << "nb=2\n"
        << "gamma=0.5\n";
  }
  auto from_config = tmp.path / "config.csv";
  auto from_flags = tmp.path / "flags.csv";
  CHECK(run_cli({"--config", ini.string(), "hom", "-o", from_config.string()}) == 0);
  CHECK(run_cli({"hom", "--na", "2", "--nb", "2", "--gamma", "0.5", "-o",
                 from_flags.string()}) == 0);
  CHECK(read_file(from_config) == read_file(from_flags));
}

TEST_CASE("interaction sweep reports the balance point when it brackets one") {
  TempDir tmp;
  auto out = tmp.path / "sweep.json";
  CHECK(run_cli({"sweep", "--param", "gamma", "--from", "2", "--to", "3", "--step",
                 "0.25", "--format", "json", "-o", out.string()}) == 0);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(read_file(out));
  double gamma_star = j["metadata"]["gamma_star"].get<double>();
  CHECK(gamma_star > 2.4);
  CHECK(gamma_star < 2.6);
  REQUIRE(j["rows"].size() == 5);
}

TEST_CASE("rate sweep evaluates the correlation combination on a grid") {
  TempDir tmp;
  auto out = tmp.path / "xi.csv";
  CHECK(run_cli({"sweep", "--param", "xi", "--from", "0", "--to", "1", "--step", "0.5",
                 "-o", out.string()}) == 0);
  std::string csv = read_file(out);
  CHECK(csv.find("xi,Q") != std::string::npos);
  CHECK(csv.find("0,2") != std::string::npos);
}
