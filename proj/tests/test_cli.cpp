#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "cli_runner.hpp"

using cli_test::run;

namespace {

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::string write_config(const std::string& name, const std::string& body) {
  const auto path = cli_test::scratch_dir() / name;
  std::ofstream(path) << body;
  return path.string();
}

const char* const kNetwork = R"({"dim": 2, "sigma2": 1, "arrival": "deterministic:1",
  "arrival_tau": "deterministic:0.1", "eps2": 0.25, "delta": 0.1, "n": 100, "area": 1e6,
  "bandwidth": 1e5, "delta_guard": 1, "eta": 500, "r": 100, "B": 64})";

}  // namespace

TEST_CASE("update-bound examples") {
  auto r = run("update-bound --dim 1 --sigma2 4 --arrival deterministic:1 --eps2 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "bits_per_packet        1  [Eq30]"));

  r = run("update-bound --dim 2 --sigma2 4 --arrival deterministic:1 --eps2 1");
  CHECK(contains(r.out, "bits_per_packet        2  [Eq49]"));

  r = run("update-bound --dim 1 --sigma2 1 --arrival deterministic:1 --eps2 3.5 --relaxed");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "k_star                 4"));
  CHECK(contains(r.out, "[Eq120]"));
}

TEST_CASE("beacon-bound example and looseness warning") {
  auto r = run("beacon-bound --dim 1 --sigma2 1 --r 2 --arrival deterministic:1 --delta 0.1 --B 64");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "beacon_rate            0.4310"));
  CHECK(contains(r.out, "beacon_bits_per_second 27.58"));
  CHECK(r.err.empty());

  r = run("beacon-bound --dim 1 --sigma2 10 --r 2 --arrival deterministic:1 --delta 0 --B 64");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.err, "loose"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("update-bound --dim 3").exit_code == 2);
  CHECK(run("update-bound --sigma2 abc").exit_code == 2);
  CHECK(run("update-bound --sigma2 -1").exit_code == 2);
  CHECK(run("update-bound --arrival gamma:2").exit_code == 2);
  CHECK(run("beacon-bound --B 1.5").exit_code == 2);
  CHECK(run("sweep --axis sigma2 --grid 1,2").exit_code == 2);
  CHECK(run("sweep --axis sigma2 --grid 2,1 --outputs beacon_rate").exit_code == 2);
  CHECK(run("sweep --axis radius --grid 1,2 --outputs beacon_rate").exit_code == 2);
  CHECK(run("capacity --config /nonexistent/net.json").exit_code == 2);
}

TEST_CASE("help exits cleanly") {
  const auto r = run("--help");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "update-bound"));
}

TEST_CASE("computation failure exits with 1") {
  const auto r = run("update-bound --dim 1 --sigma2 0.001 --eps2 1e5 --relaxed");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "converge"));
}

TEST_CASE("config file with flag overrides") {
  const auto cfg = write_config("net.json", kNetwork);
  auto r = run("capacity --config '" + cfg + "'");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "[Eq112]"));
  CHECK(contains(r.out, "n_star_floor"));

  const auto base = run("critical-n --config '" + cfg + "'");
  const auto bigger_bw = run("critical-n --config '" + cfg + "' --W 1e6");
  CHECK(base.exit_code == 0);
  CHECK(bigger_bw.exit_code == 0);
  CHECK(base.out != bigger_bw.out);

  const auto bad = write_config("bad.json", R"({"n": 10, "colour": "blue"})");
  r = run("capacity --config '" + bad + "'");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "colour"));
}

TEST_CASE("critical-n prints real and floor") {
  const auto cfg = write_config("net.json", kNetwork);
  const auto r = run("critical-n --config '" + cfg + "'");
  CHECK(contains(r.out, "n_star                 "));
  CHECK(contains(r.out, "n_star_floor           "));
  CHECK(contains(r.out, "[Eq114]"));
}

TEST_CASE("sweep writes CSV to a file or stdout") {
  const auto cfg = write_config("net.json", kNetwork);
  const auto path = (cli_test::scratch_dir() / "fig6.csv").string();
  const std::string args = "sweep --config '" + cfg +
                           "' --axis n --grid 1e2,1e4,1e6,1e8,1e9 --outputs deficit_fraction";
  auto r = run(args + " --out '" + path + "'");
  REQUIRE(r.exit_code == 0);
  const auto file = cli_test::slurp(path);
  CHECK(file.rfind("axis_value,quantity,value,equation_tag,warnings\n", 0) == 0);
  CHECK(contains(file, "1e+09,deficit_fraction,1,Eq113,saturated"));

  r = run(args);
  CHECK(r.out == file);

  CHECK(run(args + " --out /nonexistent/dir/x.csv").exit_code == 1);
}

TEST_CASE("sweep point failures stay in-row") {
  const auto r = run("sweep --dim 1 --relaxed --eps2 1e5 --axis sigma2 --grid 0.001,1 "
                     "--outputs update_bits_per_packet");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "0.001,update_bits_per_packet,NaN,,error: "));
  CHECK(contains(r.err, "1 sweep point(s) failed"));
}

TEST_CASE("validate exit codes and the tolerance hook") {
  auto r = run("validate --samples 20000 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "22/22 checks within 3 sigma"));

  r = run("validate --samples 20000 --seed 3 --band 0");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "FAILED: "));
}

TEST_CASE("validate output is byte-identical per seed") {
  const auto a = run("validate --samples 20000", "GEORATE_SEED=77");
  const auto b = run("validate --samples 20000", "GEORATE_SEED=77");
  const auto c = run("validate --samples 20000 --seed 77");
  const auto d = run("validate --samples 20000 --seed 78", "GEORATE_SEED=77");
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out != d.out);
  CHECK(run("validate", "GEORATE_SEED=banana").exit_code == 2);
}
