#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

// End-to-end checks of the command line: run the built binary, parse reports.

namespace {

const std::string cli = POLYA_CLI_PATH;
const std::string tmpdir = POLYA_TEST_TMPDIR;

int run(const std::string& args) {
  const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

nlohmann::json report(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("constants command emits the sharp Sobolev value") {
  const std::string out = tmpdir + "/constants.json";
  REQUIRE(run("--out " + out + " constants --sobolev -p 2 -N 3") == 0);
  const auto j = report(out);
  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("results").at("sobolev_constant").get<double>() ==
        doctest::Approx(0.4272605).epsilon(1e-6));
}

TEST_CASE("eigen command: sphere gap lambda = 2") {
  const std::string out = tmpdir + "/eigen.json";
  REQUIRE(run("--out " + out + " eigen --family sphere -N 2 --neumann -p 2 --grid 1200") == 0);
  const auto j = report(out);
  CHECK(j.at("results").at("lambda").get<double>() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("generate + verify-pz round trip with matching metadata hash") {
  const std::string space = tmpdir + "/sphere2.json";
  const std::string gen_out = tmpdir + "/gen.json";
  const std::string ver_out = tmpdir + "/ver.json";
  REQUIRE(run("--out " + gen_out + " generate --model sphere -N 2 --grid 1500 --space-out " +
              space) == 0);
  REQUIRE(run("--out " + ver_out + " verify-pz --space " + space + " --function cos -p 2") == 0);
  const auto g = report(gen_out);
  const auto v = report(ver_out);
  CHECK(g.at("results").at("metadata_hash") == v.at("inputs").at("metadata_hash"));
  const double lhs = v.at("results").at("lhs").get<double>();
  const double deficit = v.at("results").at("deficit").get<double>();
  CHECK(lhs == doctest::Approx(2.0 / 3.0).epsilon(1e-2));
  CHECK(deficit >= 0.0);
  CHECK(deficit / lhs < 1e-2);
}

TEST_CASE("byte-identical reports for identical configuration") {
  const std::string a = tmpdir + "/det_a.json";
  const std::string b = tmpdir + "/det_b.json";
  const std::string flags = " profile --family gaussian -v 0.25";
  REQUIRE(run("--out " + a + flags) == 0);
  REQUIRE(run("--out " + b + flags) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("rearrange command accepts stdin atom lists") {
  const std::string atoms = tmpdir + "/atoms.json";
  {
    std::ofstream f(atoms);
    f << R"({"atoms": [[3.0, 0.3], [1.0, 0.5]]})";
  }
  const std::string out = tmpdir + "/rearr.json";
  const std::string csv = tmpdir + "/rearr.csv";
  const std::string cmd = "cat " + atoms + " | " + cli + " --out " + out +
                          " rearrange --function - --family euclidean -N 2 --csv " + csv +
                          " --csv-grid 16 >/dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const auto j = report(out);
  const auto breaks = j.at("results").at("profile").at("breaks");
  CHECK(breaks.size() == 2);
  CHECK(breaks.at(0).get<double>() ==
        doctest::Approx(std::sqrt(0.3 / 3.14159265358979323846)).epsilon(1e-10));
  std::ifstream csvf(csv);
  std::string header;
  std::getline(csvf, header);
  CHECK(header == "x,u_star");
}

TEST_CASE("exit codes follow the error taxonomy") {
  // configuration error -> 1
  CHECK(run("generate --model nonsense --space-out /dev/null") == 1);
  // precondition violation -> 3
  CHECK(run("profile --family gaussian -v 1.5") == 3);
  // eigen without a boundary choice -> 1
  CHECK(run("eigen --family sphere -N 2 -p 2") == 1);
}

TEST_CASE("faber-krahn and neumann-bound commands") {
  const std::string out = tmpdir + "/fk.json";
  REQUIRE(run("--out " + out + " faber-krahn -d 2 -p 2 --volume 3.14159265358979323846 "
              "--grid 800") == 0);
  CHECK(report(out).at("results").at("lambda").get<double>() ==
        doctest::Approx(5.7831859629).epsilon(1e-4));

  const std::string nb = tmpdir + "/nb.json";
  REQUIRE(run("--out " + nb + " neumann-bound -Q 2 -C 1 -p 2 --mass 3.14159265358979323846 "
              "--grid 1200") == 0);
  CHECK(report(nb).at("results").at("lower_bound").get<double>() ==
        doctest::Approx(2.0 * 5.7831859629).epsilon(1e-4));
}

TEST_CASE("stability command on a generated sphere chain") {
  const std::string space = tmpdir + "/sphere_sta.json";
  REQUIRE(run("generate --model sphere -N 2 --grid 1000 --space-out " + space +
              " --out " + tmpdir + "/sta_gen.json") == 0);
  const std::string out = tmpdir + "/sta.json";
  REQUIRE(run("--out " + out + " stability --kind logsobolev --space " + space +
              " --function bump") == 0);
  const auto j = report(out);
  CHECK(j.at("results").at("analytic_deficit").get<double>() > -1e-3);
  CHECK(j.at("results").at("geometric_side").get<double>() == 0.0);
}
