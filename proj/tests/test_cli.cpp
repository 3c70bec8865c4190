#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"

#include "bfzeta/anosov_orbits.hpp"
#include "cli.hpp"

using namespace bfzeta;

namespace {

const std::string kData = BFZETA_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> quantities(const std::string& csv) {
  std::map<std::string, std::string> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line) && !line.empty()) {
    const auto comma = line.find(',');
    out[line.substr(0, comma)] = line.substr(comma + 1);
  }
  return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "cli_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("torsion command") {
  auto r = run({"torsion", "--complex", kData + "/circle_pi.cx"});
  CHECK(r.code == 0);
  auto q = quantities(r.out);
  CHECK(q["beta_0"] == "0");
  CHECK(q["beta_1"] == "0");
  CHECK(std::stod(q["tau_laplacian"]) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::stod(q["tau_coexact"]) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::stod(q["z_schwarz"]) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::stod(q["relation1"]) < 1e-12);

  r = run({"torsion", "--complex", kData + "/cat_mapping_torus_pi.cx", "--sigma", "-1"});
  CHECK(r.code == 0);
  q = quantities(r.out);
  CHECK(std::stod(q["tau_coexact"]) == doctest::Approx(1.25).epsilon(1e-13));
  CHECK(std::stod(q["z_schwarz"]) == doctest::Approx(1.25).epsilon(1e-13));

  r = run({"torsion", "--complex", kData + "/circle_trivial.cx"});
  CHECK(r.code == cli::kExitDomain);
  CHECK(r.err.find("NotAcyclic") != std::string::npos);
  CHECK(quantities(r.out)["beta_0"] == "1");

  r = run({"torsion", "--complex", kData + "/malformed.cx"});
  CHECK(r.code == cli::kExitParse);
  CHECK(r.err.find("malformed.cx: ParseError(line 5)") != std::string::npos);

  r = run({"torsion", "--complex", kData + "/missing.cx"});
  CHECK(r.code == cli::kExitParse);
}

TEST_CASE("bf command") {
  auto r = run({"bf", "--config", kData + "/mapping_torus_bf.conf"});
  REQUIRE(r.code == 0);
  auto q = quantities(r.out);
  CHECK(std::stod(q["z_metric"]) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(std::stod(q["z_contraction"]) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(std::stod(q["max_deviation"]) < 1e-9);

  const auto table = r.out.substr(r.out.find("\n\n") + 2);
  const auto rows = csv_rows(table);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0][0] == "t");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][0]) == doctest::Approx((i - 1) / 9.0).epsilon(1e-15));
    if (i > 1) CHECK(std::stod(rows[i][0]) > std::stod(rows[i - 1][0]));
    CHECK(std::abs(std::stod(rows[i][1]) - 1.25) < 1e-12);
  }

  const auto shrink = write_temp("shrink.conf", "space = circle\nfamily = shrink\n");
  r = run({"bf", "--config", shrink});
  CHECK(r.code == cli::kExitDomain);
  CHECK(r.err.find("DegenerateContraction: sample 9 (t = 1)") != std::string::npos);

  // A tolerance tighter than roundoff turns the run into a verification failure.
  const auto strict = write_temp("strict.conf", "space = mapping_torus\ndeviation_tol = 1e-300\n");
  CHECK(run({"bf", "--config", strict}).code == cli::kExitVerification);
}

TEST_CASE("zeta command") {
  auto r = run({"zeta", "--config", kData + "/cat_zeta.conf"});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1 + 7 * 4);
  CHECK(rows[0].size() == 8);
  // Closed forms from the eigenvalues of [[2,1],[1,1]]: ζ_0 = 1 - z, ζ_1 = (1 - zμ)(1 - z/μ), ζ_2 = 1 - z.
  const double mu = (3.0 + std::sqrt(5.0)) / 2.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double re = std::stod(rows[i][0]);
    const cplx z = -std::exp(-re);
    cplx expected;
    if (rows[i][2] == "1") {
      expected = std::log(1.0 - z * mu) + std::log(1.0 - z / mu);
    } else if (rows[i][2] == "full") {
      expected = std::log(1.0 - z * mu) + std::log(1.0 - z / mu) - 2.0 * std::log(1.0 - z);
    } else {
      expected = std::log(1.0 - z);
    }
    const double tail = std::stod(rows[i][5]);
    CHECK(tail > 0.0);
    CHECK(std::abs(cplx(std::stod(rows[i][3]), std::stod(rows[i][4])) - expected) <= tail);
    CHECK(rows[i][7] == "ok");
  }

  r = run({"zeta", "--config", kData + "/cat_closed_form.conf"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("inverse_abs_zeta_0=0.80000000000000004") != std::string::npos);
  rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::exp(-std::stod(rows[1][3])) == doctest::Approx(0.8).epsilon(1e-15));

  r = run({"zeta", "--config", kData + "/cat_zeta.conf", "--lambda-start", "0.5", "--lambda-stop", "1", "--lambda-steps", "2"});
  REQUIRE(r.code == 0);
  rows = csv_rows(r.out);
  CHECK(rows[2][2] == "1");
  CHECK(rows[2][3] == "nan");
  CHECK(rows[2][5] == "inf");
  CHECK(rows[2][7] == "divergent");
  CHECK(rows[1][7] == "ok");

  r = run({"zeta", "--config", kData + "/cat_zeta.conf", "--format", "json", "--lambda-steps", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"status\": \"ok\"") != std::string::npos);

  r = run({"zeta", "--config", kData + "/cat_zeta.conf", "--theta", "0", "--lambda-start", "0", "--lambda-steps", "1"});
  CHECK(r.code == 0);
  CHECK(csv_rows(r.out)[1][7] == "divergent");
}

TEST_CASE("orbits command") {
  const auto r = run({"orbits", "--J", "6", "--theta", "pi/2"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto s = read_orbit_spectrum(in);
  REQUIRE(s.records.size() == 6);
  CHECK(s.records[0].count == 1);
  CHECK(s.records[1].count == 2);
  CHECK(s.records[2].count == 5);
  CHECK(std::abs(s.records[0].holonomy - cplx(0.0, 1.0)) < 1e-15);

  CHECK(run({"orbits", "--J", "3", "--format", "csv"}).out.rfind("length,primitive,", 0) == 0);
  CHECK(run({"zeta", "--format", "spectrum"}).code == cli::kExitParse);
}

TEST_CASE("configuration and flags") {
  const auto bad = write_temp("bad.conf", "# comment\n\ntheta = pi\nbogus = 1\n");
  auto r = run({"zeta", "--config", bad});
  CHECK(r.code == cli::kExitParse);
  CHECK(r.err.find("line 4") != std::string::npos);
  CHECK(run({"zeta", "--config", write_temp("noeq.conf", "theta pi\n")}).code == cli::kExitParse);
  CHECK(run({"zeta", "--sigma", "2"}).code == cli::kExitParse);
  CHECK(run({"zeta", "--lambda-steps", "0"}).code == cli::kExitParse);
  CHECK(run({"zeta", "--theta", "pie"}).code == cli::kExitParse);
  CHECK(run({"zeta", "--config", write_temp("tol.conf", "deviation_tol = -1\n")}).code == cli::kExitParse);
  CHECK(run({"frobnicate"}).code == cli::kExitParse);
  CHECK(run({}).code == cli::kExitParse);
  CHECK(run({"--help"}).code == 0);

  cli::RunConfig c;
  cli::apply_setting(c, "theta", "2pi/3", 1);
  CHECK(c.theta == doctest::Approx(2.0 * 3.141592653589793 / 3.0).epsilon(1e-16));
  cli::apply_setting(c, "theta", "-pi", 1);
  CHECK(c.theta == -3.141592653589793);
  cli::apply_setting(c, "degrees", "full 1", 1);
  CHECK(c.degrees == std::vector<int>{-1, 1});

  // Flags override the config file.
  r = run({"bf", "--config", kData + "/mapping_torus_bf.conf", "--space", "circle", "--sigma", "1"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(quantities(r.out)["torsion"]) == doctest::Approx(2.0));
}

TEST_CASE("identical configuration gives identical bytes") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"zeta", "--config", kData + "/cat_zeta.conf"},
                                                                 {"bf", "--config", kData + "/mapping_torus_bf.conf"},
                                                                 {"torsion", "--complex", kData + "/cat_mapping_torus_pi.cx"},
                                                                 {"orbits", "--J", "12", "--format", "json"}}) {
    CHECK(run(args).out == run(args).out);
  }
  const std::string path = "cli_test_out.csv";
  REQUIRE(run({"zeta", "--config", kData + "/cat_zeta.conf", "--out", path}).out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream file;
  file << in.rdbuf();
  CHECK(file.str() == run({"zeta", "--config", kData + "/cat_zeta.conf"}).out);
}

TEST_CASE("verify runs the acceptance suite") {
  const auto r = run({"verify", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"passed\": true") != std::string::npos);
  CHECK(r.out.find("\"passed\": false") == std::string::npos);
}
