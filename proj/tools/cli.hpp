#ifndef BFZETA_TOOLS_CLI_HPP
#define BFZETA_TOOLS_CLI_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace bfzeta::cli {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitParse = 3;
constexpr int kExitVerification = 4;

struct RunConfig {
  std::string command;
  std::string complex_path;       // complex file; overrides `space`
  std::string space = "circle";   // circle | torus | mapping_torus
  std::string orbits_path;        // orbit spectrum file; overrides `matrix` for zeta
  double theta = 3.141592653589793;
  double phi = 0.0;               // second torus angle
  std::array<long, 4> matrix{2, 1, 1, 1};
  double roof = 1.0;
  int sigma = 1;
  int J = 30;
  double lambda_start = 2.0, lambda_stop = 5.0, lambda_imag = 0.0;
  int lambda_steps = 7;
  std::vector<int> degrees{0, 1, 2, -1};  // -1 is the full zeta
  bool closed_form = false;
  bool fried = false;
  int samples = 10;
  unsigned long seed = 1;
  std::string family = "unitary";  // unitary | shrink
  double scale = 1.0;
  double deviation_tol = 1e-9;
  std::string out;
  std::string format;  // empty: csv, or the spectrum text format for orbits
};

/// Sets one key from a config line or a flag. `line` 0 stands for the command line. Throws ParseError.
void apply_setting(RunConfig& c, const std::string& key, const std::string& value, int line);
/// key = value lines, `#` comments.
void read_config(std::istream& in, RunConfig& c);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bfzeta::cli

#endif  // BFZETA_TOOLS_CLI_HPP
