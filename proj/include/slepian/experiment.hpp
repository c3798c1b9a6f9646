#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "slepian/concentration.hpp"
#include "slepian/varying_masks.hpp"

namespace slepian {

// Bad configuration text or values; the message names the section and key.
class config_error : public input_error {
 public:
  using input_error::input_error;
};

// A dense computation would exceed the configured memory cap.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct output_settings {
  std::string dir;               // empty: not set in the file
  bool spectrum_csv = true;
  bool vectors_csv = true;
  bool run_record = true;
  bool svg = true;
  int vectors = 16;              // eigenvectors written by `eig`
  bool dump_matrix = false;
};

struct diagnostic_settings {
  bool assumption = false;
  int tracked = 30;
  double floor = 1e-10;
  double distinct_tol = 1e-13;
};

struct oracle_settings {
  std::vector<std::string> suites{"gaussian", "splitting", "quasimode", "quadric", "dpss", "equivalence"};
  double gaussian_alpha = 50.0;
  double gaussian_beta = 50.0;
  int gaussian_n = 200;
  int gaussian_orders = 5;       // n = 0..orders
  double quadric_c = 0.6 * 3.14159265358979323846;
  int quadric_n = 150;
  double dpss_w = 0.1;
  int dpss_n = 150;
};

struct experiment_config {
  int dim = 1;
  int n = 150;
  mask_family space;
  mask_family fourier;
  varying_config varying;
  output_settings output;
  diagnostic_settings diagnostic;
  oracle_settings oracle;
  std::uint64_t seed = 0;
  double memory_cap_mb = 2048.0;

  grid make_grid() const { return {dim, n}; }
  concentration_problem problem() const;
  // Whole-config consistency checks (supports inside their domains, sizes).
  void validate() const;
};

// Plain text: `[section]` headers, `key = value` lines, `#` or `;` comments.
// Numbers accept products and quotients with `pi`, e.g. `0.3*2*pi`.
experiment_config parse_config(const std::string& text);
experiment_config load_config(const std::filesystem::path& path);
// Sets one key as if it appeared in the file.
void set_config_value(experiment_config& cfg, const std::string& section, const std::string& key,
                      const std::string& value);
// Every documented key with its effective value, by section.
std::map<std::string, std::map<std::string, std::string>> config_echo(const experiment_config& cfg);

double parse_number_expr(const std::string& text);

inline constexpr const char* output_dir_env = "SLEPIAN_KIT_OUT";

struct command_options {
  std::string out_dir;           // from the command line; empty if absent
  bool timestamp = true;
  std::optional<std::uint64_t> seed;
};

// --out, then $SLEPIAN_KIT_OUT, then [output] dir, then ./out.
std::filesystem::path resolve_output_dir(const command_options& opt, const experiment_config& cfg);

enum exit_status : int { exit_ok = 0, exit_failure = 1, exit_config = 2, exit_partial = 3, exit_oracle = 4 };

// Runs assemble, eig, varying-masks, oracle-check or plot. Progress and
// reports go to `log`; artifacts go to the resolved output directory.
int run_command(const std::string& command, const experiment_config& cfg, const command_options& opt,
                std::ostream& log);

// ---- oracle suites ----

struct oracle_check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  std::string requirement;
  bool passed = false;
};

std::vector<oracle_check> run_oracle_suite(const std::string& suite, const oracle_settings& settings);
const std::vector<std::string>& oracle_suite_names();

}  // namespace slepian
