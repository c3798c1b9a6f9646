// Command-line front end; talks to the library through the C interface only.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "slepian/slepian.h"

namespace {

void print_log(const char* text, void*) { std::fputs(text, stdout); }

int exit_code(sk_status s) {
  switch (s) {
    case SK_OK: return 0;
    case SK_CONFIG_ERROR: return 2;
    case SK_PARTIAL: return 3;
    case SK_ORACLE_FAILURE: return 4;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral concentration experiments: assemble, eig, varying-masks, oracle-check, plot"};
  std::string command, config, out;
  bool no_timestamp = false;
  std::uint64_t seed = 0;
  app.add_option("command", command, "assemble | eig | varying-masks | oracle-check | plot")
      ->required()
      ->check(CLI::IsMember({"assemble", "eig", "varying-masks", "oracle-check", "plot"}));
  app.add_option("--config,-c", config, "experiment configuration file")->required();
  app.add_option("--out,-o", out, "output directory (overrides $SLEPIAN_KIT_OUT and [output] dir)");
  app.add_flag("--no-timestamp", no_timestamp, "omit the generation time from SVG files");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized checks (overrides [run] seed)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  sk_config* cfg = nullptr;
  sk_status s = sk_config_load(config.c_str(), &cfg);
  if (s != SK_OK) {
    std::fprintf(stderr, "slepian-kit: %s\n", sk_last_error());
    return exit_code(s);
  }
  sk_run_options opt{};
  opt.out_dir = out.empty() ? nullptr : out.c_str();
  opt.timestamp = no_timestamp ? 0 : 1;
  opt.has_seed = seed_opt->count() > 0;
  opt.seed = seed;
  s = sk_run_command(command.c_str(), cfg, &opt, print_log, nullptr);
  std::fflush(stdout);
  if (s != SK_OK) std::fprintf(stderr, "slepian-kit: %s: %s\n", sk_status_name(s), sk_last_error());
  sk_config_free(cfg);
  return exit_code(s);
}
