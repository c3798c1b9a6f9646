#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "slepian/slepian.h"

namespace {

const char* small = "[grid]\ndim = 1\nn = 40\n[fourier_mask]\nshape = interval\nhalf_width = 1.2\n";

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(sk_version()) > 0);
  CHECK(std::string(sk_status_name(SK_PARTIAL)).size() > 0);
  CHECK(std::string(sk_status_name(SK_OK)) != std::string(sk_status_name(SK_CONFIG_ERROR)));
}

TEST_CASE("config errors carry a message") {
  sk_config* cfg = nullptr;
  CHECK(sk_config_parse("[grid]\nwidth = 3\n", &cfg) == SK_CONFIG_ERROR);
  CHECK(cfg == nullptr);
  CHECK(std::string(sk_last_error()).find("width") != std::string::npos);
  CHECK(sk_config_parse(nullptr, &cfg) == SK_INVALID_ARGUMENT);
  CHECK(sk_config_load("/nonexistent/slepian.ini", &cfg) != SK_OK);
  CHECK(std::string(sk_last_error()).find("/nonexistent/slepian.ini") != std::string::npos);
}

TEST_CASE("problem handle applies K") {
  sk_config* cfg = nullptr;
  REQUIRE(sk_config_parse(small, &cfg) == SK_OK);
  CHECK(sk_config_validate(cfg) == SK_OK);
  sk_problem* p = nullptr;
  REQUIRE(sk_problem_create(cfg, &p) == SK_OK);
  int64_t n = 0;
  CHECK(sk_problem_size(p, &n) == SK_OK);
  CHECK(n == 40);

  std::vector<double> values(3);
  CHECK(sk_problem_dense_eigenvalues(p, 0.0, values.data(), values.size()) == SK_OK);
  CHECK(values[0] >= values[1]);
  CHECK(values[1] >= values[2]);

  // Rayleigh quotient of any vector stays below the top eigenvalue
  std::vector<double> in(2 * n), out(2 * n);
  for (int64_t i = 0; i < n; ++i) in[2 * i] = std::cos(0.3 * i);
  CHECK(sk_problem_apply(p, 0.0, in.data(), out.data()) == SK_OK);
  double num = 0, den = 0;
  for (int64_t i = 0; i < 2 * n; ++i) {
    num += in[i] * out[i];
    den += in[i] * in[i];
  }
  CHECK(num / den <= values[0] + 1e-12);
  CHECK(sk_problem_apply(p, 0.0, nullptr, out.data()) == SK_INVALID_ARGUMENT);
  CHECK(sk_problem_dense_eigenvalues(p, 0.0, values.data(), 41) != SK_OK);

  CHECK(sk_config_set(cfg, "varying", "count", "41") == SK_OK);
  CHECK(sk_config_validate(cfg) == SK_CONFIG_ERROR);
  CHECK(sk_config_set(cfg, "varying", "nope", "1") == SK_CONFIG_ERROR);
  sk_problem_free(p);
  sk_config_free(cfg);
}

TEST_CASE("schedule and shrink law") {
  double s[3];
  CHECK(sk_epsilon_schedule(0.1, 100, 3, s) == SK_OK);
  CHECK(s[0] == 100.0);
  CHECK(std::abs(s[1] - std::sqrt(10.0)) < 1e-14);
  CHECK(s[2] == 0.1);
  CHECK(sk_epsilon_schedule(1.0, 0.5, 3, s) == SK_DOMAIN_ERROR);
  CHECK(std::abs(sk_mu(1.0) - std::pow(2.0, -0.25)) < 1e-15);
}

TEST_CASE("run command reports through the callback") {
  sk_config* cfg = nullptr;
  REQUIRE(sk_config_parse("[oracle]\nsuites = dpss\n", &cfg) == SK_OK);
  std::string log;
  const std::string dir = "c_api_oracle_out";
  sk_run_options opt{dir.c_str(), 0, 0, 0};
  const sk_status st = sk_run_command(
      "oracle-check", cfg, &opt, [](const char* text, void* user) { *static_cast<std::string*>(user) += text; }, &log);
  CHECK(st == SK_OK);
  CHECK(log.find("dpss") != std::string::npos);
  CHECK(sk_run_command("frobnicate", cfg, &opt, nullptr, nullptr) == SK_CONFIG_ERROR);
  sk_config_free(cfg);
}
