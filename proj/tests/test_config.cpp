#include <cmath>
#include <numbers>

#include "doctest.h"
#include "slepian/experiment.hpp"

using namespace slepian;

namespace {

const char* moderate = R"(# moderate restriction
[grid]
dim = 1
n = 150

[space_mask]
shape = interval
half_width = 1

[fourier_mask]
shape = interval
half_width = 0.3*2*pi

[varying]
eta = 1e-10
count = 16
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const config_error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("number expressions") {
  CHECK(parse_number_expr("0.3*2*pi") == doctest::Approx(0.6 * std::numbers::pi).epsilon(1e-15));
  CHECK(parse_number_expr("pi/2") == doctest::Approx(std::numbers::pi / 2));
  CHECK(parse_number_expr("-1e-10") == -1e-10);
  CHECK(parse_number_expr(" 42 ") == 42.0);
  CHECK_THROWS_AS(parse_number_expr("abc"), config_error);
  CHECK_THROWS_AS(parse_number_expr("1/0"), config_error);
  CHECK_THROWS_AS(parse_number_expr(""), config_error);
}

TEST_CASE("parse a complete config") {
  const auto cfg = parse_config(moderate);
  CHECK(cfg.dim == 1);
  CHECK(cfg.n == 150);
  CHECK(cfg.varying.eta == 1e-10);
  CHECK(cfg.varying.count == 16);
  CHECK(std::holds_alternative<interval_shape>(cfg.fourier.base.shape));
  CHECK(std::get<interval_shape>(cfg.fourier.base.shape).half_width ==
        doctest::Approx(0.6 * std::numbers::pi).epsilon(1e-15));
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("defaults are documented values") {
  const auto cfg = parse_config("");
  CHECK(cfg.dim == 1);
  CHECK(cfg.n == 150);
  CHECK(cfg.varying.eps_min == 0.1);
  CHECK(cfg.varying.eps_max == 100.0);
  CHECK(cfg.varying.steps == 250);
  CHECK(cfg.varying.count == 16);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("unknown keys and sections are named") {
  CHECK(error_of("[grid]\nsize = 3\n").find("size") != std::string::npos);
  CHECK(error_of("[gird]\nn = 3\n").find("gird") != std::string::npos);
  CHECK(error_of("[grid]\nn = 3\nn = 4\n").find("duplicate") != std::string::npos);
  CHECK(error_of("n = 3\n").find("outside") != std::string::npos);
  CHECK(error_of("[space_mask]\nshape = interval\nradius = 2\n").find("radius") != std::string::npos);
  CHECK(error_of("[grid]\nn = three\n").find("three") != std::string::npos);
}

TEST_CASE("invalid settings are rejected") {
  auto cfg = parse_config(moderate);
  set_config_value(cfg, "varying", "count", "151");
  CHECK_THROWS_AS(cfg.validate(), config_error);
  auto wide = parse_config(moderate);
  set_config_value(wide, "fourier_mask", "half_width", "4");
  CHECK_THROWS_AS(wide.validate(), config_error);
  CHECK_THROWS_AS(set_config_value(wide, "grid", "bogus", "1"), config_error);
}

TEST_CASE("config echo round-trips") {
  const auto cfg = parse_config(moderate);
  const auto echo = config_echo(cfg);
  REQUIRE(echo.count("grid"));
  CHECK(echo.at("grid").at("n") == "150");
  std::string text;
  for (const auto& [section, keys] : echo) {
    text += "[" + section + "]\n";
    for (const auto& [k, v] : keys) text += k + " = " + v + "\n";
  }
  const auto again = parse_config(text);
  CHECK(config_echo(again) == echo);
}

TEST_CASE("output directory precedence") {
  auto cfg = parse_config(moderate);
  command_options opt;
  unsetenv(output_dir_env);
  CHECK(resolve_output_dir(opt, cfg) == "out");
  set_config_value(cfg, "output", "dir", "from_config");
  CHECK(resolve_output_dir(opt, cfg) == "from_config");
  setenv(output_dir_env, "from_env", 1);
  CHECK(resolve_output_dir(opt, cfg) == "from_env");
  opt.out_dir = "from_flag";
  CHECK(resolve_output_dir(opt, cfg) == "from_flag");
  unsetenv(output_dir_env);
}

TEST_CASE("2D shapes parse") {
  const auto cfg = parse_config(R"([grid]
dim = 2
n = 60
[space_mask]
shape = ball
center = 0, 0
radius = 0.8
[fourier_mask]
shape = ball
center = 0, 0
radius = 0.3*2*pi
)");
  CHECK(std::get<ball_shape>(cfg.space.base.shape).radius == 0.8);
  CHECK_NOTHROW(cfg.validate());
  const auto cat = parse_config("[grid]\ndim = 2\nn = 60\n[space_mask]\nshape = cat_head\nholes = fixed\n");
  CHECK(std::holds_alternative<raster_shape>(cat.space.base.shape));
}
