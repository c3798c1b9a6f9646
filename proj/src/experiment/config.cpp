#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "slepian/experiment.hpp"
#include "slepian/io.hpp"

namespace slepian {

namespace {

using raw_section = std::map<std::string, std::string>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::set<std::string> mask{"shape",    "center", "half_width", "radius", "axes",  "level",
                                          "matrix",   "linear", "constant",   "gamma",  "holes", "varies",
                                          "shrink_exponent"};
  static const std::map<std::string, std::set<std::string>> keys{
      {"grid", {"dim", "n"}},
      {"space_mask", mask},
      {"fourier_mask", mask},
      {"solver", {"tol", "max_applications", "basis_size", "keep", "residual_floor"}},
      {"varying",
       {"eps_min", "eps_max", "steps", "schedule", "eta", "count", "warm_start", "reference", "dense_limit"}},
      {"output", {"dir", "spectrum_csv", "vectors_csv", "run_record", "svg", "vectors", "dump_matrix"}},
      {"diagnostic", {"assumption", "tracked", "floor", "distinct_tol"}},
      {"oracle",
       {"suites", "gaussian_alpha", "gaussian_beta", "gaussian_n", "gaussian_orders", "quadric_c", "quadric_n",
        "dpss_w", "dpss_n"}},
      {"run", {"seed", "memory_cap_mb"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, sep)) out.push_back(trim(cell));
  return out;
}

[[noreturn]] void bad(const std::string& section, const std::string& key, const std::string& why) {
  throw config_error("[" + section + "] " + key + ": " + why);
}

double number(const std::string& section, const std::string& key, const std::string& v) {
  try {
    return parse_number_expr(v);
  } catch (const config_error& e) {
    bad(section, key, e.what());
  }
}

std::int64_t integer(const std::string& section, const std::string& key, const std::string& v) {
  const double x = number(section, key, v);
  if (x != std::floor(x) || std::abs(x) > 9.0e15) bad(section, key, "expected an integer, got '" + v + "'");
  return static_cast<std::int64_t>(x);
}

bool boolean(const std::string& section, const std::string& key, const std::string& v) {
  std::string s = v;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  bad(section, key, "expected true or false, got '" + v + "'");
}

std::vector<double> numbers(const std::string& section, const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& c : split(v, ',')) out.push_back(number(section, key, c));
  return out;
}

std::string format(double v) { return io::format_number(v); }

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format(v[i]);
  return s;
}

std::string join(const Eigen::VectorXd& v) { return join(std::vector<double>(v.data(), v.data() + v.size())); }

mask_family build_mask(const std::string& section, const raw_section& raw, int dim, mask_role role) {
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    auto it = raw.find(key);
    if (it == raw.end()) return std::nullopt;
    return it->second;
  };
  auto vec_or = [&](const std::string& key, std::vector<double> fallback) {
    auto v = get(key);
    return v ? numbers(section, key, *v) : fallback;
  };
  auto num_or = [&](const std::string& key, double fallback) {
    auto v = get(key);
    return v ? number(section, key, *v) : fallback;
  };
  const std::string shape = get("shape").value_or("interval");
  const std::set<std::string> used_by_all{"shape", "varies", "shrink_exponent"};
  std::set<std::string> allowed = used_by_all;
  mask_family f;
  f.base.role = role;
  const std::vector<double> zeros(dim, 0.0);
  if (shape == "interval") {
    allowed.insert({"center", "half_width"});
    f.base.shape = interval_shape{num_or("center", 0.0), num_or("half_width", 1.0)};
  } else if (shape == "ball") {
    allowed.insert({"center", "radius"});
    f.base.shape = ball_shape{vec_or("center", zeros), num_or("radius", 1.0)};
  } else if (shape == "quadric") {
    allowed.insert({"center", "axes", "level"});
    f.base.shape = quadric_shape{vec_or("center", zeros), vec_or("axes", std::vector<double>(dim, 1.0)),
                                 num_or("level", 1.0)};
  } else if (shape == "general_quadric") {
    allowed.insert({"matrix", "linear", "constant"});
    general_quadric_shape q;
    q.matrix = Eigen::MatrixXd::Identity(dim, dim);
    if (auto m = get("matrix")) {
      const auto rows = split(*m, ';');
      if (static_cast<int>(rows.size()) != dim) bad(section, "matrix", "expected " + std::to_string(dim) + " rows");
      for (int r = 0; r < dim; ++r) {
        const auto row = numbers(section, "matrix", rows[r]);
        if (static_cast<int>(row.size()) != dim) bad(section, "matrix", "expected " + std::to_string(dim) + " columns");
        for (int c = 0; c < dim; ++c) q.matrix(r, c) = row[c];
      }
    }
    const auto lin = vec_or("linear", zeros);
    q.linear = Eigen::Map<const Eigen::VectorXd>(lin.data(), static_cast<Eigen::Index>(lin.size()));
    q.constant = num_or("constant", -1.0);
    f.base.shape = q;
  } else if (shape == "cat_head") {
    allowed.insert("holes");
    const std::string holes = get("holes").value_or("fixed");
    if (holes != "fixed" && holes != "shrink") bad(section, "holes", "expected fixed or shrink, got '" + holes + "'");
    f.base.shape = cat_head(holes == "fixed" ? hole_law::fixed : hole_law::shrink);
  } else if (shape == "gaussian") {
    allowed.insert({"center", "gamma"});
    f.base.shape = gaussian_shape{vec_or("center", zeros), num_or("gamma", 1.0)};
  } else if (shape == "full") {
    f.base.shape = full_shape{};
  } else {
    bad(section, "shape", "unknown shape '" + shape + "'");
  }
  for (const auto& [key, value] : raw)
    if (!allowed.count(key)) bad(section, key, "not used by shape '" + shape + "'");
  if (auto v = get("varies")) f.varies = boolean(section, "varies", *v);
  f.law.exponent = num_or("shrink_exponent", 4.0);
  if (!(f.law.exponent > 0)) bad(section, "shrink_exponent", "must be positive");
  return f;
}

raw_section mask_echo(const mask_family& f) {
  raw_section out;
  std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, interval_shape>) {
          out["center"] = format(sh.center);
          out["half_width"] = format(sh.half_width);
        } else if constexpr (std::is_same_v<T, ball_shape>) {
          out["center"] = join(sh.center);
          out["radius"] = format(sh.radius);
        } else if constexpr (std::is_same_v<T, quadric_shape>) {
          out["center"] = join(sh.center);
          out["axes"] = join(sh.axes);
          out["level"] = format(sh.level);
        } else if constexpr (std::is_same_v<T, general_quadric_shape>) {
          std::string m;
          for (Eigen::Index r = 0; r < sh.matrix.rows(); ++r)
            m += (r ? ";" : "") + join(Eigen::VectorXd(sh.matrix.row(r).transpose()));
          out["matrix"] = m;
          out["linear"] = join(sh.linear);
          out["constant"] = format(sh.constant);
        } else if constexpr (std::is_same_v<T, raster_shape>) {
          out["holes"] = sh.holes_follow == hole_law::fixed ? "fixed" : "shrink";
        } else if constexpr (std::is_same_v<T, gaussian_shape>) {
          out["center"] = join(sh.center);
          out["gamma"] = format(sh.gamma);
        }
      },
      f.base.shape);
  out["shape"] = shape_name(f.base.shape);
  out["varies"] = f.varies ? "true" : "false";
  out["shrink_exponent"] = format(f.law.exponent);
  return out;
}

struct raw_config {
  std::map<std::string, raw_section> sections;
};

raw_config read_raw(const std::string& text) {
  raw_config raw;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    // `;` separates matrix rows, so only a leading `;` starts a comment
    std::string body = line;
    if (hash != std::string::npos && (line[hash] == '#' || trim(line.substr(0, hash)).empty()))
      body = line.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw config_error("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(body.substr(1, body.size() - 2));
      if (!known_keys().count(section)) throw config_error("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      raw.sections[section];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw config_error("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty()) throw config_error("line " + std::to_string(lineno) + ": key outside of any section");
    const std::string key = trim(body.substr(0, eq)), value = trim(body.substr(eq + 1));
    if (!known_keys().at(section).count(key)) throw config_error("[" + section + "] unknown key '" + key + "'");
    if (raw.sections[section].count(key)) throw config_error("[" + section + "] duplicate key '" + key + "'");
    raw.sections[section][key] = value;
  }
  return raw;
}

void apply_scalar(experiment_config& c, const std::string& s, const std::string& k, const std::string& v) {
  auto& vc = c.varying;
  if (s == "grid") {
    if (k == "dim") c.dim = static_cast<int>(integer(s, k, v));
    else c.n = static_cast<int>(integer(s, k, v));
  } else if (s == "solver") {
    if (k == "tol") vc.solver.tol = number(s, k, v);
    else if (k == "max_applications") vc.solver.max_applications = static_cast<int>(integer(s, k, v));
    else if (k == "basis_size") vc.solver.basis_size = static_cast<int>(integer(s, k, v));
    else if (k == "keep") vc.solver.keep = static_cast<int>(integer(s, k, v));
    else vc.solver.residual_floor = number(s, k, v);
  } else if (s == "varying") {
    if (k == "eps_min") vc.eps_min = number(s, k, v);
    else if (k == "eps_max") vc.eps_max = number(s, k, v);
    else if (k == "steps") vc.steps = static_cast<int>(integer(s, k, v));
    else if (k == "eta") vc.eta = number(s, k, v);
    else if (k == "count") vc.count = static_cast<int>(integer(s, k, v));
    else if (k == "warm_start") vc.warm_start = boolean(s, k, v);
    else if (k == "dense_limit") vc.dense_limit = integer(s, k, v);
    else if (k == "schedule") {
      if (v == "log_uniform") vc.kind = schedule_kind::log_uniform;
      else if (v == "uniform") vc.kind = schedule_kind::uniform;
      else bad(s, k, "expected log_uniform or uniform, got '" + v + "'");
    } else {
      if (v == "auto") vc.reference = reference_mode::automatic;
      else if (v == "dense") vc.reference = reference_mode::dense;
      else if (v == "iterative") vc.reference = reference_mode::iterative;
      else bad(s, k, "expected auto, dense or iterative, got '" + v + "'");
    }
  } else if (s == "output") {
    auto& o = c.output;
    if (k == "dir") o.dir = v;
    else if (k == "spectrum_csv") o.spectrum_csv = boolean(s, k, v);
    else if (k == "vectors_csv") o.vectors_csv = boolean(s, k, v);
    else if (k == "run_record") o.run_record = boolean(s, k, v);
    else if (k == "svg") o.svg = boolean(s, k, v);
    else if (k == "vectors") o.vectors = static_cast<int>(integer(s, k, v));
    else o.dump_matrix = boolean(s, k, v);
  } else if (s == "diagnostic") {
    auto& d = c.diagnostic;
    if (k == "assumption") d.assumption = boolean(s, k, v);
    else if (k == "tracked") d.tracked = static_cast<int>(integer(s, k, v));
    else if (k == "floor") d.floor = number(s, k, v);
    else d.distinct_tol = number(s, k, v);
  } else if (s == "oracle") {
    auto& o = c.oracle;
    if (k == "suites") {
      o.suites.clear();
      for (const auto& name : split(v, ',')) {
        const auto& all = oracle_suite_names();
        if (name == "all") {
          o.suites = all;
          break;
        }
        if (std::find(all.begin(), all.end(), name) == all.end()) bad(s, k, "unknown suite '" + name + "'");
        o.suites.push_back(name);
      }
    } else if (k == "gaussian_alpha") o.gaussian_alpha = number(s, k, v);
    else if (k == "gaussian_beta") o.gaussian_beta = number(s, k, v);
    else if (k == "gaussian_n") o.gaussian_n = static_cast<int>(integer(s, k, v));
    else if (k == "gaussian_orders") o.gaussian_orders = static_cast<int>(integer(s, k, v));
    else if (k == "quadric_c") o.quadric_c = number(s, k, v);
    else if (k == "quadric_n") o.quadric_n = static_cast<int>(integer(s, k, v));
    else if (k == "dpss_w") o.dpss_w = number(s, k, v);
    else o.dpss_n = static_cast<int>(integer(s, k, v));
  } else if (s == "run") {
    if (k == "seed") {
      if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) bad(s, k, "expected an unsigned integer");
      c.seed = std::stoull(v);
    } else {
      c.memory_cap_mb = number(s, k, v);
    }
  }
}

experiment_config build(const raw_config& raw) {
  experiment_config c;
  for (const auto& [section, keys] : raw.sections) {
    if (section == "space_mask" || section == "fourier_mask") continue;
    for (const auto& [k, v] : keys) apply_scalar(c, section, k, v);
  }
  if (c.dim < 1) bad("grid", "dim", "must be at least 1");
  if (c.n < 1) bad("grid", "n", "must be at least 1");
  auto mask_raw = [&](const std::string& s) {
    auto it = raw.sections.find(s);
    return it == raw.sections.end() ? raw_section{} : it->second;
  };
  c.space = build_mask("space_mask", mask_raw("space_mask"), c.dim, mask_role::space);
  raw_section fr = mask_raw("fourier_mask");
  // the default Fourier mask is the interval of half-width 0.3 * 2 pi
  if (!fr.count("shape")) fr.emplace("half_width", "0.3*2*pi");
  c.fourier = build_mask("fourier_mask", fr, c.dim, mask_role::fourier);
  return c;
}

}  // namespace

double parse_number_expr(const std::string& text) {
  // factor (('*' | '/') factor)*, factor = ['-' | '+'] (number | pi)
  const std::string s = trim(text);
  if (s.empty()) throw config_error("empty number");
  double value = 1.0;
  char op = '*';
  std::size_t pos = 0;
  while (true) {
    std::size_t end = pos;
    // exponents like 1e-10 contain a sign that is not an operator
    while (end < s.size() && s[end] != '*' && s[end] != '/') ++end;
    std::string tok = trim(s.substr(pos, end - pos));
    double sign = 1.0;
    while (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) {
      if (tok[0] == '-') sign = -sign;
      tok = trim(tok.substr(1));
    }
    double f;
    if (tok == "pi") {
      f = std::numbers::pi;
    } else {
      std::size_t used = 0;
      try {
        f = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw config_error("cannot read '" + text + "' as a number");
      }
      if (used != tok.size()) throw config_error("cannot read '" + text + "' as a number");
    }
    value = op == '*' ? value * sign * f : value / (sign * f);
    if (end >= s.size()) break;
    op = s[end];
    pos = end + 1;
  }
  if (!std::isfinite(value)) throw config_error("'" + text + "' is not finite");
  return value;
}

concentration_problem experiment_config::problem() const {
  concentration_problem p;
  p.g = make_grid();
  p.space = space;
  p.fourier = fourier;
  return p;
}

void experiment_config::validate() const {
  if (dim < 1) throw config_error("[grid] dim: must be at least 1");
  if (n < 1) throw config_error("[grid] n: must be at least 1");
  const grid g = make_grid();
  try {
    validate_support(space.base, dim);
  } catch (const std::exception& e) {
    throw config_error(std::string("[space_mask] ") + e.what());
  }
  try {
    validate_support(fourier.base, dim);
  } catch (const std::exception& e) {
    throw config_error(std::string("[fourier_mask] ") + e.what());
  }
  try {
    varying.validate(g.space_size());
  } catch (const std::exception& e) {
    throw config_error(std::string("[varying] ") + e.what());
  }
  if (output.vectors < 0 || output.vectors > g.space_size())
    throw config_error("[output] vectors: must lie in [0, N^d]");
  if (!(memory_cap_mb > 0)) throw config_error("[run] memory_cap_mb: must be positive");
  if (diagnostic.tracked < 1) throw config_error("[diagnostic] tracked: must be positive");
}

experiment_config parse_config(const std::string& text) { return build(read_raw(text)); }

experiment_config load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_text(path);
  } catch (const io_error& e) {
    throw config_error(e.what());
  }
  return parse_config(text);
}

std::map<std::string, std::map<std::string, std::string>> config_echo(const experiment_config& c) {
  std::map<std::string, std::map<std::string, std::string>> out;
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  auto i = [](std::int64_t v) { return std::to_string(v); };
  const auto& v = c.varying;
  out["grid"] = {{"dim", i(c.dim)}, {"n", i(c.n)}};
  out["space_mask"] = mask_echo(c.space);
  out["fourier_mask"] = mask_echo(c.fourier);
  out["solver"] = {{"tol", format(v.solver.tol)},
                   {"max_applications", i(v.solver.max_applications)},
                   {"basis_size", i(v.solver.basis_size)},
                   {"keep", i(v.solver.keep)},
                   {"residual_floor", format(v.solver.residual_floor)}};
  out["varying"] = {{"eps_min", format(v.eps_min)},
                    {"eps_max", format(v.eps_max)},
                    {"steps", i(v.steps)},
                    {"schedule", v.kind == schedule_kind::log_uniform ? "log_uniform" : "uniform"},
                    {"eta", format(v.eta)},
                    {"count", i(v.count)},
                    {"warm_start", b(v.warm_start)},
                    {"reference", v.reference == reference_mode::automatic ? "auto"
                                  : v.reference == reference_mode::dense   ? "dense"
                                                                           : "iterative"},
                    {"dense_limit", i(v.dense_limit)}};
  const auto& o = c.output;
  out["output"] = {{"dir", o.dir},
                   {"spectrum_csv", b(o.spectrum_csv)},
                   {"vectors_csv", b(o.vectors_csv)},
                   {"run_record", b(o.run_record)},
                   {"svg", b(o.svg)},
                   {"vectors", i(o.vectors)},
                   {"dump_matrix", b(o.dump_matrix)}};
  const auto& d = c.diagnostic;
  out["diagnostic"] = {{"assumption", b(d.assumption)},
                       {"tracked", i(d.tracked)},
                       {"floor", format(d.floor)},
                       {"distinct_tol", format(d.distinct_tol)}};
  const auto& r = c.oracle;
  std::string suites;
  for (std::size_t k = 0; k < r.suites.size(); ++k) suites += (k ? "," : "") + r.suites[k];
  out["oracle"] = {{"suites", suites},
                   {"gaussian_alpha", format(r.gaussian_alpha)},
                   {"gaussian_beta", format(r.gaussian_beta)},
                   {"gaussian_n", i(r.gaussian_n)},
                   {"gaussian_orders", i(r.gaussian_orders)},
                   {"quadric_c", format(r.quadric_c)},
                   {"quadric_n", i(r.quadric_n)},
                   {"dpss_w", format(r.dpss_w)},
                   {"dpss_n", i(r.dpss_n)}};
  out["run"] = {{"seed", std::to_string(c.seed)}, {"memory_cap_mb", format(c.memory_cap_mb)}};
  return out;
}

void set_config_value(experiment_config& cfg, const std::string& section, const std::string& key,
                      const std::string& value) {
  auto it = known_keys().find(section);
  if (it == known_keys().end()) throw config_error("unknown section [" + section + "]");
  if (!it->second.count(key)) throw config_error("[" + section + "] unknown key '" + key + "'");
  if (section == "space_mask" || section == "fourier_mask") {
    const bool space = section == "space_mask";
    raw_section raw = mask_echo(space ? cfg.space : cfg.fourier);
    if (key == "shape" && raw["shape"] != value) {
      // a new shape starts from its own defaults
      raw = {{"shape", value}, {"varies", raw["varies"]}, {"shrink_exponent", raw["shrink_exponent"]}};
    } else {
      raw[key] = value;
    }
    (space ? cfg.space : cfg.fourier) =
        build_mask(section, raw, cfg.dim, space ? mask_role::space : mask_role::fourier);
    return;
  }
  apply_scalar(cfg, section, key, value);
}

}  // namespace slepian
