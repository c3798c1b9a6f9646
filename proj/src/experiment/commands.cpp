#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "io/run_record_json.hpp"
#include "slepian/eigensolve.hpp"
#include "slepian/experiment.hpp"
#include "slepian/io.hpp"

namespace slepian {

namespace fs = std::filesystem;

namespace {

struct context {
  const experiment_config& cfg;
  fs::path out;
  bool timestamp;
  std::uint64_t seed;
  std::ostream& log;
};

std::string numbered(const std::string& stem, int q, const std::string& ext) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", q);
  return stem + "_" + buf + ext;
}

// Three N^d x N^d complex matrices: K, its eigenvectors and LAPACK workspace.
void check_dense_budget(const experiment_config& cfg, const char* what) {
  const double mb = 3.0 * dense_bytes(cfg.make_grid()) / (1024.0 * 1024.0);
  if (mb > cfg.memory_cap_mb) {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "%s needs about %.0f MiB for N^d = %lld nodes, above the cap of %.0f MiB ([run] memory_cap_mb). "
                  "Use varying-masks with [varying] reference = iterative, or raise the cap.",
                  what, mb, static_cast<long long>(cfg.make_grid().space_size()), cfg.memory_cap_mb);
    throw resource_error(buf);
  }
}

// Unit phase so that the largest entry (first one on ties) is real positive.
cvec fix_phase(const cvec& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  const double mag = std::abs(v(arg));
  if (mag == 0.0) return v;
  return v * (std::conj(v(arg)) / mag);
}

bool reflection_symmetric(const std::vector<double>& values, const grid& g, bool fourier) {
  const std::int64_t size = static_cast<std::int64_t>(values.size());
  for (std::int64_t j = 0; j < size; ++j) {
    // the Fourier grid mirrors as l -> M-1-l, which is flat f -> size-1-f
    const std::int64_t mirror = fourier ? size - 1 - j : g.space_reflect(j);
    if (values[j] != values[mirror]) return false;
  }
  return true;
}

void write_plot(const context& c, const fs::path& file, const grid& g, const cvec& v, const std::vector<double>& mask,
                const std::string& title) {
  if (!c.cfg.output.svg || g.dim() > 2) return;
  io::write_text(file, io::vector_svg(g, v, mask, {title, c.timestamp}));
}

struct check_line {
  std::string name;
  std::string value;
  bool ok;
};

int cmd_assemble(const context& c) {
  const auto& cfg = c.cfg;
  const grid g = cfg.make_grid();
  const auto problem = cfg.problem();
  const kernel_samples kernel = problem.kernel(0.0);
  io::write_dump(c.out / "kernel.bin", {g.dim(), g.n(), io::dump_kind::kernel, kernel.values});
  c.log << "wrote " << (c.out / "kernel.bin").string() << "\n";

  check_dense_budget(cfg, "dense assembly");
  const concentration_matrix k = assemble_dense(problem.space_samples(0.0), kernel);
  if (cfg.output.dump_matrix) {
    std::vector<cplx> values(k.dense.data(), k.dense.data() + k.dense.size());
    // column-major storage is the transpose of row-major; K is Hermitian, so conjugate
    for (auto& v : values) v = std::conj(v);
    io::write_dump(c.out / "matrix.bin", {g.dim(), g.n(), io::dump_kind::matrix, std::move(values)});
    c.log << "wrote " << (c.out / "matrix.bin").string() << "\n";
  }
  const spectrum s = full_hermitian_eig(k.dense);
  const structural_report r = hilbert_schmidt_checks(k, s);

  std::vector<check_line> lines;
  auto num = io::format_number;
  lines.push_back({"hermiticity_max", num(r.hermiticity_max), r.hermitian_ok});
  lines.push_back({"frobenius_relative", num(r.frobenius_relative), r.frobenius_ok});
  lines.push_back({"lambda_min", num(r.lambda_min), r.psd_ok});
  lines.push_back({"lambda_max", num(r.lambda_max), r.norm_bound_ok});
  lines.push_back({"norm_bound", num(r.norm_bound), r.norm_bound_ok});
  lines.push_back({"sorted", r.sorted ? "true" : "false", r.sorted});

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const fast_operator fast = problem.fast(0.0);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    cvec v(g.space_size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(u(rng), u(rng));
    const cvec d = k.dense * v;
    const double scale = d.norm() > 0 ? d.norm() : 1.0;
    worst = std::max(worst, (fast(v) - d).norm() / scale);
  }
  lines.push_back({"fast_vs_dense_relative", num(worst), worst <= 1e-12});

  if (reflection_symmetric(k.mask, g, false) && reflection_symmetric(problem.fourier_weights(0.0), g, true)) {
    double dense_gap = 0.0;
    for (Eigen::Index i = 0; i < k.dense.rows(); ++i)
      for (Eigen::Index j = 0; j < k.dense.cols(); ++j)
        dense_gap = std::max(dense_gap, std::abs(k.dense(g.space_reflect(i), g.space_reflect(j)) - k.dense(i, j)));
    lines.push_back({"reflection_commutation_dense", num(dense_gap), dense_gap == 0.0});
  } else {
    c.log << "masks are not reflection symmetric; reflection check skipped\n";
  }
  if (r.identity) c.log << "note: K is the identity (flat masks give a discrete delta kernel)\n";

  std::string report = "# check,value,status\n";
  bool all = true;
  for (const auto& l : lines) {
    report += l.name + "," + l.value + "," + (l.ok ? "pass" : "FAIL") + "\n";
    c.log << (l.ok ? "pass  " : "FAIL  ") << l.name << " = " << l.value << "\n";
    all = all && l.ok;
  }
  report += std::string("identity,") + (r.identity ? "true" : "false") + ",info\n";
  io::write_text(c.out / "assemble_report.csv", report);
  c.log << "wrote " << (c.out / "assemble_report.csv").string() << "\n";
  return all ? exit_ok : exit_failure;
}

int cmd_eig(const context& c) {
  const auto& cfg = c.cfg;
  const grid g = cfg.make_grid();
  check_dense_budget(cfg, "dense eigendecomposition");
  const auto problem = cfg.problem();
  const concentration_matrix k = problem.dense(0.0);
  const spectrum s = full_hermitian_eig(k.dense);
  const std::vector<double> values(s.values.data(), s.values.data() + s.values.size());
  if (cfg.output.spectrum_csv) io::write_spectrum_csv(c.out / "spectrum.csv", values);
  if (cfg.output.svg) io::write_text(c.out / "spectrum.svg", io::spectrum_svg(values, {"spectrum of K(0)", c.timestamp}));
  for (int q = 1; q <= cfg.output.vectors; ++q) {
    const cvec v = fix_phase(s.vectors.col(q - 1));
    if (cfg.output.vectors_csv) io::write_vector_csv(c.out / numbered("eigvec", q, ".csv"), g, q, values[q - 1], v);
    write_plot(c, c.out / numbered("eigvec", q, ".svg"), g, v, k.mask, "eigenvector " + std::to_string(q));
  }
  c.log << "dense spectrum: lambda_1 = " << io::format_number(values.front())
        << ", lambda_min = " << io::format_number(values.back()) << "; wrote " << cfg.output.vectors
        << " eigenvectors to " << c.out.string() << "\n";
  return exit_ok;
}

int cmd_varying(const context& c) {
  const auto& cfg = c.cfg;
  const grid g = cfg.make_grid();
  const auto problem = cfg.problem();
  const auto& vc = cfg.varying;
  const bool dense = vc.reference == reference_mode::dense ||
                     (vc.reference == reference_mode::automatic && g.space_size() <= vc.dense_limit);
  spectrum cache;
  if (dense) {
    check_dense_budget(cfg, "the dense reference spectrum");
    cache = full_hermitian_eig(problem.dense(0.0).dense);
  }
  const run_record rec = run_varying_masks(problem, vc, dense ? &cache : nullptr);

  const auto mask = problem.space_samples(0.0);
  std::vector<std::string> files;
  for (int q = 1; q <= rec.accepted(); ++q) {
    const std::string name = numbered("accepted", q, ".csv");
    files.push_back(name);
    // a unit phase leaves every ratio unchanged and makes real problems write real columns
    const cvec v = fix_phase(rec.vectors[q - 1]);
    if (cfg.output.vectors_csv) io::write_vector_csv(c.out / name, g, q, rec.ratios[q - 1], v);
    write_plot(c, c.out / numbered("accepted", q, ".svg"), g, v, mask,
               "accepted vector " + std::to_string(q));
  }
  if (cfg.output.run_record) {
    io::write_text(c.out / "run_record.json", io::run_record_json(rec, config_echo(cfg), files));
    io::write_text(c.out / "run_timing.csv", io::run_timing_csv(rec));
  }
  c.log << "accepted " << rec.accepted() << " of " << vc.count << " vectors over " << rec.trace.size()
        << " schedule steps\n";
  int overshoots = 0, unconverged = 0;
  for (const auto& st : rec.trace) {
    overshoots += st.overshoot;
    unconverged += !st.converged;
  }
  if (overshoots) c.log << "note: " << overshoots << " candidates overshot the reference eigenvalue\n";
  if (unconverged) c.log << "note: " << unconverged << " steps hit the solver budget; their best iterates were used\n";

  if (dense) {
    std::string table = "q,lambda_q0,alpha_saved,abs_diff,accept_eps\n";
    c.log << "  q  lambda_q(0)             alpha_saved             |diff|      eps\n";
    for (int q = 1; q <= rec.accepted(); ++q) {
      const double lam = cache.values(q - 1), a = rec.ratios[q - 1], e = rec.accept_eps[q - 1];
      table += std::to_string(q) + "," + io::format_number(lam) + "," + io::format_number(a) + "," +
               io::format_number(std::abs(a - lam)) + "," + io::format_number(e) + "\n";
      char buf[160];
      std::snprintf(buf, sizeof buf, "%3d  %.17f  %.17f  %.3e  %.5g\n", q, lam, a, std::abs(a - lam), e);
      c.log << buf;
    }
    io::write_text(c.out / "comparison.csv", table);
  }

  if (cfg.diagnostic.assumption) {
    check_dense_budget(cfg, "the ordering diagnostic");
    const auto rep = assumption_diagnostic(problem, rec.schedule, cfg.diagnostic.tracked, cfg.diagnostic.floor,
                                           cfg.diagnostic.distinct_tol);
    io::write_text(c.out / "assumption.json", io::assumption_json(rep));
    c.log << "ordering diagnostic: " << rep.crossings.size() << " crossings among the top " << rep.tracked
          << " eigenvalues\n";
  }
  if (!rec.complete) {
    c.log << "incomplete: the schedule ended after " << rec.accepted() << " accepted vectors\n";
    return exit_partial;
  }
  return exit_ok;
}

int cmd_oracle(const context& c) {
  std::string report = "# suite,check,measured,requirement,status\n";
  bool all = true;
  for (const auto& suite : c.cfg.oracle.suites) {
    std::vector<oracle_check> checks;
    try {
      checks = run_oracle_suite(suite, c.cfg.oracle);
    } catch (const config_error&) {
      throw;
    } catch (const std::exception& e) {
      checks.push_back({suite, std::string("suite raised: ") + e.what(), 0.0, "no error", false});
    }
    for (const auto& k : checks) {
      all = all && k.passed;
      report += k.suite + "," + k.name + "," + io::format_number(k.measured) + "," + k.requirement + "," +
                (k.passed ? "pass" : "FAIL") + "\n";
      c.log << (k.passed ? "pass  " : "FAIL  ") << k.suite << ": " << k.name << " = " << io::format_number(k.measured)
            << " (" << k.requirement << ")\n";
    }
  }
  io::write_text(c.out / "oracle_report.csv", report);
  return all ? exit_ok : exit_oracle;
}

int cmd_plot(const context& c) {
  const auto& cfg = c.cfg;
  const grid g = cfg.make_grid();
  const auto mask = cfg.problem().space_samples(0.0);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(c.out))
    if (e.path().extension() == ".csv") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  int written = 0;
  for (const auto& f : files) {
    const std::string text = io::read_text(f);
    fs::path svg = f;
    svg.replace_extension(".svg");
    if (text.rfind("index,eigenvalue", 0) == 0) {
      const auto values = io::read_spectrum_csv(f);
      io::write_text(svg, io::spectrum_svg(values, {"spectrum of K(0)", c.timestamp}));
      ++written;
    } else if (text.rfind("# d=", 0) == 0) {
      const auto rec = io::read_vector_csv(f);
      if (rec.dim != g.dim() || rec.n != g.n()) {
        c.log << "skipping " << f.filename().string() << ": grid differs from the configuration\n";
        continue;
      }
      io::write_text(svg, io::vector_svg(g, rec.values, mask, {"vector " + std::to_string(rec.index), c.timestamp}));
      ++written;
    }
  }
  if (written == 0) throw io_error(c.out.string() + ": no spectrum or vector CSV files to plot; run eig or varying-masks first");
  c.log << "wrote " << written << " plots to " << c.out.string() << "\n";
  return exit_ok;
}

}  // namespace

fs::path resolve_output_dir(const command_options& opt, const experiment_config& cfg) {
  if (!opt.out_dir.empty()) return opt.out_dir;
  if (const char* env = std::getenv(output_dir_env); env && *env) return env;
  if (!cfg.output.dir.empty()) return cfg.output.dir;
  return "out";
}

int run_command(const std::string& command, const experiment_config& cfg, const command_options& opt,
                std::ostream& log) {
  static const std::vector<std::string> commands{"assemble", "eig", "varying-masks", "oracle-check", "plot"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw config_error("unknown command '" + command + "'");
  cfg.validate();
  const fs::path out = resolve_output_dir(opt, cfg);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw io_error(out.string() + ": cannot create output directory: " + ec.message());
  const context c{cfg, out, opt.timestamp, opt.seed.value_or(cfg.seed), log};
  if (command == "assemble") return cmd_assemble(c);
  if (command == "eig") return cmd_eig(c);
  if (command == "varying-masks") return cmd_varying(c);
  if (command == "oracle-check") return cmd_oracle(c);
  return cmd_plot(c);
}

}  // namespace slepian
