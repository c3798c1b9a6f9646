// Acceptance checks; one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "slepian/eigensolve.hpp"
#include "slepian/experiment.hpp"
#include "slepian/oracles.hpp"
#include "slepian/varying_masks.hpp"

using namespace slepian;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

experiment_config shipped(const std::string& name) {
  return load_config(std::string(SLEPIAN_SOURCE_DIR) + "/configs/" + name);
}

cvec random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  cvec v(n);
  for (auto& x : v) x = cplx(nd(rng), nd(rng));
  return v;
}

concentration_problem interval_problem(int n, double space_half, double fourier_half, double fourier_center = 0.0) {
  concentration_problem p;
  p.g = grid(1, n);
  p.space = {{interval_shape{0.0, space_half}, mask_role::space}};
  p.fourier = {{interval_shape{fourier_center, fourier_half}, mask_role::fourier}};
  return p;
}

// A varying-masks run with its dense reference.
struct experiment {
  std::string name;
  experiment_config cfg;
  concentration_problem problem;
  cmat k0;
  spectrum dense;
  run_record rec;
  double run_seconds = 0.0;
};

experiment run_experiment(const std::string& file) {
  experiment e;
  e.name = file;
  e.cfg = shipped(file);
  e.cfg.validate();
  e.problem = e.cfg.problem();
  e.k0 = e.problem.dense(0.0).dense;
  e.dense = full_hermitian_eig(e.k0);
  const auto t0 = std::chrono::steady_clock::now();
  e.rec = run_varying_masks(e.problem, e.cfg.varying, &e.dense);
  e.run_seconds = seconds_since(t0);
  return e;
}

// Largest |alpha_saved,q - lambda_q(0)| over the accepted vectors.
double worst_ratio_error(const experiment& e) {
  double worst = 0.0;
  for (int q = 0; q < e.rec.accepted(); ++q) worst = std::max(worst, std::abs(e.rec.ratios[q] - e.dense.values(q)));
  return worst;
}

outcome accepted_within(const experiment& e, int count, double tol, double time_limit) {
  const double worst = worst_ratio_error(e);
  outcome o;
  o.pass = e.rec.accepted() == count && worst <= tol && e.run_seconds <= time_limit;
  o.detail = std::to_string(e.rec.accepted()) + " accepted, max |alpha - lambda| = " + fmt("%.3g", worst) +
             ", run " + fmt("%.1f", e.run_seconds) + " s";
  return o;
}

// Lemma bound for every accepted vector of a run. Vector q was accepted against
// K(0) with the earlier accepted vectors projected out, so the bound is
// checked on that deflated operator for every prefix size m with a gap.
outcome projection_lemma(const experiment& e, std::string& worst_where) {
  const Eigen::Index n = e.k0.rows();
  const cmat b = e.rec.basis();
  const cmat kb = e.k0 * b;
  const cmat bkb = b.adjoint() * kb;
  double worst = 0.0;
  bool ok = true, applicable = true;
  for (int q = 0; q < e.rec.accepted(); ++q) {
    cmat a = e.k0;
    if (q > 0) {
      const auto bq = b.leftCols(q);
      a -= bq * kb.leftCols(q).adjoint() + kb.leftCols(q) * bq.adjoint();
      a += bq * bkb.topLeftCorner(q, q) * bq.adjoint();
    }
    a = (0.5 * (a + a.adjoint())).eval();
    const spectrum s = full_hermitian_eig(a);
    const cvec w = b.col(q);
    const double eta = std::max(e.cfg.varying.eta, std::abs(e.rec.ratios[q] - s.values(0)));
    const int top_m = static_cast<int>(std::min<Eigen::Index>(40, n - 1));
    for (int m = 1; m <= top_m; ++m) {
      if (!(s.values(0) > s.values(m))) continue;
      const auto c = projection_error_certificate(s, w, eta, m, 1e-8);
      applicable = applicable && c.applicable;
      ok = ok && c.applicable && c.holds;
      const double ratio = c.bound > 0 ? c.measured / c.bound : 0.0;
      if (ratio > worst) {
        worst = ratio;
        worst_where = e.name + " q=" + std::to_string(q + 1) + " m=" + std::to_string(m);
      }
    }
  }
  outcome o;
  o.pass = ok && applicable;
  o.detail = "worst measured/bound " + fmt("%.3g", worst);
  return o;
}

outcome criterion_1(const experiment& e) { return accepted_within(e, 16, 1e-10, 300.0); }

outcome criterion_2(const experiment& e) {
  int above = 0;
  for (Eigen::Index i = 0; i < e.dense.size(); ++i) above += e.dense.values(i) > 0.5 ? 1 : 0;
  outcome o = accepted_within(e, 16, 1e-10, 1e9);
  o.pass = o.pass && above >= 140;
  o.detail = std::to_string(above) + " of " + std::to_string(e.dense.size()) + " eigenvalues above 0.5; " + o.detail;
  return o;
}

outcome criterion_3(const experiment& e) {
  outcome o = accepted_within(e, 16, 1e-6, 1800.0);
  const cmat b = e.rec.basis();
  const double gram = (b.adjoint() * b - cmat::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
  o.pass = o.pass && gram <= 1e-10;
  o.detail += ", Gram deviation " + fmt("%.3g", gram);
  return o;
}

outcome criterion_4() {
  const oracle_settings s;
  const grid g(1, s.gaussian_n);
  const spectrum sp = full_hermitian_eig(gaussian_problem(s.gaussian_alpha, s.gaussian_beta, g).dense(0.0).dense);
  double rel = 0.0, overlap = 1.0;
  for (int n = 0; n <= 5; ++n) {
    const auto mode = gaussian_eigenpairs(s.gaussian_alpha, s.gaussian_beta, n, g);
    rel = std::max(rel, std::abs(sp.values(n) - mode.value) / mode.value);
    overlap = std::min(overlap, std::abs(sp.vectors.col(n).dot(mode.samples.cast<cplx>())));
  }
  return {rel <= 1e-3 && overlap >= 0.999,
          "alpha = beta = " + fmt("%g", s.gaussian_alpha) + ", N = " + std::to_string(s.gaussian_n) +
              ": max relative error " + fmt("%.3g", rel) + ", min overlap " + fmt("%.6f", overlap)};
}

outcome criterion_5() {
  const oracle_settings s;
  const grid g(1, s.gaussian_n);
  const std::vector<double> eps{0.2, 0.1, 0.05};
  outcome o{true, ""};
  for (int n : {0, 1}) {
    std::vector<double> r;
    for (double e : eps) r.push_back(quasimode_residual(e, n, g));
    const double slope = loglog_slope(eps, r);
    o.pass = o.pass && slope >= 2.7 && slope <= 3.3;
    o.detail += "slope n=" + std::to_string(n) + " " + fmt("%.4f", slope) + (n == 0 ? ", " : "");
  }
  return o;
}

outcome criterion_6() {
  const double c = 0.3 * two_pi;
  const quadric_shape space{{0.0}, {1.0}, 1.0}, fourier{{0.0}, {1.0}, c * c};
  const grid g(1, 150), g2(1, 300);
  const auto p = quadric_commuting_operator(space, fourier, g);
  double field = 0.0;
  for (int j = 0; j < g.n(); ++j) {
    const double x = g.space_node(j);
    field = std::max({field, std::abs(p.coefficient[0][j] - (x * x - 1.0)), std::abs(p.potential[j] - c * c * x * x)});
  }
  const auto k = quadric_concentration(space, fourier, g);
  const double coarse = commutation_residual(p, k);
  const double fine =
      commutation_residual(quadric_commuting_operator(space, fourier, g2), quadric_concentration(space, fourier, g2));
  const spectrum sk = full_hermitian_eig(k.dense);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.restricted());
  const double overlap = std::abs(sk.vectors.col(0).dot(es.eigenvectors().col(0).cast<cplx>()));
  return {field <= 1e-12 && fine <= 0.6 * coarse && overlap >= 0.99,
          "field error " + fmt("%.3g", field) + ", residual ratio N=300/N=150 " + fmt("%.4f", fine / coarse) +
              ", overlap " + fmt("%.6f", overlap)};
}

outcome criterion_7(const std::vector<const experiment*>& runs) {
  outcome o{true, ""};
  std::string where;
  for (const auto* e : runs) {
    std::string w;
    const outcome r = projection_lemma(*e, w);
    o.pass = o.pass && r.pass;
    o.detail += e->name + ": " + r.detail + "; ";
    if (!r.pass && where.empty()) where = w;
  }
  // diag(1, 0.5), w = (cos t, sin t), eta = 1 - w*Aw: equality
  spectrum s;
  s.values = Eigen::Vector2d(1.0, 0.5);
  s.vectors = cmat::Identity(2, 2);
  double gap = 0.0;
  for (double t : {0.05, 0.4, 0.9, 1.3}) {
    cvec w(2);
    w << std::cos(t), std::sin(t);
    const double eta = 1.0 - (std::pow(std::cos(t), 2) + 0.5 * std::pow(std::sin(t), 2));
    const auto c = projection_error_certificate(s, w, eta, 1);
    gap = std::max({gap, std::abs(c.measured - c.bound), std::abs(c.measured - std::pow(std::sin(t), 2))});
    o.pass = o.pass && c.applicable;
  }
  o.pass = o.pass && gap <= 1e-12;
  o.detail += "2x2 equality error " + fmt("%.3g", gap);
  if (!where.empty()) o.detail += " (first failure " + where + ")";
  return o;
}

// Flat index permutation mirroring the chosen axes.
std::vector<Eigen::Index> mirror(const grid& g, const std::vector<int>& axes) {
  std::vector<Eigen::Index> out(static_cast<std::size_t>(g.space_size()));
  std::vector<int> idx(g.dim());
  for (std::int64_t f = 0; f < g.space_size(); ++f) {
    g.space_multi_index(f, idx);
    for (int a : axes) idx[a] = g.n() - 1 - idx[a];
    out[f] = g.space_flat(idx);
  }
  return out;
}

outcome criterion_8() {
  struct item {
    std::string name;
    concentration_problem p;
    std::vector<int> mirror_axes;  // reflection that leaves both masks invariant
  };
  std::vector<item> items;
  for (const char* f : {"interval_moderate.ini", "interval_strong.ini", "assumption.ini"})
    items.push_back({f, shipped(f).problem(), {0}});
  items.push_back({"balls_2d.ini", shipped("balls_2d.ini").problem(), {0, 1}});
  items.push_back({"cat_head.ini", shipped("cat_head.ini").problem(), {0}});
  items.push_back({"gaussian", gaussian_problem(50.0, 50.0, grid(1, 200)), {0}});
  // a shifted Fourier interval gives a complex kernel
  items.push_back({"shifted", interval_problem(150, 1.0, 0.5, 1.0), {}});

  std::mt19937_64 rng(2024);
  double herm = 0.0, frob = 0.0, fast = 0.0, refl = 0.0;
  std::string where;
  for (const auto& it : items) {
    const auto k = it.p.dense(0.0);
    const spectrum s = full_hermitian_eig(k.dense);
    const auto r = hilbert_schmidt_checks(k, s);
    herm = std::max(herm, r.hermiticity_max);
    frob = std::max(frob, r.frobenius_relative);
    const auto op = it.p.fast(0.0);
    for (int t = 0; t < 10; ++t) {
      const cvec v = random_vector(op.size(), rng);
      const cvec d = k.dense * v;
      fast = std::max(fast, (op(v) - d).norm() / d.norm());
    }
    if (!it.mirror_axes.empty()) {
      const auto perm = mirror(it.p.g, it.mirror_axes);
      const Eigen::Index n = k.dense.rows();
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) refl = std::max(refl, std::abs(k.dense(perm[i], perm[j]) - k.dense(i, j)));
      if (refl != 0.0 && where.empty()) where = it.name;
    }
  }

  // splitting form against assembly for Gaussian masks
  const grid g(1, 200);
  const auto gp = gaussian_problem(50.0, 50.0, g);
  const auto m = gp.space_samples(0.0);
  const auto w = gp.fourier_weights(0.0);
  std::vector<double> v(m.size()), h(w.size());
  for (std::size_t i = 0; i < m.size(); ++i) v[i] = -2.0 * std::log(m[i]);
  for (std::size_t i = 0; i < w.size(); ++i) h[i] = -std::log(w[i]);
  const cmat kd = gp.dense(0.0).dense;
  double split = 0.0;
  for (int t = 0; t < 10; ++t) {
    const cvec f = random_vector(g.space_size(), rng);
    const cvec d = kd * f;
    split = std::max(split, (splitting_apply(v, h, g, f) - d).norm() / d.norm());
  }
  return {herm == 0.0 && frob <= 1e-10 && fast <= 1e-12 && refl == 0.0 && split <= 1e-10,
          std::to_string(items.size()) + " configurations: Hermiticity " + fmt("%.3g", herm) + ", Frobenius " +
              fmt("%.3g", frob) + ", fast vs dense " + fmt("%.3g", fast) + ", reflection " + fmt("%.3g", refl) +
              ", splitting vs assembly " + fmt("%.3g", split) + (where.empty() ? "" : " (reflection breaks on " + where + ")")};
}

outcome criterion_9() {
  const double c = 0.3 * two_pi;
  const grid g(1, 150);
  const std::vector<double> p{20.0 * g.dxi()};
  const auto ks = interval_problem(150, 1.0, c, p[0]).dense(0.0).dense;
  const auto kc = interval_problem(150, 1.0, c).dense(0.0).dense;
  const spectrum ss = full_hermitian_eig(ks);
  double translation = 0.0;
  for (int q = 0; q < 16; ++q) {
    const cvec psi = ss.vectors.col(q);
    translation = std::max(translation, std::abs(concentration_ratio(dense_operator(kc), fourier_translation(psi, g, p)) -
                                                 concentration_ratio(dense_operator(ks), psi)));
  }
  // Omega_S = [-1,1], Omega_F = s[-c,c] against Omega_S = s[-1,1], Omega_F = [-c,c]
  const double s = 0.5;
  double top10 = 0.0, whole[2] = {0.0, 0.0};
  for (int level = 0; level < 2; ++level) {
    const int n = 300 * (level + 1);
    const double w = c / (level + 1);  // same physical bandwidth on the finer grid
    const spectrum a = full_hermitian_eig(interval_problem(n, 1.0, s * w).dense(0.0).dense);
    const spectrum b = full_hermitian_eig(interval_problem(n, s, w).dense(0.0).dense);
    whole[level] = (a.values - b.values).cwiseAbs().maxCoeff();
    if (level == 0)
      for (int q = 0; q < 10; ++q) top10 = std::max(top10, std::abs(a.values(q) - b.values(q)));
  }
  return {translation <= 1e-6 && top10 <= 1e-4 && whole[1] <= 0.999 * whole[0],
          "Fourier translation " + fmt("%.3g", translation) + ", affine top 10 at N=300 " + fmt("%.3g", top10) +
              ", whole-spectrum mismatch " + fmt("%.4g", whole[0]) + " -> " + fmt("%.4g", whole[1]) +
              " after halving dx"};
}

outcome criterion_10() {
  const auto cfg = shipped("assumption.ini");
  const auto sched = epsilon_schedule(cfg.varying.eps_min, cfg.varying.eps_max, cfg.varying.steps, cfg.varying.kind);
  const auto rep = assumption_diagnostic(cfg.problem(), sched, cfg.diagnostic.tracked, cfg.diagnostic.floor,
                                         cfg.diagnostic.distinct_tol);
  return {rep.crossings.empty() && rep.ordering_preserved,
          std::to_string(rep.crossings.size()) + " crossings among the top " + std::to_string(rep.tracked) + " over " +
              std::to_string(sched.size()) + " steps"};
}

}  // namespace

// With arguments, only the listed criteria run.
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto wanted = [&](int id) { return only.empty() || only.count(id) > 0; };
  int failures = 0, ran = 0;
  auto report = [&](int id, const std::function<outcome()>& f) {
    if (!wanted(id)) return;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("raised: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d: %s  %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  };

  experiment moderate, strong, balls;
  bool have_runs = true;
  if (wanted(1) || wanted(2) || wanted(3) || wanted(7)) try {
    moderate = run_experiment("interval_moderate.ini");
    strong = run_experiment("interval_strong.ini");
    balls = run_experiment("balls_2d.ini");
  } catch (const std::exception& e) {
    std::printf("experiment setup raised: %s\n", e.what());
    have_runs = false;
  }
  auto need_runs = [&] {
    if (!have_runs) throw std::runtime_error("experiment runs unavailable");
  };

  report(1, [&] { need_runs(); return criterion_1(moderate); });
  report(2, [&] { need_runs(); return criterion_2(strong); });
  report(3, [&] { need_runs(); return criterion_3(balls); });
  report(4, criterion_4);
  report(5, criterion_5);
  report(6, criterion_6);
  report(7, [&] { need_runs(); return criterion_7({&moderate, &strong, &balls}); });
  report(8, criterion_8);
  report(9, criterion_9);
  report(10, criterion_10);
  std::printf("%d of %d criteria failed\n", failures, ran);
  return failures == 0 ? 0 : 1;
}
