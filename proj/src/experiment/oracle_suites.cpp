#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "slepian/eigensolve.hpp"
#include "slepian/experiment.hpp"
#include "slepian/io.hpp"
#include "slepian/oracles.hpp"

namespace slepian {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

oracle_check at_most(std::string suite, std::string name, double measured, double limit) {
  return {std::move(suite), std::move(name), measured, "<= " + io::format_number(limit), measured <= limit};
}

oracle_check at_least(std::string suite, std::string name, double measured, double limit) {
  return {std::move(suite), std::move(name), measured, ">= " + io::format_number(limit), measured >= limit};
}

cvec random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  cvec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(u(rng), u(rng));
  return v;
}

concentration_problem interval_problem(int n, double space_half, double fourier_half, double fourier_center = 0.0) {
  concentration_problem p;
  p.g = grid(1, n);
  p.space.base = {interval_shape{0.0, space_half}, mask_role::space};
  p.fourier.base = {interval_shape{fourier_center, fourier_half}, mask_role::fourier};
  return p;
}

std::vector<oracle_check> gaussian_suite(const oracle_settings& s) {
  std::vector<oracle_check> out;
  const grid g(1, s.gaussian_n);
  const auto p = gaussian_problem(s.gaussian_alpha, s.gaussian_beta, g);
  const spectrum sp = full_hermitian_eig(p.dense(0.0).dense);
  double worst_rel = 0.0, worst_overlap = 1.0;
  for (int n = 0; n <= s.gaussian_orders; ++n) {
    const gaussian_mode m = gaussian_eigenpairs(s.gaussian_alpha, s.gaussian_beta, n, g);
    worst_rel = std::max(worst_rel, std::abs(sp.values(n) - m.value) / m.value);
    worst_overlap = std::min(worst_overlap, std::abs(sp.vectors.col(n).dot(m.samples.cast<cplx>())));
  }
  out.push_back(at_most("gaussian", "eigenvalue relative error, n <= " + std::to_string(s.gaussian_orders), worst_rel, 1e-3));
  out.push_back(at_least("gaussian", "eigenvector overlap", worst_overlap, 0.999));
  // Hermite functions on a resolving midpoint grid
  std::vector<double> nodes;
  const double h = 0.05;
  for (double x = -15.0 + h / 2; x < 15.0; x += h) nodes.push_back(x);
  const auto basis = make_hermite_basis(10, nodes, h);
  out.push_back(at_most("gaussian", "Hermite Gram matrix deviation, n <= 10",
                        (basis.gram() - Eigen::MatrixXd::Identity(11, 11)).cwiseAbs().maxCoeff(), 1e-8));
  return out;
}

std::vector<oracle_check> splitting_suite(const oracle_settings& s) {
  std::vector<oracle_check> out;
  const grid g(1, s.gaussian_n);
  const auto p = gaussian_problem(s.gaussian_alpha, s.gaussian_beta, g);
  const auto m = p.space_samples(0.0);
  const auto w = p.fourier_weights(0.0);
  std::vector<double> v(m.size()), h(w.size());
  for (std::size_t i = 0; i < m.size(); ++i) v[i] = -2.0 * std::log(m[i]);
  for (std::size_t i = 0; i < w.size(); ++i) h[i] = -std::log(w[i]);
  const fast_operator k = p.fast(0.0);
  std::mt19937_64 rng(7);
  double worst = 0.0, adjoint = 0.0;
  for (int t = 0; t < 10; ++t) {
    const cvec f = random_vector(g.space_size(), rng), e = random_vector(g.space_size(), rng);
    const cvec a = splitting_apply(v, h, g, f), b = k(f);
    worst = std::max(worst, (a - b).norm() / b.norm());
    const cplx lhs = splitting_apply(v, h, g, f).dot(e), rhs = f.dot(splitting_apply(v, h, g, e));
    adjoint = std::max(adjoint, std::abs(lhs - rhs) / (f.norm() * e.norm()));
  }
  out.push_back(at_most("splitting", "splitting vs fast apply, 10 random vectors", worst, 1e-10));
  out.push_back(at_most("splitting", "self-adjointness", adjoint, 1e-12));
  const std::vector<double> zv(g.space_size(), 0.0), zh(g.fourier_size(), 0.0);
  const cvec f = random_vector(g.space_size(), rng);
  out.push_back(at_most("splitting", "V = 0, H = 0 gives the identity", (splitting_apply(zv, zh, g, f) - f).norm() / f.norm(), 1e-13));
  return out;
}

std::vector<oracle_check> quasimode_suite(const oracle_settings& s) {
  std::vector<oracle_check> out;
  const grid g(1, s.gaussian_n);
  const std::vector<double> eps{0.2, 0.1, 0.05};
  for (int n : {0, 1}) {
    std::vector<double> r;
    for (double e : eps) r.push_back(quasimode_residual(e, n, g));
    const double slope = loglog_slope(eps, r);
    out.push_back({"quasimode", "log-log slope, n = " + std::to_string(n), slope, "in [2.7, 3.3]",
                   slope >= 2.7 && slope <= 3.3});
    quasimode_options exact;
    exact.exact_eigenvalue = true;
    const double re = quasimode_residual(eps.back(), n, g, exact);
    out.push_back({"quasimode", "exact eigenpair residual below quasimode residual, n = " + std::to_string(n), re,
                   "< " + io::format_number(r.back()), re < r.back()});
  }
  out.push_back(at_most("quasimode", "residual at eps = 0", quasimode_residual(0.0, 0, g), 1e-14));
  return out;
}

std::vector<oracle_check> quadric_suite(const oracle_settings& s) {
  std::vector<oracle_check> out;
  const double c = s.quadric_c;
  const quadric_shape space{{0.0}, {1.0}, 1.0}, fourier{{0.0}, {1.0}, c * c};
  double res[2] = {0.0, 0.0};
  for (int level = 0; level < 2; ++level) {
    const grid g(1, s.quadric_n * (level + 1));
    const auto p = quadric_commuting_operator(space, fourier, g);
    const auto k = quadric_concentration(space, fourier, g);
    res[level] = commutation_residual(p, k);
    if (level > 0) continue;
    double field = 0.0;
    for (int j = 0; j < g.n(); ++j) {
      const double x = g.space_node(j);
      field = std::max({field, std::abs(p.coefficient[0][j] - (x * x - 1.0)), std::abs(p.potential[j] - c * c * x * x)});
    }
    out.push_back(at_most("quadric", "coefficients equal (x^2 - 1) and c^2 x^2", field, 1e-12));
    out.push_back(at_most("quadric", "P symmetric", (p.matrix - p.matrix.transpose()).cwiseAbs().maxCoeff(), 0.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.restricted());
    const spectrum sk = full_hermitian_eig(k.dense);
    out.push_back(at_least("quadric", "top K eigenvector vs bottom P eigenvector",
                           std::abs(sk.vectors.col(0).dot(es.eigenvectors().col(0).cast<cplx>())), 0.99));
    const quadric_shape wrong{{0.0}, {1.0}, 4.0 * c * c};
    const double r_wrong = commutation_residual(quadric_commuting_operator(space, wrong, g), k);
    out.push_back(at_least("quadric", "wrong-beta residual over correct residual", r_wrong / res[0], 2.0));
  }
  out.push_back(at_most("quadric", "residual ratio N -> 2N", res[1] / res[0], 0.6));
  return out;
}

std::vector<oracle_check> dpss_suite(const oracle_settings& s) {
  std::vector<oracle_check> out;
  const int n = s.dpss_n;
  const Eigen::MatrixXd t = dpss_tridiagonal(n, s.dpss_w);
  double off_min = std::numeric_limits<double>::infinity(), beyond = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::abs(i - j) == 1) off_min = std::min(off_min, t(i, j));
      if (std::abs(i - j) > 1) beyond = std::max(beyond, std::abs(t(i, j)));
    }
  out.push_back(at_least("dpss", "smallest off-diagonal", off_min, std::numeric_limits<double>::min()));
  out.push_back(at_most("dpss", "entries beyond the tridiagonal band", beyond, 0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  const Eigen::MatrixXd v = es.eigenvectors().rowwise().reverse();  // decreasing eigenvalue
  double parity = 0.0;
  for (int q = 0; q < 16; ++q) {
    const double sign = q % 2 == 0 ? 1.0 : -1.0;
    parity = std::max(parity, (v.col(q) - sign * v.col(q).reverse()).cwiseAbs().maxCoeff());
  }
  out.push_back(at_most("dpss", "even/odd alternation under reflection, first 16", parity, 1e-8));
  const auto p = interval_problem(n, 1.0, two_pi * s.dpss_w);
  const auto k = p.dense(0.0);
  const spectrum sp = full_hermitian_eig(k.dense);
  const linear_operator op = dense_operator(k.dense);
  double margin = std::numeric_limits<double>::infinity();
  for (int q = 0; q < 16; ++q) margin = std::min(margin, concentration_ratio(op, v.col(q).cast<cplx>()) - sp.values(16));
  out.push_back(at_least("dpss", "min over q <= 16 of ratio(DPSS_q) - lambda_17", margin, std::numeric_limits<double>::min()));
  return out;
}

std::vector<oracle_check> equivalence_suite(const oracle_settings&) {
  std::vector<oracle_check> out;
  const double c = 0.3 * two_pi;
  {
    const grid g(1, 150);
    const std::vector<double> p{20.0 * g.dxi()};
    const auto shifted = interval_problem(150, 1.0, c, p[0]);
    const auto centered = interval_problem(150, 1.0, c);
    const auto ks = shifted.dense(0.0), kc = centered.dense(0.0);
    const spectrum ss = full_hermitian_eig(ks.dense);
    double worst = 0.0;
    for (int q = 0; q < 16; ++q) {
      const cvec psi = ss.vectors.col(q);
      const cvec moved = fourier_translation(psi, g, p);
      worst = std::max(worst, std::abs(concentration_ratio(dense_operator(kc.dense), moved) -
                                       concentration_ratio(dense_operator(ks.dense), psi)));
    }
    out.push_back(at_most("equivalence", "Fourier translation ratio invariance, top 16", worst, 1e-6));
    const std::vector<double> zero{0.0};
    out.push_back(at_most("equivalence", "zero translation is the identity",
                          (fourier_translation(ss.vectors.col(0), g, zero) - ss.vectors.col(0)).norm() +
                              (space_translation(ss.vectors.col(0), g, zero) - ss.vectors.col(0)).norm(),
                          0.0));
  }
  // Top values sit at 1 to rounding, so refinement is judged on the whole
  // spectrum. Halving dx at fixed physical bandwidth halves the per-sample width.
  const double scale = 0.5;
  double top10 = 0.0, whole[2] = {0.0, 0.0};
  for (int level = 0; level < 2; ++level) {
    const int n = 300 * (level + 1);
    const double w = c / (level + 1);
    const spectrum a = full_hermitian_eig(interval_problem(n, 1.0, scale * w).dense(0.0).dense);
    const spectrum b = full_hermitian_eig(interval_problem(n, scale, w).dense(0.0).dense);
    whole[level] = (a.values - b.values).cwiseAbs().maxCoeff();
    if (level == 0)
      for (int q = 0; q < 10; ++q) top10 = std::max(top10, std::abs(a.values(q) - b.values(q)));
  }
  out.push_back(at_most("equivalence", "affine 1D spectral match, top 10, N = 300", top10, 1e-4));
  out.push_back(at_most("equivalence", "whole-spectrum affine mismatch, N = 600 over N = 300", whole[1] / whole[0], 1.0 - 1e-3));
  return out;
}

}  // namespace

const std::vector<std::string>& oracle_suite_names() {
  static const std::vector<std::string> names{"gaussian", "splitting", "quasimode", "quadric", "dpss", "equivalence"};
  return names;
}

std::vector<oracle_check> run_oracle_suite(const std::string& suite, const oracle_settings& settings) {
  if (suite == "gaussian") return gaussian_suite(settings);
  if (suite == "splitting") return splitting_suite(settings);
  if (suite == "quasimode") return quasimode_suite(settings);
  if (suite == "quadric") return quadric_suite(settings);
  if (suite == "dpss") return dpss_suite(settings);
  if (suite == "equivalence") return equivalence_suite(settings);
  throw config_error("[oracle] suites: unknown suite '" + suite + "'");
}

}  // namespace slepian
