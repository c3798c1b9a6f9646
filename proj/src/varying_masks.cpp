#include "slepian/varying_masks.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace slepian {

std::vector<double> epsilon_schedule(double eps_min, double eps_max, int steps, schedule_kind kind) {
  if (!(eps_min > 0.0) || !(eps_max > eps_min) || !std::isfinite(eps_max))
    throw domain_error("schedule needs 0 < eps_min < eps_max");
  if (steps < 2) throw domain_error("schedule needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double top = std::log(eps_max), bottom = std::log(eps_min);
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    out[i] = kind == schedule_kind::log_uniform ? std::exp(top + (bottom - top) * t) : eps_max + (eps_min - eps_max) * t;
  }
  out.front() = eps_max;
  out.back() = eps_min;
  for (int i = 0; i + 1 < steps; ++i)
    if (!(out[i] > out[i + 1])) throw domain_error("schedule is not strictly decreasing; use fewer points");
  return out;
}

void varying_config::validate(std::int64_t problem_size) const {
  if (!(eps_min > 0.0) || !(eps_max > eps_min)) throw domain_error("varying masks need 0 < eps_min < eps_max");
  if (steps < 2) throw domain_error("varying masks need at least two schedule points");
  if (!(eta > 0.0)) throw domain_error("eta must be positive");
  if (count < 1 || count > problem_size)
    throw domain_error("requested " + std::to_string(count) + " vectors but the grid has " +
                       std::to_string(problem_size) + " nodes");
  if (!(solver.tol > 0.0)) throw domain_error("solver tolerance must be positive");
  if (solver.max_applications < 1) throw domain_error("solver budget must be positive");
}

reference_eigenvalues::reference_eigenvalues(linear_operator k0, double eta, solver_options options,
                                             const spectrum* cache)
    : k0_(std::move(k0)), eta_(eta), options_(options), cache_(cache), vectors_(k0_.size, 0) {
  if (!(eta > 0.0)) throw domain_error("eta must be positive");
  // |theta - lambda| <= ||r||, so a residual below eta pins the value
  options_.tol = std::min(options_.tol, eta_);
}

double reference_eigenvalue(const linear_operator& k0, int q, double eta, const spectrum* cache,
                            solver_options options) {
  reference_eigenvalues refs(k0, eta, options, cache);
  return refs.value(q);
}

double reference_eigenvalues::value(int q) {
  if (q < 1 || q > k0_.size) throw domain_error("reference index out of range");
  if (cache_) {
    if (q > cache_->size()) throw domain_error("dense cache is too short");
    return cache_->values(q - 1);
  }
  while (static_cast<int>(values_.size()) < q) {
    const eigen_pair p = top_eigenpair_deflated(k0_, vectors_, options_);
    values_.push_back(p.value);
    vectors_.conservativeResize(Eigen::NoChange, vectors_.cols() + 1);
    vectors_.col(vectors_.cols() - 1) = p.vector;
  }
  return values_[q - 1];
}

cmat run_record::basis() const {
  const Eigen::Index n = vectors.empty() ? 0 : vectors.front().size();
  cmat b(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return b;
}

run_record run_varying_masks(const concentration_problem& problem, const varying_config& config,
                             const spectrum* dense_cache) {
  config.validate(problem.g.space_size());
  run_record rec;
  rec.config = config;
  rec.schedule = epsilon_schedule(config.eps_min, config.eps_max, config.steps, config.kind);

  const linear_operator k0 = problem.fast(0.0).as_linear_operator();
  spectrum owned;
  const spectrum* cache = dense_cache;
  const bool want_dense = config.reference == reference_mode::dense ||
                          (config.reference == reference_mode::automatic &&
                           problem.g.space_size() <= config.dense_limit);
  if (config.reference == reference_mode::iterative) cache = nullptr;
  if (!cache && want_dense) {
    owned = full_hermitian_eig(problem.dense(0.0).dense);
    cache = &owned;
  }
  reference_eigenvalues refs(k0, config.eta, config.solver, cache);

  const Eigen::Index n = problem.g.space_size();
  cmat basis(n, 0);
  cvec previous;
  for (double eps : rec.schedule) {
    if (rec.accepted() >= config.count) break;
    const auto t0 = std::chrono::steady_clock::now();
    step_trace st;
    st.eps = eps;
    st.target = rec.accepted() + 1;
    st.reference = refs.value(st.target);

    const linear_operator k_eps = problem.fast(eps).as_linear_operator();
    cvec start;
    if (config.warm_start && previous.size() == n) {
      start = previous;
    } else {
      const auto m = problem.space_samples(eps);
      start = Eigen::Map<const Eigen::VectorXd>(m.data(), n).cast<cplx>();
      const double sn = start.norm();
      if (sn > 0) start /= sn;
    }

    eigen_pair cand;
    solve_info info;
    try {
      cand = top_eigenpair_deflated(k_eps, basis, config.solver, &start, &info);
    } catch (const convergence_error& e) {
      cand = e.best();
      info.applications = e.applications();
      info.residual = e.residual();
      st.converged = false;
    }
    st.kappa = cand.value;
    st.residual = info.residual;
    st.applications = info.applications;
    st.ratio = concentration_ratio(k0, cand.vector);
    st.accepted = std::abs(st.ratio - st.reference) <= config.eta;
    st.overshoot = st.ratio > st.reference + config.eta;
    if (st.accepted) {
      rec.vectors.push_back(cand.vector);
      rec.ratios.push_back(st.ratio);
      rec.accept_eps.push_back(eps);
      rec.references.push_back(st.reference);
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = cand.vector;
    }
    previous = cand.vector;
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.trace.push_back(st);
  }
  rec.complete = rec.accepted() >= config.count;
  return rec;
}

std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weight) {
  // Hungarian method on cost = max - weight (potentials form, 1-based work arrays)
  const int n = static_cast<int>(weight.rows());
  if (weight.cols() != n) throw dimension_error("assignment needs a square matrix");
  if (n == 0) return {};
  const double top = weight.maxCoeff();
  auto cost = [&](int i, int j) { return top - weight(i - 1, j - 1); };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> out(n, -1);
  for (int j = 1; j <= n; ++j) out[p[j] - 1] = j - 1;
  return out;
}

}  // namespace slepian
