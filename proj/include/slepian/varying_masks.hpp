#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slepian/concentration.hpp"
#include "slepian/eigensolve.hpp"

namespace slepian {

enum class schedule_kind { log_uniform, uniform };

// Strictly decreasing, endpoints included.
std::vector<double> epsilon_schedule(double eps_min, double eps_max, int steps,
                                     schedule_kind kind = schedule_kind::log_uniform);

enum class reference_mode { automatic, dense, iterative };

struct varying_config {
  double eps_min = 0.1;
  double eps_max = 100.0;
  int steps = 250;
  schedule_kind kind = schedule_kind::log_uniform;
  double eta = 1e-10;
  int count = 16;
  solver_options solver;
  bool warm_start = true;
  reference_mode reference = reference_mode::automatic;
  std::int64_t dense_limit = 4096;  // largest N^d for which the dense cache is built in automatic mode

  void validate(std::int64_t problem_size) const;
};

// Lazily computed eta-approximations of lambda_q(0), 1-based q.
class reference_eigenvalues {
 public:
  // With a cache, values are read from it; otherwise each new q is found by
  // deflated iteration against the reference vectors found so far.
  reference_eigenvalues(linear_operator k0, double eta, solver_options options, const spectrum* cache = nullptr);

  double value(int q);
  int computed() const { return static_cast<int>(values_.size()); }

 private:
  linear_operator k0_;
  double eta_;
  solver_options options_;
  const spectrum* cache_;
  std::vector<double> values_;
  cmat vectors_;
};

double reference_eigenvalue(const linear_operator& k0, int q, double eta, const spectrum* cache = nullptr,
                            solver_options options = {});

struct step_trace {
  double eps = 0.0;
  int target = 0;            // q being sought (1-based)
  double kappa = 0.0;        // dominant deflated eigenvalue of K(eps)
  double ratio = 0.0;        // nu = u* K(0) u
  double reference = 0.0;    // lambda~_q(0)
  bool accepted = false;
  bool overshoot = false;    // nu > lambda~_q(0) + eta
  bool converged = true;
  double residual = 0.0;
  int applications = 0;
  double seconds = 0.0;
};

struct run_record {
  varying_config config;
  std::vector<double> schedule;
  std::vector<cvec> vectors;            // accepted, orthonormal
  std::vector<double> ratios;           // alpha_saved
  std::vector<double> accept_eps;
  std::vector<double> references;       // lambda~_q(0) per accepted q
  std::vector<step_trace> trace;
  bool complete = false;

  int accepted() const { return static_cast<int>(vectors.size()); }
  cmat basis() const;
};

// The varying masks method. `dense_cache` may hold the full spectrum of K(0).
run_record run_varying_masks(const concentration_problem& problem, const varying_config& config,
                             const spectrum* dense_cache = nullptr);

// Ordering diagnostic for the top eigenvalues of K(eps) along a schedule.
struct eigen_crossing {
  int step = 0;              // between schedule[step] and schedule[step + 1]
  int upper = 0;             // 1-based ranks at schedule[step]
  int lower = 0;
  double overlap = 0.0;
};

struct assumption_report {
  std::vector<double> schedule;
  int tracked = 30;
  double floor = 1e-10;
  double distinct_tol = 1e-13;
  std::vector<std::vector<double>> values;   // per step, top `tracked` values
  std::vector<eigen_crossing> crossings;
  std::vector<int> non_distinct_steps;
  bool ordering_preserved = true;
  bool all_distinct = true;
};

// Top `window` eigenpairs of K(eps), sorted descending.
using spectrum_provider = std::function<spectrum(double eps, int window)>;

// Consecutive spectra are matched by maximum-overlap assignment over
// tracked + 10 vectors. A crossing is a pair of tracked modes whose order
// flips between neighbouring steps; pairs with a value below `floor` or
// closer than `distinct_tol` are not ordered and are skipped.
assumption_report assumption_diagnostic(const spectrum_provider& provider, const std::vector<double>& schedule,
                                        int tracked = 30, double floor = 1e-10, double distinct_tol = 1e-13);
assumption_report assumption_diagnostic(const concentration_problem& problem, const std::vector<double>& schedule,
                                        int tracked = 30, double floor = 1e-10, double distinct_tol = 1e-13);

// Maximum-weight perfect assignment on a square matrix; row i goes to result[i].
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weight);

}  // namespace slepian
