#pragma once

#include <stdexcept>
#include <string>

#include "slepian/errors.hpp"
#include "slepian/spectrum.hpp"

namespace slepian {

class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, eigen_pair best, double residual, int applications)
      : std::runtime_error(what), best_(std::move(best)), residual_(residual), applications_(applications) {}
  const eigen_pair& best() const { return best_; }
  double residual() const { return residual_; }
  int applications() const { return applications_; }

 private:
  eigen_pair best_;
  double residual_;
  int applications_;
};

// Complete spectrum of a Hermitian matrix, sorted descending. Uses the real
// symmetric driver when every imaginary part is exactly zero.
spectrum full_hermitian_eig(const cmat& a);

struct solver_options {
  double tol = 1e-10;            // relative residual ||Ax - theta x|| / max(|theta|, floor)
  int max_applications = 5000;
  int basis_size = 0;            // 0 picks min(size, 200)
  int keep = 0;                  // Ritz vectors kept on restart; 0 picks basis_size / 3
  double residual_floor = 1e-3;  // lower clamp on |theta| in the relative residual
};

struct solve_info {
  int applications = 0;
  int restarts = 0;
  double residual = 0.0;         // relative
};

// Dominant eigenpair of P A P where P projects out the columns of `excluded`
// (orthonormal). Thick-restart Lanczos with full reorthogonalization; the
// projection is applied at every operator application.
eigen_pair top_eigenpair_deflated(const linear_operator& op, const cmat& excluded, const solver_options& options,
                                  const cvec* warm_start = nullptr, solve_info* info = nullptr);

// Rayleigh quotient v*Av / v*v.
double concentration_ratio(const linear_operator& op, const cvec& v);

// Unit vector along w with the span of `basis` removed; two Gram-Schmidt passes.
cvec orthogonalize(const cvec& w, const cmat& basis);

struct projection_certificate {
  bool applicable = false;
  double bound = 0.0;        // eta / (lambda_1 - lambda_{m+1})
  double measured = 0.0;     // || w - Proj_{v_1..v_m} w ||^2
  double rayleigh = 0.0;     // w* A w from the spectrum
  bool holds = false;
  std::string reason;
};

projection_certificate projection_error_certificate(const spectrum& s, const cvec& w, double eta, int m,
                                                    double slack = 1e-10);

// Residual bound for a vector with lambda_1 - w*Aw <= eta, written with
// ||r|| <= eta / gap: (lambda_1 - lambda_n) / (lambda_1 - lambda_2) * eta.
double residual_bound_linear(double lambda1, double lambda2, double lambda_min, double eta);
// The same bound with ||r||^2 <= eta / gap, which the projection estimate
// actually provides: (lambda_1 - lambda_n) * sqrt(eta / (lambda_1 - lambda_2)).
double residual_bound_sqrt(double lambda1, double lambda2, double lambda_min, double eta);

}  // namespace slepian
