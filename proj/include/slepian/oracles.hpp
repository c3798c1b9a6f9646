#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "slepian/concentration.hpp"

namespace slepian {

// The grid does not resolve the requested mode.
class resolution_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A translation is not a whole number of grid steps.
class alignment_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- Hermite functions ----------------------------------------------------

// L2-normalized Hermite function phi_n(x), upward three-term recurrence.
double hermite_function(int n, double x);

struct hermite_basis {
  int max_order = 0;
  std::vector<double> nodes;
  double spacing = 1.0;           // quadrature weight of each node
  Eigen::MatrixXd values;         // nodes x (max_order + 1)

  Eigen::MatrixXd gram() const;
};

hermite_basis make_hermite_basis(int max_order, std::vector<double> nodes, double spacing);

// ---- Gaussian masks -------------------------------------------------------
//
// Space mask e^{-alpha x^2 / 2} on [-1,1]^d and Fourier mask e^{-beta xi^2 / 2}
// on the per-sample frequency grid [-pi,pi]^d. The discrete operator acts in
// sample units s = x / dx, where the space mask reads e^{-alpha dx^2 s^2 / 2},
// so the closed form is evaluated with alpha dx^2 in place of alpha.

// lambda_n = exp(-asinh(sqrt(alpha beta)) (2n + 1))
double gaussian_eigenvalue(double alpha, double beta, int n);
// mu^2 = sqrt(alpha (1 + alpha beta) / beta)
double gaussian_scale_squared(double alpha, double beta);

struct gaussian_mode {
  double value = 0.0;
  Eigen::VectorXd samples;        // unit discrete norm
};

// Tensor-product mode with one order per axis.
gaussian_mode gaussian_eigenpairs(double alpha, double beta, std::span<const int> orders, const grid& g);
gaussian_mode gaussian_eigenpairs(double alpha, double beta, int n, const grid& g);

concentration_problem gaussian_problem(double alpha, double beta, const grid& g);

// ---- splitting form -------------------------------------------------------

// e^{-V/2} F^-1 e^{-H} F e^{-V/2} f with V on the space grid and H on the
// Fourier grid; the Fourier multiplier is applied to the zero-padded signal.
cvec splitting_apply(std::span<const double> v, std::span<const double> h, const grid& g, const cvec& f);

// ---- quasimodes -----------------------------------------------------------
//
// V = a x^2 on the space grid, H = b xi^2 on the frequency grid. In sample
// units T = H(-i d/ds) + V has modes phi_n((a dx^2 / b)^{1/4} s) with
// omega_n = dx sqrt(a b) (2n + 1).

struct quasimode_options {
  double a = 1.0;
  double b = 1.0;
  bool exact_eigenvalue = false;  // use the closed-form Gaussian eigenpair instead of (e^{-eps omega}, psi_n)
  double edge_tolerance = 1e-10;  // largest admissible |psi| at the space and frequency edges
};

double quasimode_omega(int n, const grid& g, const quasimode_options& opt = {});
cvec quasimode(int n, const grid& g, const quasimode_options& opt = {});
// || K_eps psi_n - e^{-eps omega_n} psi_n ||_2 with masks e^{-eps V/2} and e^{-eps H/2}.
double quasimode_residual(double eps, int n, const grid& g, const quasimode_options& opt = {});

// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

// ---- commuting operators for quadric domains ------------------------------

struct quadric_operator {
  grid g{1, 1};
  Eigen::MatrixXd matrix;                       // N^d x N^d, zero rows and columns outside the space domain
  std::vector<std::vector<double>> coefficient; // per axis, A_mm at the nodes (reduced frame)
  std::vector<double> potential;                // C at the nodes (reduced frame)
  std::vector<char> inside;

  std::vector<Eigen::Index> inside_indices() const;
  Eigen::MatrixXd restricted() const;           // rows and columns of inside nodes only
};

// Space quadric Q(c, a, b) on [-1,1]^d and Fourier quadric Q(0, alpha, beta)
// in physical frequency units (conjugate to x).
quadric_operator quadric_commuting_operator(const quadric_shape& space, const quadric_shape& fourier, const grid& g);
// General quadrics D(M, v, c). The Fourier quadric must be centered (v = 0)
// and share the eigenbasis of the space matrix.
quadric_operator quadric_commuting_operator(const general_quadric_shape& space, const general_quadric_shape& fourier,
                                            const grid& g);

// The same Fourier quadric on the per-sample frequency grid.
quadric_shape fourier_quadric_in_sample_units(const quadric_shape& physical, const grid& g);
concentration_matrix quadric_concentration(const quadric_shape& space, const quadric_shape& fourier_physical,
                                           const grid& g);

// ||PK - KP||_F / (||P||_F ||K||_F)
double commutation_residual(const quadric_operator& p, const concentration_matrix& k);

// ---- DPSS -----------------------------------------------------------------

// diag ((N-1)/2 - k)^2 cos(2 pi W), off-diagonal (k+1)(N-1-k)/2.
Eigen::MatrixXd dpss_tridiagonal(int n, double w);

// ---- equivalence maps -----------------------------------------------------

// psi -> psi(x + p); p must be a whole number of grid steps on each axis.
cvec space_translation(const cvec& psi, const grid& g, std::span<const double> p);
// psi -> psi(x) e^{-i p . s} with s = x / dx and p in per-sample frequency units.
cvec fourier_translation(const cvec& psi, const grid& g, std::span<const double> p);
// psi -> psi(A^{-T} u) on the target grid, by multilinear interpolation of the
// source samples (zero outside the source grid).
cvec affine_map(const cvec& psi, const grid& source, const Eigen::MatrixXd& a, const grid& target);

// Continuous inputs are exempt from grid alignment.
using field = std::function<cplx(std::span<const double>)>;
field space_translation(field psi, std::vector<double> p);
field fourier_translation(field psi, std::vector<double> p);
field affine_map(field psi, const Eigen::MatrixXd& a);

}  // namespace slepian
