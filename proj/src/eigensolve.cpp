#include "slepian/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include <lapacke.h>

namespace slepian {

namespace {

// Uniform entries in [-1, 1) from a fixed-seed generator; independent of the
// standard library's distribution implementations. Real, so that real
// symmetric problems stay real.
cvec deterministic_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  cvec v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = cplx(draw(), 0.0);
  }
  return v;
}

void project_out(const cmat& basis, cvec& x) {
  if (basis.cols() == 0) return;
  for (int pass = 0; pass < 2; ++pass) x.noalias() -= basis * (basis.adjoint() * x);
}

void project_out(const cmat& basis, Eigen::Index cols, cvec& x) {
  if (cols == 0) return;
  for (int pass = 0; pass < 2; ++pass)
    x.noalias() -= basis.leftCols(cols) * (basis.leftCols(cols).adjoint() * x);
}

}  // namespace

spectrum full_hermitian_eig(const cmat& a) {
  if (a.rows() != a.cols()) throw dimension_error("eigendecomposition needs a square matrix");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  bool real = true;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const cplx v = a(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw input_error("matrix has non-finite entries");
      real = real && v.imag() == 0.0;
    }
  spectrum s;
  s.values.resize(n);
  s.vectors.resize(n, n);
  if (n == 0) return s;
  Eigen::VectorXd w(n);
  if (real) {
    Eigen::MatrixXd r = a.real();
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, r.data(), n, w.data());
    if (info != 0) throw std::runtime_error("dsyevd failed with info " + std::to_string(info));
    for (lapack_int i = 0; i < n; ++i) {
      s.values(i) = w(n - 1 - i);
      s.vectors.col(i) = r.col(n - 1 - i).cast<cplx>();
    }
  } else {
    cmat c = a;
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n,
                                           reinterpret_cast<lapack_complex_double*>(c.data()), n, w.data());
    if (info != 0) throw std::runtime_error("zheevd failed with info " + std::to_string(info));
    for (lapack_int i = 0; i < n; ++i) {
      s.values(i) = w(n - 1 - i);
      s.vectors.col(i) = c.col(n - 1 - i);
    }
  }
  return s;
}

eigen_pair top_eigenpair_deflated(const linear_operator& op, const cmat& excluded, const solver_options& options,
                                  const cvec* warm_start, solve_info* info) {
  const Eigen::Index n = op.size;
  const Eigen::Index q = excluded.cols();
  if (q > 0 && excluded.rows() != n) throw input_error("excluded vectors have the wrong length");
  if (q >= n) throw degenerate_input_error("excluded set already spans the whole space");
  if (!(options.tol > 0)) throw input_error("solver tolerance must be positive");

  const Eigen::Index available = n - q;
  Eigen::Index m = options.basis_size > 0 ? options.basis_size : std::min<Eigen::Index>(n, 200);
  m = std::max<Eigen::Index>(1, std::min(m, available));
  Eigen::Index keep = options.keep > 0 ? options.keep : std::max<Eigen::Index>(1, m / 3);
  keep = std::min(keep, m - 1);

  std::uint64_t fresh_seed = 0x51e9a11ULL;
  auto fresh_direction = [&](const cmat& v, Eigen::Index cols) -> cvec {
    // A new direction outside span(V) + span(excluded), or empty if none is left.
    for (int attempt = 0; attempt < 3; ++attempt) {
      cvec r = deterministic_vector(n, fresh_seed++);
      project_out(excluded, r);
      project_out(v, cols, r);
      const double nr = r.norm();
      if (nr > 1e-8 * std::sqrt(static_cast<double>(n))) return r / nr;
    }
    // The random draws may already lie in the span (e.g. the identity, whose
    // earlier eigenvectors are these very draws); some coordinate vector does not.
    cvec best_dir;
    double best_norm = 1e-8;
    for (Eigen::Index i = 0; i < n; ++i) {
      cvec e = cvec::Zero(n);
      e(i) = 1.0;
      project_out(excluded, e);
      project_out(v, cols, e);
      const double ne = e.norm();
      if (ne > best_norm) {
        best_norm = ne;
        best_dir = e / ne;
      }
    }
    return best_dir;
  };

  cmat v(n, m), w(n, m);
  cvec start;
  if (warm_start && warm_start->size() == n) {
    start = *warm_start;
    project_out(excluded, start);
  }
  if (start.size() == 0 || start.norm() <= 1e-10 * (warm_start ? warm_start->norm() : 1.0)) {
    start = fresh_direction(v, 0);
    if (start.size() == 0) throw degenerate_input_error("no direction left outside the excluded span");
  }
  v.col(0) = start / start.norm();

  int applications = 0, restarts = 0;
  eigen_pair best;
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::Index j = 0;
  cvec y(n), r(n);

  while (true) {
    bool exhausted = false;
    while (j < m) {
      op.apply(v.col(j), y);
      ++applications;
      project_out(excluded, y);
      w.col(j) = y;
      ++j;
      if (j == m || applications >= options.max_applications) break;
      r = y;
      project_out(v, j, r);
      const double beta = r.norm();
      if (beta <= 1e-12 * std::max(y.norm(), std::numeric_limits<double>::min())) {
        r = fresh_direction(v, j);
        if (r.size() == 0) {
          exhausted = true;
          break;
        }
        v.col(j) = r;
      } else {
        project_out(excluded, r);
        v.col(j) = r / r.norm();
      }
    }

    cmat h = v.leftCols(j).adjoint() * w.leftCols(j);
    h = (0.5 * (h + h.adjoint())).eval();
    // a real projected matrix keeps real Ritz vectors real
    Eigen::VectorXd ritz_values;
    cmat ritz_vectors;
    if ((h.imag().array() == 0.0).all()) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
      if (es.info() != Eigen::Success) throw std::runtime_error("Rayleigh-Ritz eigensolver failed");
      ritz_values = es.eigenvalues();
      ritz_vectors = es.eigenvectors().cast<cplx>();
    } else {
      Eigen::SelfAdjointEigenSolver<cmat> es(h);
      if (es.info() != Eigen::Success) throw std::runtime_error("Rayleigh-Ritz eigensolver failed");
      ritz_values = es.eigenvalues();
      ritz_vectors = es.eigenvectors();
    }
    const double theta = ritz_values(j - 1);
    const cvec coeff = ritz_vectors.col(j - 1);
    cvec x = v.leftCols(j) * coeff;
    const double xn = x.norm();
    x /= xn;
    cvec ax = w.leftCols(j) * coeff / xn;
    r = ax - theta * x;
    const double residual = r.norm() / std::max(std::abs(theta), options.residual_floor);

    if (residual < best_residual) {
      best_residual = residual;
      best = {theta, x};
    }
    if (residual <= options.tol || exhausted || j >= available) {
      project_out(excluded, best.vector);
      best.vector /= best.vector.norm();
      if (info) *info = {applications, restarts, best_residual};
      return best;
    }
    if (applications >= options.max_applications) {
      project_out(excluded, best.vector);
      best.vector /= best.vector.norm();
      if (info) *info = {applications, restarts, best_residual};
      throw convergence_error("deflated eigensolver did not converge within " + std::to_string(applications) +
                                  " applications (relative residual " + std::to_string(best_residual) + ")",
                              best, best_residual, applications);
    }

    // thick restart: keep the leading Ritz vectors and continue from the residual
    const Eigen::Index k = std::min(keep, j - 1);
    ++restarts;
    if (k > 0) {
      const cmat ritz = ritz_vectors.rightCols(k).rowwise().reverse();
      const cmat vk = v.leftCols(j) * ritz;
      const cmat wk = w.leftCols(j) * ritz;
      v.leftCols(k) = vk;
      w.leftCols(k) = wk;
    }
    project_out(excluded, r);
    project_out(v, k, r);
    const double rn = r.norm();
    if (rn > 1e-14) {
      v.col(k) = r / rn;
    } else {
      cvec fresh = fresh_direction(v, k);
      if (fresh.size() == 0) {
        if (info) *info = {applications, restarts, best_residual};
        return best;
      }
      v.col(k) = fresh;
    }
    j = k;
  }
}

double concentration_ratio(const linear_operator& op, const cvec& v) {
  const double vv = v.squaredNorm();
  if (!(vv > 0.0)) throw domain_error("concentration ratio of the zero vector");
  const cvec kv = op(v);
  const cplx num = v.dot(kv);
  if (std::abs(num.imag()) > 1e-10 * std::max(kv.norm() * v.norm(), 1e-300))
    throw std::runtime_error("Rayleigh quotient has a large imaginary part; operator is not Hermitian");
  return num.real() / vv;
}

cvec orthogonalize(const cvec& w, const cmat& basis) {
  const double wn = w.norm();
  if (!(wn > 0.0)) throw degenerate_input_error("cannot orthogonalize the zero vector");
  if (basis.cols() > 0 && basis.rows() != w.size()) throw input_error("basis vectors have the wrong length");
  cvec u = w;
  for (int pass = 0; pass < 2; ++pass)
    for (Eigen::Index i = 0; i < basis.cols(); ++i) u -= basis.col(i) * basis.col(i).dot(u);
  const double un = u.norm();
  if (un <= 1e-12 * wn) throw degenerate_input_error("vector lies in the span of the basis");
  return u / un;
}

projection_certificate projection_error_certificate(const spectrum& s, const cvec& w, double eta, int m,
                                                    double slack) {
  projection_certificate c;
  const Eigen::Index n = s.size();
  if (w.size() != n) throw input_error("vector length does not match the spectrum");
  if (m < 1 || m >= n) {
    c.reason = "m must lie in [1, n-1]";
    return c;
  }
  const cvec coeff = s.vectors.adjoint() * w;
  c.rayleigh = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) c.rayleigh += s.values(i) * std::norm(coeff(i));
  const double gap = s.values(0) - s.values(m);
  if (!(gap > 0.0)) {
    c.reason = "lambda_1 equals lambda_{m+1}";
    return c;
  }
  if (std::abs(c.rayleigh - s.values(0)) > eta) {
    c.reason = "precondition |w*Aw - lambda_1| <= eta does not hold";
    return c;
  }
  c.applicable = true;
  c.bound = eta / gap;
  c.measured = 0.0;
  for (Eigen::Index i = m; i < n; ++i) c.measured += std::norm(coeff(i));
  c.holds = c.measured <= c.bound * (1.0 + slack);
  return c;
}

double residual_bound_linear(double lambda1, double lambda2, double lambda_min, double eta) {
  return (lambda1 - lambda_min) / (lambda1 - lambda2) * eta;
}

double residual_bound_sqrt(double lambda1, double lambda2, double lambda_min, double eta) {
  return (lambda1 - lambda_min) * std::sqrt(eta / (lambda1 - lambda2));
}

}  // namespace slepian
