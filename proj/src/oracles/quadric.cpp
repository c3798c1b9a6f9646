#include <cmath>

#include <Eigen/Eigenvalues>

#include "slepian/oracles.hpp"

namespace slepian {

namespace {

// Space quadric sum a_n y_n^2 <= b in the reduced frame y = x - center and
// Fourier quadric sum alpha_m eta_m^2 <= beta (physical units, centered).
struct reduced_quadric {
  std::vector<double> center;
  std::vector<double> a;
  double b = 1.0;
  std::vector<double> alpha;
  double beta = 1.0;
};

double node_coord(int k, int n) { return static_cast<double>(2 * k + 1 - n) / n; }
// half node between k and k+1; k = -1 and k = N-1 give the domain edges
double half_coord(int k, int n) { return static_cast<double>(2 * k + 2 - n) / n; }

std::vector<char> inside_mask(const mask_spec& spec, const grid& g) {
  const auto m = sample_mask(spec, g);
  std::vector<char> in(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) in[i] = m[i] > 0.0;
  return in;
}

// Conservative flux form: (A_{k+1/2} (u_{k+1} - u_k) - A_{k-1/2} (u_k - u_{k-1})) / h^2
// per axis, Dirichlet outside the domain (the outward flux stays on the diagonal).
quadric_operator assemble_axis(const reduced_quadric& q, const grid& g, std::vector<char> inside) {
  const int dim = g.dim(), n = g.n();
  const std::int64_t size = g.space_size();
  const double h = g.dx(), h2 = h * h;
  quadric_operator op;
  op.g = g;
  op.inside = std::move(inside);
  op.matrix = Eigen::MatrixXd::Zero(size, size);
  op.coefficient.assign(dim, std::vector<double>(size, 0.0));
  op.potential.assign(size, 0.0);

  std::vector<int> idx(dim);
  std::vector<double> y(dim);
  auto level = [&](const std::vector<double>& pt) {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += q.a[a] * pt[a] * pt[a];
    return s;
  };
  for (std::int64_t j = 0; j < size; ++j) {
    g.space_multi_index(j, idx);
    for (int a = 0; a < dim; ++a) y[a] = node_coord(idx[a], n) - q.center[a];
    const double s = level(y);
    for (int m = 0; m < dim; ++m) op.coefficient[m][j] = q.alpha[m] * (s - q.b);
    op.potential[j] = q.beta * s;
    if (!op.inside[j]) continue;

    double diag = op.potential[j];
    for (int m = 0; m < dim; ++m) {
      const int k = idx[m];
      for (int side : {-1, 1}) {
        std::vector<double> yh = y;
        yh[m] = half_coord(side < 0 ? k - 1 : k, n) - q.center[m];
        const double flux = q.alpha[m] * (level(yh) - q.b) / h2;
        diag -= flux;
        const int nb = k + side;
        if (nb < 0 || nb >= n) continue;
        idx[m] = nb;
        const std::int64_t jn = g.space_flat(idx);
        idx[m] = k;
        if (op.inside[jn]) op.matrix(j, jn) = flux;
      }
    }
    op.matrix(j, j) = diag;
  }
  return op;
}

// Symmetric assembly of div(A grad) + C for a full coefficient matrix
// A(x) = q_S(x) M_F: axis terms in flux form, mixed terms through the
// cell-centred gradient of the multilinear interpolant.
quadric_operator assemble_cells(const general_quadric_shape& space, const Eigen::MatrixXd& mf, double beta,
                                double shift, const grid& g, std::vector<char> inside) {
  const int dim = g.dim(), n = g.n();
  const std::int64_t size = g.space_size();
  const double h = g.dx(), h2 = h * h;
  auto qs = [&](const Eigen::VectorXd& x) { return x.dot(space.matrix * x) + space.linear.dot(x) + space.constant; };

  quadric_operator op;
  op.g = g;
  op.inside = std::move(inside);
  op.matrix = Eigen::MatrixXd::Zero(size, size);
  op.coefficient.assign(dim, std::vector<double>(size, 0.0));
  op.potential.assign(size, 0.0);

  std::vector<int> idx(dim);
  Eigen::VectorXd x(dim);
  for (std::int64_t j = 0; j < size; ++j) {
    g.space_multi_index(j, idx);
    for (int a = 0; a < dim; ++a) x(a) = node_coord(idx[a], n);
    const double s = qs(x);
    for (int m = 0; m < dim; ++m) op.coefficient[m][j] = mf(m, m) * s;
    op.potential[j] = beta * (s + shift);
    if (!op.inside[j]) continue;
    double diag = op.potential[j];
    for (int m = 0; m < dim; ++m) {
      const int k = idx[m];
      for (int side : {-1, 1}) {
        Eigen::VectorXd xh = x;
        xh(m) = half_coord(side < 0 ? k - 1 : k, n);
        const double flux = mf(m, m) * qs(xh) / h2;
        diag -= flux;
        const int nb = k + side;
        if (nb < 0 || nb >= n) continue;
        idx[m] = nb;
        const std::int64_t jn = g.space_flat(idx);
        idx[m] = k;
        if (op.inside[jn]) op.matrix(j, jn) = flux;
      }
    }
    op.matrix(j, j) = diag;
  }

  // Mixed terms: -sum_cells sum_{m != l} A_ml (G_m u)(G_l u) with corner index
  // offsets in [-1, N-1]^d so that boundary cells are included.
  const int corners = 1 << dim;
  const double scale = 1.0 / (static_cast<double>(corners / 2) * h);
  std::vector<int> base(dim, -1);
  std::vector<std::int64_t> node(corners);
  std::vector<char> valid(corners);
  Eigen::MatrixXd grad(dim, corners);
  while (true) {
    Eigen::VectorXd centre(dim);
    for (int a = 0; a < dim; ++a) centre(a) = half_coord(base[a], n);
    for (int c = 0; c < corners; ++c) {
      valid[c] = 1;
      for (int a = 0; a < dim; ++a) {
        idx[a] = base[a] + ((c >> (dim - 1 - a)) & 1);
        if (idx[a] < 0 || idx[a] >= n) valid[c] = 0;
      }
      node[c] = valid[c] ? g.space_flat(idx) : -1;
      if (valid[c] && !op.inside[node[c]]) valid[c] = 0;
      for (int a = 0; a < dim; ++a) grad(a, c) = (((c >> (dim - 1 - a)) & 1) ? 1.0 : -1.0) * scale;
    }
    Eigen::MatrixXd a_cell = qs(centre) * mf;
    a_cell.diagonal().setZero();
    const Eigen::MatrixXd local = grad.transpose() * a_cell * grad;
    for (int r = 0; r < corners; ++r) {
      if (!valid[r]) continue;
      for (int c = 0; c < corners; ++c)
        if (valid[c]) op.matrix(node[r], node[c]) -= local(r, c);
    }
    int a = dim - 1;
    while (a >= 0 && ++base[a] > n - 1) base[a--] = -1;
    if (a < 0) break;
  }
  return op;
}

double relative_off_diagonal(const Eigen::MatrixXd& a) {
  const double diag = a.diagonal().norm();
  Eigen::MatrixXd off = a;
  off.diagonal().setZero();
  return diag > 0 ? off.norm() / diag : off.norm();
}

void check_symmetric_invertible(const Eigen::MatrixXd& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim)
    throw dimension_error(std::string(what) + " matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw domain_error(std::string(what) + " matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().cwiseAbs().minCoeff() <= 1e-12 * es.eigenvalues().cwiseAbs().maxCoeff())
    throw domain_error(std::string(what) + " matrix is singular");
}

}  // namespace

std::vector<Eigen::Index> quadric_operator::inside_indices() const {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < inside.size(); ++i)
    if (inside[i]) out.push_back(static_cast<Eigen::Index>(i));
  return out;
}

Eigen::MatrixXd quadric_operator::restricted() const {
  const auto ids = inside_indices();
  const auto k = static_cast<Eigen::Index>(ids.size());
  Eigen::MatrixXd r(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) r(i, j) = matrix(ids[i], ids[j]);
  return r;
}

quadric_operator quadric_commuting_operator(const quadric_shape& space, const quadric_shape& fourier, const grid& g) {
  const auto dim = static_cast<std::size_t>(g.dim());
  if (space.axes.size() != dim || fourier.axes.size() != dim)
    throw dimension_error("quadric axes must have one entry per dimension");
  if (!space.center.empty() && space.center.size() != dim) throw dimension_error("space center has the wrong size");
  for (double c : fourier.center)
    if (c != 0.0) throw domain_error("the Fourier quadric must be centered; translate the eigenvectors instead");
  reduced_quadric q;
  q.center = space.center.empty() ? std::vector<double>(dim, 0.0) : space.center;
  q.a = space.axes;
  q.b = space.level;
  q.alpha = fourier.axes;
  q.beta = fourier.level;
  return assemble_axis(q, g, inside_mask({space, mask_role::space}, g));
}

quadric_operator quadric_commuting_operator(const general_quadric_shape& space, const general_quadric_shape& fourier,
                                            const grid& g) {
  const int dim = g.dim();
  check_symmetric_invertible(space.matrix, dim, "space quadric");
  check_symmetric_invertible(fourier.matrix, dim, "Fourier quadric");
  if (space.linear.size() != 0 && space.linear.size() != dim) throw dimension_error("space linear term has the wrong size");
  if (fourier.linear.size() != 0 && fourier.linear.norm() != 0.0)
    throw domain_error("the Fourier quadric must be centered (v = 0)");
  const Eigen::VectorXd v = space.linear.size() == 0 ? Eigen::VectorXd::Zero(dim) : space.linear;
  const double beta = -fourier.constant;
  if (relative_off_diagonal(space.matrix) == 0.0) {
    if (relative_off_diagonal(fourier.matrix) != 0.0)
      throw domain_error("the Fourier quadric must share the eigenbasis of the space quadric");
    // already in the reduced frame up to a translation
    reduced_quadric q;
    double wlw = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double w = -0.5 * v(a) / space.matrix(a, a);
      q.center.push_back(w);
      q.a.push_back(space.matrix(a, a));
      q.alpha.push_back(fourier.matrix(a, a));
      wlw += w * space.matrix(a, a) * w;
    }
    q.b = wlw - space.constant;
    q.beta = beta;
    // same membership test as the direct quadric path
    return assemble_axis(q, g, inside_mask({quadric_shape{q.center, q.a, q.b}, mask_role::space}, g));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(space.matrix);
  const Eigen::MatrixXd u = es.eigenvectors();
  if (relative_off_diagonal(u.transpose() * fourier.matrix * u) > 1e-10)
    throw domain_error("the Fourier quadric must share the eigenbasis of the space quadric");
  // In the rotated frame A(y) = diag(alpha) (y' Lambda y - b); rotating back gives
  // A(x) = q_S(x) M_F and C = beta (q_S(x) + b).
  const Eigen::VectorXd wt = u.transpose() * v;
  double b = -space.constant;
  for (int a = 0; a < dim; ++a) {
    const double w = -0.5 * wt(a) / es.eigenvalues()(a);
    b += w * es.eigenvalues()(a) * w;
  }
  general_quadric_shape s = space;
  s.linear = v;
  return assemble_cells(s, fourier.matrix, beta, b, g, inside_mask({space, mask_role::space}, g));
}

quadric_shape fourier_quadric_in_sample_units(const quadric_shape& physical, const grid& g) {
  // xi = dx * eta for per-sample frequency xi and physical frequency eta
  quadric_shape s = physical;
  const double dx = g.dx();
  for (auto& a : s.axes) a /= dx * dx;
  for (auto& c : s.center) c *= dx;
  return s;
}

concentration_matrix quadric_concentration(const quadric_shape& space, const quadric_shape& fourier_physical,
                                           const grid& g) {
  const auto m = sample_mask(mask_spec{space, mask_role::space}, g);
  auto w = sample_mask(mask_spec{fourier_quadric_in_sample_units(fourier_physical, g), mask_role::fourier}, g);
  for (auto& x : w) x *= x;
  return assemble_dense(m, sample_kernel(w, g.n(), g.dim()));
}

double commutation_residual(const quadric_operator& p, const concentration_matrix& k) {
  if (!(p.g == k.g) || p.matrix.rows() != k.dense.rows()) throw dimension_error("operator grids differ");
  const cmat pc = p.matrix.cast<cplx>();
  const cmat comm = pc * k.dense - k.dense * pc;
  const double denom = p.matrix.norm() * k.dense.norm();
  if (denom == 0.0) return 0.0;
  return comm.norm() / denom;
}

}  // namespace slepian
