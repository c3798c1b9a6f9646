#include <cmath>
#include <numbers>

#include "doctest.h"
#include "slepian/oracles.hpp"
#include "slepian/varying_masks.hpp"

using namespace slepian;

namespace {

concentration_problem interval_problem(int n, double omega) {
  concentration_problem p;
  p.g = grid(1, n);
  p.space = {{interval_shape{0.0, 1.0}, mask_role::space}};
  p.fourier = {{interval_shape{0.0, omega}, mask_role::fourier}};
  return p;
}

// Dense spectrum of (I - B B*) K (I - B B*) for the first `deflate` columns of B.
spectrum deflated_spectrum(const cmat& k, const cmat& basis, Eigen::Index deflate) {
  const Eigen::Index n = k.rows();
  cmat p = cmat::Identity(n, n);
  if (deflate > 0) p -= basis.leftCols(deflate) * basis.leftCols(deflate).adjoint();
  cmat a = p * k * p;
  a = (0.5 * (a + a.adjoint())).eval();
  return full_hermitian_eig(a);
}

}  // namespace

TEST_CASE("epsilon schedule") {
  const auto two = epsilon_schedule(0.1, 100.0, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == 100.0);
  CHECK(two[1] == 0.1);
  const auto three = epsilon_schedule(0.1, 100.0, 3);
  REQUIRE(three.size() == 3);
  CHECK(three[1] == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
  const auto lin = epsilon_schedule(1.0, 3.0, 3, schedule_kind::uniform);
  CHECK(lin[1] == doctest::Approx(2.0));
  const auto many = epsilon_schedule(0.1, 100.0, 250);
  for (std::size_t i = 0; i + 1 < many.size(); ++i) CHECK(many[i] > many[i + 1]);
  CHECK_THROWS_AS(epsilon_schedule(0.0, 1.0, 5), domain_error);
  CHECK_THROWS_AS(epsilon_schedule(2.0, 1.0, 5), domain_error);
  CHECK_THROWS_AS(epsilon_schedule(0.1, 1.0, 1), domain_error);
}

TEST_CASE("reference eigenvalues") {
  const linear_operator id{7, [](const cvec& in, cvec& out) { out = in; }};
  for (int q : {1, 3, 7}) CHECK(reference_eigenvalue(id, q, 1e-10) == doctest::Approx(1.0).epsilon(1e-12));

  const auto p = interval_problem(150, 0.3 * 2 * std::numbers::pi);
  const auto dense = full_hermitian_eig(p.dense(0.0).dense);
  const auto k0 = p.fast(0.0).as_linear_operator();
  CHECK(std::abs(reference_eigenvalue(k0, 1, 1e-10) - dense.values(0)) <= 1e-10);
  CHECK(reference_eigenvalue(k0, 5, 1e-10, &dense) == dense.values(4));

  // last index on a small operator
  const auto small = interval_problem(12, 1.2);
  const auto sd = full_hermitian_eig(small.dense(0.0).dense);
  const double eta = 1e-10;
  CHECK(std::abs(reference_eigenvalue(small.fast(0.0).as_linear_operator(), 12, eta) - sd.values(11)) <= eta);
  CHECK_THROWS_AS(reference_eigenvalue(small.fast(0.0).as_linear_operator(), 13, eta), domain_error);
}

TEST_CASE("config validation") {
  varying_config c;
  c.count = 151;
  CHECK_THROWS_AS(c.validate(150), domain_error);
  c.count = 16;
  CHECK_NOTHROW(c.validate(150));
  c.eta = 0;
  CHECK_THROWS_AS(c.validate(150), domain_error);
}

TEST_CASE("1D interval run accepts 16 vectors against the dense spectrum") {
  const auto p = interval_problem(150, 0.3 * 2 * std::numbers::pi);
  varying_config c;
  const auto rec = run_varying_masks(p, c);
  REQUIRE(rec.complete);
  REQUIRE(rec.accepted() == 16);
  const auto dense = full_hermitian_eig(p.dense(0.0).dense);
  for (int q = 0; q < 16; ++q) CHECK(std::abs(rec.ratios[q] - dense.values(q)) <= 1e-10);
  const cmat b = rec.basis();
  CHECK((b.adjoint() * b - cmat::Identity(16, 16)).cwiseAbs().maxCoeff() <= 1e-10);
  // real problem, real vectors
  CHECK(b.imag().cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("accepted vectors satisfy the projection bound and the residual corollary") {
    const cmat k = p.dense(0.0).dense;
    for (int q = 0; q < 16; ++q) {
      const spectrum s = deflated_spectrum(k, b, q);
      const cvec w = b.col(q);
      const double eta = std::max(c.eta, std::abs(rec.ratios[q] - s.values(0)));
      for (int m = 1; m <= 20; ++m) {
        if (!(s.values(0) > s.values(m))) continue;
        const auto cert = projection_error_certificate(s, w, eta, m, 1e-8);
        CHECK(cert.applicable);
        CHECK(cert.holds);
      }
      cmat pr = cmat::Identity(150, 150) - b.leftCols(q) * b.leftCols(q).adjoint();
      const cvec aw = pr * (k * w);
      const double r = (aw - s.values(0) * w).norm();
      const double lmin = s.values(149 - q);
      CHECK(r <= residual_bound_sqrt(s.values(0), s.values(1), lmin, eta) * (1 + 1e-8));
    }
  }
}

TEST_CASE("run is deterministic") {
  const auto p = interval_problem(60, 0.3 * 2 * std::numbers::pi);
  varying_config c;
  c.count = 5;
  const auto a = run_varying_masks(p, c);
  const auto b = run_varying_masks(p, c);
  REQUIRE(a.accepted() == b.accepted());
  CHECK(a.ratios == b.ratios);
  CHECK(a.accept_eps == b.accept_eps);
  for (int q = 0; q < a.accepted(); ++q) CHECK(a.vectors[q] == b.vectors[q]);
}

TEST_CASE("dense and iterative references agree") {
  const auto p = interval_problem(80, 0.3 * 2 * std::numbers::pi);
  varying_config c;
  c.count = 6;
  c.reference = reference_mode::dense;
  const auto a = run_varying_masks(p, c);
  c.reference = reference_mode::iterative;
  const auto b = run_varying_masks(p, c);
  REQUIRE(a.accepted() == 6);
  REQUIRE(b.accepted() == 6);
  for (int q = 0; q < 6; ++q) CHECK(std::abs(a.ratios[q] - b.ratios[q]) <= 2 * c.eta);
}

TEST_CASE("exhausted schedule gives a partial record") {
  const auto p = interval_problem(60, 0.3 * 2 * std::numbers::pi);
  varying_config c;
  c.steps = 2;
  c.count = 10;
  const auto rec = run_varying_masks(p, c);
  CHECK_FALSE(rec.complete);
  CHECK(rec.accepted() < 10);
  CHECK(rec.trace.size() == 2);
}

TEST_CASE("single vector with a large gap is close to the top eigenvector") {
  const auto p = interval_problem(40, 0.25);
  const auto dense = full_hermitian_eig(p.dense(0.0).dense);
  varying_config c;
  c.count = 1;
  c.eta = 1e-6;
  REQUIRE(dense.values(0) - dense.values(1) >= 100 * c.eta);
  const auto rec = run_varying_masks(p, c);
  REQUIRE(rec.accepted() == 1);
  const cvec v = rec.vectors[0];
  const cplx phase = dense.vectors.col(0).dot(v);
  const double err = (v - phase / std::abs(phase) * dense.vectors.col(0)).squaredNorm();
  CHECK(err <= c.eta / (dense.values(0) - dense.values(1)));
}

TEST_CASE("Gaussian masks reproduce Hermite modes") {
  const grid g(1, 200);
  const auto p = gaussian_problem(50.0, 50.0, g);
  varying_config c;
  c.count = 3;
  const auto rec = run_varying_masks(p, c);
  REQUIRE(rec.accepted() == 3);
  for (int n = 0; n < 3; ++n) {
    const auto mode = gaussian_eigenpairs(50.0, 50.0, n, g);
    const double overlap = std::abs(rec.vectors[n].dot(mode.samples.cast<cplx>()));
    CHECK(overlap >= 0.999);
  }
}

TEST_CASE("assignment picks the maximum-weight matching") {
  Eigen::MatrixXd w(3, 3);
  w << 0.1, 0.9, 0.0,
       0.8, 0.2, 0.1,
       0.0, 0.1, 0.7;
  CHECK(max_weight_assignment(w) == std::vector<int>{1, 0, 2});
}

TEST_CASE("assumption diagnostic flags a synthetic crossing") {
  // diag(2, 1 + e, 0.5): the second entry overtakes the first at e = 1
  auto provider = [](double eps, int window) {
    Eigen::Vector3d d(2.0, 1.0 + eps, 0.5);
    cmat a = cmat::Zero(3, 3);
    for (int i = 0; i < 3; ++i) a(i, i) = d(i);
    spectrum s = full_hermitian_eig(a);
    const Eigen::Index w = std::min<Eigen::Index>(window, 3);
    return spectrum{s.values.head(w), s.vectors.leftCols(w)};
  };
  const std::vector<double> schedule{2.0, 1.5, 0.5, 0.1};
  const auto rep = assumption_diagnostic(provider, schedule, 3);
  CHECK_FALSE(rep.ordering_preserved);
  REQUIRE(rep.crossings.size() == 1);
  CHECK(rep.crossings[0].step == 1);
  CHECK(rep.crossings[0].upper == 1);
  CHECK(rep.crossings[0].lower == 2);

  const std::vector<double> tail{0.9, 0.5, 0.1};
  CHECK(assumption_diagnostic(provider, tail, 3).ordering_preserved);
}

TEST_CASE("constant family keeps its ordering") {
  auto p = interval_problem(40, 1.0);
  p.space.varies = false;
  p.fourier.varies = false;
  const auto rep = assumption_diagnostic(p, epsilon_schedule(0.1, 10.0, 6), 10);
  CHECK(rep.ordering_preserved);
  CHECK(rep.crossings.empty());
}
