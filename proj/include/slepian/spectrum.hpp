#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace slepian {

using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Matrix-free Hermitian operator. `apply` must be safe to call from several
// threads at once.
struct linear_operator {
  Eigen::Index size = 0;
  std::function<void(const cvec&, cvec&)> apply;

  cvec operator()(const cvec& v) const {
    cvec out(size);
    apply(v, out);
    return out;
  }
};

linear_operator dense_operator(const cmat& a);

struct eigen_pair {
  double value = 0.0;
  cvec vector;
};

// Values sorted descending; column i of `vectors` belongs to values(i).
struct spectrum {
  Eigen::VectorXd values;
  cmat vectors;

  Eigen::Index size() const { return values.size(); }
  eigen_pair pair(Eigen::Index i) const { return {values(i), vectors.col(i)}; }
};

}  // namespace slepian
