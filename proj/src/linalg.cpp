#include "ptv/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ptv {

Mat hermitian_part(const Mat& m) { return (m + m.adjoint()) * 0.5; }

HermitianEig eigh(const Mat& m) {
  HermitianEig out;
  if (m.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Mat> solver(hermitian_part(m));
  const Eigen::Index n = m.rows();
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen sorts ascending; reverse.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

double min_eigenvalue(const Mat& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

int numerical_rank(const Mat& m, double ratio) {
  if (m.rows() == 0) return 0;
  auto e = eigh(m);
  const double top = e.values(0);
  if (top <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    if (e.values(k) > ratio * top) ++r;
  return r;
}

namespace {

Mat spectral_apply(const Mat& m, double (*fn)(double)) {
  auto e = eigh(m);
  RVec f(e.values.size());
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    double v = e.values(k);
    if (v < 0.0 && v > -1e-12) v = 0.0;
    f(k) = fn(std::max(v, 0.0));
  }
  return e.vectors * f.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

}  // namespace

Mat psd_sqrt(const Mat& m) {
  return spectral_apply(m, [](double v) { return std::sqrt(v); });
}

Mat psd_inv_sqrt(const Mat& m) {
  return spectral_apply(m, [](double v) { return v > 0.0 ? 1.0 / std::sqrt(v) : 0.0; });
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<Mat> hermitian_basis(int d) {
  std::vector<Mat> out;
  for (int a = 0; a < d; ++a) out.push_back(basis_projector(d, a));
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      out.push_back(ket_bra(d, a, b) + ket_bra(d, b, a));
      out.push_back(cplx(0, 1) * ket_bra(d, a, b) - cplx(0, 1) * ket_bra(d, b, a));
    }
  return out;
}

Mat basis_projector(int d, int a) { return ket_bra(d, a, a); }

Mat ket_bra(int d, int a, int b) {
  Mat m = Mat::Zero(d, d);
  m(a, b) = 1.0;
  return m;
}

Vec vectorize(const Mat& rho) {
  Vec v(rho.rows() * rho.cols());
  for (Eigen::Index a = 0; a < rho.rows(); ++a)
    for (Eigen::Index b = 0; b < rho.cols(); ++b) v(a * rho.cols() + b) = rho(a, b);
  return v;
}

Mat unvectorize(const Vec& v, int rows, int cols) {
  Mat m(rows, cols);
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < cols; ++b) m(a, b) = v(a * cols + b);
  return m;
}

Mat ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

Mat random_unitary(int d, Rng& rng) {
  Mat g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int k = 0; k < d; ++k) {
    const cplx diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

Mat random_hermitian(int d, Rng& rng) { return hermitian_part(ginibre(d, d, rng)); }

Mat random_density(int d, Rng& rng, int rank) {
  if (rank < 0) rank = d;
  Mat g = ginibre(d, rank, rng);
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Vec random_unit_vector(int d, Rng& rng) {
  Vec v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace ptv
