#pragma once

// Dense complex helpers shared by the semantic layer. Everything here works on
// Eigen's dynamic complex matrices; Hermitian routines symmetrize their input
// before diagonalising so round-off asymmetry never leaks into eigenvalues.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace ptv {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using Rng = std::mt19937_64;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kRankRatio = 1e-8;

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order (columns of `vectors` follow the same order).
struct HermitianEig {
  RVec values;
  Mat vectors;
};

Mat hermitian_part(const Mat& m);
HermitianEig eigh(const Mat& m);
double min_eigenvalue(const Mat& m);

/// Number of eigenvalues above `ratio * largest`; 0 for the zero matrix.
int numerical_rank(const Mat& m, double ratio = kRankRatio);

/// Square root / inverse square root of a PSD matrix. Eigenvalues are clipped
/// at zero after flooring anything above -1e-12.
Mat psd_sqrt(const Mat& m);
Mat psd_inv_sqrt(const Mat& m);

double max_abs(const Mat& m);

/// Kronecker product with the first factor as the major index.
Mat kron(const Mat& a, const Mat& b);

/// Real basis of the d×d Hermitian matrices: |a><a|, then for each a < b
/// |a><b| + |b><a| and i|a><b| - i|b><a|.
std::vector<Mat> hermitian_basis(int d);

Mat basis_projector(int d, int a);  // |a><a|
Mat ket_bra(int d, int a, int b);   // |a><b|

/// Row-major vectorisation: vec(rho)_(a*n+b) = rho(a,b).
Vec vectorize(const Mat& rho);
Mat unvectorize(const Vec& v, int rows, int cols);

// Random sampling (all seeded through the caller's engine).
Mat ginibre(int rows, int cols, Rng& rng);
Mat random_unitary(int d, Rng& rng);
Mat random_hermitian(int d, Rng& rng);
Mat random_density(int d, Rng& rng, int rank = -1);
Vec random_unit_vector(int d, Rng& rng);

}  // namespace ptv
