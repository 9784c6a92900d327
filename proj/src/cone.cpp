#include "ptv/cone.hpp"

#include <cmath>

#include "ptv/error.hpp"
#include "ptv/sampling.hpp"

namespace ptv {

namespace {

void check_shape(const SystemType& a, const BlockDiag& v) {
  if (v.size() != a.num_blocks())
    throw DimensionError("element has " + std::to_string(v.size()) + " blocks, system " + a.to_string() + " has " +
                         std::to_string(a.num_blocks()));
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k].rows() != a.block(k) || v[k].cols() != a.block(k))
      throw DimensionError("block " + std::to_string(k) + " has the wrong size for " + a.to_string());
}

double min_block_eigenvalue(const BlockDiag& v) {
  double m = INFINITY;
  for (const auto& b : v) m = std::min(m, min_eigenvalue(b));
  return m;
}

double scale_of(const BlockDiag& v) {
  double m = 0.0;
  for (const auto& b : v) m = std::max(m, max_abs(b));
  return m;
}

double max_abs_diff(const BlockDiag& x, const BlockDiag& y) {
  double m = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, max_abs(x[k] - y[k]));
  return m;
}

/// Membership with tolerance relative to the element's size.
bool in_cone_scaled(const BlockDiag& v, double tol) { return min_block_eigenvalue(v) >= -tol * std::max(1.0, scale_of(v)); }

BlockDiag conjugate(const std::vector<Mat>& l, const BlockDiag& x) {
  BlockDiag out;
  for (std::size_t k = 0; k < x.size(); ++k) out.push_back(l[k] * x[k] * l[k].adjoint());
  return out;
}

BlockDiag plus_identity(BlockDiag v, double c) {
  for (auto& b : v) b += c * Mat::Identity(b.rows(), b.cols());
  return v;
}

}  // namespace

ConeModel state_cone(const SystemType& a) {
  ConeModel c{a, a.algebra_dim(), a.total_dim(), {}};
  for (std::size_t k = 0; k < a.num_blocks(); ++k)
    for (auto& h : hermitian_basis(a.block(k))) {
      BlockDiag e = identity_element(a);
      for (std::size_t q = 0; q < a.num_blocks(); ++q) e[q].setZero();
      e[k] = std::move(h);
      c.basis.push_back(std::move(e));
    }
  return c;
}

bool is_in_cone(const ConeModel& c, const BlockDiag& v, double tol) {
  check_shape(c.system, v);
  return min_block_eigenvalue(v) >= -tol;
}

bool is_internal(const ConeModel& c, const BlockDiag& v, double tol) {
  check_shape(c.system, v);
  return min_block_eigenvalue(v) >= tol;
}

BlockDiag identity_element(const SystemType& a) {
  BlockDiag out;
  for (int d : a.blocks()) out.push_back(Mat::Identity(d, d));
  return out;
}

BlockDiag SpectralData::reconstruct() const {
  BlockDiag out;
  for (const auto& b : projectors.front()) out.push_back(Mat::Zero(b.rows(), b.cols()));
  for (std::size_t i = 0; i < projectors.size(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += weights(static_cast<Eigen::Index>(i)) * projectors[i][k];
  return out;
}

SpectralData spectral_decompose(const ConeModel& c, const BlockDiag& v, double tol) {
  check_shape(c.system, v);
  for (const auto& b : v)
    if (max_abs(b - b.adjoint()) > tol) throw PreconditionError("element is not self-adjoint");
  const SystemType& a = c.system;
  SpectralData s;
  s.weights.resize(c.rank);
  s.preparation = Process(SystemType::classical(c.rank), a);
  int idx = 0;
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    const auto e = eigh(v[k]);
    for (int x = 0; x < a.block(k); ++x, ++idx) {
      BlockDiag p = identity_element(a);
      for (auto& b : p) b.setZero();
      const Vec u = e.vectors.col(x);
      p[k] = u * u.adjoint();
      s.preparation.cell(idx, k) = BlockMap(1, a.block(k), vectorize(p[k]));
      s.projectors.push_back(std::move(p));
      s.weights(idx) = e.values(x);
    }
  }
  return s;
}

SpectralData spectral_decompose_shifted(const ConeModel& c, const BlockDiag& v, double tol) {
  check_shape(c.system, v);
  double radius = 0.0;
  for (const auto& b : v) radius = std::max(radius, b.norm());
  const double shift = radius + 1.0;
  SpectralData s = spectral_decompose(c, plus_identity(v, shift), tol);
  s.weights.array() -= shift;
  return s;
}

BlockDiag HomogeneityWitness::apply(const BlockDiag& x) const { return conjugate(forward_, x); }

BlockDiag HomogeneityWitness::apply_inverse(const BlockDiag& x) const { return conjugate(backward_, x); }

Process HomogeneityWitness::as_process(const SystemType& a) const {
  Process p(a, a);
  for (std::size_t k = 0; k < a.num_blocks(); ++k) p.cell(k, k) = BlockMap::from_kraus(forward_[k]);
  return p;
}

HomogeneityWitness homogeneity_witness(const ConeModel& c, const BlockDiag& s1, const BlockDiag& s2, double tol) {
  if (!is_internal(c, s1, tol) || !is_internal(c, s2, tol))
    throw PreconditionError("homogeneity witness needs two internal states");
  std::vector<Mat> fwd, bwd;
  for (std::size_t k = 0; k < s1.size(); ++k) {
    fwd.push_back(psd_sqrt(s2[k]) * psd_inv_sqrt(s1[k]));
    bwd.push_back(psd_sqrt(s1[k]) * psd_inv_sqrt(s2[k]));
  }
  return HomogeneityWitness(std::move(fwd), std::move(bwd));
}

double inner_product(const BlockDiag& x, const BlockDiag& y) {
  if (x.size() != y.size()) throw DimensionError("inner product of elements with different block counts");
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] * y[k]).trace().real();
  return s;
}

std::optional<BlockDiag> negative_witness(const BlockDiag& v, double tol) {
  BlockDiag c;
  bool found = false;
  for (const auto& b : v) {
    const auto e = eigh(b);
    Mat p = Mat::Zero(b.rows(), b.cols());
    for (Eigen::Index x = 0; x < e.values.size(); ++x)
      if (e.values(x) < -tol) {
        p += e.vectors.col(x) * e.vectors.col(x).adjoint();
        found = true;
      }
    c.push_back(std::move(p));
  }
  if (!found) return std::nullopt;
  return c;
}

SelfDualityReport strong_self_duality_check(const ConeModel& c, int trials, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const SystemType& a = c.system;
  SelfDualityReport r;

  r.symmetric = true;
  for (int t = 0; t < trials; ++t) {
    const BlockDiag x = random_self_adjoint(a, rng), y = random_self_adjoint(a, rng);
    r.symmetric = r.symmetric && std::abs(inner_product(x, y) - inner_product(y, x)) <= tol;
  }

  RMat gram(c.dim, c.dim);
  for (int i = 0; i < c.dim; ++i)
    for (int j = 0; j < c.dim; ++j) gram(i, j) = inner_product(c.basis[i], c.basis[j]);
  r.positive_definite = min_eigenvalue(gram.cast<cplx>()) > tol;

  r.members_ok = true;
  for (int t = 0; t < trials; ++t) {
    const BlockDiag v = random_cone_element(a, rng, t % 2 == 0 ? 1 : -1);
    const BlockDiag w = random_cone_element(a, rng, t % 3 == 0 ? 1 : -1);
    r.members_ok = r.members_ok && inner_product(v, w) >= -tol;
  }

  r.nonmembers_ok = true;
  for (int t = 0; t < trials; ++t) {
    BlockDiag v = random_self_adjoint(a, rng);
    const double m = min_block_eigenvalue(v);
    if (m >= -0.1) v = plus_identity(std::move(v), -(m + 0.5));
    const auto w = negative_witness(v, tol);
    r.nonmembers_ok = r.nonmembers_ok && w && in_cone_scaled(*w, tol) && inner_product(v, *w) < -tol;
  }
  return r;
}

ConeReport cone_report(const SystemType& a, int trials, std::uint64_t seed, double tol) {
  const ConeModel c = state_cone(a);
  Rng rng(seed);
  ConeReport r;
  r.dim = c.dim;
  r.rank = c.rank;

  r.pointed = true;
  std::uniform_real_distribution<double> expo(0.0, 12.0);
  for (int t = 0; t < trials; ++t) {
    BlockDiag v = random_self_adjoint(a, rng);
    const double s = std::pow(10.0, -expo(rng));
    for (auto& b : v) b *= s;
    BlockDiag neg = v;
    for (auto& b : neg) b = -b;
    if (is_in_cone(c, v, tol) && is_in_cone(c, neg, tol)) r.pointed = r.pointed && scale_of(v) < 1e-8;
    const BlockDiag p = random_cone_element(a, rng);
    BlockDiag np = p;
    for (auto& b : np) b = -b;
    r.pointed = r.pointed && !is_in_cone(c, np, tol);
  }

  r.shift_route_agrees = true;
  for (int t = 0; t < trials; ++t) {
    const BlockDiag v = random_self_adjoint(a, rng);
    const SpectralData direct = spectral_decompose(c, v, tol);
    const SpectralData shifted = spectral_decompose_shifted(c, v, tol);
    r.spectral_residual_max = std::max(r.spectral_residual_max, max_abs_diff(direct.reconstruct(), v));
    r.shift_route_agrees = r.shift_route_agrees && max_abs_diff(shifted.reconstruct(), v) <= 1e-10 &&
                           (direct.weights - shifted.weights).cwiseAbs().maxCoeff() <= 1e-10;
  }

  r.homogeneous = true;
  for (int t = 0; t < trials; ++t) {
    const BlockDiag s1 = plus_identity(random_cone_element(a, rng), 0.05);
    const BlockDiag s2 = plus_identity(random_cone_element(a, rng), 0.05);
    const HomogeneityWitness w = homogeneity_witness(c, s1, s2, tol);
    bool ok = max_abs_diff(w.apply(s1), s2) <= 1e-9 * std::max(1.0, scale_of(s2)) &&
              max_abs_diff(w.apply_inverse(s2), s1) <= 1e-9 * std::max(1.0, scale_of(s1));
    const BlockDiag x = random_cone_element(a, rng, t % 2 == 0 ? 1 : -1);
    ok = ok && in_cone_scaled(w.apply(x), tol) && in_cone_scaled(w.apply_inverse(x), tol);
    r.homogeneous = r.homogeneous && ok;
  }

  r.self_dual = strong_self_duality_check(c, trials, seed + 1, tol).ok();
  return r;
}

}  // namespace ptv
