#pragma once

// The state cone of a C*-algebra: block-diagonal PSD elements inside the real
// space of self-adjoint block-diagonal elements.

#include <cstdint>
#include <optional>
#include <vector>

#include "ptv/process.hpp"

namespace ptv {

/// One matrix per block.
using BlockDiag = std::vector<Mat>;

struct ConeModel {
  SystemType system;
  int dim = 0;   ///< Σ d_k²
  int rank = 0;  ///< Σ d_k
  /// Real basis of the self-adjoint elements.
  std::vector<BlockDiag> basis;
};

ConeModel state_cone(const SystemType& a);

/// Per-block minimum eigenvalue ≥ -tol. Throws DimensionError on shape mismatch.
bool is_in_cone(const ConeModel& c, const BlockDiag& v, double tol = kDefaultTol);
/// Per-block minimum eigenvalue ≥ +tol.
bool is_internal(const ConeModel& c, const BlockDiag& v, double tol = kDefaultTol);

BlockDiag identity_element(const SystemType& a);

struct SpectralData {
  /// Rank-1 projectors forming a maximal testable family, grouped by block,
  /// weights descending within each block.
  std::vector<BlockDiag> projectors;
  RVec weights;
  /// The preparation classical(rank) → A sending point i to projectors[i].
  Process preparation;

  BlockDiag reconstruct() const;
};

/// Throws PreconditionError for non-self-adjoint input.
SpectralData spectral_decompose(const ConeModel& c, const BlockDiag& v, double tol = kDefaultTol);
/// Decomposes v + R·1 (internal for R above the spectral radius) and shifts
/// the weights back by R.
SpectralData spectral_decompose_shifted(const ConeModel& c, const BlockDiag& v, double tol = kDefaultTol);

/// T(x) = L x L† per block with L = s2^{1/2} s1^{-1/2}, so T(s1) = s2.
class HomogeneityWitness {
 public:
  HomogeneityWitness(std::vector<Mat> forward, std::vector<Mat> backward)
      : forward_(std::move(forward)), backward_(std::move(backward)) {}

  BlockDiag apply(const BlockDiag& x) const;
  BlockDiag apply_inverse(const BlockDiag& x) const;
  Process as_process(const SystemType& a) const;

 private:
  std::vector<Mat> forward_;
  std::vector<Mat> backward_;
};

/// Throws PreconditionError unless both states are internal.
HomogeneityWitness homogeneity_witness(const ConeModel& c, const BlockDiag& s1, const BlockDiag& s2,
                                       double tol = kDefaultTol);

/// Σ_k Re tr(x_k y_k).
double inner_product(const BlockDiag& x, const BlockDiag& y);

/// Projector onto the negative eigenspace of v; nullopt when v is in the cone.
std::optional<BlockDiag> negative_witness(const BlockDiag& v, double tol = kDefaultTol);

struct SelfDualityReport {
  bool symmetric = false;
  bool positive_definite = false;
  bool members_ok = false;     ///< <v, c> ≥ -tol for sampled members v, c
  bool nonmembers_ok = false;  ///< each sampled non-member has a witness c with <v, c> < 0
  bool ok() const { return symmetric && positive_definite && members_ok && nonmembers_ok; }
};

SelfDualityReport strong_self_duality_check(const ConeModel& c, int trials, std::uint64_t seed,
                                            double tol = kDefaultTol);

struct ConeReport {
  int dim = 0;
  int rank = 0;
  bool pointed = false;
  bool homogeneous = false;
  bool self_dual = false;
  bool shift_route_agrees = false;
  double spectral_residual_max = 0.0;
  bool ok() const { return pointed && homogeneous && self_dual && shift_route_agrees; }
};

/// Sampled battery: pointedness, spectral reconstruction, homogeneity
/// witnesses as automorphisms, strong self-duality.
ConeReport cone_report(const SystemType& a, int trials, std::uint64_t seed, double tol = kDefaultTol);

}  // namespace ptv
