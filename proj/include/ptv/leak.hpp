#pragma once

// Leaks l: A → A⊗B with (id_A ⊗ discard_B) ∘ l = id_A, their block
// normal form, the grid test for purity, and the correspondence between
// leaks and dilations of the cup.

#include <vector>

#include "ptv/process.hpp"

namespace ptv {

struct LeakClassification {
  SystemType system;  ///< A
  SystemType target;  ///< B
  /// sigma[i]: the state of B emitted when A is in block i (one Mat per block of B).
  std::vector<std::vector<Mat>> sigma;
  bool trivial = false;
  /// Largest deviation of the leak from its normal form.
  double residual = 0.0;
  /// Largest entry among cells mapping block i into a block (i', j) with i' ≠ i.
  double cross_block = 0.0;
};

/// Throws DimensionError when cod(l) is not dom(l) ⊗ B for any B.
bool is_leak(const Process& l, double tol = kDefaultTol);
/// Same, with the leaked system fixed; throws unless dom(l) = a.
bool is_leak(const Process& l, const SystemType& a, double tol = kDefaultTol);

/// Throws PreconditionError if l is not a leak or does not match its
/// normal form within tol.
LeakClassification classify_leak(const Process& l, double tol = kDefaultTol);

/// Leak A → A⊗B whose cell from block i to block (i, j) is id ⊗ sigma[i][j].
Process normal_form_leak(const SystemType& a, const SystemType& b, const std::vector<std::vector<Mat>>& sigma);
/// Leaks block i as point i of classical(#blocks).
Process which_branch_leak(const SystemType& a);
/// Random normal-form leak with random causal branch states.
Process random_leak(const SystemType& a, const SystemType& b, Rng& rng);

/// At most one non-zero cell per grid row and column, and each non-zero cell
/// has Choi rank 1.
bool is_pure(const Process& f, double tol = kDefaultTol);

bool cup_is_pure(const SystemType& a, double tol = kDefaultTol);
bool has_nontrivial_leak(const SystemType& a, double tol = kDefaultTol);

/// S: I → A⊗A⊗B with (id⊗id⊗discard_B)∘S = cup(A) becomes
/// (cap_A ⊗ id_A ⊗ id_B) ∘ (id_A ⊗ S). Throws PreconditionError otherwise.
Process leak_from_cup_dilation(const Process& s, const SystemType& a, double tol = kDefaultTol);
/// (id_A ⊗ l) ∘ cup(A). Throws PreconditionError unless l is a leak.
Process cup_dilation_from_leak(const Process& l, double tol = kDefaultTol);

}  // namespace ptv
