#pragma once

// Standard purifications 𝓕: A → B⊗C (recover f by discarding C) and
// symmetric purifications F: A⊗B → B⊗A (recover f by feeding maxmix into the
// B input and discarding the A output), plus the unitary connector between
// two standard purifications of the same process.

#include <cstdint>
#include <optional>
#include <string>

#include "ptv/process.hpp"

namespace ptv {

struct StandardPurification {
  Process f;
  Process dilation;  ///< A → B ⊗ C
  SystemType environment;
};

struct SymmetricPurification {
  Process f;
  Process dilation;  ///< A ⊗ B → B ⊗ A
};

struct PurificationReport {
  double residual = 0.0;
  bool pure = false;
  bool ok = false;
};

/// Minimal-environment Stinespring dilation from the Choi eigendecomposition.
/// With a seed, the Kraus index is rotated by a Haar-random unitary.
/// Throws PreconditionError for multi-block or non-CP input.
StandardPurification standard_purification(const Process& f, std::optional<std::uint64_t> seed = std::nullopt,
                                           double tol = kDefaultTol);

/// Embed the environment into a larger quantum system of dimension env_dim.
StandardPurification pad_environment(const StandardPurification& p, int env_dim);

/// Cell (i, j) of f is purified with environment b_j ⊗ a_i and its B factor is
/// capped against the B input; the result lands in cell (i, j) → (j, i).
SymmetricPurification symmetric_purification(const Process& f, double tol = kDefaultTol);

PurificationReport verify_standard_purification(const Process& f, const Process& dilation,
                                                const SystemType& environment, double tol = kDefaultTol);
PurificationReport verify_symmetric_purification(const Process& f, const Process& dilation, double tol = kDefaultTol);

struct Connector {
  Mat unitary;    ///< U acting on the environment
  Process map;    ///< conjugation by U
  double residual = 0.0;
};

/// R with (id_B ⊗ R) ∘ F = G. Throws PreconditionError when the two do not
/// purify the same process, the environments differ, or no unitary fits.
Connector essential_uniqueness_connector(const StandardPurification& f, const StandardPurification& g,
                                         double tol = 1e-8);

/// R causal and R† causal.
bool is_bicausal(const Process& r, double tol = kDefaultTol);

/// 𝓕 = (F ⊗ id_B) ∘ (id_A ⊗ cup_B) with environment A ⊗ B. Needs single-block
/// A and B since only then is the cup pure.
StandardPurification derive_standard_from_symmetric(const SymmetricPurification& s);

}  // namespace ptv
