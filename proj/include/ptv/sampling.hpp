#pragma once

// Seeded random processes and states for property checks.

#include <vector>

#include "ptv/process.hpp"

namespace ptv {

/// Every cell gets a Ginibre Choi matrix G G† of the given Kraus rank
/// (rank < 0: full), scaled by 1/(in·out).
Process random_cp(const SystemType& dom, const SystemType& cod, Rng& rng, int rank = -1);

/// A random CP map made trace-preserving by precomposing each input block
/// with conjugation by (f†(1))^{-1/2}.
Process random_causal(const SystemType& dom, const SystemType& cod, Rng& rng);

/// Block matrices of a random causal state (total trace 1, full rank).
std::vector<Mat> random_causal_state(const SystemType& a, Rng& rng);

/// Random element of the state cone (unnormalised, per-block rank given or full).
std::vector<Mat> random_cone_element(const SystemType& a, Rng& rng, int rank = -1);

/// Random self-adjoint block-diagonal element.
std::vector<Mat> random_self_adjoint(const SystemType& a, Rng& rng);

}  // namespace ptv
