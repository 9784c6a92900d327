#pragma once

// Classical interface: point states and effects, the copier, classically
// controlled processes, sums built from control, tomography fingerprints,
// testable preparations and the sharp-dagger / unique-effect checks.
//
// Classical indices are 0-based throughout.

#include <span>
#include <string>
#include <vector>

#include "ptv/process.hpp"

namespace ptv {

Process classical_state(int i, int n);
Process classical_effect(int i, int n);
/// |i> ↦ |ii> on classical(n).
Process copier(int n);
/// Σ_i classical_state(i, n); equals maxmix(classical(n)).
Process ones_state(int n);

struct ControlledProcess {
  std::vector<Process> branches;
  /// classical(n) ⊗ A → B with process ∘ (point i ⊗ id_A) = branches[i].
  Process process;
};

ControlledProcess controlled_process(std::span<const Process> fs);

/// Largest deviation of process ∘ (point i ⊗ id) from branches[i].
double control_recovery_residual(const ControlledProcess& c);

/// Σ f_i built by closing the control wire of controlled_process(fs) with
/// ones_state. Throws on an empty list (no signature to infer).
Process diagram_sum(std::span<const Process> fs);
/// As above; an empty list yields the zero process dom → cod.
Process diagram_sum(std::span<const Process> fs, const SystemType& dom, const SystemType& cod);

// Tomography -------------------------------------------------------------------

/// The d² Hermitian probes |a><a|, (|a>+|b>)(<a|+<b|)/2, (|a>+i|b>)(<a|-i<b|)/2.
/// Each has unit trace and the family spans the Hermitian d×d matrices.
std::vector<Mat> probe_family(int d);

/// Probe operators of a (possibly composite) system. Each probe is supported
/// on a single block. With several factors the probes are products of the
/// factors' probes, ordered with the first factor as the major index.
struct Probe {
  std::size_t block;
  Mat op;
};
std::vector<Probe> probes(std::span<const SystemType> factors);

struct TomographyFingerprint {
  SystemType dom;
  SystemType cod;
  std::size_t num_states = 0;
  std::size_t num_effects = 0;
  /// probabilities[s * num_effects + e] = tr(E_e f(rho_s)).
  std::vector<double> probabilities;

  double at(std::size_t s, std::size_t e) const { return probabilities[s * num_effects + e]; }
};

TomographyFingerprint tomography_fingerprint(const Process& f);
/// Product probes: dom = ⊗ dom_factors, cod = ⊗ cod_factors.
TomographyFingerprint tomography_fingerprint(const Process& f, std::span<const SystemType> dom_factors,
                                             std::span<const SystemType> cod_factors);
/// Fingerprint of f ⊗ g predicted from those of f and g.
TomographyFingerprint outer_product(const TomographyFingerprint& f, const TomographyFingerprint& g);
double max_abs_diff(const TomographyFingerprint& a, const TomographyFingerprint& b);

bool processes_equal_by_tomography(const Process& f, const Process& g, double tol = kDefaultTol);

/// Rebuild the process from a (non-factored) fingerprint. Inverts the probe
/// frame, so it also certifies the probe family is informationally complete.
Process reconstruct_from_fingerprint(const TomographyFingerprint& fp);

// Testability ----------------------------------------------------------------

struct TestablePreparation {
  SystemType system;
  /// The prepared states s_i, as block-diagonal matrices.
  std::vector<std::vector<Mat>> states;
  /// S: classical(n) → A.
  Process preparation;
  /// The distinguishing measurement A → classical(n).
  Process measurement;
};

/// One rank-1 projector per basis vector of each block; n = total_dim(A).
TestablePreparation maximal_testable_preparation(const SystemType& a);

struct SharpDaggerReport {
  bool states_pure = false;
  bool tested_by_dagger = false;  ///< S† ∘ S = id on classical(n)
  double test_residual = 0.0;
  bool dagger_causal = false;     ///< discard ∘ S† = discard
  double causal_residual = 0.0;
  bool classical_trivial = false; ///< on classical processes the dagger is the cup/cap transpose
  double classical_residual = 0.0;

  bool ok() const { return states_pure && tested_by_dagger && dagger_causal && classical_trivial; }
  std::string failures() const;
};

SharpDaggerReport verify_sharp_dagger(const TestablePreparation& s, double tol = kDefaultTol,
                                      std::uint64_t seed = 0);

struct UniqueEffectReport {
  bool unique = false;
  int constraint_rank = 0;
  int dimension = 0;
  /// max-abs distance between the solved effect and the trace functional.
  double residual = 0.0;
};

/// Solve e(rho) = 1 over a spanning family of causal states of A and decide
/// whether discarding is the only solution.
UniqueEffectReport unique_causal_effect(const SystemType& a, double tol = kDefaultTol);

}  // namespace ptv
