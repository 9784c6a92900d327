#pragma once

// Rank/dimension arithmetic of the simple Euclidean Jordan algebras and the
// self-composition test that leaves only the complex matrix algebras.

#include <string>
#include <vector>

#include "ptv/system_type.hpp"

namespace ptv {

enum class EjaFamily { ComplexHermitian, RealSymmetric, QuaternionicHermitian, OctonionicAlbert, SpinFactor };

struct SimpleEJA {
  EjaFamily family;
  /// n for the matrix families, K for spin factors, 3 for the Albert algebra.
  int param;

  long long rank() const;
  long long dim() const;
  std::string name() const;  // "C_3", "R_2", "H_2", "O_3", "Spin_4"

  friend bool operator==(const SimpleEJA&, const SimpleEJA&) = default;
};

/// Every family instance with the given rank and dimension, ordered
/// C, R, H, O, Spin. R_n and H_n need n ≥ 2 (n = 1 is C_1); Spin_K needs K ≥ 2.
std::vector<SimpleEJA> find_simple(long long rank, long long dim);

/// find_simple(rank², dim²) is non-empty.
bool survives_self_composition(const SimpleEJA& e);

struct SurvivorRow {
  SimpleEJA algebra;
  bool survives;
  std::vector<SimpleEJA> composite_matches;
};

/// C_n, R_n, H_n for 2 ≤ n ≤ max_n, O_3 when max_n ≥ 3, Spin_K for 2 ≤ K ≤ max_n².
std::vector<SurvivorRow> survivor_table(int max_n);

/// The simple EJA of a single-block model system (C_n).
SimpleEJA model_algebra(const SystemType& a);

/// Rank and dimension of A ⊗ B in the model are the products of those of A and B.
bool model_rank_multiplicativity_check(const SystemType& a, const SystemType& b);

}  // namespace ptv
