#pragma once

// Processes between finite-dimensional C*-algebras. A process f: A → B is a
// grid of superoperators, one per (input block i, output block j); cell (i, j)
// maps M(C^{a_i}) into M(C^{b_j}) and the output on block j is the sum over i.
//
// Vectorisation is row-major: vec(rho)_(a*n+b) = rho(a, b). For a single Kraus
// operator K the superoperator is kron(K, conj(K)).

#include <span>
#include <string>
#include <vector>

#include "ptv/linalg.hpp"
#include "ptv/system_type.hpp"

namespace ptv {

class BlockMap {
 public:
  BlockMap() = default;
  /// Zero map from M(C^in) to M(C^out).
  BlockMap(int in_dim, int out_dim);
  BlockMap(int in_dim, int out_dim, Mat matrix);

  static BlockMap identity(int d);
  static BlockMap from_kraus(const Mat& k);
  static BlockMap from_kraus(std::span<const Mat> ks, int in_dim, int out_dim);
  /// Inverse of choi(): J[(a,i),(b,j)] = f(|i><j|)(a,b).
  static BlockMap from_choi(const Mat& choi, int in_dim, int out_dim);
  /// rho -> rho^T on M(C^d). Not completely positive for d > 1.
  static BlockMap transpose(int d);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const Mat& matrix() const { return matrix_; }
  Mat& matrix() { return matrix_; }

  Mat apply(const Mat& rho) const;
  Mat choi() const;
  bool is_zero(double tol) const { return max_abs(matrix_) <= tol; }

 private:
  int in_dim_ = 1;
  int out_dim_ = 1;
  Mat matrix_ = Mat::Zero(1, 1);
};

/// Superoperator of f ⊗ g with composite indices ordered (f major, g minor).
BlockMap tensor(const BlockMap& f, const BlockMap& g);

class Process {
 public:
  Process() : Process(SystemType(), SystemType()) {}
  /// The zero process dom → cod.
  Process(SystemType dom, SystemType cod);
  Process(SystemType dom, SystemType cod, std::vector<std::vector<BlockMap>> grid);

  const SystemType& dom() const { return dom_; }
  const SystemType& cod() const { return cod_; }

  const BlockMap& cell(std::size_t in_block, std::size_t out_block) const {
    return grid_[in_block][out_block];
  }
  BlockMap& cell(std::size_t in_block, std::size_t out_block) { return grid_[in_block][out_block]; }
  const std::vector<std::vector<BlockMap>>& grid() const { return grid_; }

  /// Apply to a block-diagonal input given as one matrix per input block.
  std::vector<Mat> apply(std::span<const Mat> input) const;

 private:
  SystemType dom_;
  SystemType cod_;
  std::vector<std::vector<BlockMap>> grid_;
};

// Construction --------------------------------------------------------------

Process identity(const SystemType& a);
Process scalar(double value);
Process swap(const SystemType& a, const SystemType& b);
/// Per-block trace functional A → I.
Process discard(const SystemType& a);
/// dagger(discard(a)): the unnormalised identity state I → A.
Process maxmix(const SystemType& a);
/// ⊕_k Σ_ij |ii><jj| as a state of A⊗A, supported on the (k,k) blocks.
Process cup(const SystemType& a);
Process cap(const SystemType& a);

/// Process between single-block systems from Kraus operators (each out×in).
Process kraus_process(std::span<const Mat> kraus);
Process unitary_conjugation(const Mat& u);

Process state(const SystemType& a, std::span<const Mat> blocks);
Process effect(const SystemType& a, std::span<const Mat> blocks);
/// Block matrices of a state (dom must be trivial).
std::vector<Mat> state_blocks(const Process& s);
/// Hermitian matrices E_k with e(rho) = Σ_k tr(E_k rho_k) (cod must be trivial).
std::vector<Mat> effect_blocks(const Process& e);

// Composition ----------------------------------------------------------------

/// g ∘ f; requires cod(f) == dom(g).
Process compose_seq(const Process& g, const Process& f);
Process compose_par(const Process& f, const Process& g);
/// Hermitian adjoint: every cell conjugate-transposed, grid transposed.
Process dagger(const Process& f);
Process add(const Process& f, const Process& g);
Process scale(const Process& f, double c);

/// Bend both wires of f: A → B into its transpose B → A using cups and caps.
Process transpose_via_cups(const Process& f);

// Predicates -----------------------------------------------------------------

/// Largest entrywise |f - g| over the grid; throws on signature mismatch.
double max_abs_diff(const Process& f, const Process& g);
bool approx_eq(const Process& f, const Process& g, double tol = kDefaultTol);
/// Smallest eigenvalue over all block Choi matrices.
double min_choi_eigenvalue(const Process& f);
bool is_cp(const Process& f, double tol = kDefaultTol);
/// Residual of discard ∘ f = discard.
double causality_residual(const Process& f);
bool is_causal(const Process& f, double tol = kDefaultTol);

/// The real value of a scalar process; throws if dom/cod are not trivial or
/// the imaginary part exceeds tol.
double scalar_value(const Process& s, double tol = kDefaultTol);

std::string describe(const Process& f);

}  // namespace ptv
