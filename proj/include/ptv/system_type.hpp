#pragma once

#include <compare>
#include <string>
#include <vector>

namespace ptv {

/// A finite-dimensional C*-algebra ⊕_k M(C^{d_k}), stored as its ordered block
/// dimensions. Classical(n) is n blocks of size 1, a fully quantum system has a
/// single block, and the trivial system is [1].
class SystemType {
 public:
  SystemType() : blocks_{1} {}
  explicit SystemType(std::vector<int> blocks);

  static SystemType trivial() { return SystemType(); }
  static SystemType quantum(int n);
  static SystemType classical(int n);

  const std::vector<int>& blocks() const { return blocks_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  int block(std::size_t k) const { return blocks_.at(k); }

  /// Σ d_k: Hilbert-space dimension of the embedding, equal to the rank of
  /// the state cone.
  int total_dim() const;
  /// Σ d_k²: real dimension of the self-adjoint part.
  int algebra_dim() const;

  bool is_trivial() const { return blocks_.size() == 1 && blocks_[0] == 1; }
  bool is_single_block() const { return blocks_.size() == 1; }
  bool is_classical() const;

  std::string to_string() const;

  friend bool operator==(const SystemType&, const SystemType&) = default;
  friend auto operator<=>(const SystemType&, const SystemType&) = default;

 private:
  std::vector<int> blocks_;
};

/// Blocks of A⊗B in lexicographic order: [a·b for a in A, for b in B].
SystemType tensor(const SystemType& a, const SystemType& b);

/// Index of block (i, j) of A⊗B.
inline std::size_t tensor_block_index(const SystemType& b, std::size_t i, std::size_t j) {
  return i * b.num_blocks() + j;
}

/// Recover B from A and A⊗B; throws DimensionError when no B fits.
SystemType infer_right_factor(const SystemType& a, const SystemType& ab);

/// Every block list with total dimension ≤ max_total and at most max_blocks
/// blocks (max_blocks ≤ 0 means unbounded), in a fixed enumeration order.
std::vector<SystemType> enumerate_system_types(int max_total, int max_blocks = 0);

}  // namespace ptv
