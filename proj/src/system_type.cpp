#include "ptv/system_type.hpp"

#include <functional>
#include <numeric>
#include <sstream>

#include "ptv/error.hpp"

namespace ptv {

SystemType::SystemType(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DimensionError("system type needs at least one block");
  for (int d : blocks_)
    if (d < 1) throw DimensionError("block dimensions must be >= 1");
}

SystemType SystemType::quantum(int n) { return SystemType({n}); }

SystemType SystemType::classical(int n) {
  if (n < 1) throw DimensionError("classical system needs n >= 1");
  return SystemType(std::vector<int>(static_cast<std::size_t>(n), 1));
}

int SystemType::total_dim() const { return std::accumulate(blocks_.begin(), blocks_.end(), 0); }

int SystemType::algebra_dim() const {
  int s = 0;
  for (int d : blocks_) s += d * d;
  return s;
}

bool SystemType::is_classical() const {
  for (int d : blocks_)
    if (d != 1) return false;
  return true;
}

std::string SystemType::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < blocks_.size(); ++k) os << (k ? "," : "") << blocks_[k];
  os << ']';
  return os.str();
}

SystemType tensor(const SystemType& a, const SystemType& b) {
  std::vector<int> out;
  out.reserve(a.num_blocks() * b.num_blocks());
  for (int x : a.blocks())
    for (int y : b.blocks()) out.push_back(x * y);
  return SystemType(std::move(out));
}

SystemType infer_right_factor(const SystemType& a, const SystemType& ab) {
  if (ab.num_blocks() % a.num_blocks() != 0)
    throw DimensionError("cannot split " + ab.to_string() + " as " + a.to_string() + " ⊗ B");
  const std::size_t nb = ab.num_blocks() / a.num_blocks();
  std::vector<int> b;
  for (std::size_t j = 0; j < nb; ++j) {
    if (ab.block(j) % a.block(0) != 0)
      throw DimensionError("cannot split " + ab.to_string() + " as " + a.to_string() + " ⊗ B");
    b.push_back(ab.block(j) / a.block(0));
  }
  SystemType result(b);
  if (tensor(a, result) != ab)
    throw DimensionError("cannot split " + ab.to_string() + " as " + a.to_string() + " ⊗ B");
  return result;
}

std::vector<SystemType> enumerate_system_types(int max_total, int max_blocks) {
  std::vector<SystemType> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int remaining) {
    if (!cur.empty()) out.emplace_back(cur);
    if (max_blocks > 0 && static_cast<int>(cur.size()) >= max_blocks) return;
    for (int d = 1; d <= remaining; ++d) {
      cur.push_back(d);
      rec(remaining - d);
      cur.pop_back();
    }
  };
  rec(max_total);
  return out;
}

}  // namespace ptv
