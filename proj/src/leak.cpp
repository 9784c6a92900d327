#include "ptv/leak.hpp"

#include "ptv/error.hpp"
#include "ptv/sampling.hpp"

namespace ptv {

namespace {

Mat partial_trace_first(const Mat& m, int da, int db) {
  Mat out = Mat::Zero(db, db);
  for (int x = 0; x < da; ++x) out += m.block(x * db, x * db, db, db);
  return out;
}

double leak_residual(const Process& l, const SystemType& b) {
  const Process marginal = compose_seq(compose_par(identity(l.dom()), discard(b)), l);
  return max_abs_diff(marginal, identity(l.dom()));
}

}  // namespace

bool is_leak(const Process& l, double tol) {
  const SystemType b = infer_right_factor(l.dom(), l.cod());
  return leak_residual(l, b) <= tol;
}

bool is_leak(const Process& l, const SystemType& a, double tol) {
  if (l.dom() != a) throw DimensionError("expected a process out of " + a.to_string() + ", got " + describe(l));
  return is_leak(l, tol);
}

Process normal_form_leak(const SystemType& a, const SystemType& b, const std::vector<std::vector<Mat>>& sigma) {
  if (sigma.size() != a.num_blocks()) throw DimensionError("need one branch state per block of " + a.to_string());
  Process l(a, tensor(a, b));
  for (std::size_t i = 0; i < a.num_blocks(); ++i) {
    if (sigma[i].size() != b.num_blocks()) throw DimensionError("branch state has the wrong number of blocks");
    const Mat one = Mat::Identity(1, 1);
    for (std::size_t j = 0; j < b.num_blocks(); ++j) {
      const Mat& s = sigma[i][j];
      if (s.rows() != b.block(j) || s.cols() != b.block(j)) throw DimensionError("branch state block has the wrong size");
      const BlockMap insert(1, b.block(j), vectorize(s));
      l.cell(i, tensor_block_index(b, i, j)) = tensor(BlockMap::identity(a.block(i)), insert);
    }
  }
  return l;
}

Process which_branch_leak(const SystemType& a) {
  const int k = static_cast<int>(a.num_blocks());
  std::vector<std::vector<Mat>> sigma(k, std::vector<Mat>(k, Mat::Zero(1, 1)));
  for (int i = 0; i < k; ++i) sigma[i][i](0, 0) = 1.0;
  return normal_form_leak(a, SystemType::classical(k), sigma);
}

Process random_leak(const SystemType& a, const SystemType& b, Rng& rng) {
  std::vector<std::vector<Mat>> sigma;
  for (std::size_t i = 0; i < a.num_blocks(); ++i) sigma.push_back(random_causal_state(b, rng));
  return normal_form_leak(a, b, sigma);
}

LeakClassification classify_leak(const Process& l, double tol) {
  const SystemType& a = l.dom();
  const SystemType b = infer_right_factor(a, l.cod());
  const double lr = leak_residual(l, b);
  if (lr > tol) throw PreconditionError("not a leak: marginal differs from identity by " + std::to_string(lr));

  LeakClassification c{a, b, {}, false, 0.0, 0.0};
  for (std::size_t i = 0; i < a.num_blocks(); ++i) {
    const int da = a.block(i);
    const Mat probe = basis_projector(da, 0);
    std::vector<Mat> s;
    for (std::size_t j = 0; j < b.num_blocks(); ++j) {
      const Mat out = l.cell(i, tensor_block_index(b, i, j)).apply(probe);
      s.push_back(partial_trace_first(out, da, b.block(j)));
    }
    c.sigma.push_back(std::move(s));
    for (std::size_t i2 = 0; i2 < a.num_blocks(); ++i2)
      if (i2 != i)
        for (std::size_t j = 0; j < b.num_blocks(); ++j)
          c.cross_block = std::max(c.cross_block, max_abs(l.cell(i, tensor_block_index(b, i2, j)).matrix()));
  }
  c.residual = max_abs_diff(l, normal_form_leak(a, b, c.sigma));
  if (c.residual > tol)
    throw PreconditionError("leak does not match its block normal form (residual " + std::to_string(c.residual) + ")");

  c.trivial = true;
  for (std::size_t i = 1; i < c.sigma.size(); ++i)
    for (std::size_t j = 0; j < b.num_blocks(); ++j) c.trivial = c.trivial && max_abs(c.sigma[i][j] - c.sigma[0][j]) <= tol;
  return c;
}

bool is_pure(const Process& f, double tol) {
  const std::size_t rows = f.dom().num_blocks(), cols = f.cod().num_blocks();
  std::vector<int> per_row(rows, 0), per_col(cols, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const BlockMap& c = f.cell(i, j);
      if (c.is_zero(tol)) continue;
      if (++per_row[i] > 1 || ++per_col[j] > 1) return false;
      if (numerical_rank(c.choi()) > 1) return false;
    }
  return true;
}

bool cup_is_pure(const SystemType& a, double tol) { return is_pure(cup(a), tol); }

bool has_nontrivial_leak(const SystemType& a, double tol) { return !classify_leak(which_branch_leak(a), tol).trivial; }

Process leak_from_cup_dilation(const Process& s, const SystemType& a, double tol) {
  const SystemType aa = tensor(a, a);
  if (!s.dom().is_trivial()) throw DimensionError("a cup dilation is a state, got " + describe(s));
  const SystemType b = infer_right_factor(aa, s.cod());
  const double r = max_abs_diff(compose_seq(compose_par(identity(aa), discard(b)), s), cup(a));
  if (r > tol) throw PreconditionError("not a dilation of the cup (residual " + std::to_string(r) + ")");
  const Process bent = compose_par(identity(a), s);
  return compose_seq(compose_par(cap(a), identity(tensor(a, b))), bent);
}

Process cup_dilation_from_leak(const Process& l, double tol) {
  if (!is_leak(l, tol)) throw PreconditionError("input is not a leak: " + describe(l));
  const SystemType& a = l.dom();
  return compose_seq(compose_par(identity(a), l), cup(a));
}

}  // namespace ptv
