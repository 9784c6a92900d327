#include "ptv/process.hpp"

#include <cmath>
#include <sstream>

#include "ptv/error.hpp"

namespace ptv {

// BlockMap -------------------------------------------------------------------

BlockMap::BlockMap(int in_dim, int out_dim)
    : in_dim_(in_dim), out_dim_(out_dim), matrix_(Mat::Zero(out_dim * out_dim, in_dim * in_dim)) {}

BlockMap::BlockMap(int in_dim, int out_dim, Mat matrix)
    : in_dim_(in_dim), out_dim_(out_dim), matrix_(std::move(matrix)) {
  if (matrix_.rows() != out_dim * out_dim || matrix_.cols() != in_dim * in_dim)
    throw DimensionError("superoperator shape does not match block dimensions");
}

BlockMap BlockMap::identity(int d) { return BlockMap(d, d, Mat::Identity(d * d, d * d)); }

BlockMap BlockMap::from_kraus(const Mat& k) {
  return BlockMap(static_cast<int>(k.cols()), static_cast<int>(k.rows()), kron(k, k.conjugate()));
}

BlockMap BlockMap::from_kraus(std::span<const Mat> ks, int in_dim, int out_dim) {
  BlockMap out(in_dim, out_dim);
  for (const auto& k : ks) {
    if (k.rows() != out_dim || k.cols() != in_dim) throw DimensionError("Kraus operator shape mismatch");
    out.matrix_ += kron(k, k.conjugate());
  }
  return out;
}

BlockMap BlockMap::from_choi(const Mat& choi, int in_dim, int out_dim) {
  const int n = in_dim, m = out_dim;
  if (choi.rows() != m * n || choi.cols() != m * n) throw DimensionError("Choi matrix shape mismatch");
  Mat s(m * m, n * n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(a * m + b, i * n + j) = choi(a * n + i, b * n + j);
  return BlockMap(n, m, std::move(s));
}

BlockMap BlockMap::transpose(int d) {
  BlockMap out(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out.matrix_(a * d + b, b * d + a) = 1.0;
  return out;
}

Mat BlockMap::apply(const Mat& rho) const {
  if (rho.rows() != in_dim_ || rho.cols() != in_dim_) throw DimensionError("input block has wrong size");
  return unvectorize(matrix_ * vectorize(rho), out_dim_, out_dim_);
}

Mat BlockMap::choi() const {
  const int n = in_dim_, m = out_dim_;
  Mat j(m * n, m * n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) j(a * n + i, b * n + k) = matrix_(a * m + b, i * n + k);
  return j;
}

BlockMap tensor(const BlockMap& f, const BlockMap& g) {
  const int n1 = f.in_dim(), m1 = f.out_dim(), n2 = g.in_dim(), m2 = g.out_dim();
  const int n = n1 * n2, m = m1 * m2;
  Mat out = Mat::Zero(m * m, n * n);
  const Mat& fm = f.matrix();
  const Mat& gm = g.matrix();
  // Precompute composite row/column positions of each (f index, g index) pair.
  auto pos = [](int x1, int y1, int x2, int y2, int d2, int d) { return (x1 * d2 + x2) * d + (y1 * d2 + y2); };
  for (int c1 = 0; c1 < n1; ++c1)
    for (int d1 = 0; d1 < n1; ++d1) {
      const int fc = c1 * n1 + d1;
      for (int a1 = 0; a1 < m1; ++a1)
        for (int b1 = 0; b1 < m1; ++b1) {
          const cplx fv = fm(a1 * m1 + b1, fc);
          if (fv == cplx(0.0)) continue;
          for (int c2 = 0; c2 < n2; ++c2)
            for (int d2 = 0; d2 < n2; ++d2) {
              const int col = pos(c1, d1, c2, d2, n2, n);
              const int gc = c2 * n2 + d2;
              for (int a2 = 0; a2 < m2; ++a2)
                for (int b2 = 0; b2 < m2; ++b2) {
                  const cplx gv = gm(a2 * m2 + b2, gc);
                  if (gv == cplx(0.0)) continue;
                  out(pos(a1, b1, a2, b2, m2, m), col) = fv * gv;
                }
            }
        }
    }
  return BlockMap(n, m, std::move(out));
}

// Process --------------------------------------------------------------------

Process::Process(SystemType dom, SystemType cod) : dom_(std::move(dom)), cod_(std::move(cod)) {
  grid_.resize(dom_.num_blocks());
  for (std::size_t i = 0; i < dom_.num_blocks(); ++i)
    for (std::size_t j = 0; j < cod_.num_blocks(); ++j) grid_[i].emplace_back(dom_.block(i), cod_.block(j));
}

Process::Process(SystemType dom, SystemType cod, std::vector<std::vector<BlockMap>> grid)
    : dom_(std::move(dom)), cod_(std::move(cod)), grid_(std::move(grid)) {
  if (grid_.size() != dom_.num_blocks()) throw DimensionError("grid rows must match input blocks");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (grid_[i].size() != cod_.num_blocks()) throw DimensionError("grid columns must match output blocks");
    for (std::size_t j = 0; j < grid_[i].size(); ++j)
      if (grid_[i][j].in_dim() != dom_.block(i) || grid_[i][j].out_dim() != cod_.block(j))
        throw DimensionError("grid cell dimensions do not match block dimensions");
  }
}

std::vector<Mat> Process::apply(std::span<const Mat> input) const {
  if (input.size() != dom_.num_blocks()) throw DimensionError("input has wrong number of blocks");
  std::vector<Mat> out;
  for (std::size_t j = 0; j < cod_.num_blocks(); ++j) out.push_back(Mat::Zero(cod_.block(j), cod_.block(j)));
  for (std::size_t i = 0; i < dom_.num_blocks(); ++i)
    for (std::size_t j = 0; j < cod_.num_blocks(); ++j) out[j] += grid_[i][j].apply(input[i]);
  return out;
}

Process identity(const SystemType& a) {
  Process p(a, a);
  for (std::size_t k = 0; k < a.num_blocks(); ++k) p.cell(k, k) = BlockMap::identity(a.block(k));
  return p;
}

Process scalar(double value) {
  Process p;
  p.cell(0, 0).matrix()(0, 0) = value;
  return p;
}

Process swap(const SystemType& a, const SystemType& b) {
  const SystemType ab = tensor(a, b), ba = tensor(b, a);
  Process p(ab, ba);
  for (std::size_t i = 0; i < a.num_blocks(); ++i)
    for (std::size_t j = 0; j < b.num_blocks(); ++j) {
      const int da = a.block(i), db = b.block(j);
      Mat s = Mat::Zero(db * da, da * db);
      for (int x = 0; x < da; ++x)
        for (int y = 0; y < db; ++y) s(y * da + x, x * db + y) = 1.0;
      p.cell(tensor_block_index(b, i, j), tensor_block_index(a, j, i)) = BlockMap::from_kraus(s);
    }
  return p;
}

Process discard(const SystemType& a) {
  Process p(a, SystemType::trivial());
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    const int d = a.block(k);
    Mat& row = p.cell(k, 0).matrix();
    for (int x = 0; x < d; ++x) row(0, x * d + x) = 1.0;
  }
  return p;
}

Process maxmix(const SystemType& a) { return dagger(discard(a)); }

Process cup(const SystemType& a) {
  const SystemType aa = tensor(a, a);
  Process p(SystemType::trivial(), aa);
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    const int d = a.block(k);
    Mat phi = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) phi(i * d + i, j * d + j) = 1.0;
    p.cell(0, tensor_block_index(a, k, k)) = BlockMap(1, d * d, vectorize(phi));
  }
  return p;
}

Process cap(const SystemType& a) { return dagger(cup(a)); }

Process kraus_process(std::span<const Mat> kraus) {
  if (kraus.empty()) throw DimensionError("need at least one Kraus operator");
  const int in = static_cast<int>(kraus[0].cols()), out = static_cast<int>(kraus[0].rows());
  Process p(SystemType::quantum(in), SystemType::quantum(out));
  p.cell(0, 0) = BlockMap::from_kraus(kraus, in, out);
  return p;
}

Process unitary_conjugation(const Mat& u) {
  const Mat ks[] = {u};
  return kraus_process(ks);
}

Process state(const SystemType& a, std::span<const Mat> blocks) {
  if (blocks.size() != a.num_blocks()) throw DimensionError("state has wrong number of blocks");
  Process p(SystemType::trivial(), a);
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    if (blocks[k].rows() != a.block(k) || blocks[k].cols() != a.block(k))
      throw DimensionError("state block has wrong size");
    p.cell(0, k) = BlockMap(1, a.block(k), vectorize(blocks[k]));
  }
  return p;
}

Process effect(const SystemType& a, std::span<const Mat> blocks) {
  if (blocks.size() != a.num_blocks()) throw DimensionError("effect has wrong number of blocks");
  Process p(a, SystemType::trivial());
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    if (blocks[k].rows() != a.block(k) || blocks[k].cols() != a.block(k))
      throw DimensionError("effect block has wrong size");
    p.cell(k, 0) = BlockMap(a.block(k), 1, vectorize(blocks[k].transpose()).transpose());
  }
  return p;
}

std::vector<Mat> state_blocks(const Process& s) {
  if (!s.dom().is_trivial()) throw DimensionError("not a state: domain is " + s.dom().to_string());
  std::vector<Mat> out;
  for (std::size_t k = 0; k < s.cod().num_blocks(); ++k) {
    const int d = s.cod().block(k);
    out.push_back(unvectorize(s.cell(0, k).matrix().col(0), d, d));
  }
  return out;
}

std::vector<Mat> effect_blocks(const Process& e) {
  if (!e.cod().is_trivial()) throw DimensionError("not an effect: codomain is " + e.cod().to_string());
  std::vector<Mat> out;
  for (std::size_t k = 0; k < e.dom().num_blocks(); ++k) {
    const int d = e.dom().block(k);
    out.push_back(unvectorize(e.cell(k, 0).matrix().row(0).transpose(), d, d).transpose());
  }
  return out;
}

Process compose_seq(const Process& g, const Process& f) {
  if (f.cod() != g.dom())
    throw DimensionError("cannot compose: codomain " + f.cod().to_string() + " vs domain " + g.dom().to_string());
  Process out(f.dom(), g.cod());
  for (std::size_t i = 0; i < f.dom().num_blocks(); ++i)
    for (std::size_t k = 0; k < g.cod().num_blocks(); ++k) {
      Mat& acc = out.cell(i, k).matrix();
      for (std::size_t j = 0; j < f.cod().num_blocks(); ++j) acc.noalias() += g.cell(j, k).matrix() * f.cell(i, j).matrix();
    }
  return out;
}

Process compose_par(const Process& f, const Process& g) {
  const SystemType dom = tensor(f.dom(), g.dom()), cod = tensor(f.cod(), g.cod());
  std::vector<std::vector<BlockMap>> grid(dom.num_blocks(), std::vector<BlockMap>(cod.num_blocks()));
  for (std::size_t i1 = 0; i1 < f.dom().num_blocks(); ++i1)
    for (std::size_t i2 = 0; i2 < g.dom().num_blocks(); ++i2)
      for (std::size_t j1 = 0; j1 < f.cod().num_blocks(); ++j1)
        for (std::size_t j2 = 0; j2 < g.cod().num_blocks(); ++j2)
          grid[tensor_block_index(g.dom(), i1, i2)][tensor_block_index(g.cod(), j1, j2)] =
              tensor(f.cell(i1, j1), g.cell(i2, j2));
  return Process(dom, cod, std::move(grid));
}

Process dagger(const Process& f) {
  Process out(f.cod(), f.dom());
  for (std::size_t i = 0; i < f.dom().num_blocks(); ++i)
    for (std::size_t j = 0; j < f.cod().num_blocks(); ++j) out.cell(j, i).matrix() = f.cell(i, j).matrix().adjoint();
  return out;
}

Process add(const Process& f, const Process& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod()) throw DimensionError("cannot add processes of different type");
  Process out = f;
  for (std::size_t i = 0; i < f.dom().num_blocks(); ++i)
    for (std::size_t j = 0; j < f.cod().num_blocks(); ++j) out.cell(i, j).matrix() += g.cell(i, j).matrix();
  return out;
}

Process scale(const Process& f, double c) {
  Process out = f;
  for (std::size_t i = 0; i < f.dom().num_blocks(); ++i)
    for (std::size_t j = 0; j < f.cod().num_blocks(); ++j) out.cell(i, j).matrix() *= c;
  return out;
}

Process transpose_via_cups(const Process& f) {
  const SystemType& a = f.dom();
  const SystemType& b = f.cod();
  const Process bend_in = compose_par(identity(b), cup(a));
  const Process middle = compose_par(compose_par(identity(b), f), identity(a));
  const Process bend_out = compose_par(cap(b), identity(a));
  return compose_seq(bend_out, compose_seq(middle, bend_in));
}

double max_abs_diff(const Process& f, const Process& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod())
    throw DimensionError("cannot compare " + describe(f) + " with " + describe(g));
  double m = 0.0;
  for (std::size_t i = 0; i < f.dom().num_blocks(); ++i)
    for (std::size_t j = 0; j < f.cod().num_blocks(); ++j)
      m = std::max(m, max_abs(f.cell(i, j).matrix() - g.cell(i, j).matrix()));
  return m;
}

bool approx_eq(const Process& f, const Process& g, double tol) { return max_abs_diff(f, g) <= tol; }

double min_choi_eigenvalue(const Process& f) {
  double m = 0.0;
  bool first = true;
  for (const auto& row : f.grid())
    for (const auto& c : row) {
      const double e = min_eigenvalue(c.choi());
      m = first ? e : std::min(m, e);
      first = false;
    }
  return m;
}

bool is_cp(const Process& f, double tol) { return min_choi_eigenvalue(f) >= -tol; }

double causality_residual(const Process& f) {
  return max_abs_diff(compose_seq(discard(f.cod()), f), discard(f.dom()));
}

bool is_causal(const Process& f, double tol) { return causality_residual(f) <= tol; }

double scalar_value(const Process& s, double tol) {
  if (!s.dom().is_trivial() || !s.cod().is_trivial()) throw DimensionError("not a scalar: " + describe(s));
  const cplx v = s.cell(0, 0).matrix()(0, 0);
  if (std::abs(v.imag()) > tol) throw Error("scalar has non-negligible imaginary part");
  return v.real();
}

std::string describe(const Process& f) {
  std::ostringstream os;
  os << f.dom().to_string() << " -> " << f.cod().to_string();
  return os.str();
}

}  // namespace ptv
