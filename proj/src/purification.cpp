#include "ptv/purification.hpp"

#include <Eigen/SVD>

#include "ptv/error.hpp"
#include "ptv/leak.hpp"

namespace ptv {

namespace {

constexpr double kKrausCutoff = 1e-13;

/// The single Kraus operator of a single-block process of Choi rank ≤ 1.
Mat single_kraus(const BlockMap& c) {
  const int n = c.in_dim(), m = c.out_dim();
  const auto e = eigh(c.choi());
  Mat k = Mat::Zero(m, n);
  if (e.values.size() == 0 || e.values(0) <= 0.0) return k;
  const double s = std::sqrt(e.values(0));
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i) k(a, i) = s * e.vectors(a * n + i, 0);
  return k;
}

/// Kraus operators of a CP block map, largest first.
std::vector<Mat> kraus_operators(const BlockMap& c) {
  const int n = c.in_dim(), m = c.out_dim();
  const auto e = eigh(c.choi());
  std::vector<Mat> out;
  const double top = e.values.size() ? e.values(0) : 0.0;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    if (top <= 0.0 || e.values(k) <= kKrausCutoff * top) break;
    const double s = std::sqrt(e.values(k));
    Mat kk(m, n);
    for (int a = 0; a < m; ++a)
      for (int i = 0; i < n; ++i) kk(a, i) = s * e.vectors(a * n + i, k);
    out.push_back(std::move(kk));
  }
  return out;
}

/// W[(a*r + k), i] = K_k[a, i]: the isometry-like stacking into B ⊗ C.
Mat stack(const std::vector<Mat>& ks, int m, int n, int r) {
  Mat w = Mat::Zero(m * r, n);
  for (std::size_t k = 0; k < ks.size(); ++k)
    for (int a = 0; a < m; ++a) w.row(a * r + static_cast<int>(k)) = ks[k].row(a);
  return w;
}

void require_cp(const Process& f, double tol) {
  const double e = min_choi_eigenvalue(f);
  if (e < -tol) throw PreconditionError("process is not completely positive (Choi eigenvalue " + std::to_string(e) + ")");
}

/// Single-block dilation W of one cell, with environment dimension env_dim.
Mat cell_dilation(const BlockMap& c, int env_dim) {
  auto ks = kraus_operators(c);
  if (static_cast<int>(ks.size()) > env_dim) throw PreconditionError("environment too small for Kraus rank");
  return stack(ks, c.out_dim(), c.in_dim(), env_dim);
}

}  // namespace

StandardPurification standard_purification(const Process& f, std::optional<std::uint64_t> seed, double tol) {
  if (!f.dom().is_single_block() || !f.cod().is_single_block())
    throw PreconditionError("standard purification needs single-block systems, got " + describe(f));
  require_cp(f, tol);
  const BlockMap& c = f.cell(0, 0);
  const int n = c.in_dim(), m = c.out_dim();
  auto ks = kraus_operators(c);
  if (ks.empty()) ks.push_back(Mat::Zero(m, n));
  const int r = static_cast<int>(ks.size());
  if (seed) {
    Rng rng(*seed);
    const Mat u = random_unitary(r, rng);
    std::vector<Mat> rotated(r, Mat::Zero(m, n));
    for (int k = 0; k < r; ++k)
      for (int l = 0; l < r; ++l) rotated[k] += u(k, l) * ks[l];
    ks = std::move(rotated);
  }
  const SystemType env = SystemType::quantum(r);
  const Mat w = stack(ks, m, n, r);
  Process dil(f.dom(), tensor(f.cod(), env));
  dil.cell(0, 0) = BlockMap::from_kraus(w);
  return StandardPurification{f, std::move(dil), env};
}

StandardPurification pad_environment(const StandardPurification& p, int env_dim) {
  const int r = p.environment.total_dim();
  if (!p.environment.is_single_block() || env_dim < r)
    throw PreconditionError("cannot pad environment " + p.environment.to_string() + " to " + std::to_string(env_dim));
  const Mat w = single_kraus(p.dilation.cell(0, 0));
  const int n = p.f.dom().block(0), m = p.f.cod().block(0);
  Mat padded = Mat::Zero(m * env_dim, n);
  for (int a = 0; a < m; ++a) padded.block(a * env_dim, 0, r, n) = w.block(a * r, 0, r, n);
  const SystemType env = SystemType::quantum(env_dim);
  Process dil(p.f.dom(), tensor(p.f.cod(), env));
  dil.cell(0, 0) = BlockMap::from_kraus(padded);
  return StandardPurification{p.f, std::move(dil), env};
}

SymmetricPurification symmetric_purification(const Process& f, double tol) {
  require_cp(f, tol);
  const SystemType& a = f.dom();
  const SystemType& b = f.cod();
  Process big(tensor(a, b), tensor(b, a));
  for (std::size_t i = 0; i < a.num_blocks(); ++i)
    for (std::size_t j = 0; j < b.num_blocks(); ++j) {
      const int n = a.block(i), m = b.block(j);
      // W: n → m ⊗ n ⊗ m; capping its last factor against the input m gives
      // V[(b, a), (i, y)] = W[(b, a, y), i].
      const Mat w = cell_dilation(f.cell(i, j), n * m);
      Mat v(m * n, n * m);
      for (int bb = 0; bb < m; ++bb)
        for (int aa = 0; aa < n; ++aa)
          for (int ii = 0; ii < n; ++ii)
            for (int y = 0; y < m; ++y) v(bb * n + aa, ii * m + y) = w(bb * n * m + aa * m + y, ii);
      big.cell(tensor_block_index(b, i, j), tensor_block_index(a, j, i)) = BlockMap::from_kraus(v);
    }
  return SymmetricPurification{f, std::move(big)};
}

PurificationReport verify_standard_purification(const Process& f, const Process& dilation,
                                                const SystemType& environment, double tol) {
  PurificationReport r;
  if (dilation.dom() != f.dom() || dilation.cod() != tensor(f.cod(), environment))
    throw DimensionError("dilation " + describe(dilation) + " does not fit " + describe(f));
  const Process recovered = compose_seq(compose_par(identity(f.cod()), discard(environment)), dilation);
  r.residual = max_abs_diff(recovered, f);
  r.pure = is_pure(dilation, tol);
  r.ok = r.pure && r.residual <= tol;
  return r;
}

PurificationReport verify_symmetric_purification(const Process& f, const Process& dilation, double tol) {
  PurificationReport r;
  const SystemType& a = f.dom();
  const SystemType& b = f.cod();
  if (dilation.dom() != tensor(a, b) || dilation.cod() != tensor(b, a))
    throw DimensionError("dilation " + describe(dilation) + " does not fit " + describe(f));
  const Process recovered = compose_seq(compose_par(identity(b), discard(a)),
                                        compose_seq(dilation, compose_par(identity(a), maxmix(b))));
  r.residual = max_abs_diff(recovered, f);
  r.pure = is_pure(dilation, tol);
  r.ok = r.pure && r.residual <= tol;
  return r;
}

Connector essential_uniqueness_connector(const StandardPurification& f, const StandardPurification& g, double tol) {
  if (f.environment != g.environment)
    throw PreconditionError("environments differ: " + f.environment.to_string() + " vs " + g.environment.to_string());
  if (!f.environment.is_single_block()) throw PreconditionError("environment must be a single block");
  const Process& x = f.dilation;
  const Process& y = g.dilation;
  if (x.dom() != y.dom() || x.cod() != y.cod()) throw DimensionError("purifications have different signatures");
  const SystemType& cod = f.f.cod();
  const Process trace_env = compose_par(identity(cod), discard(f.environment));
  const double same = max_abs_diff(compose_seq(trace_env, x), compose_seq(trace_env, y));
  if (same > tol) throw PreconditionError("the two dilations purify different processes (differ by " + std::to_string(same) + ")");

  const int n = x.dom().block(0), m = cod.block(0), r = f.environment.block(0);
  const Mat wx = single_kraus(x.cell(0, 0)), wy = single_kraus(y.cell(0, 0));
  // Reshape W[(a,k), i] to T[(a,i), k] so the environment index is the column.
  auto reshape = [&](const Mat& w) {
    Mat t(m * n, r);
    for (int a = 0; a < m; ++a)
      for (int k = 0; k < r; ++k)
        for (int i = 0; i < n; ++i) t(a * n + i, k) = w(a * r + k, i);
    return t;
  };
  const Mat tx = reshape(wx), ty = reshape(wy);
  Eigen::JacobiSVD<Mat> svd(tx.adjoint() * ty, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat xu = svd.matrixU() * svd.matrixV().adjoint();
  Connector c;
  c.unitary = xu.transpose();
  c.map = unitary_conjugation(c.unitary);
  c.residual = max_abs_diff(compose_seq(compose_par(identity(cod), c.map), x), y);
  if (c.residual > tol) throw PreconditionError("no unitary connector within tolerance (residual " + std::to_string(c.residual) + ")");
  return c;
}

bool is_bicausal(const Process& r, double tol) { return is_causal(r, tol) && is_causal(dagger(r), tol); }

StandardPurification derive_standard_from_symmetric(const SymmetricPurification& s) {
  const SystemType& a = s.f.dom();
  const SystemType& b = s.f.cod();
  if (!a.is_single_block() || !b.is_single_block())
    throw PreconditionError("cup is not pure on multi-block systems; cannot derive a standard purification for " +
                            describe(s.f));
  const Process dil = compose_seq(compose_par(s.dilation, identity(b)), compose_par(identity(a), cup(b)));
  return StandardPurification{s.f, dil, tensor(a, b)};
}

}  // namespace ptv
