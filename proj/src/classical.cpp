#include "ptv/classical.hpp"

#include <cmath>
#include <sstream>

#include "ptv/error.hpp"
#include "ptv/leak.hpp"

namespace ptv {

namespace {

void check_index(int i, int n) {
  if (n < 1) throw DimensionError("classical system needs n >= 1");
  if (i < 0 || i >= n)
    throw DimensionError("classical index " + std::to_string(i) + " out of range for n = " + std::to_string(n));
}

}  // namespace

Process classical_state(int i, int n) {
  check_index(i, n);
  Process p(SystemType::trivial(), SystemType::classical(n));
  p.cell(0, static_cast<std::size_t>(i)).matrix()(0, 0) = 1.0;
  return p;
}

Process classical_effect(int i, int n) { return dagger(classical_state(i, n)); }

Process copier(int n) {
  const SystemType c = SystemType::classical(n);
  Process p(c, tensor(c, c));
  for (int i = 0; i < n; ++i) p.cell(i, tensor_block_index(c, i, i)).matrix()(0, 0) = 1.0;
  return p;
}

Process ones_state(int n) {
  Process p(SystemType::trivial(), SystemType::classical(n));
  for (int i = 0; i < n; ++i) p.cell(0, i).matrix()(0, 0) = 1.0;
  return p;
}

ControlledProcess controlled_process(std::span<const Process> fs) {
  if (fs.empty()) throw DimensionError("controlled process needs at least one branch");
  const SystemType& a = fs[0].dom();
  const SystemType& b = fs[0].cod();
  for (const auto& f : fs)
    if (f.dom() != a || f.cod() != b)
      throw DimensionError("branches of a controlled process must share their type; got " + describe(fs[0]) +
                           " and " + describe(f));
  const int n = static_cast<int>(fs.size());
  Process big(tensor(SystemType::classical(n), a), b);
  for (int i = 0; i < n; ++i)
    for (std::size_t x = 0; x < a.num_blocks(); ++x)
      for (std::size_t y = 0; y < b.num_blocks(); ++y) big.cell(tensor_block_index(a, i, x), y) = fs[i].cell(x, y);
  return ControlledProcess{std::vector<Process>(fs.begin(), fs.end()), std::move(big)};
}

double control_recovery_residual(const ControlledProcess& c) {
  const int n = static_cast<int>(c.branches.size());
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    const Process select = compose_par(classical_state(i, n), identity(c.branches[i].dom()));
    r = std::max(r, max_abs_diff(compose_seq(c.process, select), c.branches[i]));
  }
  return r;
}

Process diagram_sum(std::span<const Process> fs) {
  if (fs.empty()) throw DimensionError("empty sum needs an explicit signature");
  return diagram_sum(fs, fs[0].dom(), fs[0].cod());
}

Process diagram_sum(std::span<const Process> fs, const SystemType& dom, const SystemType& cod) {
  if (fs.empty()) return Process(dom, cod);
  const ControlledProcess c = controlled_process(fs);
  if (fs[0].dom() != dom || fs[0].cod() != cod) throw DimensionError("summands do not match the requested signature");
  const int n = static_cast<int>(fs.size());
  return compose_seq(c.process, compose_par(ones_state(n), identity(dom)));
}

// Tomography -------------------------------------------------------------------

std::vector<Mat> probe_family(int d) {
  std::vector<Mat> out;
  for (int a = 0; a < d; ++a) out.push_back(basis_projector(d, a));
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      Vec plus = Vec::Zero(d), plus_i = Vec::Zero(d);
      plus(a) = 1.0;
      plus(b) = 1.0;
      plus_i(a) = 1.0;
      plus_i(b) = cplx(0, 1);
      out.push_back(plus * plus.adjoint() / 2.0);
      out.push_back(plus_i * plus_i.adjoint() / 2.0);
    }
  return out;
}

std::vector<Probe> probes(std::span<const SystemType> factors) {
  std::vector<Probe> out{Probe{0, Mat::Identity(1, 1)}};
  SystemType acc = SystemType::trivial();
  for (const auto& f : factors) {
    std::vector<Probe> next;
    for (const auto& p : out)
      for (std::size_t k = 0; k < f.num_blocks(); ++k)
        for (const auto& q : probe_family(f.block(k)))
          next.push_back(Probe{tensor_block_index(f, p.block, k), kron(p.op, q)});
    out = std::move(next);
    acc = tensor(acc, f);
  }
  return out;
}

namespace {

SystemType fold(std::span<const SystemType> factors) {
  SystemType acc = SystemType::trivial();
  for (const auto& f : factors) acc = tensor(acc, f);
  return acc;
}

}  // namespace

TomographyFingerprint tomography_fingerprint(const Process& f) {
  const SystemType d[] = {f.dom()};
  const SystemType c[] = {f.cod()};
  return tomography_fingerprint(f, d, c);
}

TomographyFingerprint tomography_fingerprint(const Process& f, std::span<const SystemType> dom_factors,
                                             std::span<const SystemType> cod_factors) {
  if (fold(dom_factors) != f.dom() || fold(cod_factors) != f.cod())
    throw DimensionError("factors do not multiply to " + describe(f));
  const auto states = probes(dom_factors);
  const auto effects = probes(cod_factors);
  TomographyFingerprint fp{f.dom(), f.cod(), states.size(), effects.size(), {}};
  fp.probabilities.reserve(states.size() * effects.size());
  for (const auto& s : states) {
    std::vector<Mat> outputs;
    for (std::size_t j = 0; j < f.cod().num_blocks(); ++j) outputs.push_back(f.cell(s.block, j).apply(s.op));
    for (const auto& e : effects) fp.probabilities.push_back((e.op * outputs[e.block]).trace().real());
  }
  return fp;
}

TomographyFingerprint outer_product(const TomographyFingerprint& f, const TomographyFingerprint& g) {
  TomographyFingerprint out{tensor(f.dom, g.dom), tensor(f.cod, g.cod), f.num_states * g.num_states,
                            f.num_effects * g.num_effects, {}};
  out.probabilities.resize(out.num_states * out.num_effects);
  for (std::size_t s1 = 0; s1 < f.num_states; ++s1)
    for (std::size_t s2 = 0; s2 < g.num_states; ++s2)
      for (std::size_t e1 = 0; e1 < f.num_effects; ++e1)
        for (std::size_t e2 = 0; e2 < g.num_effects; ++e2)
          out.probabilities[(s1 * g.num_states + s2) * out.num_effects + e1 * g.num_effects + e2] =
              f.at(s1, e1) * g.at(s2, e2);
  return out;
}

double max_abs_diff(const TomographyFingerprint& a, const TomographyFingerprint& b) {
  if (a.probabilities.size() != b.probabilities.size()) throw DimensionError("fingerprints have different lengths");
  double m = 0.0;
  for (std::size_t k = 0; k < a.probabilities.size(); ++k)
    m = std::max(m, std::abs(a.probabilities[k] - b.probabilities[k]));
  return m;
}

bool processes_equal_by_tomography(const Process& f, const Process& g, double tol) {
  if (f.dom() != g.dom() || f.cod() != g.cod())
    throw DimensionError("cannot compare " + describe(f) + " with " + describe(g));
  return max_abs_diff(tomography_fingerprint(f), tomography_fingerprint(g)) <= tol;
}

Process reconstruct_from_fingerprint(const TomographyFingerprint& fp) {
  const SystemType& a = fp.dom;
  const SystemType& b = fp.cod;
  Process out(a, b);
  // Offsets of each block's probes inside the state / effect lists.
  std::vector<std::size_t> s_off{0}, e_off{0};
  for (int d : a.blocks()) s_off.push_back(s_off.back() + static_cast<std::size_t>(d * d));
  for (int d : b.blocks()) e_off.push_back(e_off.back() + static_cast<std::size_t>(d * d));
  if (s_off.back() != fp.num_states || e_off.back() != fp.num_effects)
    throw DimensionError("fingerprint does not use the standard probe family");

  for (std::size_t i = 0; i < a.num_blocks(); ++i) {
    const int n = a.block(i);
    const auto states = probe_family(n);
    Mat frame(n * n, n * n);
    for (int s = 0; s < n * n; ++s) frame.col(s) = vectorize(states[s]);
    const Mat frame_inv = frame.fullPivLu().inverse();
    for (std::size_t j = 0; j < b.num_blocks(); ++j) {
      const int m = b.block(j);
      const auto effects = probe_family(m);
      RMat gram(m * m, m * m);
      for (int x = 0; x < m * m; ++x)
        for (int y = 0; y < m * m; ++y) gram(x, y) = (effects[x] * effects[y]).trace().real();
      const Eigen::FullPivLU<RMat> gram_lu(gram);
      Mat images(m * m, n * n);
      for (int s = 0; s < n * n; ++s) {
        RVec p(m * m);
        for (int e = 0; e < m * m; ++e) p(e) = fp.at(s_off[i] + s, e_off[j] + e);
        const RVec coeff = gram_lu.solve(p);
        Mat x = Mat::Zero(m, m);
        for (int e = 0; e < m * m; ++e) x += coeff(e) * effects[e];
        images.col(s) = vectorize(x);
      }
      out.cell(i, j) = BlockMap(n, m, images * frame_inv);
    }
  }
  return out;
}

// Testability ----------------------------------------------------------------

TestablePreparation maximal_testable_preparation(const SystemType& a) {
  const int n = a.total_dim();
  TestablePreparation t{a, {}, Process(SystemType::classical(n), a), Process()};
  int idx = 0;
  for (std::size_t k = 0; k < a.num_blocks(); ++k)
    for (int x = 0; x < a.block(k); ++x, ++idx) {
      std::vector<Mat> blocks;
      for (std::size_t q = 0; q < a.num_blocks(); ++q)
        blocks.push_back(q == k ? basis_projector(a.block(k), x) : Mat::Zero(a.block(q), a.block(q)));
      t.preparation.cell(idx, k) = BlockMap(1, a.block(k), vectorize(blocks[k]));
      t.states.push_back(std::move(blocks));
    }
  t.measurement = dagger(t.preparation);
  return t;
}

std::string SharpDaggerReport::failures() const {
  std::ostringstream os;
  if (!states_pure) os << "prepared states are not pure; ";
  if (!tested_by_dagger) os << "S† does not test S (residual " << test_residual << "); ";
  if (!dagger_causal) os << "S† is not causal (residual " << causal_residual << "); ";
  if (!classical_trivial) os << "dagger is not the transpose on classical processes (residual " << classical_residual
                             << "); ";
  return os.str();
}

SharpDaggerReport verify_sharp_dagger(const TestablePreparation& s, double tol, std::uint64_t seed) {
  SharpDaggerReport r;
  const int n = static_cast<int>(s.states.size());
  const SystemType c = SystemType::classical(n);

  r.states_pure = true;
  for (int i = 0; i < n; ++i)
    r.states_pure = r.states_pure && is_pure(compose_seq(s.preparation, classical_state(i, n)), tol);

  const Process sd = dagger(s.preparation);
  const Process tested = compose_seq(sd, s.preparation);
  r.test_residual = max_abs_diff(tested, identity(c));
  r.tested_by_dagger = r.test_residual <= tol;

  r.causal_residual = causality_residual(sd);
  r.dagger_causal = r.causal_residual <= tol;

  // Classical processes: the test structure S†∘S itself, point states and
  // effects, and a few seeded nonnegative matrices between classical systems.
  std::vector<Process> classical{tested, classical_state(0, n), classical_effect(n - 1, n), copier(n)};
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int m = 1; m <= 3; ++m) {
    Process g(c, SystemType::classical(m));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) g.cell(i, j).matrix()(0, 0) = u(rng);
    classical.push_back(std::move(g));
  }
  for (const auto& g : classical)
    r.classical_residual = std::max(r.classical_residual, max_abs_diff(dagger(g), transpose_via_cups(g)));
  r.classical_trivial = r.classical_residual <= tol;
  return r;
}

UniqueEffectReport unique_causal_effect(const SystemType& a, double tol) {
  // Unknown effect E = Σ_μ c_μ B_μ over a real Hermitian basis; one equation
  // tr(E rho_s) = 1 per probe state (each probe has unit trace).
  std::vector<std::pair<std::size_t, Mat>> basis;
  for (std::size_t k = 0; k < a.num_blocks(); ++k)
    for (auto& m : hermitian_basis(a.block(k))) basis.emplace_back(k, std::move(m));
  std::vector<std::pair<std::size_t, Mat>> states;
  for (std::size_t k = 0; k < a.num_blocks(); ++k)
    for (auto& m : probe_family(a.block(k))) states.emplace_back(k, std::move(m));

  const auto dim = static_cast<Eigen::Index>(basis.size());
  RMat g = RMat::Zero(static_cast<Eigen::Index>(states.size()), dim);
  for (std::size_t s = 0; s < states.size(); ++s)
    for (std::size_t mu = 0; mu < basis.size(); ++mu)
      if (states[s].first == basis[mu].first)
        g(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(mu)) =
            (basis[mu].second * states[s].second).trace().real();
  const RVec ones = RVec::Ones(g.rows());

  Eigen::FullPivLU<RMat> lu(g);
  lu.setThreshold(1e-12);
  UniqueEffectReport r;
  r.dimension = static_cast<int>(dim);
  r.constraint_rank = static_cast<int>(lu.rank());
  const RVec c = lu.solve(ones);
  double res = (g * c - ones).cwiseAbs().maxCoeff();
  for (std::size_t k = 0; k < a.num_blocks(); ++k) {
    Mat e = Mat::Zero(a.block(k), a.block(k));
    for (std::size_t mu = 0; mu < basis.size(); ++mu)
      if (basis[mu].first == k) e += c(static_cast<Eigen::Index>(mu)) * basis[mu].second;
    res = std::max(res, max_abs(e - Mat::Identity(a.block(k), a.block(k))));
  }
  r.residual = res;
  r.unique = r.constraint_rank == r.dimension && res <= tol;
  return r;
}

}  // namespace ptv
