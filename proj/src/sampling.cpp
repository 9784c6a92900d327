#include "ptv/sampling.hpp"

namespace ptv {

Process random_cp(const SystemType& dom, const SystemType& cod, Rng& rng, int rank) {
  Process p(dom, cod);
  for (std::size_t i = 0; i < dom.num_blocks(); ++i)
    for (std::size_t j = 0; j < cod.num_blocks(); ++j) {
      const int n = dom.block(i), m = cod.block(j);
      const Mat g = ginibre(n * m, rank < 0 ? n * m : rank, rng);
      p.cell(i, j) = BlockMap::from_choi(g * g.adjoint() / static_cast<double>(n * m), n, m);
    }
  return p;
}

Process random_causal(const SystemType& dom, const SystemType& cod, Rng& rng) {
  const Process f = random_cp(dom, cod, rng);
  const Process adj = dagger(f);
  Process fix(dom, dom);
  for (std::size_t i = 0; i < dom.num_blocks(); ++i) {
    Mat pullback = Mat::Zero(dom.block(i), dom.block(i));
    for (std::size_t j = 0; j < cod.num_blocks(); ++j)
      pullback += adj.cell(j, i).apply(Mat::Identity(cod.block(j), cod.block(j)));
    fix.cell(i, i) = BlockMap::from_kraus(psd_inv_sqrt(pullback));
  }
  return compose_seq(f, fix);
}

std::vector<Mat> random_cone_element(const SystemType& a, Rng& rng, int rank) {
  std::vector<Mat> out;
  for (int d : a.blocks()) {
    const Mat g = ginibre(d, rank < 0 ? d : std::min(rank, d), rng);
    out.push_back(g * g.adjoint());
  }
  return out;
}

std::vector<Mat> random_causal_state(const SystemType& a, Rng& rng) {
  auto out = random_cone_element(a, rng);
  double total = 0.0;
  for (const auto& m : out) total += m.trace().real();
  for (auto& m : out) m /= total;
  return out;
}

std::vector<Mat> random_self_adjoint(const SystemType& a, Rng& rng) {
  std::vector<Mat> out;
  for (int d : a.blocks()) out.push_back(random_hermitian(d, rng));
  return out;
}

}  // namespace ptv
