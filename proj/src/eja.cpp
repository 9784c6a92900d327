#include "ptv/eja.hpp"

#include "ptv/error.hpp"

namespace ptv {

long long SimpleEJA::rank() const {
  switch (family) {
    case EjaFamily::OctonionicAlbert: return 3;
    case EjaFamily::SpinFactor: return 2;
    default: return param;
  }
}

long long SimpleEJA::dim() const {
  const long long n = param;
  switch (family) {
    case EjaFamily::ComplexHermitian: return n * n;
    case EjaFamily::RealSymmetric: return n * (n + 1) / 2;
    case EjaFamily::QuaternionicHermitian: return n * (2 * n - 1);
    case EjaFamily::OctonionicAlbert: return 27;
    case EjaFamily::SpinFactor: return n;
  }
  return 0;
}

std::string SimpleEJA::name() const {
  switch (family) {
    case EjaFamily::ComplexHermitian: return "C_" + std::to_string(param);
    case EjaFamily::RealSymmetric: return "R_" + std::to_string(param);
    case EjaFamily::QuaternionicHermitian: return "H_" + std::to_string(param);
    case EjaFamily::OctonionicAlbert: return "O_3";
    case EjaFamily::SpinFactor: return "Spin_" + std::to_string(param);
  }
  return "?";
}

std::vector<SimpleEJA> find_simple(long long rank, long long dim) {
  std::vector<SimpleEJA> out;
  if (rank < 1 || dim < 1) return out;
  const int n = static_cast<int>(rank);
  const SimpleEJA candidates[] = {{EjaFamily::ComplexHermitian, n}, {EjaFamily::RealSymmetric, n},
                                  {EjaFamily::QuaternionicHermitian, n}};
  for (const auto& e : candidates) {
    if (e.family != EjaFamily::ComplexHermitian && n < 2) continue;
    if (e.dim() == dim) out.push_back(e);
  }
  if (rank == 3 && dim == 27) out.push_back({EjaFamily::OctonionicAlbert, 3});
  if (rank == 2 && dim >= 2) out.push_back({EjaFamily::SpinFactor, static_cast<int>(dim)});
  return out;
}

bool survives_self_composition(const SimpleEJA& e) {
  return !find_simple(e.rank() * e.rank(), e.dim() * e.dim()).empty();
}

std::vector<SurvivorRow> survivor_table(int max_n) {
  if (max_n < 2) throw PreconditionError("survivor table needs max_n >= 2");
  std::vector<SimpleEJA> all;
  for (auto f : {EjaFamily::ComplexHermitian, EjaFamily::RealSymmetric, EjaFamily::QuaternionicHermitian})
    for (int n = 2; n <= max_n; ++n) all.push_back({f, n});
  if (max_n >= 3) all.push_back({EjaFamily::OctonionicAlbert, 3});
  for (int k = 2; k <= max_n * max_n; ++k) all.push_back({EjaFamily::SpinFactor, k});

  std::vector<SurvivorRow> rows;
  for (const auto& e : all) {
    auto matches = find_simple(e.rank() * e.rank(), e.dim() * e.dim());
    rows.push_back({e, !matches.empty(), std::move(matches)});
  }
  return rows;
}

SimpleEJA model_algebra(const SystemType& a) {
  if (!a.is_single_block()) throw PreconditionError(a.to_string() + " is not simple");
  return {EjaFamily::ComplexHermitian, a.block(0)};
}

bool model_rank_multiplicativity_check(const SystemType& a, const SystemType& b) {
  const SystemType ab = tensor(a, b);
  return ab.total_dim() == a.total_dim() * b.total_dim() && ab.algebra_dim() == a.algebra_dim() * b.algebra_dim();
}

}  // namespace ptv
