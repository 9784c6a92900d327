#pragma once

// String-diagram terms. A Term is an immutable tree; nodes are shared by
// pointer, so copies are cheap and terms may be used from several threads.
//
// Concrete syntax (prefix form):
//   term := name | id(sys) | seq(term, term) | par(term, term) | cup(sys)
//         | cap(sys) | dagger(term) | sum(term {, term}) | zero(sys, sys)
//         | scalar(number) | swap(sys, sys) | discard(sys) | maxmix(sys)
//   sys  := name | [int {, int}]
// seq(g, f) is "g after f". Parallel wires are ordered left to right.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptv/process.hpp"
#include "ptv/system_type.hpp"

namespace ptv {

/// A system as written in a term: its resolved type plus the name used to
/// print it back.
struct SystemRef {
  std::string name;
  SystemType type;

  friend bool operator==(const SystemRef&, const SystemRef&) = default;
};

/// Reference by literal block list, printed as "[2,1]".
SystemRef literal_system(const SystemType& t);

class Term;

namespace node {
struct Gen {
  std::string name;
};
struct Id {
  SystemRef sys;
};
struct Seq {
  std::shared_ptr<const Term> after;
  std::shared_ptr<const Term> before;
};
struct Par {
  std::shared_ptr<const Term> left;
  std::shared_ptr<const Term> right;
};
struct Cup {
  SystemRef sys;
};
struct Cap {
  SystemRef sys;
};
struct Dagger {
  std::shared_ptr<const Term> inner;
};
/// n-ary sum; an empty sum is the zero process of the recorded signature.
struct Sum {
  std::vector<std::shared_ptr<const Term>> terms;
  std::optional<std::pair<SystemRef, SystemRef>> zero_signature;
};
struct Scalar {
  double value;
};
struct Swap {
  SystemRef left;
  SystemRef right;
};
struct Discard {
  SystemRef sys;
};
struct MaxMix {
  SystemRef sys;
};
}  // namespace node

using TermNode = std::variant<node::Gen, node::Id, node::Seq, node::Par, node::Cup, node::Cap, node::Dagger,
                              node::Sum, node::Scalar, node::Swap, node::Discard, node::MaxMix>;

class Term {
 public:
  explicit Term(TermNode n) : node_(std::make_shared<const TermNode>(std::move(n))) {}

  static Term gen(std::string name) { return Term(node::Gen{std::move(name)}); }
  static Term id(SystemRef s) { return Term(node::Id{std::move(s)}); }
  static Term seq(const Term& after, const Term& before);
  static Term par(const Term& left, const Term& right);
  static Term cup(SystemRef s) { return Term(node::Cup{std::move(s)}); }
  static Term cap(SystemRef s) { return Term(node::Cap{std::move(s)}); }
  static Term dagger(const Term& t);
  static Term sum(const std::vector<Term>& terms);
  static Term zero(SystemRef dom, SystemRef cod);
  static Term scalar(double v) { return Term(node::Scalar{v}); }
  static Term swap(SystemRef a, SystemRef b) { return Term(node::Swap{std::move(a), std::move(b)}); }
  static Term discard(SystemRef s) { return Term(node::Discard{std::move(s)}); }
  static Term maxmix(SystemRef s) { return Term(node::MaxMix{std::move(s)}); }

  const TermNode& node() const { return *node_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }

 private:
  std::shared_ptr<const TermNode> node_;
};

/// Structural equality (scalars compared exactly).
bool operator==(const Term& a, const Term& b);

/// Names of systems usable in terms. Q<n>, C<n> and I are always available;
/// explicit entries take precedence.
class SystemTable {
 public:
  void define(const std::string& name, SystemType type) { table_[name] = std::move(type); }
  std::optional<SystemType> lookup(const std::string& name) const;
  const std::map<std::string, SystemType>& entries() const { return table_; }

  /// Accepts either a JSON object {"Q2": [2], ...} or lines "NAME = [a, b]".
  static SystemTable parse(const std::string& text);

 private:
  std::map<std::string, SystemType> table_;
};

/// Resolve a system reference written as a name or "[a,b,...]".
SystemType resolve_system(const std::string& spec, const SystemTable& systems);

using GeneratorEnv = std::map<std::string, Process>;

/// Parse a term. If `env` is given, generator names are checked against it.
Term parse(const std::string& text, const SystemTable& systems = {}, const GeneratorEnv* env = nullptr);
std::string pretty_print(const Term& t);

struct Signature {
  SystemType dom;
  SystemType cod;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Domain and codomain of a term; throws TypeError naming the offending
/// sub-term and both system types when a composition constraint fails.
Signature typecheck(const Term& t, const GeneratorEnv& env);

/// Push every dagger in t down to generators, using dagger(g∘f) = f†∘g†,
/// dagger(f⊗g) = f†⊗g†, cup† = cap, discard† = maxmix, f†† = f.
Term push_daggers(const Term& t);
/// The dagger of t in pushed form: push_daggers(dagger(t)).
Term structural_dagger(const Term& t);

}  // namespace ptv
