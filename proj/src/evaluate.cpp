#include "ptv/evaluate.hpp"

#include "ptv/error.hpp"

namespace ptv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Evaluator {
 public:
  explicit Evaluator(const GeneratorEnv& env) : env_(env) {}

  Process eval(const Term& t) {
    Process p = std::visit(
        overloaded{
            [&](const node::Gen& x) { return env_.at(x.name); },
            [&](const node::Id& x) { return identity(x.sys.type); },
            [&](const node::Seq& x) { return compose_seq(eval(*x.after), eval(*x.before)); },
            [&](const node::Par& x) { return compose_par(eval(*x.left), eval(*x.right)); },
            [&](const node::Cup& x) { return cup(x.sys.type); },
            [&](const node::Cap& x) { return cap(x.sys.type); },
            [&](const node::Dagger& x) { return dagger(eval(*x.inner)); },
            [&](const node::Sum& x) {
              if (x.terms.empty()) return Process(x.zero_signature->first.type, x.zero_signature->second.type);
              Process acc = eval(*x.terms[0]);
              for (std::size_t k = 1; k < x.terms.size(); ++k) acc = add(acc, eval(*x.terms[k]));
              return acc;
            },
            [&](const node::Scalar& x) { return scalar(x.value); },
            [&](const node::Swap& x) { return swap(x.left.type, x.right.type); },
            [&](const node::Discard& x) { return discard(x.sys.type); },
            [&](const node::MaxMix& x) { return maxmix(x.sys.type); },
        },
        t.node());
    return p;
  }

 private:
  const GeneratorEnv& env_;
};

// Dimension check on the typed skeleton before any matrices are built.
void precheck(const Term& t, const GeneratorEnv& env, const EvalOptions& opts) {
  const Signature s = typecheck(t, env);
  const int d = std::max(s.dom.total_dim(), s.cod.total_dim());
  if (d > opts.max_dim)
    throw DimensionError("total dimension " + std::to_string(d) + " of '" + pretty_print(t) + "' exceeds the cap of " +
                         std::to_string(opts.max_dim));
  std::visit(overloaded{
                 [&](const node::Seq& x) {
                   precheck(*x.after, env, opts);
                   precheck(*x.before, env, opts);
                 },
                 [&](const node::Par& x) {
                   precheck(*x.left, env, opts);
                   precheck(*x.right, env, opts);
                 },
                 [&](const node::Dagger& x) { precheck(*x.inner, env, opts); },
                 [&](const node::Sum& x) {
                   for (const auto& s2 : x.terms) precheck(*s2, env, opts);
                 },
                 [](const auto&) {},
             },
             t.node());
}

}  // namespace

Process evaluate(const Term& t, const GeneratorEnv& env, const EvalOptions& opts) {
  precheck(t, env, opts);
  return Evaluator(env).eval(t);
}

}  // namespace ptv
