#include "ptv/diagram.hpp"

#include <charconv>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "ptv/error.hpp"

namespace ptv {

namespace {

std::shared_ptr<const Term> share(const Term& t) { return std::make_shared<const Term>(t); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

SystemRef literal_system(const SystemType& t) { return SystemRef{t.to_string(), t}; }

Term Term::seq(const Term& after, const Term& before) { return Term(node::Seq{share(after), share(before)}); }
Term Term::par(const Term& left, const Term& right) { return Term(node::Par{share(left), share(right)}); }
Term Term::dagger(const Term& t) { return Term(node::Dagger{share(t)}); }

Term Term::sum(const std::vector<Term>& terms) {
  node::Sum s;
  for (const auto& t : terms) s.terms.push_back(share(t));
  return Term(std::move(s));
}

Term Term::zero(SystemRef dom, SystemRef cod) {
  node::Sum s;
  s.zero_signature = std::make_pair(std::move(dom), std::move(cod));
  return Term(std::move(s));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      overloaded{
          [&](const node::Gen& x) { return x.name == b.as<node::Gen>()->name; },
          [&](const node::Id& x) { return x.sys == b.as<node::Id>()->sys; },
          [&](const node::Seq& x) {
            const auto* y = b.as<node::Seq>();
            return *x.after == *y->after && *x.before == *y->before;
          },
          [&](const node::Par& x) {
            const auto* y = b.as<node::Par>();
            return *x.left == *y->left && *x.right == *y->right;
          },
          [&](const node::Cup& x) { return x.sys == b.as<node::Cup>()->sys; },
          [&](const node::Cap& x) { return x.sys == b.as<node::Cap>()->sys; },
          [&](const node::Dagger& x) { return *x.inner == *b.as<node::Dagger>()->inner; },
          [&](const node::Sum& x) {
            const auto* y = b.as<node::Sum>();
            if (x.terms.size() != y->terms.size() || x.zero_signature != y->zero_signature) return false;
            for (std::size_t k = 0; k < x.terms.size(); ++k)
              if (!(*x.terms[k] == *y->terms[k])) return false;
            return true;
          },
          [&](const node::Scalar& x) { return x.value == b.as<node::Scalar>()->value; },
          [&](const node::Swap& x) {
            const auto* y = b.as<node::Swap>();
            return x.left == y->left && x.right == y->right;
          },
          [&](const node::Discard& x) { return x.sys == b.as<node::Discard>()->sys; },
          [&](const node::MaxMix& x) { return x.sys == b.as<node::MaxMix>()->sys; },
      },
      a.node());
}

// Systems ----------------------------------------------------------------------

std::optional<SystemType> SystemTable::lookup(const std::string& name) const {
  if (auto it = table_.find(name); it != table_.end()) return it->second;
  if (name == "I") return SystemType::trivial();
  static const std::regex builtin("([QC])([1-9][0-9]*)");
  std::smatch m;
  if (std::regex_match(name, m, builtin)) {
    const int n = std::stoi(m[2].str());
    return m[1].str() == "Q" ? SystemType::quantum(n) : SystemType::classical(n);
  }
  return std::nullopt;
}

SystemTable SystemTable::parse(const std::string& text) {
  SystemTable table;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = nlohmann::json::parse(text);
    const auto& obj = j.contains("systems") ? j.at("systems") : j;
    for (const auto& [name, blocks] : obj.items()) table.define(name, SystemType(blocks.get<std::vector<int>>()));
    return table;
  }
  static const std::regex line_re(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(\[[0-9,\s]*\])\s*$)");
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    if (!std::regex_match(line, m, line_re)) throw ParseError("expected NAME = [blocks]", lineno, 1);
    table.define(m[1].str(), resolve_system(m[2].str(), {}));
  }
  return table;
}

SystemType resolve_system(const std::string& spec, const SystemTable& systems) {
  const auto first = spec.find_first_not_of(" \t");
  if (first != std::string::npos && spec[first] == '[') {
    std::vector<int> blocks;
    std::string body = spec.substr(first + 1);
    const auto close = body.find(']');
    if (close == std::string::npos) throw Error("unterminated block list: " + spec);
    body.erase(close);
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
      int v = 0;
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) throw Error("empty entry in block list: " + spec);
      auto [ptr, ec] = std::from_chars(item.data() + b, item.data() + e + 1, v);
      if (ec != std::errc() || ptr != item.data() + e + 1) throw Error("bad block dimension in " + spec);
      blocks.push_back(v);
    }
    return SystemType(blocks);
  }
  if (auto t = systems.lookup(spec)) return *t;
  throw Error("unknown system '" + spec + "'");
}

// Printing ---------------------------------------------------------------------

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void print(const Term& t, std::ostringstream& os) {
  std::visit(overloaded{
                 [&](const node::Gen& x) { os << x.name; },
                 [&](const node::Id& x) { os << "id(" << x.sys.name << ")"; },
                 [&](const node::Seq& x) {
                   os << "seq(";
                   print(*x.after, os);
                   os << ", ";
                   print(*x.before, os);
                   os << ")";
                 },
                 [&](const node::Par& x) {
                   os << "par(";
                   print(*x.left, os);
                   os << ", ";
                   print(*x.right, os);
                   os << ")";
                 },
                 [&](const node::Cup& x) { os << "cup(" << x.sys.name << ")"; },
                 [&](const node::Cap& x) { os << "cap(" << x.sys.name << ")"; },
                 [&](const node::Dagger& x) {
                   os << "dagger(";
                   print(*x.inner, os);
                   os << ")";
                 },
                 [&](const node::Sum& x) {
                   if (x.terms.empty()) {
                     os << "zero(" << x.zero_signature->first.name << ", " << x.zero_signature->second.name << ")";
                     return;
                   }
                   os << "sum(";
                   for (std::size_t k = 0; k < x.terms.size(); ++k) {
                     if (k) os << ", ";
                     print(*x.terms[k], os);
                   }
                   os << ")";
                 },
                 [&](const node::Scalar& x) { os << "scalar(" << format_number(x.value) << ")"; },
                 [&](const node::Swap& x) { os << "swap(" << x.left.name << ", " << x.right.name << ")"; },
                 [&](const node::Discard& x) { os << "discard(" << x.sys.name << ")"; },
                 [&](const node::MaxMix& x) { os << "maxmix(" << x.sys.name << ")"; },
             },
             t.node());
}

}  // namespace

std::string pretty_print(const Term& t) {
  std::ostringstream os;
  print(t, os);
  return os.str();
}

// Typing -----------------------------------------------------------------------

Signature typecheck(const Term& t, const GeneratorEnv& env) {
  return std::visit(
      overloaded{
          [&](const node::Gen& x) -> Signature {
            auto it = env.find(x.name);
            if (it == env.end()) throw TypeError("unknown generator '" + x.name + "'");
            return {it->second.dom(), it->second.cod()};
          },
          [&](const node::Id& x) -> Signature { return {x.sys.type, x.sys.type}; },
          [&](const node::Seq& x) -> Signature {
            const Signature g = typecheck(*x.after, env);
            const Signature f = typecheck(*x.before, env);
            if (f.cod != g.dom)
              throw TypeError("type mismatch in " + pretty_print(t) + ": '" + pretty_print(*x.before) +
                              "' has codomain " + f.cod.to_string() + " but '" + pretty_print(*x.after) +
                              "' has domain " + g.dom.to_string());
            return {f.dom, g.cod};
          },
          [&](const node::Par& x) -> Signature {
            const Signature l = typecheck(*x.left, env);
            const Signature r = typecheck(*x.right, env);
            return {tensor(l.dom, r.dom), tensor(l.cod, r.cod)};
          },
          [&](const node::Cup& x) -> Signature { return {SystemType::trivial(), tensor(x.sys.type, x.sys.type)}; },
          [&](const node::Cap& x) -> Signature { return {tensor(x.sys.type, x.sys.type), SystemType::trivial()}; },
          [&](const node::Dagger& x) -> Signature {
            const Signature s = typecheck(*x.inner, env);
            return {s.cod, s.dom};
          },
          [&](const node::Sum& x) -> Signature {
            if (x.terms.empty()) {
              if (!x.zero_signature) throw TypeError("empty sum without a signature");
              return {x.zero_signature->first.type, x.zero_signature->second.type};
            }
            const Signature first = typecheck(*x.terms[0], env);
            for (std::size_t k = 1; k < x.terms.size(); ++k) {
              const Signature s = typecheck(*x.terms[k], env);
              if (s != first)
                throw TypeError("type mismatch in " + pretty_print(t) + ": summand '" + pretty_print(*x.terms[k]) +
                                "' is " + s.dom.to_string() + " -> " + s.cod.to_string() + " but '" +
                                pretty_print(*x.terms[0]) + "' is " + first.dom.to_string() + " -> " +
                                first.cod.to_string());
            }
            return first;
          },
          [&](const node::Scalar& x) -> Signature {
            if (!(x.value >= 0.0)) throw TypeError("scalar must be a nonnegative real: " + pretty_print(t));
            return {SystemType::trivial(), SystemType::trivial()};
          },
          [&](const node::Swap& x) -> Signature {
            return {tensor(x.left.type, x.right.type), tensor(x.right.type, x.left.type)};
          },
          [&](const node::Discard& x) -> Signature { return {x.sys.type, SystemType::trivial()}; },
          [&](const node::MaxMix& x) -> Signature { return {SystemType::trivial(), x.sys.type}; },
      },
      t.node());
}

// Dagger -----------------------------------------------------------------------

namespace {

Term push(const Term& t, bool flip) {
  return std::visit(
      overloaded{
          [&](const node::Gen&) { return flip ? Term::dagger(t) : t; },
          [&](const node::Id&) { return t; },
          [&](const node::Seq& x) {
            return flip ? Term::seq(push(*x.before, true), push(*x.after, true))
                        : Term::seq(push(*x.after, false), push(*x.before, false));
          },
          [&](const node::Par& x) { return Term::par(push(*x.left, flip), push(*x.right, flip)); },
          [&](const node::Cup& x) { return flip ? Term::cap(x.sys) : t; },
          [&](const node::Cap& x) { return flip ? Term::cup(x.sys) : t; },
          [&](const node::Dagger& x) { return push(*x.inner, !flip); },
          [&](const node::Sum& x) {
            if (x.terms.empty()) {
              if (!flip || !x.zero_signature) return t;
              return Term::zero(x.zero_signature->second, x.zero_signature->first);
            }
            std::vector<Term> out;
            for (const auto& s : x.terms) out.push_back(push(*s, flip));
            return Term::sum(out);
          },
          [&](const node::Scalar&) { return t; },
          [&](const node::Swap& x) { return flip ? Term::swap(x.right, x.left) : t; },
          [&](const node::Discard& x) { return flip ? Term::maxmix(x.sys) : t; },
          [&](const node::MaxMix& x) { return flip ? Term::discard(x.sys) : t; },
      },
      t.node());
}

}  // namespace

Term push_daggers(const Term& t) { return push(t, false); }

Term structural_dagger(const Term& t) { return push(t, true); }

}  // namespace ptv
