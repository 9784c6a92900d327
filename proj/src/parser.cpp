#include <cctype>
#include <charconv>

#include "ptv/diagram.hpp"
#include "ptv/error.hpp"

namespace ptv {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const SystemTable& systems, const GeneratorEnv* env)
      : text_(text), systems_(systems), env_(env) {}

  Term parse_all() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    int line = 1, col = 1;
    for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
    if (text_[pos_] != c) fail(std::string("expected '") + c + "' but found '" + text_[pos_] + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      fail(pos_ >= text_.size() ? "expected a term but reached end of input" : "expected a name");
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  SystemRef system() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek('[')) {
      const auto close = text_.find(']', pos_);
      if (close == std::string::npos) fail("unterminated block list");
      const std::string spec = text_.substr(pos_, close - pos_ + 1);
      try {
        const SystemType t = resolve_system(spec, systems_);
        pos_ = close + 1;
        return literal_system(t);
      } catch (const Error& e) {
        fail_at(e.what(), start);
      }
    }
    const std::string name = identifier();
    auto t = systems_.lookup(name);
    if (!t) fail_at("unknown system '" + name + "'", start);
    return SystemRef{name, *t};
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const bool exp_sign = (c == '+' || c == '-') && pos_ > start && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || exp_sign)
        ++pos_;
      else
        break;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (start == pos_ || ec != std::errc() || ptr != text_.data() + pos_) fail_at("expected a nonnegative number", start);
    return v;
  }

  Term term() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (!peek('(')) {
      if (env_ && !env_->contains(name)) fail_at("unknown generator '" + name + "'", start);
      return Term::gen(name);
    }
    expect('(');
    Term out = constructor(name, start);
    expect(')');
    return out;
  }

  Term constructor(const std::string& name, std::size_t start) {
    if (name == "id") return Term::id(system());
    if (name == "cup") return Term::cup(system());
    if (name == "cap") return Term::cap(system());
    if (name == "discard") return Term::discard(system());
    if (name == "maxmix") return Term::maxmix(system());
    if (name == "scalar") return Term::scalar(number());
    if (name == "dagger") return Term::dagger(term());
    if (name == "seq" || name == "par") {
      Term a = term();
      expect(',');
      Term b = term();
      return name == "seq" ? Term::seq(a, b) : Term::par(a, b);
    }
    if (name == "swap" || name == "zero") {
      SystemRef a = system();
      expect(',');
      SystemRef b = system();
      return name == "swap" ? Term::swap(a, b) : Term::zero(a, b);
    }
    if (name == "sum") {
      std::vector<Term> terms{term()};
      while (peek(',')) {
        expect(',');
        terms.push_back(term());
      }
      return Term::sum(terms);
    }
    fail_at("unknown constructor '" + name + "'", start);
  }

  const std::string& text_;
  const SystemTable& systems_;
  const GeneratorEnv* env_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse(const std::string& text, const SystemTable& systems, const GeneratorEnv* env) {
  return Parser(text, systems, env).parse_all();
}

}  // namespace ptv
