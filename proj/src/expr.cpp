#include "redstar/expr.hpp"

#include <cctype>

namespace redstar {

namespace {

struct Complex {
  LaurentH re, im;
};

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

class Parser {
 public:
  Parser(const FlatModel& m, const std::string& text) : m_(m), s_(text) {}

  Complex parse() {
    Complex v = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + s_.substr(pos_, 1) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw InputError("expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    return std::isalnum(c) || c == '(';
  }

  Complex real(const LaurentH& f) const { return {f, m_.zero()}; }

  Complex expr() {
    Complex v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  Complex term() {
    Complex v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/'))
        v = divide(v, unary());
      else if (starts_primary())
        v = v * unary();
      else
        return v;
    }
  }

  Complex unary() {
    if (eat('-')) {
      Complex v = unary();
      return {-v.re, -v.im};
    }
    if (eat('+')) return unary();
    return power();
  }

  Complex power() {
    Complex base = primary();
    if (!eat('^')) return base;
    bool negative = eat('-');
    skip();
    int e = integer();
    Complex v = real(m_.constant(1));
    for (int k = 0; k < e; ++k) v = v * base;
    return negative ? divide(real(m_.constant(1)), v) : v;
  }

  int integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    if (pos_ - start > 4) error("integer too large");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  int index(int limit) {
    int i = integer();
    if (i >= limit) error("generator index " + std::to_string(i) + " out of range");
    return i;
  }

  Complex primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    if (eat('(')) {
      Complex v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (std::isdigit(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return real(m_.constant(Scalar(mpz_class(s_.substr(start, pos_ - start)))));
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string word = s_.substr(start, pos_ - start);
    // z followed by a combining macron (U+0304) is the conjugate.
    if (word == "z" && s_.compare(pos_, 2, "\xcc\x84") == 0) {
      pos_ += 2;
      word = "zb";
    }
    const int pairs = m_.n() + 1;
    if (word == "H") return real(m_.H());
    if (word == "i") return {m_.zero(), m_.constant(1)};
    if (word == "q") return real(m_.coord(index(pairs)));
    if (word == "p") return real(m_.coord(pairs + index(pairs)));
    if (word == "z" || word == "zb") {
      int k = index(pairs);
      LaurentH p = m_.coord(pairs + k);
      return {m_.coord(k), word == "z" ? p : -p};
    }
    if (word == "re" || word == "im") {
      if (!eat('(')) error("expected '(' after " + word);
      Complex v = expr();
      if (!eat(')')) error("expected ')'");
      return real(word == "re" ? v.re : v.im);
    }
    if (word.empty()) error("unexpected '" + s_.substr(pos_, 1) + "'");
    error("unknown generator '" + word + "'");
  }

  // Divisors must be real multiples of a power of H.
  Complex divide(const Complex& a, const Complex& b) {
    if (!b.im.is_zero()) error("division by a non-real expression");
    const LaurentH& d = b.re;
    if (d.is_zero()) error("division by zero");
    const int bound = d.slot(0).degree() / 2 + d.max_hpow() + 1;
    for (int j = 0; j <= bound; ++j) {
      LaurentH down = d * LaurentH::h_power(m_.ring(), j);
      if (down.is_constant()) {
        LaurentH f = LaurentH::h_power(m_.ring(), j) * Scalar(1 / down.constant_value());
        return {a.re * f, a.im * f};
      }
      LaurentH up = d.times_poly(m_.ring()->H.pow(j));
      if (up.is_constant()) {
        LaurentH f = LaurentH::from_poly(m_.ring(), m_.ring()->H.pow(j)) * Scalar(1 / up.constant_value());
        return {a.re * f, a.im * f};
      }
    }
    error("division by an expression that is not a constant multiple of a power of H");
  }

  const FlatModel& m_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentH parse_function(const FlatModel& m, const std::string& text) {
  Complex v = Parser(m, text).parse();
  if (!v.im.is_zero()) throw InputError("expression '" + text + "' is not real");
  return v.re;
}

void certify_reduced(const FlatModel& m, const LaurentH& f, const std::string& what) {
  const auto names = m.variable_names();
  for (const LaurentPiece& piece : f.pieces())
    if (piece.degree != 2 * piece.hpow)
      throw InputError(what + ": H^-" + std::to_string(piece.hpow) + " coefficient has a part of degree " +
                       std::to_string(piece.degree) + ", so its S-degree is not 0");
  LaurentH x = m.lie_XH(f);
  if (x.is_zero()) return;
  for (int k = 0; k <= x.max_hpow(); ++k)
    if (!x.slot(k).is_zero())
      throw InputError(what + ": H^-" + std::to_string(k) + " coefficient is not X_H-invariant, Lie_{X_H} gives " +
                       x.slot(k).to_string(names) + " there");
}

LaurentH parse_reduced(const FlatModel& m, const std::string& text, const std::string& what) {
  LaurentH f = parse_function(m, text);
  certify_reduced(m, f, what);
  return f;
}

}  // namespace redstar
