#pragma once
// Complex-coefficient polynomials in two noncommuting letters x, y with no
// constant term: parsing from a small ASCII grammar, canonical (reduced-word)
// form, decomposition by word shape, and evaluation on scalars and on square
// complex matrices.
//
// Grammar:   expression  := ['+'|'-'] term (('+'|'-') term)*
//            term        := [coefficient '*'] factor ('*' factor)*
//            factor      := ('x'|'y') ['^' positive-integer]
//            coefficient := decimal | '(' ['-'] decimal ('+'|'-') decimal 'i' ')'
// Whitespace is insignificant.  Example: "x + y + 0.5*x*y*x".

#include <algorithm>
#include <array>
#include <charconv>
#include <complex>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace haarlim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Letter : char { X = 'x', Y = 'y' };

// One maximal run of a single letter inside a word, e.g. x^3.
struct Factor {
  Letter letter;
  int power;  // >= 1

  friend bool operator==(const Factor& a, const Factor& b) {
    return a.letter == b.letter && a.power == b.power;
  }
  friend bool operator<(const Factor& a, const Factor& b) {
    if (a.letter != b.letter) return a.letter < b.letter;
    return a.power < b.power;
  }
};

// A nonempty word in reduced form: adjacent factors carry distinct letters,
// every power >= 1.  Reduction happens on construction, so bucket
// classification downstream is a pure shape test.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors) {
    for (const Factor& f : factors) append(f.letter, f.power);
  }

  void append(Letter letter, int power) {
    if (power < 1) throw std::invalid_argument("monomial power must be >= 1");
    if (!word_.empty() && word_.back().letter == letter)
      word_.back().power += power;
    else
      word_.push_back({letter, power});
  }

  const std::vector<Factor>& word() const { return word_; }
  bool empty() const { return word_.empty(); }
  int length() const { return static_cast<int>(word_.size()); }
  int degree() const {
    int d = 0;
    for (const Factor& f : word_) d += f.power;
    return d;
  }

  // Word concatenation with boundary merge.
  Monomial operator*(const Monomial& rhs) const {
    Monomial out = *this;
    for (const Factor& f : rhs.word_) out.append(f.letter, f.power);
    return out;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.word_ == b.word_;
  }
  // Graded order: degree first, then lexicographic on the factor sequence.
  // Fixes the canonical printing order and the map order below.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.word_.begin(), a.word_.end(),
                                        b.word_.begin(), b.word_.end());
  }

 private:
  std::vector<Factor> word_;
};

// Finite map word -> coefficient; zero coefficients are never stored.  There
// is structurally no constant term (the empty word is rejected).
class NCPolynomial {
 public:
  NCPolynomial() = default;

  void add_term(const Monomial& m, Complex c) {
    if (m.empty()) throw std::invalid_argument("constant term not allowed");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (c != Complex(0.0, 0.0)) terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }

  const std::map<Monomial, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  NCPolynomial& operator+=(const NCPolynomial& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
  }
  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) {
    a += b;
    return a;
  }
  friend NCPolynomial operator*(Complex s, const NCPolynomial& p) {
    NCPolynomial out;
    if (s == Complex(0.0, 0.0)) return out;
    for (const auto& [m, c] : p.terms_) out.add_term(m, s * c);
    return out;
  }
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
    NCPolynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

 private:
  std::map<Monomial, Complex> terms_;
};

// Parse failure with the byte offset into the input text.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

namespace detail {

inline std::string format_double(double v) {
  std::array<char, 32> buf;  // shortest round-trip representation
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

struct PolyParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  double parse_decimal() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    if (pos >= text.size() ||
        !(std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
      fail("expected a number");
    char* end = nullptr;
    double v = std::strtod(text.c_str() + start, &end);
    pos = static_cast<std::size_t>(end - text.c_str());
    if (pos == start) fail("expected a number");
    return v;
  }

  // '(' re ('+'|'-') im 'i' ')' or a plain decimal.
  Complex parse_coefficient() {
    if (peek() == '(') {
      ++pos;
      double re = parse_decimal();
      skip_ws();
      if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-'))
        fail("expected '+' or '-' inside complex coefficient");
      double sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      double im = parse_decimal();
      skip_ws();
      if (pos >= text.size() || text[pos] != 'i') fail("expected 'i'");
      ++pos;
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return Complex(re, sign * im);
    }
    return Complex(parse_decimal(), 0.0);
  }

  Factor parse_factor() {
    char c = peek();
    if (c != 'x' && c != 'y') fail("expected 'x' or 'y'");
    ++pos;
    int power = 1;
    if (peek() == '^') {
      ++pos;
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) fail("expected a positive integer exponent");
      power = std::atoi(text.substr(start, pos - start).c_str());
      if (power < 1) fail("exponent must be >= 1");
    }
    return {c == 'x' ? Letter::X : Letter::Y, power};
  }

  // [coefficient '*'] factor ('*' factor)*
  void parse_term(NCPolynomial& out, double sign) {
    Complex coeff(sign, 0.0);
    char c = peek();
    bool have_coeff = false;
    if (c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      coeff *= parse_coefficient();
      have_coeff = true;
      char nxt = peek();
      if (nxt == '+' || nxt == '-' || nxt == '\0')
        fail("constant term not allowed");
      if (nxt != '*') fail("expected '*' after coefficient");
      ++pos;
    }
    Monomial m;
    Factor f = parse_factor();
    m.append(f.letter, f.power);
    while (peek() == '*') {
      ++pos;
      f = parse_factor();
      m.append(f.letter, f.power);
    }
    (void)have_coeff;
    out.add_term(m, coeff);
  }
};

}  // namespace detail

inline NCPolynomial parse_polynomial(const std::string& text) {
  detail::PolyParser p{text};
  NCPolynomial out;
  double sign = 1.0;
  char c = p.peek();  // optional leading sign
  if (c == '+' || c == '-') {
    sign = c == '-' ? -1.0 : 1.0;
    ++p.pos;
  }
  p.parse_term(out, sign);
  while (!p.at_end()) {
    c = p.peek();
    if (c != '+' && c != '-') p.fail("expected '+' or '-'");
    ++p.pos;
    p.parse_term(out, c == '-' ? -1.0 : 1.0);
  }
  return out;
}

// Canonical printer; parse(to_string(p)) == p and to_string is a fixed point
// of parse-then-print.
inline std::string to_string(const NCPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string coeff;
    bool negative = false;
    if (c.imag() == 0.0) {
      double re = c.real();
      negative = re < 0.0;
      double mag = negative ? -re : re;
      if (mag != 1.0) coeff = detail::format_double(mag) + "*";
    } else {
      coeff = "(" + detail::format_double(c.real()) +
              (c.imag() < 0.0 ? "-" : "+") +
              detail::format_double(std::abs(c.imag())) + "i)*";
    }
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff;
    bool first_factor = true;
    for (const Factor& f : m.word()) {
      if (!first_factor) out += "*";
      first_factor = false;
      out += static_cast<char>(f.letter);
      if (f.power > 1) out += "^" + std::to_string(f.power);
    }
  }
  return out;
}

// Word-shape buckets of the two-letter decomposition
//   P = P1(x) + Q1(y) + sum a_{k,l} x^k y^l + sum b_{k,l} y^l x^k
//     + sum c_{k,l,m} x^k y^l x^m + sum d_{k,l,m} y^l x^k y^m + R,
// with R collecting every word of length >= 4 (a run x^k counts as length 1).
struct Decomposition {
  std::map<int, Complex> p1;                      // k      -> a_{k,0}, word x^k
  std::map<int, Complex> q1;                      // l      -> b_{0,l}, word y^l
  std::map<std::pair<int, int>, Complex> p2;      // (k,l)  -> a_{k,l}, word x^k y^l
  std::map<std::pair<int, int>, Complex> q2;      // (k,l)  -> b_{k,l}, word y^l x^k
  std::map<std::array<int, 3>, Complex> p3;       // (k,l,m)-> c_{k,l,m}, word x^k y^l x^m
  std::map<std::array<int, 3>, Complex> q3;       // (k,l,m)-> d_{k,l,m}, word y^l x^k y^m
  NCPolynomial r;

  NCPolynomial reassemble() const {
    NCPolynomial out = r;
    auto word1 = [](Letter a, int k) { return Monomial({{a, k}}); };
    for (const auto& [k, c] : p1) out.add_term(word1(Letter::X, k), c);
    for (const auto& [l, c] : q1) out.add_term(word1(Letter::Y, l), c);
    for (const auto& [kl, c] : p2)
      out.add_term(Monomial({{Letter::X, kl.first}, {Letter::Y, kl.second}}), c);
    for (const auto& [kl, c] : q2)
      out.add_term(Monomial({{Letter::Y, kl.second}, {Letter::X, kl.first}}), c);
    for (const auto& [klm, c] : p3)
      out.add_term(
          Monomial({{Letter::X, klm[0]}, {Letter::Y, klm[1]}, {Letter::X, klm[2]}}), c);
    for (const auto& [klm, c] : q3)
      out.add_term(
          Monomial({{Letter::Y, klm[1]}, {Letter::X, klm[0]}, {Letter::Y, klm[2]}}), c);
    return out;
  }
};

inline Decomposition decompose(const NCPolynomial& p) {
  Decomposition d;
  for (const auto& [m, c] : p.terms()) {
    const std::vector<Factor>& w = m.word();
    switch (w.size()) {
      case 1:
        if (w[0].letter == Letter::X) d.p1[w[0].power] += c;
        else d.q1[w[0].power] += c;
        break;
      case 2:
        if (w[0].letter == Letter::X) d.p2[{w[0].power, w[1].power}] += c;
        else d.q2[{w[1].power, w[0].power}] += c;
        break;
      case 3:
        if (w[0].letter == Letter::X) d.p3[{w[0].power, w[1].power, w[2].power}] += c;
        else d.q3[{w[1].power, w[0].power, w[2].power}] += c;
        break;
      default:
        d.r.add_term(m, c);
    }
  }
  return d;
}

inline Complex eval_univariate(const std::map<int, Complex>& poly1d, Complex z) {
  Complex acc(0.0, 0.0);
  for (const auto& [k, c] : poly1d) acc += c * std::pow(z, k);
  return acc;
}

enum class Component { P2, Q2, P3, Q3 };

// Scalar shadows used by the mixture-coefficient formulas:
//   P2(a,b) = sum a_{k,l} a^k b^l          Q2(a,b) = sum b_{k,l} a^k b^l
//   P3(a,b) = sum c_{k,l,m} a^{k+m} b^l    Q3(a,b) = sum d_{k,l,m} a^k b^{l+m}
inline Complex eval_component(const Decomposition& d, Component which, Complex alpha,
                              Complex beta) {
  Complex acc(0.0, 0.0);
  switch (which) {
    case Component::P2:
      for (const auto& [kl, c] : d.p2)
        acc += c * std::pow(alpha, kl.first) * std::pow(beta, kl.second);
      break;
    case Component::Q2:
      for (const auto& [kl, c] : d.q2)
        acc += c * std::pow(alpha, kl.first) * std::pow(beta, kl.second);
      break;
    case Component::P3:
      for (const auto& [klm, c] : d.p3)
        acc += c * std::pow(alpha, klm[0] + klm[2]) * std::pow(beta, klm[1]);
      break;
    case Component::Q3:
      for (const auto& [klm, c] : d.q3)
        acc += c * std::pow(alpha, klm[0]) * std::pow(beta, klm[1] + klm[2]);
      break;
  }
  return acc;
}

// Ordered matrix product over each word, with cached powers of the inputs.
inline ComplexMatrix eval_matrix(const NCPolynomial& p, const ComplexMatrix& mx,
                                 const ComplexMatrix& my) {
  if (mx.rows() != mx.cols() || my.rows() != my.cols() || mx.rows() != my.rows())
    throw std::invalid_argument("eval_matrix: inputs must be square of equal dimension");
  const Eigen::Index n = mx.rows();
  int max_x = 1, max_y = 1;
  for (const auto& [m, c] : p.terms())
    for (const Factor& f : m.word()) {
      if (f.letter == Letter::X) max_x = std::max(max_x, f.power);
      else max_y = std::max(max_y, f.power);
    }
  std::vector<ComplexMatrix> xp(max_x + 1), yp(max_y + 1);
  xp[0] = ComplexMatrix::Identity(n, n);
  yp[0] = xp[0];
  for (int k = 1; k <= max_x; ++k) xp[k] = xp[k - 1] * mx;
  for (int k = 1; k <= max_y; ++k) yp[k] = yp[k - 1] * my;

  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (const auto& [m, c] : p.terms()) {
    ComplexMatrix prod = ComplexMatrix::Identity(n, n);
    for (const Factor& f : m.word())
      prod = prod * (f.letter == Letter::X ? xp[f.power] : yp[f.power]);
    acc += c * prod;
  }
  return acc;
}

}  // namespace haarlim
