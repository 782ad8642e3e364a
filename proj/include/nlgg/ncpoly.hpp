#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlgg/rational.hpp"

namespace nlgg {

// Element of Q(sqrt2, sqrt5): a + b*sqrt2 + c*sqrt5 + d*sqrt10.
struct ExtScalar {
  Rat a, b, c, d;

  ExtScalar() : a(0), b(0), c(0), d(0) {}
  ExtScalar(Rat ra) : a(std::move(ra)), b(0), c(0), d(0) {}
  ExtScalar(Rat ra, Rat rb, Rat rc, Rat rd)
      : a(std::move(ra)), b(std::move(rb)), c(std::move(rc)), d(std::move(rd)) {}

  static ExtScalar sqrt2() { return ExtScalar(Rat(0), Rat(1), Rat(0), Rat(0)); }
  static ExtScalar sqrt5() { return ExtScalar(Rat(0), Rat(0), Rat(1), Rat(0)); }
  static ExtScalar sqrt10() { return ExtScalar(Rat(0), Rat(0), Rat(0), Rat(1)); }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  bool operator==(const ExtScalar &o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator!=(const ExtScalar &o) const { return !(*this == o); }

  ExtScalar operator+(const ExtScalar &o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  ExtScalar operator-(const ExtScalar &o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
  }
  ExtScalar operator-() const { return {-a, -b, -c, -d}; }

  ExtScalar operator*(const ExtScalar &o) const {
    // sqrt2*sqrt5 = sqrt10, sqrt2*sqrt10 = 2 sqrt5, sqrt5*sqrt10 = 5 sqrt2
    return {a * o.a + 2 * (b * o.b) + 5 * (c * o.c) + 10 * (d * o.d),
            a * o.b + b * o.a + 5 * (c * o.d + d * o.c),
            a * o.c + c * o.a + 2 * (b * o.d + d * o.b),
            a * o.d + d * o.a + b * o.c + c * o.b};
  }

  ExtScalar inverse() const {
    if (is_zero()) throw std::domain_error("ExtScalar division by zero");
    // Multiply by the sqrt2-conjugate to land in Q(sqrt5), then rationalize.
    ExtScalar conj2{a, -b, c, -d};
    ExtScalar t = (*this) * conj2;  // t = e + f*sqrt5
    Rat e = t.a, f = t.c;
    Rat denom = e * e - 5 * (f * f);
    if (denom == 0) throw std::domain_error("ExtScalar inverse degenerate");
    ExtScalar conj5{e, Rat(0), -f, Rat(0)};
    ExtScalar num = conj2 * conj5;
    return {num.a / denom, num.b / denom, num.c / denom, num.d / denom};
  }

  ExtScalar operator/(const ExtScalar &o) const { return *this * o.inverse(); }

  double to_double() const {
    return rat_to_double(a) + rat_to_double(b) * std::sqrt(2.0) +
           rat_to_double(c) * std::sqrt(5.0) + rat_to_double(d) * std::sqrt(10.0);
  }

  std::string to_string() const {
    std::string s;
    auto app = [&](const Rat &r, const char *root) {
      if (r == 0) return;
      if (!s.empty() && r > 0) s += "+";
      if (r == -1 && *root) s += "-";
      else if (r != 1 || !*root) s += rat_to_string(r);
      if (*root) {
        if (r != 1 && r != -1) s += "*";
        s += root;
      }
    };
    app(a, "");
    app(b, "sqrt2");
    app(c, "sqrt5");
    app(d, "sqrt10");
    return s.empty() ? "0" : s;
  }
};

// A letter is a Hermitian involution of one party: party index 0..15
// (printed 'A', 'B', ...), setting 0..7. Letters of different parties
// commute; letters square to 1.
using Letter = uint8_t;
inline Letter make_letter(int party, int setting) {
  if (party < 0 || party > 15 || setting < 0 || setting > 7)
    throw std::invalid_argument("letter out of range");
  return static_cast<Letter>(party * 8 + setting);
}
inline int letter_party(Letter l) { return l >> 3; }
inline int letter_setting(Letter l) { return l & 7; }

using Word = std::vector<Letter>;

// Canonical form: letters grouped by party (blocks in party order, original
// order kept within a block), then X*X = 1 applied inside each block.
inline Word canonical_word(const Word &w) {
  std::vector<std::vector<Letter>> blocks(16);
  for (Letter l : w) {
    auto &blk = blocks[letter_party(l)];
    if (!blk.empty() && blk.back() == l)
      blk.pop_back();
    else
      blk.push_back(l);
  }
  Word out;
  for (const auto &blk : blocks) out.insert(out.end(), blk.begin(), blk.end());
  return out;
}

inline Word word_adjoint(const Word &w) {
  Word rev(w.rbegin(), w.rend());
  return canonical_word(rev);
}

inline std::string word_to_string(const Word &w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter l : w) {
    s += static_cast<char>('A' + letter_party(l));
    s += static_cast<char>('0' + letter_setting(l));
  }
  return s;
}

// Noncommutative polynomial with ExtScalar coefficients over canonical words.
class NcPolynomial {
 public:
  std::map<Word, ExtScalar> terms;

  NcPolynomial() = default;
  explicit NcPolynomial(ExtScalar c) {
    if (!c.is_zero()) terms[{}] = std::move(c);
  }

  static NcPolynomial letter(int party, int setting) {
    NcPolynomial p;
    p.terms[{make_letter(party, setting)}] = ExtScalar(Rat(1));
    return p;
  }
  static NcPolynomial one() { return NcPolynomial(ExtScalar(Rat(1))); }

  bool is_zero() const { return terms.empty(); }
  size_t num_terms() const { return terms.size(); }

  void add_term(const Word &w, const ExtScalar &c) {
    if (c.is_zero()) return;
    Word cw = canonical_word(w);
    auto it = terms.find(cw);
    if (it == terms.end()) {
      terms.emplace(std::move(cw), c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  NcPolynomial operator+(const NcPolynomial &o) const {
    NcPolynomial r = *this;
    for (const auto &[w, c] : o.terms) r.add_term(w, c);
    return r;
  }
  NcPolynomial operator-(const NcPolynomial &o) const {
    NcPolynomial r = *this;
    for (const auto &[w, c] : o.terms) r.add_term(w, -c);
    return r;
  }
  NcPolynomial operator*(const NcPolynomial &o) const {
    NcPolynomial r;
    for (const auto &[w1, c1] : terms)
      for (const auto &[w2, c2] : o.terms) {
        Word prod = w1;
        prod.insert(prod.end(), w2.begin(), w2.end());
        r.add_term(prod, c1 * c2);
      }
    return r;
  }
  NcPolynomial operator*(const ExtScalar &s) const {
    NcPolynomial r;
    for (const auto &[w, c] : terms) r.add_term(w, c * s);
    return r;
  }

  NcPolynomial adjoint() const {
    NcPolynomial r;
    for (const auto &[w, c] : terms) r.add_term(word_adjoint(w), c);
    return r;
  }

  bool is_hermitian() const { return *this == adjoint(); }

  bool operator==(const NcPolynomial &o) const { return terms == o.terms; }

  ExtScalar coeff(const Word &w) const {
    auto it = terms.find(canonical_word(w));
    return it == terms.end() ? ExtScalar() : it->second;
  }

  std::string to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto &[w, c] : terms) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")*" + word_to_string(w);
    }
    return s;
  }
};

inline NcPolynomial nc_mul(const NcPolynomial &p, const NcPolynomial &q) { return p * q; }

// CHSH Bell operator for the party pair (p, q):
//   X_p0 X_q0 + X_p0 X_q1 + X_p1 X_q0 - X_p1 X_q1
inline NcPolynomial chsh_bell_operator(int p, int q) {
  auto X = [](int party, int s) { return NcPolynomial::letter(party, s); };
  return X(p, 0) * X(q, 0) + X(p, 0) * X(q, 1) + X(p, 1) * X(q, 0) - X(p, 1) * X(q, 1);
}

// Sum of CHSH Bell operators along the edges of a path on n parties
// (parties named A, B, C, ... in order).
inline NcPolynomial bell_chain(int parties) {
  if (parties < 2 || parties > 6) throw std::invalid_argument("bell_chain needs 2..6 parties");
  NcPolynomial sum;
  for (int p = 0; p + 1 < parties; ++p) sum = sum + chsh_bell_operator(p, p + 1);
  return sum;
}

struct WeightedSquare {
  NcPolynomial s;
  ExtScalar weight;  // must be positive for a valid certificate
};

struct SosVerdict {
  bool exact_match = false;
  NcPolynomial residual;
  std::optional<ExtScalar> scale;  // target == scale * sum of squares
  bool all_hermitian = true;
};

// residual = target - sum_i w_i * s_i^* s_i, computed exactly. When the
// residual is nonzero, tries a single global scalar lambda with
// target == lambda * sum.
inline SosVerdict verify_sos_weighted(const NcPolynomial &target,
                                      const std::vector<WeightedSquare> &squares) {
  SosVerdict v;
  NcPolynomial sum;
  for (const auto &ws : squares) {
    if (!ws.s.is_hermitian()) v.all_hermitian = false;
    sum = sum + ws.s.adjoint() * ws.s * ws.weight;
  }
  v.residual = target - sum;
  v.exact_match = v.residual.is_zero();
  if (!v.exact_match && !sum.is_zero()) {
    const auto &[w0, c0] = *sum.terms.begin();
    ExtScalar t0 = target.coeff(w0);
    if (!t0.is_zero()) {
      ExtScalar lambda = t0 / c0;
      if (target == sum * lambda) v.scale = lambda;
    }
  }
  return v;
}

inline SosVerdict verify_sos(const NcPolynomial &target,
                             const std::vector<NcPolynomial> &squares) {
  std::vector<WeightedSquare> ws;
  for (const auto &s : squares) ws.push_back({s, ExtScalar(Rat(1))});
  return verify_sos_weighted(target, ws);
}

struct CertifiedBound {
  ExtScalar bias_constant;       // nu with  nu - bell = sum of squares
  ExtScalar probability_bound;   // 1/2 + nu / (8 |E|)
  double probability_double;
};

// An exact identity  constant - bell = sum_i w_i s_i^* s_i  (w_i > 0)
// certifies <bell> <= constant, hence a winning-probability bound through
// the bias-to-probability map of CHSH chains.
inline CertifiedBound certified_bound_from_sos(const std::vector<WeightedSquare> &squares,
                                               const NcPolynomial &bell,
                                               const ExtScalar &constant, int edge_count) {
  for (const auto &ws : squares) {
    double w = ws.weight.to_double();
    if (w < 0) throw std::invalid_argument("negative square weight");
  }
  NcPolynomial target = NcPolynomial(constant) - bell;
  auto verdict = verify_sos_weighted(target, squares);
  if (!verdict.exact_match)
    throw std::invalid_argument("certified_bound_from_sos: identity does not verify");
  CertifiedBound out;
  out.bias_constant = constant;
  ExtScalar scale{Rat(1, 8 * edge_count)};
  out.probability_bound = ExtScalar(Rat(1, 2)) + constant * scale;
  out.probability_double = out.probability_bound.to_double();
  return out;
}

// --- expression parser -------------------------------------------------------
// Grammar: expr := term (('+'|'-') term)*
//          term := factor (('*')? factor)*
//          factor := rational | sqrt2 | sqrt5 | sqrt10 | letters | '(' expr ')'
// Letters: 'A0'..'F7'; adjacency means product ("A0B0").

namespace detail {

struct PolyParser {
  const std::string &s;
  size_t pos = 0;

  explicit PolyParser(const std::string &str) : s(str) {}

  void skip() {
    while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  NcPolynomial parse_expr() {
    NcPolynomial acc = eat('-') ? NcPolynomial() - parse_term() : parse_term();
    while (true) {
      if (eat('+'))
        acc = acc + parse_term();
      else if (eat('-'))
        acc = acc - parse_term();
      else
        break;
    }
    return acc;
  }

  NcPolynomial parse_term() {
    NcPolynomial acc = parse_factor();
    while (true) {
      skip();
      if (eat('*')) {
        acc = acc * parse_factor();
        continue;
      }
      if (pos < s.size() && (isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '(')) {
        acc = acc * parse_factor();
        continue;
      }
      break;
    }
    return acc;
  }

  NcPolynomial parse_factor() {
    skip();
    if (pos >= s.size()) throw std::invalid_argument("unexpected end of expression");
    if (eat('(')) {
      NcPolynomial inner = parse_expr();
      if (!eat(')')) throw std::invalid_argument("missing ')'");
      return inner;
    }
    char c = s[pos];
    if (s.compare(pos, 6, "sqrt10") == 0) {
      pos += 6;
      return NcPolynomial(ExtScalar::sqrt10());
    }
    if (s.compare(pos, 5, "sqrt2") == 0) {
      pos += 5;
      return NcPolynomial(ExtScalar::sqrt2());
    }
    if (s.compare(pos, 5, "sqrt5") == 0) {
      pos += 5;
      return NcPolynomial(ExtScalar::sqrt5());
    }
    if (c >= 'A' && c <= 'F') {
      NcPolynomial acc = NcPolynomial::one();
      while (pos + 1 < s.size() + 0 && pos < s.size() && s[pos] >= 'A' && s[pos] <= 'F') {
        if (pos + 1 >= s.size() || !isdigit(static_cast<unsigned char>(s[pos + 1])))
          throw std::invalid_argument("letter needs a setting digit");
        acc = acc * NcPolynomial::letter(s[pos] - 'A', s[pos + 1] - '0');
        pos += 2;
      }
      return acc;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      Int num(s.substr(start, pos - start));
      Int den = 1;
      if (eat('/')) {
        skip();
        size_t dstart = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (dstart == pos) throw std::invalid_argument("missing denominator");
        den = Int(s.substr(dstart, pos - dstart));
      }
      return NcPolynomial(ExtScalar(Rat(num, den)));
    }
    throw std::invalid_argument(std::string("unexpected character '") + c + "' in expression");
  }
};

}  // namespace detail

inline NcPolynomial parse_polynomial(const std::string &text) {
  detail::PolyParser p(text);
  NcPolynomial out = p.parse_expr();
  p.skip();
  if (p.pos != text.size()) throw std::invalid_argument("trailing input in expression");
  return out;
}

// --- canned identities --------------------------------------------------------

struct SosIdentity {
  NcPolynomial target;
  std::vector<WeightedSquare> squares;
  NcPolynomial bell;    // the Bell chain appearing in the target
  ExtScalar constant;   // target = constant - scale*bell ... (as printed)
  int edge_count;
  std::string name;
};

// 2 - (B_AB + B_BC)/2 = Q1^2 + Q2^2
inline SosIdentity p3_sos_identity() {
  SosIdentity id;
  id.name = "p3";
  id.edge_count = 2;
  auto X = [](int p, int s) { return NcPolynomial::letter(p, s); };
  ExtScalar half{Rat(1, 2)};
  ExtScalar c = ExtScalar(Rat(1, 4)) * ExtScalar::sqrt2();  // 1/(2 sqrt2)
  NcPolynomial q1 =
      (X(0, 0) * (X(1, 0) - X(1, 1)) + X(2, 1) * (X(1, 0) + X(1, 1)) -
       X(0, 0) * X(2, 1) * ExtScalar(Rat(2))) * c;
  NcPolynomial q2 =
      (X(0, 1) * (X(1, 0) + X(1, 1)) + X(2, 0) * (X(1, 0) - X(1, 1)) -
       X(0, 1) * X(2, 0) * ExtScalar(Rat(2))) * c;
  id.bell = bell_chain(3);
  id.constant = ExtScalar(Rat(2));
  id.target = NcPolynomial(id.constant) - id.bell * half;
  id.squares = {{q1, ExtScalar(Rat(1))}, {q2, ExtScalar(Rat(1))}};
  return id;
}

inline std::vector<NcPolynomial> p4_sos_squares_printed() {
  auto X = [](int p, int s) { return NcPolynomial::letter(p, s); };
  auto B = [&](int s) { return X(1, s); };
  auto C = [&](int s) { return X(2, s); };
  auto D = [&](int s) { return X(3, s); };
  NcPolynomial r1 = C(0) * (B(0) - B(1)) + C(1) * (B(0) + B(1)) -
                    D(0) * (C(0) + C(1)) * ExtScalar(Rat(2)) +
                    D(1) * (C(0) - C(1)) * ExtScalar(Rat(2));
  ExtScalar inv2s10 = ExtScalar(Rat(1)) / (ExtScalar(Rat(2)) * ExtScalar::sqrt10());
  NcPolynomial chain = bell_chain(4);
  NcPolynomial r2 = NcPolynomial::one() - chain * inv2s10;
  NcPolynomial r3 =
      (B(0) * (X(0, 0) * ExtScalar(Rat(3)) - X(0, 1)) +
       B(1) * (X(0, 0) * ExtScalar(Rat(3)) + X(0, 1)) - C(0) * (B(0) + B(1)) +
       C(1) * (B(0) - B(1)) - D(0) * (C(0) + C(1)) - D(1) * (C(0) - C(1))) *
      ExtScalar(Rat(1, 3));
  NcPolynomial r4 =
      (X(0, 1) * (B(0) - B(1)) * ExtScalar(Rat(4)) + C(0) * (B(0) + B(1)) -
       C(1) * (B(0) - B(1)) - D(0) * (C(0) + C(1)) * ExtScalar(Rat(2)) -
       D(1) * (C(0) - C(1)) * ExtScalar(Rat(2))) *
      ExtScalar(Rat(1, 4));
  return {r1, r2, r3, r4};
}

// The printed four-square decomposition of 2 sqrt10 - (B_AB + B_BC + B_CD).
inline SosIdentity p4_sos_identity_printed() {
  SosIdentity id;
  id.name = "p4-printed";
  id.edge_count = 3;
  id.bell = bell_chain(4);
  id.constant = ExtScalar(Rat(2)) * ExtScalar::sqrt10();
  id.target = NcPolynomial(id.constant) - id.bell;
  for (const auto &s : p4_sos_squares_printed()) id.squares.push_back({s, ExtScalar(Rat(1))});
  return id;
}

// Same squares, reweighted so the identity closes exactly (the printed
// version does not balance; the weights below are forced by coefficient
// matching and verified term by term).
inline SosIdentity p4_sos_identity() {
  SosIdentity id;
  id.name = "p4";
  id.edge_count = 3;
  id.bell = bell_chain(4);
  id.constant = ExtScalar(Rat(2)) * ExtScalar::sqrt10();
  id.target = NcPolynomial(id.constant) - id.bell;
  auto squares = p4_sos_squares_printed();
  ExtScalar s10 = ExtScalar::sqrt10();
  std::vector<ExtScalar> w = {s10 * ExtScalar(Rat(1, 80)), s10,
                              s10 * ExtScalar(Rat(3, 40)), s10 * ExtScalar(Rat(1, 15))};
  for (size_t i = 0; i < squares.size(); ++i) id.squares.push_back({squares[i], w[i]});
  return id;
}

}  // namespace nlgg
