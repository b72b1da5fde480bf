#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arbordet/error.hpp"

namespace arbordet {

/// Exact rational scalar. No floating point is used anywhere in the core.
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Monomial: a multiset of symbol names, stored run-length encoded as sorted
// (name, exponent) pairs. The empty monomial is the constant 1.
// ---------------------------------------------------------------------------

class Monomial {
 public:
  Monomial() = default;

  static Monomial symbol(std::string name) {
    Monomial m;
    m.factors_.emplace_back(std::move(name), 1);
    return m;
  }

  bool empty() const { return factors_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [name, e] : factors_) d += e;
    return d;
  }

  const std::vector<std::pair<std::string, int>>& factors() const {
    return factors_;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < factors_.size() || j < o.factors_.size()) {
      if (j == o.factors_.size() ||
          (i < factors_.size() && factors_[i].first < o.factors_[j].first)) {
        r.factors_.push_back(factors_[i++]);
      } else if (i == factors_.size() ||
                 o.factors_[j].first < factors_[i].first) {
        r.factors_.push_back(o.factors_[j++]);
      } else {
        r.factors_.emplace_back(factors_[i].first,
                                factors_[i].second + o.factors_[j].second);
        ++i;
        ++j;
      }
    }
    return r;
  }

  /// Multiset difference: *this / d, or nullopt when d is not contained.
  std::optional<Monomial> divide_by(const Monomial& d) const {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < factors_.size()) {
      if (j < d.factors_.size() && factors_[i].first == d.factors_[j].first) {
        int e = factors_[i].second - d.factors_[j].second;
        if (e < 0) return std::nullopt;
        if (e > 0) r.factors_.emplace_back(factors_[i].first, e);
        ++i;
        ++j;
      } else if (j < d.factors_.size() &&
                 d.factors_[j].first < factors_[i].first) {
        return std::nullopt;
      } else {
        r.factors_.push_back(factors_[i++]);
      }
    }
    if (j < d.factors_.size()) return std::nullopt;
    return r;
  }

  // Canonical order: lexicographic on the flattened sorted symbol list, so
  // e.g. x^2 ("x x") sorts before x*y ("x y") and a bare "x" before both of
  // them. This is the storage and printing order.
  int compare(const Monomial& o) const {
    std::size_t i = 0, j = 0;
    int ra = 0, rb = 0;
    for (;;) {
      if (ra == 0) {
        if (i == factors_.size()) break;
        ra = factors_[i].second;
      }
      if (rb == 0) {
        if (j == o.factors_.size()) return 1;  // o is a strict prefix
        rb = o.factors_[j].second;
      }
      int c = factors_[i].first.compare(o.factors_[j].first);
      if (c != 0) return c < 0 ? -1 : 1;
      int t = std::min(ra, rb);
      ra -= t;
      rb -= t;
      if (ra == 0) ++i;
      if (rb == 0) ++j;
    }
    return (rb > 0 || j < o.factors_.size()) ? -1 : 0;
  }

  // Graded variant (degree first, ties by compare). Unlike the canonical
  // order this one is compatible with products, which exact division needs
  // to pick leading terms.
  int compare_graded(const Monomial& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db ? -1 : 1;
    return compare(o);
  }

  bool operator<(const Monomial& o) const { return compare(o) < 0; }
  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

  std::string str() const {
    std::string s;
    for (const auto& [name, e] : factors_) {
      if (!s.empty()) s += '*';
      s += name;
      if (e > 1) {
        s += '^';
        s += std::to_string(e);
      }
    }
    return s;
  }

 private:
  std::vector<std::pair<std::string, int>> factors_;
};

// ---------------------------------------------------------------------------
// Polynomial: sparse term map, monomial -> non-zero rational coefficient.
// Always kept in canonical form; values are immutable in spirit (all
// operations return new values) and safe to share across threads.
// ---------------------------------------------------------------------------

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(int v) { *this = constant(Rational(v)); }
  Polynomial(const Rational& v) { *this = constant(v); }

  static Polynomial constant(const Rational& v) {
    Polynomial p;
    if (v != 0) p.terms_.emplace(Monomial{}, v);
    return p;
  }

  static Polynomial one() { return constant(Rational(1)); }

  static Polynomial symbol(std::string name) {
    Polynomial p;
    p.terms_.emplace(Monomial::symbol(std::move(name)), Rational(1));
    return p;
  }

  /// Canonicalize an arbitrary term list: combine like monomials, drop zeros.
  static Polynomial from_terms(
      const std::vector<std::pair<Rational, Monomial>>& raw) {
    Polynomial p;
    for (const auto& [c, m] : raw) p.add_term(m, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() &&
           terms_.begin()->second == 1;
  }

  Rational constant_value() const {
    if (is_zero()) return Rational(0);
    if (!is_constant()) throw DomainError("polynomial is not constant: " + str());
    return terms_.begin()->second;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Exact substitution. Every symbol of the polynomial must be assigned.
  Rational eval(const std::map<std::string, Rational>& assignment) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [name, e] : m.factors()) {
        auto it = assignment.find(name);
        if (it == assignment.end())
          throw DomainError("unassigned symbol '" + name + "' in evaluation");
        for (int k = 0; k < e; ++k) t *= it->second;
      }
      total += t;
    }
    return total;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational a = c;
      if (first) {
        if (a < 0) {
          os << '-';
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      if (m.empty()) {
        os << a;
      } else {
        if (a != 1) os << a << '*';
        os << m.str();
      }
      first = false;
    }
    return os.str();
  }

  static Polynomial parse(std::string_view text);

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

/// Exact division in the polynomial ring. Returns nullopt when num is not a
/// polynomial multiple of den. den must be non-zero.
inline std::optional<Polynomial> exact_div(const Polynomial& num,
                                           const Polynomial& den) {
  if (den.is_zero()) throw DomainError("exact_div: division by zero polynomial");
  if (den.is_constant()) {
    Rational inv = Rational(1) / den.constant_value();
    std::vector<std::pair<Rational, Monomial>> t;
    for (const auto& [m, c] : num.terms()) t.emplace_back(c * inv, m);
    return Polynomial::from_terms(t);
  }
  auto graded_lead = [](const Polynomial& p) {
    auto it = p.terms().begin();
    auto best = it;
    for (++it; it != p.terms().end(); ++it)
      if (best->first.compare_graded(it->first) < 0) best = it;
    return best;
  };
  Polynomial q;
  Polynomial r = num;
  auto dl = graded_lead(den);
  while (!r.is_zero()) {
    auto rl = graded_lead(r);
    auto m = rl->first.divide_by(dl->first);
    if (!m) return std::nullopt;
    Polynomial t = Polynomial::from_terms({{rl->second / dl->second, *m}});
    q += t;
    r -= t * den;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Polynomial text form. Terms joined by " + " / " - ", symbols joined by "*",
// repeated symbols printed with "^", e.g. "2*v_1_1*v_2_2 - 1/3*v_3_3".
// Parsing accepts anything str() produces plus free ordering of rational
// factors inside a term.
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Polynomial run() {
    Polynomial p = parse_poly();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial text, offset " + std::to_string(pos_) + ": " +
                     what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  bool ident_start(char c) const {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  bool ident_char(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  boost::multiprecision::cpp_int parse_uint() {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a number");
    boost::multiprecision::cpp_int v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      ++pos_;
    }
    return v;
  }

  Rational parse_rational() {
    boost::multiprecision::cpp_int n = parse_uint();
    std::size_t save = pos_;
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      boost::multiprecision::cpp_int d = parse_uint();
      if (d == 0) fail("zero denominator");
      return Rational(n, d);
    }
    pos_ = save;
    return Rational(n);
  }

  std::string parse_ident() {
    std::string id;
    while (!at_end() && ident_char(peek())) id += s_[pos_++];
    return id;
  }

  // factor := rational | ident ['^' uint]
  void parse_factor(Rational& coef, Monomial& mono) {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef *= parse_rational();
      return;
    }
    if (!ident_start(peek())) fail("expected a symbol or number");
    std::string name = parse_ident();
    int e = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      auto v = parse_uint();
      if (v > 64) fail("exponent too large");
      e = static_cast<int>(v);
    }
    for (int k = 0; k < e; ++k) mono = mono * Monomial::symbol(name);
  }

  Polynomial parse_poly() {
    std::vector<std::pair<Rational, Monomial>> terms;
    skip_ws();
    bool neg = false;
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      neg = peek() == '-';
      ++pos_;
    }
    for (;;) {
      skip_ws();
      if (at_end()) fail("expected a term");
      Rational coef(1);
      Monomial mono;
      parse_factor(coef, mono);
      for (;;) {
        std::size_t save = pos_;
        skip_ws();
        if (at_end() || peek() != '*') {
          pos_ = save;
          break;
        }
        ++pos_;
        skip_ws();
        if (at_end()) fail("dangling '*'");
        parse_factor(coef, mono);
      }
      terms.emplace_back(neg ? -coef : coef, mono);
      skip_ws();
      if (at_end() || (peek() != '+' && peek() != '-')) break;
      neg = peek() == '-';
      ++pos_;
    }
    return Polynomial::from_terms(terms);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial Polynomial::parse(std::string_view text) {
  return detail::PolyParser(text).run();
}

// ---------------------------------------------------------------------------
// Weight symbols. Arc weights coming from a matrix follow the naming scheme
// "u_<i>_<j>_<l>" for the l-th term of entry (i, j); a single-term entry is
// rendered "v_<i>_<j>". Parsing then printing a name is the identity.
// ---------------------------------------------------------------------------

struct WeightSymbol {
  std::string name;
  int i = 0;
  int j = 0;
  int term_index = 1;
};

inline WeightSymbol weight_symbol(int i, int j, int term_index = 1,
                                  int term_count = 1) {
  if (i < 0 || j < 0 || term_index < 1 || term_count < 1 ||
      term_index > term_count)
    throw DomainError("invalid weight symbol indices");
  WeightSymbol w;
  w.i = i;
  w.j = j;
  w.term_index = term_index;
  if (term_count == 1) {
    w.name = "v_" + std::to_string(i) + "_" + std::to_string(j);
  } else {
    w.name = "u_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
             std::to_string(term_index);
  }
  return w;
}

inline std::optional<WeightSymbol> parse_weight_symbol(std::string_view name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : name) {
    if (c == '_') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  auto as_int = [](const std::string& s) -> std::optional<int> {
    if (s.empty()) return std::nullopt;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    return std::stoi(s);
  };
  WeightSymbol w;
  w.name = std::string(name);
  if (parts.size() == 3 && parts[0] == "v") {
    auto i = as_int(parts[1]), j = as_int(parts[2]);
    if (!i || !j) return std::nullopt;
    w.i = *i;
    w.j = *j;
    w.term_index = 1;
    return w;
  }
  if (parts.size() == 4 && parts[0] == "u") {
    auto i = as_int(parts[1]), j = as_int(parts[2]), l = as_int(parts[3]);
    if (!i || !j || !l || *l < 1) return std::nullopt;
    w.i = *i;
    w.j = *j;
    w.term_index = *l;
    return w;
  }
  return std::nullopt;
}

}  // namespace arbordet
