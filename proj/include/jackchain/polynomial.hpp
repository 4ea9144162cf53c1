#pragma once

// Sparse polynomials in countably many variables x_k, keyed by the multiset of
// variable indices, plus formal differential operators acting on them.
//
// The variable family is fixed by a traits type: its name, the smallest
// admissible index, and the filtration weight of x_k.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace jackchain {

/// Sorted multiset of variable indices; {2,2,3} is x_2^2 x_3.
using Monomial = std::vector<int>;

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Generators h_2, h_3, ... of the algebra of theta-regular functions; deg h_k = k - 1.
struct HTraits {
  static constexpr const char* name = "h";
  static constexpr int min_index = 2;
  static constexpr int weight(int k) { return k - 1; }
};

/// Moment coordinates q_1, q_2, ...; q_k stands for p°_{k+1}, so deg q_k = k + 1.
struct QTraits {
  static constexpr const char* name = "q";
  static constexpr int min_index = 1;
  static constexpr int weight(int k) { return k + 1; }
};

/// Newton power sums p_1, p_2, ... with deg p_k = k.
struct PTraits {
  static constexpr const char* name = "p";
  static constexpr int min_index = 1;
  static constexpr int weight(int k) { return k; }
};

template <class Traits>
class MonomialPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  MonomialPoly() = default;
  /// Constant polynomial (lets series code write Coeff(0), Coeff(1)).
  MonomialPoly(int c) { add_term({}, Rational(c)); }  // NOLINT(google-explicit-constructor)
  MonomialPoly(const Rational& c) { add_term({}, c); }  // NOLINT(google-explicit-constructor)

  static MonomialPoly variable(int k) {
    check_index(k);
    MonomialPoly out;
    out.add_term({k}, Rational(1));
    return out;
  }
  static MonomialPoly monomial(Monomial m, const Rational& c = 1) {
    std::sort(m.begin(), m.end());
    for (int k : m) check_index(k);
    MonomialPoly out;
    out.add_term(std::move(m), c);
    return out;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  static int monomial_degree(const Monomial& m) {
    int d = 0;
    for (int k : m) d += Traits::weight(k);
    return d;
  }
  /// Filtration degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }
  int max_index() const {
    int k = 0;
    for (const auto& [m, c] : terms_)
      if (!m.empty()) k = std::max(k, m.back());
    return k;
  }

  /// Terms of exactly the given degree.
  MonomialPoly component(int deg) const {
    MonomialPoly out;
    for (const auto& [m, c] : terms_)
      if (monomial_degree(m) == deg) out.terms_.emplace(m, c);
    return out;
  }

  void add_term(Monomial m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MonomialPoly& operator+=(const MonomialPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MonomialPoly& operator-=(const MonomialPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
    return *this;
  }
  friend MonomialPoly operator+(MonomialPoly a, const MonomialPoly& b) { return a += b; }
  friend MonomialPoly operator-(MonomialPoly a, const MonomialPoly& b) { return a -= b; }
  friend MonomialPoly operator-(const MonomialPoly& a) { return MonomialPoly() - a; }
  friend MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b) {
    MonomialPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
    return out;
  }
  friend MonomialPoly operator*(const MonomialPoly& a, const Rational& s) {
    MonomialPoly out;
    if (s == 0) return out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, c * s);
    return out;
  }
  friend MonomialPoly operator*(const Rational& s, const MonomialPoly& a) { return a * s; }
  bool operator==(const MonomialPoly& o) const { return terms_ == o.terms_; }

  MonomialPoly pow(unsigned e) const {
    MonomialPoly out(1);
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  /// Partial derivative with respect to x_k.
  MonomialPoly derivative(int k) const {
    MonomialPoly out;
    for (const auto& [m, c] : terms_) {
      const auto lo = std::lower_bound(m.begin(), m.end(), k);
      const auto hi = std::upper_bound(m.begin(), m.end(), k);
      const auto mult = hi - lo;
      if (mult == 0) continue;
      Monomial rest(m.begin(), lo);
      rest.insert(rest.end(), lo + 1, m.end());
      out.add_term(std::move(rest), c * static_cast<long>(mult));
    }
    return out;
  }

  /// Substitutes x_k -> value(k).
  template <class Value, class Fn>
  Value evaluate(Fn&& value) const {
    Value total(0);
    for (const auto& [m, c] : terms_) {
      Value term = to_value<Value>(c);
      for (int k : m) term = term * value(k);
      total = total + term;
    }
    return total;
  }

  /// "3/2 * h2^2 h3 + -1/1 * h4 + 5/1"; zero is "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) out += " + ";
      first = false;
      out += to_string(it->second);
      if (!it->first.empty()) out += " * " + monomial_str(it->first);
    }
    return out;
  }

  static std::string monomial_str(const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      if (!out.empty()) out += ' ';
      out += std::string(Traits::name) + std::to_string(m[i]);
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  /// Inverse of str(): terms "c", "c * x2^a x3^b", or a bare monomial "x2 x3".
  static MonomialPoly parse(std::string_view text) {
    MonomialPoly out;
    std::string s(text);
    if (trim(s) == "0") return out;
    // Split on '+' that separates terms (signs live inside rationals like -1/2).
    std::vector<std::string> pieces;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '+' && i > 0 && s[i - 1] == ' ') {
        pieces.push_back(cur);
        cur.clear();
      } else {
        cur += s[i];
      }
    }
    pieces.push_back(cur);
    for (auto piece : pieces) {
      piece = trim(piece);
      if (piece.empty()) throw ParseError("empty term in polynomial '" + s + "'");
      Rational c = 1;
      std::string mono;
      const auto star = piece.find('*');
      if (star != std::string::npos) {
        c = parse_rational(trim(piece.substr(0, star)));
        mono = trim(piece.substr(star + 1));
      } else if (piece.rfind(Traits::name, 0) == 0) {
        mono = piece;
      } else {
        c = parse_rational(piece);
      }
      out.add_term(parse_monomial(mono), c);
    }
    return out;
  }

 private:
  static void check_index(int k) {
    if (k < Traits::min_index)
      throw std::invalid_argument(std::string("variable index below minimum for ") + Traits::name);
  }

  template <class Value>
  static Value to_value(const Rational& c) {
    if constexpr (std::is_same_v<Value, double>)
      return c.get_d();
    else
      return Value(c);
  }

  static std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  }

  static Monomial parse_monomial(const std::string& text) {
    Monomial m;
    std::stringstream ss(text);
    std::string factor;
    const std::string name = Traits::name;
    while (ss >> factor) {
      if (factor.rfind(name, 0) != 0) throw ParseError("bad factor '" + factor + "'");
      std::string rest = factor.substr(name.size());
      int power = 1;
      const auto caret = rest.find('^');
      if (caret != std::string::npos) {
        power = std::stoi(rest.substr(caret + 1));
        rest = rest.substr(0, caret);
      }
      if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos || power < 1)
        throw ParseError("bad factor '" + factor + "'");
      const int k = std::stoi(rest);
      check_index(k);
      for (int i = 0; i < power; ++i) m.push_back(k);
    }
    std::sort(m.begin(), m.end());
    return m;
  }

  Terms terms_;
};

using ShiftedSymPoly = MonomialPoly<HTraits>;
using QPoly = MonomialPoly<QTraits>;
using SymFunction = MonomialPoly<PTraits>;

/// Raised when an operator leaves a filtered subspace it was expected to preserve.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sum of terms coeff(x) * d^|derivs| / prod dx_k. Only derivatives with index
/// <= max_index are represented, so the operator is exact on polynomials whose
/// variables all have index <= max_index.
template <class Traits>
class DiffOperator {
 public:
  using Poly = MonomialPoly<Traits>;
  struct Term {
    Poly coeff;
    Monomial derivs;
  };

  DiffOperator(int max_index, int degree_shift) : max_index_(max_index), degree_shift_(degree_shift) {}

  int max_index() const noexcept { return max_index_; }
  /// Claimed bound: deg(op f) <= deg f + degree_shift.
  int degree_shift() const noexcept { return degree_shift_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  void add(Poly coeff, Monomial derivs) {
    if (coeff.is_zero()) return;
    std::sort(derivs.begin(), derivs.end());
    if (!derivs.empty() && derivs.back() > max_index_) return;
    for (auto& t : terms_)
      if (t.derivs == derivs) {
        t.coeff += coeff;
        return;
      }
    terms_.push_back({std::move(coeff), std::move(derivs)});
  }

  /// Coefficient attached to a derivative multiset (zero if absent).
  Poly coefficient(Monomial derivs) const {
    std::sort(derivs.begin(), derivs.end());
    for (const auto& t : terms_)
      if (t.derivs == derivs) return t.coeff;
    return Poly();
  }

  Poly apply(const Poly& f) const {
    if (f.max_index() > max_index_)
      throw std::out_of_range("operator truncated below the variables of its argument");
    Poly out;
    for (const auto& t : terms_) {
      Poly g = f;
      for (int k : t.derivs) {
        g = g.derivative(k);
        if (g.is_zero()) break;
      }
      if (!g.is_zero()) out += t.coeff * g;
    }
    return out;
  }

  DiffOperator& operator+=(const DiffOperator& o) {
    for (const auto& t : o.terms_) add(t.coeff, t.derivs);
    return *this;
  }

 private:
  int max_index_;
  int degree_shift_;
  std::vector<Term> terms_;
};

/// All monomials of filtration degree <= max_degree, ordered by degree, then
/// reverse-lexicographically on the descending index sequence.
template <class Traits>
std::vector<Monomial> monomial_basis(int max_degree) {
  std::vector<std::vector<Monomial>> by_degree(static_cast<std::size_t>(std::max(max_degree, 0) + 1));
  // Depth-first over descending index sequences.
  std::function<void(Monomial&, int, int)> rec = [&](Monomial& desc, int max_k, int deg) {
    Monomial asc(desc.rbegin(), desc.rend());
    by_degree[static_cast<std::size_t>(deg)].push_back(asc);
    for (int k = max_k; k >= Traits::min_index; --k) {
      const int w = Traits::weight(k);
      if (w <= 0 || deg + w > max_degree) continue;
      desc.push_back(k);
      rec(desc, k, deg + w);
      desc.pop_back();
    }
  };
  if (max_degree < 0) return {};
  Monomial start;
  int top = Traits::min_index;
  while (Traits::weight(top + 1) <= max_degree) ++top;
  rec(start, top, 0);
  std::vector<Monomial> out;
  for (auto& level : by_degree) {
    std::sort(level.begin(), level.end(), [](const Monomial& a, const Monomial& b) {
      return std::lexicographical_compare(b.rbegin(), b.rend(), a.rbegin(), a.rend());
    });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace jackchain
