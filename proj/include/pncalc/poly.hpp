#pragma once

#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pncalc/chart.hpp"
#include "pncalc/errors.hpp"
#include "pncalc/rational.hpp"

namespace pncalc {

/// Exponent vector; entry i is the power of coordinate i of the chart.
using Monomial = std::vector<unsigned>;

/// Graded-lexicographic ascending order: lower total degree first, ties
/// broken lexicographically with earlier coordinates more significant.
/// The largest element under this order is the leading monomial.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned long da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Multivariate polynomial over the rationals in canonical form: a sorted
/// term map with no zero coefficients, attached to a chart that names the
/// variables. Two polynomials are equal iff their charts and term maps are;
/// in particular equality with zero decides identities exactly.
class Poly {
public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  static Poly zero(Chart chart) { return Poly(std::move(chart)); }

  static Poly constant(Chart chart, Rational value) {
    Poly p(std::move(chart));
    if (value != 0) p.terms_.emplace(Monomial(p.chart_.dim(), 0), std::move(value));
    return p;
  }

  static Poly variable(Chart chart, std::size_t i) {
    Poly p(std::move(chart));
    if (i >= p.chart_.dim())
      throw DimensionMismatch("variable index out of range");
    Monomial m(p.chart_.dim(), 0);
    m[i] = 1;
    p.terms_.emplace(std::move(m), 1);
    return p;
  }

  const Chart& chart() const noexcept { return chart_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  long degree() const {
    if (terms_.empty()) return -1;
    unsigned long d = 0;
    for (unsigned e : terms_.rbegin()->first) d += e;
    return static_cast<long>(d);
  }

  Poly& operator+=(const Poly& other) {
    require_same_chart(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }

  Poly& operator-=(const Poly& other) {
    require_same_chart(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }

  Poly operator+(const Poly& other) const {
    Poly r = *this;
    r += other;
    return r;
  }

  Poly operator-(const Poly& other) const {
    Poly r = *this;
    r -= other;
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Poly operator*(const Poly& other) const {
    require_same_chart(other);
    Poly r(chart_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : other.terms_) {
        Monomial m(chart_.dim());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(std::move(m), ca * cb);
      }
    return r;
  }

  Poly& operator*=(const Poly& other) { return *this = *this * other; }

  friend Poly operator*(const Rational& s, const Poly& p) {
    Poly r(p.chart_);
    if (s == 0) return r;
    r.terms_ = p.terms_;
    for (auto& [m, c] : r.terms_) c *= s;
    return r;
  }

  Poly pow(unsigned n) const {
    Poly r = constant(chart_, 1);
    for (unsigned k = 0; k < n; ++k) r *= *this;
    return r;
  }

  /// Partial derivative with respect to coordinate `var`.
  Poly differentiate(std::size_t var) const {
    if (var >= chart_.dim())
      throw DimensionMismatch("derivative index out of range");
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d[var] -= 1;
      r.add_term(std::move(d), c * m[var]);
    }
    return r;
  }

  /// Exact evaluation at a rational point (one value per coordinate).
  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != chart_.dim())
      throw DimensionMismatch("evaluation point has wrong dimension");
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  /// Floating-point evaluation, used only by the numeric cross-check path.
  double evaluate_double(std::span<const double> point) const {
    if (point.size() != chart_.dim())
      throw DimensionMismatch("evaluation point has wrong dimension");
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = to_double(c);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  /// Composition: replaces coordinate i by images[i] (all living on
  /// `target`) and returns the result on `target`.
  Poly substitute(const Chart& target, const std::vector<Poly>& images) const {
    if (images.size() != chart_.dim())
      throw DimensionMismatch("one substitution image per coordinate required");
    for (const auto& img : images)
      if (img.chart() != target)
        throw ChartMismatch("substitution image lives on the wrong chart");
    Poly acc(target);
    for (const auto& [m, c] : terms_) {
      Poly t = constant(target, c);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) t *= images[i].pow(m[i]);
      acc += t;
    }
    return acc;
  }

  /// Reinterprets the polynomial on a larger chart that contains every
  /// coordinate of the current chart by name (exponent remapping only).
  Poly embed(const Chart& target) const {
    std::vector<std::size_t> where(chart_.dim());
    for (std::size_t i = 0; i < chart_.dim(); ++i) {
      auto j = target.index(chart_.name(i));
      if (!j) throw UnknownVariable(chart_.name(i));
      where[i] = *j;
    }
    Poly r(target);
    for (const auto& [m, c] : terms_) {
      Monomial t(target.dim(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) t[where[i]] = m[i];
      r.add_term(std::move(t), c);
    }
    return r;
  }

  /// Positional renaming onto an equal-dimension chart (coordinate i of the
  /// current chart becomes coordinate i of `target`).
  Poly on_chart(const Chart& target) const {
    if (target.dim() != chart_.dim())
      throw DimensionMismatch("positional renaming needs equal dimensions");
    Poly r(target);
    r.terms_ = terms_;
    return r;
  }

  bool operator==(const Poly& other) const {
    return chart_ == other.chart_ && terms_ == other.terms_;
  }
  bool operator!=(const Poly& other) const { return !(*this == other); }

  /// Canonical text form; `parse_poly` reads it back verbatim. Terms are
  /// printed leading monomial first.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      bool negative = c < 0;
      if (first) {
        if (negative) out << "-";
      } else {
        out << (negative ? " - " : " + ");
      }
      Rational mag = negative ? Rational(-c) : c;
      out << term_body(m, mag, first && negative);
      first = false;
    }
    return out.str();
  }

private:
  explicit Poly(Chart chart) : chart_(std::move(chart)) {}

  void require_same_chart(const Poly& other) const {
    if (chart_ != other.chart_)
      throw ChartMismatch("operands live on different charts");
  }

  void add_term(Monomial m, Rational c) {
    if (c == 0) return;
    // try_emplace leaves its arguments untouched when the key already exists.
    auto [it, inserted] = terms_.try_emplace(std::move(m), std::move(c));
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // A leading unary minus binds to the first factor of the term, so "-x1^2"
  // would read back as (-x1)^2. When the leading term is negative and its
  // first factor carries an exponent, print the coefficient explicitly.
  std::string term_body(const Monomial& m, const Rational& mag,
                        bool leading_minus) const {
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      std::string f = chart_.name(i);
      if (m[i] > 1) f += "^" + std::to_string(m[i]);
      factors.push_back(std::move(f));
    }
    if (factors.empty()) return pncalc::to_string(mag);
    bool need_coeff = mag != 1;
    if (!need_coeff && leading_minus && factors.front().find('^') != std::string::npos)
      need_coeff = true;
    std::string body = need_coeff ? pncalc::to_string(mag) : std::string();
    for (const auto& f : factors) {
      if (!body.empty()) body += "*";
      body += f;
    }
    return body;
  }

  Chart chart_;
  TermMap terms_;
};

}  // namespace pncalc
