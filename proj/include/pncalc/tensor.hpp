#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pncalc/chart.hpp"
#include "pncalc/errors.hpp"
#include "pncalc/poly.hpp"

namespace pncalc {

/// First nonzero component of a tensor, for failure reporting.
struct Witness {
  std::string component;  ///< 1-based index label, e.g. "(1,2)"
  std::string value;      ///< printed polynomial
};

namespace detail {

inline void require_component_count(const Chart& chart,
                                    const std::vector<Poly>& comps,
                                    std::size_t expected) {
  if (comps.size() != expected)
    throw DimensionMismatch("expected " + std::to_string(expected) +
                            " components, got " + std::to_string(comps.size()));
  for (const auto& p : comps)
    if (p.chart() != chart)
      throw ChartMismatch("component lives on the wrong chart");
}

inline std::string index_label(std::initializer_list<std::size_t> idx) {
  std::string s = "(";
  bool first = true;
  for (std::size_t i : idx) {
    if (!first) s += ",";
    s += std::to_string(i + 1);
    first = false;
  }
  return s + ")";
}

}  // namespace detail

/// X = Σᵢ Xⁱ ∂ᵢ on a chart.
class VectorField {
public:
  VectorField(Chart chart, std::vector<Poly> components)
      : chart_(std::move(chart)), comps_(std::move(components)) {
    detail::require_component_count(chart_, comps_, chart_.dim());
  }

  static VectorField zero(Chart chart) {
    std::vector<Poly> c(chart.dim(), Poly::zero(chart));
    return VectorField(std::move(chart), std::move(c));
  }

  /// The coordinate field ∂ᵢ.
  static VectorField coordinate(Chart chart, std::size_t i) {
    VectorField v = zero(chart);
    v.comps_.at(i) = Poly::constant(chart, 1);
    return v;
  }

  const Chart& chart() const noexcept { return chart_; }
  const Poly& component(std::size_t i) const { return comps_.at(i); }
  const std::vector<Poly>& components() const noexcept { return comps_; }

  /// Directional derivative X(f) = Σᵢ Xⁱ ∂ᵢf.
  Poly apply(const Poly& f) const {
    if (f.chart() != chart_) throw ChartMismatch("function on wrong chart");
    Poly acc = Poly::zero(chart_);
    for (std::size_t i = 0; i < comps_.size(); ++i)
      acc += comps_[i] * f.differentiate(i);
    return acc;
  }

  VectorField operator+(const VectorField& o) const {
    std::vector<Poly> c;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      c.push_back(comps_[i] + o.component(i));
    return VectorField(chart_, std::move(c));
  }

  VectorField operator-() const {
    std::vector<Poly> c;
    for (const auto& p : comps_) c.push_back(-p);
    return VectorField(chart_, std::move(c));
  }

  VectorField operator-(const VectorField& o) const { return *this + (-o); }

  /// Module action f·X.
  VectorField scaled(const Poly& f) const {
    std::vector<Poly> c;
    for (const auto& p : comps_) c.push_back(f * p);
    return VectorField(chart_, std::move(c));
  }

  bool is_zero() const {
    for (const auto& p : comps_)
      if (!p.is_zero()) return false;
    return true;
  }

  std::optional<Witness> first_nonzero() const {
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (!comps_[i].is_zero())
        return Witness{detail::index_label({i}), comps_[i].to_string()};
    return std::nullopt;
  }

  bool operator==(const VectorField& o) const {
    return chart_ == o.chart_ && comps_ == o.comps_;
  }

private:
  Chart chart_;
  std::vector<Poly> comps_;
};

/// α = Σᵢ αᵢ dxⁱ on a chart.
class OneForm {
public:
  OneForm(Chart chart, std::vector<Poly> components)
      : chart_(std::move(chart)), comps_(std::move(components)) {
    detail::require_component_count(chart_, comps_, chart_.dim());
  }

  static OneForm zero(Chart chart) {
    std::vector<Poly> c(chart.dim(), Poly::zero(chart));
    return OneForm(std::move(chart), std::move(c));
  }

  /// The coordinate coframe element dxⁱ.
  static OneForm coordinate(Chart chart, std::size_t i) {
    OneForm a = zero(chart);
    a.comps_.at(i) = Poly::constant(chart, 1);
    return a;
  }

  const Chart& chart() const noexcept { return chart_; }
  const Poly& component(std::size_t i) const { return comps_.at(i); }
  const std::vector<Poly>& components() const noexcept { return comps_; }

  /// Pairing ⟨α, X⟩ = Σᵢ αᵢ Xⁱ.
  Poly pair(const VectorField& X) const {
    if (X.chart() != chart_) throw ChartMismatch("pairing across charts");
    Poly acc = Poly::zero(chart_);
    for (std::size_t i = 0; i < comps_.size(); ++i)
      acc += comps_[i] * X.component(i);
    return acc;
  }

  OneForm operator+(const OneForm& o) const {
    std::vector<Poly> c;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      c.push_back(comps_[i] + o.component(i));
    return OneForm(chart_, std::move(c));
  }

  OneForm operator-() const {
    std::vector<Poly> c;
    for (const auto& p : comps_) c.push_back(-p);
    return OneForm(chart_, std::move(c));
  }

  OneForm operator-(const OneForm& o) const { return *this + (-o); }

  OneForm scaled(const Poly& f) const {
    std::vector<Poly> c;
    for (const auto& p : comps_) c.push_back(f * p);
    return OneForm(chart_, std::move(c));
  }

  bool is_zero() const {
    for (const auto& p : comps_)
      if (!p.is_zero()) return false;
    return true;
  }

  std::optional<Witness> first_nonzero() const {
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (!comps_[i].is_zero())
        return Witness{detail::index_label({i}), comps_[i].to_string()};
    return std::nullopt;
  }

  bool operator==(const OneForm& o) const {
    return chart_ == o.chart_ && comps_ == o.comps_;
  }

private:
  Chart chart_;
  std::vector<Poly> comps_;
};

/// Antisymmetric (2,0)-tensor Π = ½ Σ Π^{ij} ∂ᵢ∧∂ⱼ. Only the strict upper
/// triangle is stored; entry(i,j) applies the sign for other index orders.
class Bivector {
public:
  /// Builds from a full matrix, which must be exactly antisymmetric.
  Bivector(Chart chart, const std::vector<std::vector<Poly>>& matrix)
      : chart_(std::move(chart)) {
    std::size_t d = chart_.dim();
    if (matrix.size() != d)
      throw DimensionMismatch("bivector matrix has wrong row count");
    for (const auto& row : matrix)
      if (row.size() != d)
        throw DimensionMismatch("bivector matrix has wrong column count");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (matrix[i][j].chart() != chart_)
          throw ChartMismatch("bivector entry lives on the wrong chart");
        if (!(matrix[i][j] + matrix[j][i]).is_zero())
          throw NotAntisymmetric("bivector matrix is not antisymmetric at " +
                                 detail::index_label({i, j}));
      }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) upper_.push_back(matrix[i][j]);
  }

  static Bivector zero(Chart chart) {
    Bivector b(std::move(chart));
    b.upper_.assign(b.upper_count(), Poly::zero(b.chart_));
    return b;
  }

  /// ∂ᵢ∧∂ⱼ (entry (i,j) = 1), i < j.
  static Bivector wedge(Chart chart, std::size_t i, std::size_t j) {
    Bivector b = zero(chart);
    b.set_upper(i, j, Poly::constant(b.chart_, 1));
    return b;
  }

  /// Builder: starts at zero; set_upper overwrites an i<j slot.
  static Bivector build(Chart chart) { return zero(std::move(chart)); }

  void set_upper(std::size_t i, std::size_t j, Poly value) {
    if (!(i < j) || j >= chart_.dim())
      throw DimensionMismatch("set_upper requires i < j < dim");
    if (value.chart() != chart_) throw ChartMismatch("entry on wrong chart");
    upper_.at(slot(i, j)) = std::move(value);
  }

  const Chart& chart() const noexcept { return chart_; }

  /// Signed entry Π^{ij} for any index order.
  Poly entry(std::size_t i, std::size_t j) const {
    if (i >= chart_.dim() || j >= chart_.dim())
      throw DimensionMismatch("bivector index out of range");
    if (i == j) return Poly::zero(chart_);
    if (i < j) return upper_.at(slot(i, j));
    return -upper_.at(slot(j, i));
  }

  /// Π(α, β) = Σ_{ij} Π^{ij} αᵢ βⱼ.
  Poly pair(const OneForm& a, const OneForm& b) const {
    if (a.chart() != chart_ || b.chart() != chart_)
      throw ChartMismatch("pairing across charts");
    Poly acc = Poly::zero(chart_);
    for (std::size_t i = 0; i < chart_.dim(); ++i)
      for (std::size_t j = i + 1; j < chart_.dim(); ++j) {
        const Poly& u = upper_.at(slot(i, j));
        acc += u * (a.component(i) * b.component(j) -
                    a.component(j) * b.component(i));
      }
    return acc;
  }

  Bivector operator+(const Bivector& o) const {
    if (chart_ != o.chart_) throw ChartMismatch("bivector sum across charts");
    Bivector r = *this;
    for (std::size_t s = 0; s < upper_.size(); ++s) r.upper_[s] += o.upper_[s];
    return r;
  }

  Bivector operator-(const Bivector& o) const {
    if (chart_ != o.chart_) throw ChartMismatch("bivector diff across charts");
    Bivector r = *this;
    for (std::size_t s = 0; s < upper_.size(); ++s) r.upper_[s] -= o.upper_[s];
    return r;
  }

  Bivector scaled(const Poly& f) const {
    Bivector r = *this;
    for (auto& u : r.upper_) u = f * u;
    return r;
  }

  bool is_zero() const {
    for (const auto& p : upper_)
      if (!p.is_zero()) return false;
    return true;
  }

  std::optional<Witness> first_nonzero() const {
    for (std::size_t i = 0; i < chart_.dim(); ++i)
      for (std::size_t j = i + 1; j < chart_.dim(); ++j)
        if (!upper_.at(slot(i, j)).is_zero())
          return Witness{detail::index_label({i, j}),
                         upper_.at(slot(i, j)).to_string()};
    return std::nullopt;
  }

  bool operator==(const Bivector& o) const {
    return chart_ == o.chart_ && upper_ == o.upper_;
  }

private:
  explicit Bivector(Chart chart) : chart_(std::move(chart)) {}

  std::size_t upper_count() const {
    std::size_t d = chart_.dim();
    return d * (d - 1) / 2;
  }

  // Row-major position of (i,j), i < j, within the strict upper triangle.
  std::size_t slot(std::size_t i, std::size_t j) const {
    std::size_t d = chart_.dim();
    return i * d - i * (i + 1) / 2 + (j - i - 1);
  }

  Chart chart_;
  std::vector<Poly> upper_;
};

/// Totally antisymmetric (3,0)-tensor, stored on sorted triples i<j<k.
/// Structurally zero on charts of dimension < 3.
class Trivector {
public:
  static Trivector zero(Chart chart) {
    Trivector t(std::move(chart));
    t.comps_.assign(t.triple_count(), Poly::zero(t.chart_));
    return t;
  }

  const Chart& chart() const noexcept { return chart_; }

  void set_sorted(std::size_t i, std::size_t j, std::size_t k, Poly value) {
    if (!(i < j && j < k) || k >= chart_.dim())
      throw DimensionMismatch("set_sorted requires i < j < k < dim");
    if (value.chart() != chart_) throw ChartMismatch("entry on wrong chart");
    comps_.at(slot(i, j, k)) = std::move(value);
  }

  /// Signed component T^{ijk} for any index order (zero on repeats).
  Poly entry(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= chart_.dim() || j >= chart_.dim() || k >= chart_.dim())
      throw DimensionMismatch("trivector index out of range");
    if (i == j || j == k || i == k) return Poly::zero(chart_);
    // Sort the triple, tracking the permutation sign.
    std::size_t a = i, b = j, c = k;
    int sign = 1;
    if (a > b) { std::swap(a, b); sign = -sign; }
    if (b > c) { std::swap(b, c); sign = -sign; }
    if (a > b) { std::swap(a, b); sign = -sign; }
    const Poly& p = comps_.at(slot(a, b, c));
    return sign > 0 ? p : -p;
  }

  bool is_zero() const {
    for (const auto& p : comps_)
      if (!p.is_zero()) return false;
    return true;
  }

  std::optional<Witness> first_nonzero() const {
    std::size_t d = chart_.dim();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k)
          if (!comps_.at(slot(i, j, k)).is_zero())
            return Witness{detail::index_label({i, j, k}),
                           comps_.at(slot(i, j, k)).to_string()};
    return std::nullopt;
  }

  bool operator==(const Trivector& o) const {
    return chart_ == o.chart_ && comps_ == o.comps_;
  }

private:
  explicit Trivector(Chart chart) : chart_(std::move(chart)) {}

  std::size_t triple_count() const {
    std::size_t d = chart_.dim();
    return d < 3 ? 0 : d * (d - 1) * (d - 2) / 6;
  }

  std::size_t slot(std::size_t i, std::size_t j, std::size_t k) const {
    // Lexicographic rank of the sorted triple (i,j,k) among all sorted
    // triples from {0..d-1}.
    std::size_t d = chart_.dim();
    auto c2 = [](std::size_t n) { return n * (n - 1) / 2; };
    auto c3 = [](std::size_t n) { return n * (n - 1) * (n - 2) / 6; };
    return c3(d) - c3(d - i) + c2(d - 1 - i) - c2(d - j) + (k - j - 1);
  }

  Chart chart_;
  std::vector<Poly> comps_;
};

/// (1,1)-tensor field N with (NX)ⁱ = Σⱼ Nⁱⱼ Xʲ; N* acts on one-forms by
/// the transpose.
class EndoField {
public:
  EndoField(Chart chart, std::vector<std::vector<Poly>> matrix)
      : chart_(std::move(chart)), m_(std::move(matrix)) {
    std::size_t d = chart_.dim();
    if (m_.size() != d) throw DimensionMismatch("endo matrix row count");
    for (const auto& row : m_) {
      if (row.size() != d) throw DimensionMismatch("endo matrix column count");
      for (const auto& p : row)
        if (p.chart() != chart_)
          throw ChartMismatch("endo entry lives on the wrong chart");
    }
  }

  static EndoField identity(Chart chart) {
    std::size_t d = chart.dim();
    std::vector<std::vector<Poly>> m(d, std::vector<Poly>(d, Poly::zero(chart)));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = Poly::constant(chart, 1);
    return EndoField(std::move(chart), std::move(m));
  }

  static EndoField zero(Chart chart) {
    std::size_t d = chart.dim();
    std::vector<std::vector<Poly>> m(d, std::vector<Poly>(d, Poly::zero(chart)));
    return EndoField(std::move(chart), std::move(m));
  }

  const Chart& chart() const noexcept { return chart_; }
  const Poly& entry(std::size_t i, std::size_t j) const { return m_.at(i).at(j); }

  VectorField apply(const VectorField& X) const {
    if (X.chart() != chart_) throw ChartMismatch("endo applied across charts");
    std::vector<Poly> c;
    for (std::size_t i = 0; i < chart_.dim(); ++i) {
      Poly acc = Poly::zero(chart_);
      for (std::size_t j = 0; j < chart_.dim(); ++j)
        acc += m_[i][j] * X.component(j);
      c.push_back(std::move(acc));
    }
    return VectorField(chart_, std::move(c));
  }

  /// N*α, the transpose action on one-forms: (N*α)ᵢ = Σⱼ Nʲᵢ αⱼ.
  OneForm apply_transpose(const OneForm& a) const {
    if (a.chart() != chart_) throw ChartMismatch("endo applied across charts");
    std::vector<Poly> c;
    for (std::size_t i = 0; i < chart_.dim(); ++i) {
      Poly acc = Poly::zero(chart_);
      for (std::size_t j = 0; j < chart_.dim(); ++j)
        acc += m_[j][i] * a.component(j);
      c.push_back(std::move(acc));
    }
    return OneForm(chart_, std::move(c));
  }

  bool operator==(const EndoField& o) const {
    return chart_ == o.chart_ && m_ == o.m_;
  }

private:
  Chart chart_;
  std::vector<std::vector<Poly>> m_;
};

/// Rank-(1,2) tensor τᵏᵢⱼ, antisymmetric in (i,j); only i<j slots stored.
class TorsionTensor {
public:
  static TorsionTensor zero(Chart chart) {
    TorsionTensor t(std::move(chart));
    std::size_t d = t.chart_.dim();
    t.comps_.assign(d * (d * (d - 1) / 2), Poly::zero(t.chart_));
    return t;
  }

  const Chart& chart() const noexcept { return chart_; }

  void set_sorted(std::size_t k, std::size_t i, std::size_t j, Poly value) {
    if (!(i < j) || j >= chart_.dim() || k >= chart_.dim())
      throw DimensionMismatch("set_sorted requires i < j < dim, k < dim");
    if (value.chart() != chart_) throw ChartMismatch("entry on wrong chart");
    comps_.at(slot(k, i, j)) = std::move(value);
  }

  /// Signed entry τᵏᵢⱼ for any (i,j) order.
  Poly entry(std::size_t k, std::size_t i, std::size_t j) const {
    if (i >= chart_.dim() || j >= chart_.dim() || k >= chart_.dim())
      throw DimensionMismatch("torsion index out of range");
    if (i == j) return Poly::zero(chart_);
    if (i < j) return comps_.at(slot(k, i, j));
    return -comps_.at(slot(k, j, i));
  }

  /// Contraction τ(X,Y)ᵏ = Σ_{ij} τᵏᵢⱼ Xⁱ Yʲ.
  VectorField contract(const VectorField& X, const VectorField& Y) const {
    if (X.chart() != chart_ || Y.chart() != chart_)
      throw ChartMismatch("contraction across charts");
    std::vector<Poly> out;
    for (std::size_t k = 0; k < chart_.dim(); ++k) {
      Poly acc = Poly::zero(chart_);
      for (std::size_t i = 0; i < chart_.dim(); ++i)
        for (std::size_t j = i + 1; j < chart_.dim(); ++j)
          acc += comps_.at(slot(k, i, j)) *
                 (X.component(i) * Y.component(j) -
                  X.component(j) * Y.component(i));
      out.push_back(std::move(acc));
    }
    return VectorField(chart_, std::move(out));
  }

  bool is_zero() const {
    for (const auto& p : comps_)
      if (!p.is_zero()) return false;
    return true;
  }

  std::optional<Witness> first_nonzero() const {
    std::size_t d = chart_.dim();
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
          if (!comps_.at(slot(k, i, j)).is_zero())
            return Witness{detail::index_label({k, i, j}),
                           comps_.at(slot(k, i, j)).to_string()};
    return std::nullopt;
  }

  bool operator==(const TorsionTensor& o) const {
    return chart_ == o.chart_ && comps_ == o.comps_;
  }

private:
  explicit TorsionTensor(Chart chart) : chart_(std::move(chart)) {}

  std::size_t slot(std::size_t k, std::size_t i, std::size_t j) const {
    std::size_t d = chart_.dim();
    std::size_t pair = i * d - i * (i + 1) / 2 + (j - i - 1);
    return k * (d * (d - 1) / 2) + pair;
  }

  Chart chart_;
  std::vector<Poly> comps_;
};

/// Rank-(2,1) tensor Cᵢⱼᵏ with C(dxⁱ, dxʲ) = Σₖ Cᵢⱼᵏ dxᵏ; full storage
/// (no symmetry assumed — skew-symmetry in (i,j) is a reported check).
class ConcomitantTensor {
public:
  static ConcomitantTensor zero(Chart chart) {
    ConcomitantTensor t(std::move(chart));
    std::size_t d = t.chart_.dim();
    t.comps_.assign(d * d * d, Poly::zero(t.chart_));
    return t;
  }

  const Chart& chart() const noexcept { return chart_; }

  void set(std::size_t i, std::size_t j, std::size_t k, Poly value) {
    if (value.chart() != chart_) throw ChartMismatch("entry on wrong chart");
    comps_.at(slot(i, j, k)) = std::move(value);
  }

  const Poly& entry(std::size_t i, std::size_t j, std::size_t k) const {
    return comps_.at(slot(i, j, k));
  }

  /// C(α,β) for arbitrary one-forms, by tensorial contraction.
  OneForm contract(const OneForm& a, const OneForm& b) const {
    if (a.chart() != chart_ || b.chart() != chart_)
      throw ChartMismatch("contraction across charts");
    std::size_t d = chart_.dim();
    std::vector<Poly> out(d, Poly::zero(chart_));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          out[k] += entry(i, j, k) * a.component(i) * b.component(j);
    return OneForm(chart_, std::move(out));
  }

  bool is_zero() const {
    for (const auto& p : comps_)
      if (!p.is_zero()) return false;
    return true;
  }

  std::optional<Witness> first_nonzero() const {
    std::size_t d = chart_.dim();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          if (!entry(i, j, k).is_zero())
            return Witness{detail::index_label({i, j, k}),
                           entry(i, j, k).to_string()};
    return std::nullopt;
  }

  bool operator==(const ConcomitantTensor& o) const {
    return chart_ == o.chart_ && comps_ == o.comps_;
  }

private:
  explicit ConcomitantTensor(Chart chart) : chart_(std::move(chart)) {}

  std::size_t slot(std::size_t i, std::size_t j, std::size_t k) const {
    std::size_t d = chart_.dim();
    if (i >= d || j >= d || k >= d)
      throw DimensionMismatch("concomitant index out of range");
    return (i * d + j) * d + k;
  }

  Chart chart_;
  std::vector<Poly> comps_;
};

}  // namespace pncalc
