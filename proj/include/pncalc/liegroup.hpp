#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pncalc/calculus.hpp"
#include "pncalc/liealg.hpp"
#include "pncalc/report.hpp"
#include "pncalc/tensor.hpp"

namespace pncalc {

namespace grpdetail {

/// Fresh block of `count` identifiers `<stem>1..<stem>count` avoiding every
/// name in `taken`; the stem is doubled until the whole block is collision
/// free.
inline std::vector<std::string> fresh_names(const std::vector<std::string>& taken,
                                            std::size_t count,
                                            std::string stem = "z") {
  auto used = [&](const std::string& s) {
    for (const auto& t : taken)
      if (t == s) return true;
    return false;
  };
  for (;;) {
    bool clash = false;
    for (std::size_t i = 0; i < count && !clash; ++i)
      clash = used(stem + std::to_string(i + 1));
    if (!clash) break;
    stem += stem;
  }
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

/// Exact determinant by cofactor expansion along the first row.
inline Poly det(const std::vector<std::vector<Poly>>& m, const Chart& ch) {
  std::size_t d = m.size();
  if (d == 1) return m[0][0];
  Poly acc = Poly::zero(ch);
  for (std::size_t j = 0; j < d; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    minor.reserve(d - 1);
    for (std::size_t r = 1; r < d; ++r) {
      std::vector<Poly> row;
      row.reserve(d - 1);
      for (std::size_t c = 0; c < d; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Poly cof = m[0][j] * det(minor, ch);
    if (j % 2)
      acc -= cof;
    else
      acc += cof;
  }
  return acc;
}

/// Matrix with row r and column c struck out.
inline std::vector<std::vector<Poly>> strike(
    const std::vector<std::vector<Poly>>& m, std::size_t r, std::size_t c) {
  std::vector<std::vector<Poly>> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == r) continue;
    std::vector<Poly> row;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != c) row.push_back(m[i][j]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace grpdetail

/// Polynomial-coordinatized Lie group: multiplication μ on a doubled chart
/// whose first block repeats the group chart, inverse ι on the group chart,
/// identity at the origin. Construction checks shapes only; the group axioms
/// are the business of group_verify.
class PolyGroup {
public:
  PolyGroup(Chart chart, Chart double_chart, std::vector<Poly> mu,
            std::vector<Poly> inv)
      : chart_(std::move(chart)),
        double_chart_(std::move(double_chart)),
        mu_(std::move(mu)),
        inv_(std::move(inv)) {
    std::size_t d = chart_.dim();
    if (double_chart_.dim() != 2 * d)
      throw DimensionMismatch("doubled chart must have twice the dimension");
    for (std::size_t i = 0; i < d; ++i)
      if (double_chart_.name(i) != chart_.name(i))
        throw ChartMismatch("doubled chart must start with the group chart");
    if (mu_.size() != d) throw DimensionMismatch("multiplication component count");
    for (const auto& p : mu_)
      if (p.chart() != double_chart_)
        throw ChartMismatch("multiplication lives on the doubled chart");
    if (inv_.size() != d) throw DimensionMismatch("inverse component count");
    for (const auto& p : inv_)
      if (p.chart() != chart_)
        throw ChartMismatch("inverse lives on the group chart");
  }

  const Chart& chart() const noexcept { return chart_; }
  const Chart& double_chart() const noexcept { return double_chart_; }
  std::size_t dim() const noexcept { return chart_.dim(); }
  const std::vector<Poly>& mu() const noexcept { return mu_; }
  const std::vector<Poly>& inv() const noexcept { return inv_; }

  /// μ with both slots substituted by polynomial images on `target`.
  std::vector<Poly> mu_at(const std::vector<Poly>& first,
                          const std::vector<Poly>& second,
                          const Chart& target) const {
    std::size_t d = dim();
    if (first.size() != d || second.size() != d)
      throw DimensionMismatch("substitution image count");
    std::vector<Poly> images;
    images.reserve(2 * d);
    for (const auto& p : first) images.push_back(p);
    for (const auto& p : second) images.push_back(p);
    std::vector<Poly> out;
    out.reserve(d);
    for (const auto& m : mu_) out.push_back(m.substitute(target, images));
    return out;
  }

private:
  Chart chart_;
  Chart double_chart_;
  std::vector<Poly> mu_;
  std::vector<Poly> inv_;
};

/// Exact verdicts on the group axioms:
///   identity_right  μ(x,0) = x
///   identity_left   μ(0,y) = y
///   associativity   μ(μ(x,y),z) = μ(x,μ(y,z))
///   inverse         μ(x,ι(x)) = 0
///   jacobian_det    det of the right-translation Jacobian is a nonzero
///                   constant (keeps the inverse Jacobian polynomial)
inline StructureReport group_verify_report(const PolyGroup& G) {
  const Chart& ch = G.chart();
  std::size_t d = G.dim();
  StructureReport r;

  auto vars = [](const Chart& c, std::size_t from, std::size_t n) {
    std::vector<Poly> v;
    for (std::size_t i = 0; i < n; ++i)
      v.push_back(Poly::variable(c, from + i));
    return v;
  };
  auto zeros = [](const Chart& c, std::size_t n) {
    return std::vector<Poly>(n, Poly::zero(c));
  };
  auto first_diff = [](const std::vector<Poly>& got,
                       const std::vector<Poly>& want)
      -> std::optional<Witness> {
    for (std::size_t k = 0; k < got.size(); ++k) {
      Poly diff = got[k] - want[k];
      if (!diff.is_zero())
        return Witness{detail::index_label({k}), diff.to_string()};
    }
    return std::nullopt;
  };

  {
    auto got = G.mu_at(vars(ch, 0, d), zeros(ch, d), ch);
    auto w = first_diff(got, vars(ch, 0, d));
    r.add(Check::from_zero_test("identity_right", !w, std::move(w)));
  }
  {
    auto got = G.mu_at(zeros(ch, d), vars(ch, 0, d), ch);
    auto w = first_diff(got, vars(ch, 0, d));
    r.add(Check::from_zero_test("identity_left", !w, std::move(w)));
  }
  {
    // Tripled chart (x; y; z) with a fresh z-block.
    std::vector<std::string> names = G.double_chart().names();
    auto zextra = grpdetail::fresh_names(names, d);
    names.insert(names.end(), zextra.begin(), zextra.end());
    Chart triple(names);
    auto x = vars(triple, 0, d);
    auto y = vars(triple, d, d);
    auto z = vars(triple, 2 * d, d);
    auto xy = G.mu_at(x, y, triple);
    auto yz = G.mu_at(y, z, triple);
    auto lhs = G.mu_at(xy, z, triple);
    auto rhs = G.mu_at(x, yz, triple);
    auto w = first_diff(lhs, rhs);
    r.add(Check::from_zero_test("associativity", !w, std::move(w)));
  }
  {
    auto got = G.mu_at(vars(ch, 0, d), G.inv(), ch);
    auto w = first_diff(got, zeros(ch, d));
    r.add(Check::from_zero_test("inverse", !w, std::move(w)));
  }
  {
    // Right Jacobian Jᵏᵢ(g) = ∂μᵏ(x,g)/∂xᵢ at x = 0, built inline so the
    // check reports instead of throwing.
    std::vector<Poly> gvars = vars(ch, 0, d);
    std::vector<Poly> origin = zeros(ch, d);
    std::vector<std::vector<Poly>> J(d, std::vector<Poly>(d, Poly::zero(ch)));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        J[k][i] = G.mu()[k].differentiate(i).substitute(
            ch, [&] {
              std::vector<Poly> images = origin;
              images.insert(images.end(), gvars.begin(), gvars.end());
              return images;
            }());
    Poly det = grpdetail::det(J, ch);
    bool ok = det.degree() == 0;  // nonzero constant
    std::optional<Witness> w;
    if (!ok) w = Witness{"det", det.to_string()};
    Check c = Check::from_zero_test("jacobian_det", ok, std::move(w));
    if (!ok)
      c.note = det.is_zero() ? "determinant vanishes"
                             : "determinant is not constant";
    r.add(std::move(c));
  }
  return r;
}

inline bool group_verify(const PolyGroup& G) {
  return group_verify_report(G).overall_pass();
}

/// Jacobian of right translation, Jᵏᵢ(g) = ∂μᵏ(x,g)/∂xᵢ at x = 0, together
/// with its (constant, nonzero) determinant and polynomial inverse.
class RightJacobian {
public:
  explicit RightJacobian(const PolyGroup& G) : chart_(G.chart()) {
    std::size_t d = G.dim();
    std::vector<Poly> images;
    for (std::size_t i = 0; i < d; ++i) images.push_back(Poly::zero(chart_));
    for (std::size_t i = 0; i < d; ++i)
      images.push_back(Poly::variable(chart_, i));
    m_.assign(d, std::vector<Poly>(d, Poly::zero(chart_)));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i)
        m_[k][i] = G.mu()[k].differentiate(i).substitute(chart_, images);

    Poly det = grpdetail::det(m_, chart_);
    if (det.is_zero())
      throw NonConstantDeterminant("right Jacobian determinant vanishes");
    if (det.degree() != 0)
      throw NonConstantDeterminant("right Jacobian determinant " +
                                   det.to_string() + " is not constant");
    std::vector<Rational> origin(d, Rational(0));
    det_ = det.evaluate(origin);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) {
        Rational want = (k == i) ? Rational(1) : Rational(0);
        if (m_[k][i].evaluate(origin) != want)
          throw InvariantError("right Jacobian is not the identity at 0");
      }
  }

  const Chart& chart() const noexcept { return chart_; }
  std::size_t dim() const noexcept { return m_.size(); }
  const Poly& entry(std::size_t k, std::size_t i) const {
    return m_.at(k).at(i);
  }
  const std::vector<std::vector<Poly>>& matrix() const noexcept { return m_; }
  const Rational& det() const noexcept { return det_; }

  /// J(g)⁻¹ = adj(J(g)) / det, polynomial because det is constant.
  std::vector<std::vector<Poly>> inverse() const {
    std::size_t d = dim();
    std::vector<std::vector<Poly>> inv(d, std::vector<Poly>(d, Poly::zero(chart_)));
    Rational s = 1 / det_;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Poly cof = (d == 1) ? Poly::constant(chart_, 1)
                            : grpdetail::det(grpdetail::strike(m_, j, i), chart_);
        if ((i + j) % 2) cof = -cof;
        inv[i][j] = s * cof;
      }
    return inv;
  }

private:
  Chart chart_;
  std::vector<std::vector<Poly>> m_;
  Rational det_ = 0;
};

inline RightJacobian right_jacobian(const PolyGroup& G) {
  return RightJacobian(G);
}

/// Jacobian of left translation, Lᵏᵢ(g) = ∂μᵏ(g,y)/∂yᵢ at y = 0.
inline std::vector<std::vector<Poly>> left_jacobian_matrix(const PolyGroup& G) {
  const Chart& ch = G.chart();
  std::size_t d = G.dim();
  std::vector<Poly> images;
  for (std::size_t i = 0; i < d; ++i) images.push_back(Poly::variable(ch, i));
  for (std::size_t i = 0; i < d; ++i) images.push_back(Poly::zero(ch));
  std::vector<std::vector<Poly>> L(d, std::vector<Poly>(d, Poly::zero(ch)));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      L[k][i] = G.mu()[k].differentiate(d + i).substitute(ch, images);
  return L;
}

/// Structure constants of the Lie algebra of right-invariant vector fields:
/// c(k,i,j) = ∂²μᵏ/∂xⱼ∂yᵢ − ∂²μᵏ/∂xᵢ∂yⱼ at the origin. With this
/// orientation extend_vector is an exact bracket morphism (see the tests and
/// the group_pn_verify bridge checks).
inline LieAlgebra structure_constants(const PolyGroup& G) {
  std::size_t d = G.dim();
  std::vector<Rational> origin(2 * d, Rational(0));
  std::vector<std::vector<std::vector<Rational>>> full(
      d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d, 0)));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        full[k][i][j] =
            G.mu()[k].differentiate(j).differentiate(d + i).evaluate(origin) -
            G.mu()[k].differentiate(i).differentiate(d + j).evaluate(origin);
  return LieAlgebra(StructureTable(d, full));  // throws JacobiFailure if bad
}

/// Right-invariant extension of a tangent vector at the identity:
/// X→ᵏ(g) = Σᵢ Jᵏᵢ(g) vᵢ.
inline VectorField extend_vector(const PolyGroup& G,
                                 const std::vector<Rational>& v) {
  std::size_t d = G.dim();
  if (v.size() != d) throw DimensionMismatch("vector length");
  RightJacobian J(G);
  std::vector<Poly> comps;
  for (std::size_t k = 0; k < d; ++k) {
    Poly acc = Poly::zero(G.chart());
    for (std::size_t i = 0; i < d; ++i) acc += v[i] * J.entry(k, i);
    comps.push_back(std::move(acc));
  }
  return VectorField(G.chart(), std::move(comps));
}

namespace grpdetail {

inline void require_group_algebra(const PolyGroup& G, const LieAlgebra& a) {
  if (!(a == structure_constants(G)))
    throw AlgebraMismatch(
        "constant data is attached to a different Lie algebra than the "
        "group's structure constants");
}

}  // namespace grpdetail

/// Right-invariant extension of a constant bivector: Π(g) = J(g)·λ·J(g)ᵀ.
inline Bivector extend_bivector(const PolyGroup& G, const AlgBivector& L) {
  grpdetail::require_group_algebra(G, L.algebra());
  std::size_t d = G.dim();
  RightJacobian J(G);
  const Chart& ch = G.chart();
  std::vector<std::vector<Poly>> M(d, std::vector<Poly>(d, Poly::zero(ch)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          if (L.entry(a, b) != 0)
            M[i][j] += L.entry(a, b) * J.entry(i, a) * J.entry(j, b);
  return Bivector(ch, M);
}

/// Right-invariant extension of an endomorphism: N(g) = J(g)·n·J(g)⁻¹.
inline EndoField extend_endo(const PolyGroup& G, const AlgEndo& n) {
  std::size_t d = G.dim();
  if (n.dim() != d) throw DimensionMismatch("endomorphism dimension");
  RightJacobian J(G);
  auto Jinv = J.inverse();
  const Chart& ch = G.chart();
  std::vector<std::vector<Poly>> M(d, std::vector<Poly>(d, Poly::zero(ch)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          if (n.entry(a, b) != 0)
            M[i][j] += n.entry(a, b) * J.entry(i, a) * Jinv[b][j];
  return EndoField(ch, std::move(M));
}

/// Extension of a rank-3 constant array by three Jacobian factors:
/// Tⁱʲᵏ(g) = Σ_{a,b,c} Jⁱₐ Jʲᵦ Jᵏ𝒸 t^{abc} (used for the Schouten bridge).
inline Trivector extend_trivector(const PolyGroup& G, const AlgCube& t) {
  std::size_t d = G.dim();
  if (t.dim() != d) throw DimensionMismatch("cube dimension");
  RightJacobian J(G);
  const Chart& ch = G.chart();
  Trivector out = Trivector::zero(ch);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        Poly acc = Poly::zero(ch);
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
              if (t.at(a, b, c) != 0)
                acc += t.at(a, b, c) * J.entry(i, a) * J.entry(j, b) *
                       J.entry(k, c);
        out.set_sorted(i, j, k, std::move(acc));
      }
  return out;
}

/// Difference of right- and left-invariant extensions,
/// Π = J·λ·Jᵀ − L·λ·Lᵀ; vanishes at the identity by construction.
inline Bivector coboundary_bivector(const PolyGroup& G, const AlgBivector& L) {
  grpdetail::require_group_algebra(G, L.algebra());
  std::size_t d = G.dim();
  RightJacobian J(G);
  auto Lm = left_jacobian_matrix(G);
  const Chart& ch = G.chart();
  std::vector<std::vector<Poly>> M(d, std::vector<Poly>(d, Poly::zero(ch)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          if (L.entry(a, b) != 0)
            M[i][j] += L.entry(a, b) * (J.entry(i, a) * J.entry(j, b) -
                                        Lm[i][a] * Lm[j][b]);
  return Bivector(ch, M);
}

// ---------------------------------------------------------------------------
// Restriction to the identity: constant snapshots of fields at the origin.
// ---------------------------------------------------------------------------

inline std::vector<std::vector<Rational>> origin_matrix(const EndoField& N) {
  std::size_t d = N.chart().dim();
  std::vector<Rational> origin(d, Rational(0));
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m[i][j] = N.entry(i, j).evaluate(origin);
  return m;
}

inline std::vector<std::vector<Rational>> origin_matrix(const Bivector& P) {
  std::size_t d = P.chart().dim();
  std::vector<Rational> origin(d, Rational(0));
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m[i][j] = P.entry(i, j).evaluate(origin);
  return m;
}

inline AlgCube origin_cube(const TorsionTensor& tau) {
  std::size_t d = tau.chart().dim();
  std::vector<Rational> origin(d, Rational(0));
  AlgCube out(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        out.at(k, i, j) = tau.entry(k, i, j).evaluate(origin);
  return out;
}

/// Joint verdict for a group-level right-invariant PN candidate:
///   alg.*             lambda_n_verify on (Λ,n)
///   grp.*             pn_verify on the extensions (Λ→, n→)
///   bridge_schouten   [Λ→,Λ→] = ([Λ,Λ]alg)→ as an exact polynomial identity
///   bridge_torsion    τ(n→) at the identity = algebraic torsion of n
///   restrict_bivector Λ→ at the identity = Λ
///   restrict_endo     n→ at the identity = n
inline StructureReport group_pn_verify(const PolyGroup& G, const AlgBivector& L,
                                       const AlgEndo& n) {
  LieAlgebra g = structure_constants(G);
  if (!(L.algebra() == g) || !(n.algebra() == g))
    throw AlgebraMismatch(
        "bivector/endomorphism algebra differs from the group's structure "
        "constants");
  std::size_t d = G.dim();
  StructureReport r;
  r.notes.push_back(
      "connectedness hypotheses of the underlying correspondence are "
      "declared model assumptions, not checked");

  r.merge("alg.", lambda_n_verify(g, L, n));

  Bivector P = extend_bivector(G, L);
  EndoField N = extend_endo(G, n);
  r.merge("grp.", pn_verify(P, N));

  {
    Trivector lhs = schouten_bivector(P, P);
    Trivector rhs = extend_trivector(G, alg_schouten(L));
    std::optional<Witness> w;
    for (std::size_t i = 0; i < d && !w; ++i)
      for (std::size_t j = i + 1; j < d && !w; ++j)
        for (std::size_t k = j + 1; k < d && !w; ++k) {
          Poly diff = lhs.entry(i, j, k) - rhs.entry(i, j, k);
          if (!diff.is_zero())
            w = Witness{detail::index_label({i, j, k}), diff.to_string()};
        }
    r.add(Check::from_zero_test("bridge_schouten", !w, std::move(w)));
  }
  {
    AlgCube lhs = origin_cube(nijenhuis_torsion(N));
    AlgCube rhs = alg_torsion(g, n);
    std::optional<Witness> w;
    for (std::size_t k = 0; k < d && !w; ++k)
      for (std::size_t i = 0; i < d && !w; ++i)
        for (std::size_t j = 0; j < d && !w; ++j) {
          Rational diff = lhs.at(k, i, j) - rhs.at(k, i, j);
          if (diff != 0)
            w = Witness{detail::index_label({k, i, j}), to_string(diff)};
        }
    r.add(Check::from_zero_test("bridge_torsion", !w, std::move(w)));
  }
  {
    auto m = origin_matrix(P);
    std::optional<Witness> w;
    for (std::size_t i = 0; i < d && !w; ++i)
      for (std::size_t j = 0; j < d && !w; ++j) {
        Rational diff = m[i][j] - L.entry(i, j);
        if (diff != 0) w = Witness{detail::index_label({i, j}), to_string(diff)};
      }
    r.add(Check::from_zero_test("restrict_bivector", !w, std::move(w)));
  }
  {
    auto m = origin_matrix(N);
    std::optional<Witness> w;
    for (std::size_t i = 0; i < d && !w; ++i)
      for (std::size_t j = 0; j < d && !w; ++j) {
        Rational diff = m[i][j] - n.entry(i, j);
        if (diff != 0) w = Witness{detail::index_label({i, j}), to_string(diff)};
      }
    r.add(Check::from_zero_test("restrict_endo", !w, std::move(w)));
  }
  return r;
}

}  // namespace pncalc
