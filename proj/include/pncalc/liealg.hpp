#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pncalc/calculus.hpp"
#include "pncalc/report.hpp"
#include "pncalc/tensor.hpp"

namespace pncalc {

/// Antisymmetric structure-constant table: [eᵢ,eⱼ] = Σₖ c(k,i,j) eₖ with
/// c(k,i,j) = −c(k,j,i). All indices are 0-based; witnesses print 1-based.
class StructureTable {
public:
  explicit StructureTable(std::size_t dim)
      : dim_(dim), c_(dim * dim * dim, Rational(0)) {
    if (dim == 0) throw DimensionMismatch("algebra dimension must be positive");
  }

  /// Builds from a full rank-3 array full[k][i][j]; antisymmetry in (i,j) is
  /// validated entry by entry.
  StructureTable(std::size_t dim,
                 const std::vector<std::vector<std::vector<Rational>>>& full)
      : StructureTable(dim) {
    if (full.size() != dim_)
      throw DimensionMismatch("structure table outer size");
    for (std::size_t k = 0; k < dim_; ++k) {
      if (full[k].size() != dim_)
        throw DimensionMismatch("structure table row count");
      for (std::size_t i = 0; i < dim_; ++i) {
        if (full[k][i].size() != dim_)
          throw DimensionMismatch("structure table column count");
        for (std::size_t j = 0; j < dim_; ++j)
          c_[slot(k, i, j)] = full[k][i][j];
      }
    }
    for (std::size_t k = 0; k < dim_; ++k)
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j <= i; ++j)
          if (c(k, i, j) != -c(k, j, i))
            throw NotAntisymmetric("structure constants at " +
                                   detail::index_label({k, i, j}));
  }

  /// Declares [eᵢ,eⱼ] = Σₖ coeffs[k] eₖ and fills the mirrored slot.
  void set_bracket(std::size_t i, std::size_t j,
                   const std::vector<Rational>& coeffs) {
    if (i >= dim_ || j >= dim_) throw DimensionMismatch("bracket index");
    if (coeffs.size() != dim_) throw DimensionMismatch("bracket coefficients");
    if (i == j) {
      for (const auto& v : coeffs)
        if (v != 0)
          throw NotAntisymmetric("[e,e] must vanish at " +
                                 detail::index_label({i}));
      return;
    }
    for (std::size_t k = 0; k < dim_; ++k) {
      c_[slot(k, i, j)] = coeffs[k];
      c_[slot(k, j, i)] = -coeffs[k];
    }
  }

  const Rational& c(std::size_t k, std::size_t i, std::size_t j) const {
    if (k >= dim_ || i >= dim_ || j >= dim_)
      throw DimensionMismatch("structure constant index");
    return c_[slot(k, i, j)];
  }

  std::size_t dim() const noexcept { return dim_; }

  bool operator==(const StructureTable&) const = default;

private:
  std::size_t slot(std::size_t k, std::size_t i, std::size_t j) const {
    return (k * dim_ + i) * dim_ + j;
  }

  std::size_t dim_;
  std::vector<Rational> c_;
};

/// First basis tuple (i,j,k,m) whose Jacobi sum
/// Σₗ (cˡᵢⱼ cᵐₗₖ + cˡⱼₖ cᵐₗᵢ + cˡₖᵢ cᵐₗⱼ) does not vanish, if any.
inline std::optional<Witness> jacobi_first_failure(const StructureTable& t) {
  std::size_t d = t.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k)
        for (std::size_t m = 0; m < d; ++m) {
          Rational sum = 0;
          for (std::size_t l = 0; l < d; ++l)
            sum += t.c(l, i, j) * t.c(m, l, k) + t.c(l, j, k) * t.c(m, l, i) +
                   t.c(l, k, i) * t.c(m, l, j);
          if (sum != 0)
            return Witness{detail::index_label({i, j, k, m}), to_string(sum)};
        }
  return std::nullopt;
}

/// True iff every Jacobi sum vanishes exactly.
inline bool jacobi_check(const StructureTable& t) {
  return !jacobi_first_failure(t).has_value();
}

/// A structure-constant Lie algebra; construction enforces the Jacobi
/// identity (throws JacobiFailure otherwise).
class LieAlgebra {
public:
  explicit LieAlgebra(StructureTable table) : table_(std::move(table)) {
    if (auto w = jacobi_first_failure(table_))
      throw JacobiFailure("Jacobi identity fails at " + w->component +
                          " with sum " + w->value);
  }

  const StructureTable& table() const noexcept { return table_; }
  std::size_t dim() const noexcept { return table_.dim(); }

  bool operator==(const LieAlgebra&) const = default;

private:
  StructureTable table_;
};

namespace algdetail {

inline void require_square(const std::vector<std::vector<Rational>>& m,
                           std::size_t d, const char* what) {
  if (m.size() != d) throw DimensionMismatch(std::string(what) + " row count");
  for (const auto& row : m)
    if (row.size() != d)
      throw DimensionMismatch(std::string(what) + " column count");
}

}  // namespace algdetail

/// Constant bivector Λ = ½ Σ λ^{ij} eᵢ∧eⱼ over a fixed Lie algebra.
class AlgBivector {
public:
  AlgBivector(LieAlgebra algebra, std::vector<std::vector<Rational>> matrix)
      : alg_(std::move(algebra)), m_(std::move(matrix)) {
    algdetail::require_square(m_, alg_.dim(), "bivector matrix");
    for (std::size_t i = 0; i < alg_.dim(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (m_[i][j] != -m_[j][i])
          throw NotAntisymmetric("bivector matrix at " +
                                 detail::index_label({i, j}));
  }

  static AlgBivector zero(LieAlgebra algebra) {
    std::size_t d = algebra.dim();
    return AlgBivector(std::move(algebra),
                       std::vector<std::vector<Rational>>(
                           d, std::vector<Rational>(d, Rational(0))));
  }

  /// eᵢ∧eⱼ for i ≠ j.
  static AlgBivector wedge(LieAlgebra algebra, std::size_t i, std::size_t j) {
    std::size_t d = algebra.dim();
    if (i >= d || j >= d || i == j) throw DimensionMismatch("wedge index");
    std::vector<std::vector<Rational>> m(d,
                                         std::vector<Rational>(d, Rational(0)));
    m[i][j] = 1;
    m[j][i] = -1;
    return AlgBivector(std::move(algebra), std::move(m));
  }

  AlgBivector scaled(const Rational& c) const {
    AlgBivector out = *this;
    for (auto& row : out.m_)
      for (auto& v : row) v *= c;
    return out;
  }

  const LieAlgebra& algebra() const noexcept { return alg_; }
  std::size_t dim() const noexcept { return alg_.dim(); }
  const Rational& entry(std::size_t i, std::size_t j) const {
    return m_.at(i).at(j);
  }

  bool operator==(const AlgBivector&) const = default;

private:
  LieAlgebra alg_;
  std::vector<std::vector<Rational>> m_;
};

/// Linear endomorphism with n(eⱼ) = Σᵢ nⁱⱼ eᵢ (same column convention as
/// EndoField, so matrix-vector products act on component columns).
class AlgEndo {
public:
  AlgEndo(LieAlgebra algebra, std::vector<std::vector<Rational>> matrix)
      : alg_(std::move(algebra)), m_(std::move(matrix)) {
    algdetail::require_square(m_, alg_.dim(), "endo matrix");
  }

  static AlgEndo identity(LieAlgebra algebra) {
    std::size_t d = algebra.dim();
    std::vector<std::vector<Rational>> m(d,
                                         std::vector<Rational>(d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
    return AlgEndo(std::move(algebra), std::move(m));
  }

  static AlgEndo zero(LieAlgebra algebra) {
    std::size_t d = algebra.dim();
    return AlgEndo(std::move(algebra),
                   std::vector<std::vector<Rational>>(
                       d, std::vector<Rational>(d, Rational(0))));
  }

  const LieAlgebra& algebra() const noexcept { return alg_; }
  std::size_t dim() const noexcept { return alg_.dim(); }
  const Rational& entry(std::size_t i, std::size_t j) const {
    return m_.at(i).at(j);
  }

  bool operator==(const AlgEndo&) const = default;

private:
  LieAlgebra alg_;
  std::vector<std::vector<Rational>> m_;
};

namespace algdetail {

inline void require_same_algebra(const LieAlgebra& a, const LieAlgebra& b) {
  if (!(a == b))
    throw AlgebraMismatch("operands live over different Lie algebras");
}

}  // namespace algdetail

/// Dense rank-3 rational array shared by the algebraic operator outputs;
/// the index semantics (which slots are (anti)symmetric) belong to the
/// producing operation, not the container.
class AlgCube {
public:
  explicit AlgCube(std::size_t dim)
      : dim_(dim), a_(dim * dim * dim, Rational(0)) {}

  std::size_t dim() const noexcept { return dim_; }

  Rational& at(std::size_t a, std::size_t b, std::size_t c) {
    return a_.at((a * dim_ + b) * dim_ + c);
  }
  const Rational& at(std::size_t a, std::size_t b, std::size_t c) const {
    return a_.at((a * dim_ + b) * dim_ + c);
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

  /// First nonzero entry in row-major order. For arrays antisymmetric in
  /// trailing indices this lands on the representative with sorted indices.
  std::optional<Witness> first_nonzero() const {
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b)
        for (std::size_t c = 0; c < dim_; ++c)
          if (at(a, b, c) != 0)
            return Witness{detail::index_label({a, b, c}),
                           to_string(at(a, b, c))};
    return std::nullopt;
  }

  bool operator==(const AlgCube&) const = default;

private:
  std::size_t dim_;
  std::vector<Rational> a_;
};

/// Linear bivector on the dual chart: Π^{ij}(x) = Σₖ c(k,i,j) xₖ. Works on a
/// raw table so that non-Jacobi inputs can still be cross-examined.
inline Bivector lie_poisson_bivector(const StructureTable& t) {
  std::size_t d = t.dim();
  std::vector<std::string> names;
  names.reserve(d);
  for (std::size_t i = 0; i < d; ++i) names.push_back("x" + std::to_string(i + 1));
  Chart ch(names);
  Bivector P = Bivector::build(ch);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Poly acc = Poly::zero(ch);
      for (std::size_t k = 0; k < d; ++k)
        acc += t.c(k, i, j) * Poly::variable(ch, k);
      P.set_upper(i, j, std::move(acc));
    }
  return P;
}

inline Bivector lie_poisson_bivector(const LieAlgebra& g) {
  return lie_poisson_bivector(g.table());
}

/// Schouten square of a constant bivector:
/// [Λ,Λ]^{ijk} = Σ_{l,m} (λ^{il}λ^{jm} cᵏₗₘ + λ^{jl}λ^{km} cⁱₗₘ +
///                        λ^{kl}λ^{im} cʲₗₘ); totally antisymmetric.
inline AlgCube alg_schouten(const AlgBivector& L) {
  const StructureTable& t = L.algebra().table();
  std::size_t d = L.dim();
  AlgCube out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Rational acc = 0;
        for (std::size_t l = 0; l < d; ++l)
          for (std::size_t m = 0; m < d; ++m)
            acc += L.entry(i, l) * L.entry(j, m) * t.c(k, l, m) +
                   L.entry(j, l) * L.entry(k, m) * t.c(i, l, m) +
                   L.entry(k, l) * L.entry(i, m) * t.c(j, l, m);
        out.at(i, j, k) = acc;
      }
  return out;
}

/// Algebraic Nijenhuis torsion, stored as at(k,i,j) with
/// τ(eᵢ,eⱼ) = [neᵢ,neⱼ] − n[neᵢ,eⱼ] − n[eᵢ,neⱼ] + n²[eᵢ,eⱼ].
inline AlgCube alg_torsion(const LieAlgebra& g, const AlgEndo& n) {
  algdetail::require_same_algebra(g, n.algebra());
  const StructureTable& t = g.table();
  std::size_t d = g.dim();
  AlgCube out(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Rational acc = 0;
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b)
            acc += n.entry(a, i) * n.entry(b, j) * t.c(k, a, b);
        for (std::size_t m = 0; m < d; ++m)
          for (std::size_t a = 0; a < d; ++a)
            acc -= n.entry(k, m) * n.entry(a, i) * t.c(m, a, j) +
                   n.entry(k, m) * n.entry(a, j) * t.c(m, i, a);
        for (std::size_t m = 0; m < d; ++m)
          for (std::size_t l = 0; l < d; ++l)
            acc += n.entry(k, m) * n.entry(m, l) * t.c(l, i, j);
        out.at(k, i, j) = acc;
      }
  return out;
}

/// Compatibility defect n·λ − λ·nᵀ; zero iff n ∘ Λ♯ = Λ♯ ∘ n*.
inline std::vector<std::vector<Rational>> alg_compatibility_defect(
    const AlgBivector& L, const AlgEndo& n) {
  algdetail::require_same_algebra(L.algebra(), n.algebra());
  std::size_t d = L.dim();
  std::vector<std::vector<Rational>> D(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        D[i][j] += n.entry(i, l) * L.entry(l, j) -
                   L.entry(i, l) * n.entry(j, l);
  return D;
}

inline std::optional<Witness> alg_matrix_first_nonzero(
    const std::vector<std::vector<Rational>>& M) {
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j)
      if (M[i][j] != 0)
        return Witness{detail::index_label({i, j}), to_string(M[i][j])};
  return std::nullopt;
}

/// The deformed bivector nΛ (matrix product), defined only when n·λ is
/// antisymmetric.
inline AlgBivector alg_np(const AlgBivector& L, const AlgEndo& n) {
  auto defect = alg_compatibility_defect(L, n);
  if (auto w = alg_matrix_first_nonzero(defect))
    throw NotCompatible("n·Λ is not antisymmetric; defect at " + w->component +
                        " is " + w->value);
  std::size_t d = L.dim();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        m[i][j] += n.entry(i, l) * L.entry(l, j);
  return AlgBivector(L.algebra(), std::move(m));
}

namespace algdetail {

/// Covector bracket over a constant bivector on a Lie algebra, with the
/// derivative-free Lie derivative (L_X α)(Y) = −α([X,Y]):
/// ([α,β]_Λ)ₖ = Σ_{i,m} (−uⁱ cᵐᵢₖ βₘ + vⁱ cᵐᵢₖ αₘ), u = Λ♯α, v = Λ♯β.
inline std::vector<Rational> covector_bracket(const StructureTable& t,
                                              const AlgBivector& L,
                                              const std::vector<Rational>& a,
                                              const std::vector<Rational>& b) {
  std::size_t d = t.dim();
  std::vector<Rational> u(d, Rational(0)), v(d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      u[i] += L.entry(j, i) * a[j];  // (Λ♯α)ⁱ = Σⱼ λ^{ji} αⱼ
      v[i] += L.entry(j, i) * b[j];
    }
  std::vector<Rational> out(d, Rational(0));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t m = 0; m < d; ++m)
        out[k] += -u[i] * t.c(m, i, k) * b[m] + v[i] * t.c(m, i, k) * a[m];
  return out;
}

}  // namespace algdetail

/// Algebraic Magri–Morosi concomitant on the dual basis, stored as at(i,j,k)
/// with C(εⁱ,εʲ) = Σₖ at(i,j,k) εᵏ:
/// C(α,β) = [α,β]_{nΛ} − ([n*α,β]_Λ + [α,n*β]_Λ − n*[α,β]_Λ).
inline AlgCube alg_concomitant(const LieAlgebra& g, const AlgBivector& L,
                               const AlgEndo& n) {
  algdetail::require_same_algebra(g, L.algebra());
  algdetail::require_same_algebra(g, n.algebra());
  AlgBivector nL = alg_np(L, n);  // throws NotCompatible if undefined
  const StructureTable& t = g.table();
  std::size_t d = g.dim();
  auto star = [&](const std::vector<Rational>& a) {
    // (n*α)ⱼ = Σᵢ αᵢ nⁱⱼ
    std::vector<Rational> out(d, Rational(0));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) out[j] += a[i] * n.entry(i, j);
    return out;
  };
  AlgCube out(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> a(d, Rational(0));
    a[i] = 1;
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Rational> b(d, Rational(0));
      b[j] = 1;
      auto t1 = algdetail::covector_bracket(t, nL, a, b);
      auto t2 = algdetail::covector_bracket(t, L, star(a), b);
      auto t3 = algdetail::covector_bracket(t, L, a, star(b));
      auto t4 = star(algdetail::covector_bracket(t, L, a, b));
      for (std::size_t k = 0; k < d; ++k)
        out.at(i, j, k) = t1[k] - (t2[k] + t3[k] - t4[k]);
    }
  }
  return out;
}

/// Full algebraic verdict for a (Λ,n) pair. Check names mirror pn_verify so
/// group-level and algebra-level reports can be compared name by name.
inline StructureReport lambda_n_verify(const LieAlgebra& g,
                                       const AlgBivector& L, const AlgEndo& n) {
  algdetail::require_same_algebra(g, L.algebra());
  algdetail::require_same_algebra(g, n.algebra());
  StructureReport r;
  r.notes.push_back(
      "four independent conditions are verified; numbering of these "
      "conditions in the literature varies");

  AlgCube sq = alg_schouten(L);
  r.add(Check::from_zero_test("poisson", sq.is_zero(), sq.first_nonzero()));

  AlgCube tau = alg_torsion(g, n);
  r.add(Check::from_zero_test("nijenhuis", tau.is_zero(), tau.first_nonzero()));

  auto defect = alg_compatibility_defect(L, n);
  auto dw = alg_matrix_first_nonzero(defect);
  bool compatible = !dw.has_value();
  r.add(Check::from_zero_test("compatible", compatible, std::move(dw)));

  if (compatible) {
    AlgCube C = alg_concomitant(g, L, n);
    r.add(Check::from_zero_test("concomitant", C.is_zero(), C.first_nonzero()));

    bool skew = true;
    std::optional<Witness> sw;
    std::size_t d = g.dim();
    for (std::size_t i = 0; i < d && skew; ++i)
      for (std::size_t j = 0; j < d && skew; ++j)
        for (std::size_t k = 0; k < d && skew; ++k) {
          Rational s = C.at(i, j, k) + C.at(j, i, k);
          if (s != 0) {
            skew = false;
            sw = Witness{detail::index_label({i, j, k}), to_string(s)};
          }
        }
    Check skew_check = Check::from_zero_test("concomitant_skew", skew,
                                             std::move(sw));
    skew_check.mandatory = false;
    skew_check.note = "informational: skew-symmetry of the concomitant";
    r.add(std::move(skew_check));
  } else {
    r.add(Check::skipped("concomitant",
                         "undefined: n·Λ is not antisymmetric"));
    Check skew_check = Check::skipped("concomitant_skew",
                                      "undefined: n·Λ is not antisymmetric");
    skew_check.mandatory = false;
    r.add(std::move(skew_check));
  }
  return r;
}

}  // namespace pncalc
