#pragma once

// Shared deterministic generators for randomized property tests. Finite-
// difference cross-checks stay accurate because generated polynomials keep
// per-variable exponents <= 2 (their third pure partials vanish, so central
// differences carry no truncation term) and magnitudes stay moderate.

#include <random>
#include <string>
#include <vector>

#include "pncalc/chart.hpp"
#include "pncalc/liealg.hpp"
#include "pncalc/liegroup.hpp"
#include "pncalc/parse.hpp"
#include "pncalc/poly.hpp"
#include "pncalc/tensor.hpp"

namespace testutil {

using pncalc::Bivector;
using pncalc::Chart;
using pncalc::EndoField;
using pncalc::Monomial;
using pncalc::OneForm;
using pncalc::Poly;
using pncalc::Rational;
using pncalc::StructureTable;
using pncalc::VectorField;

using RatMatrix = std::vector<std::vector<Rational>>;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240817u);
  return g;
}

inline long long rand_int(long long lo, long long hi) {
  return lo + static_cast<long long>(
                  rng()() % static_cast<unsigned long long>(hi - lo + 1));
}

inline Rational rand_nonzero_coeff(int cmax) {
  long long c = rand_int(1, cmax);
  return rand_int(0, 1) ? Rational(c) : Rational(-c);
}

/// Sparse random polynomial: `terms` monomials of total degree <= maxdeg,
/// per-variable exponent <= 2, integer coefficients in [-cmax, cmax] \ {0}.
inline Poly rand_poly(const Chart& ch, int terms = 3, int maxdeg = 2,
                      int cmax = 3) {
  Poly p = Poly::zero(ch);
  for (int t = 0; t < terms; ++t) {
    Monomial m(ch.dim(), 0);
    for (;;) {
      unsigned total = 0;
      for (auto& e : m) {
        e = static_cast<unsigned>(rand_int(0, 2));
        total += e;
      }
      if (total <= static_cast<unsigned>(maxdeg)) break;
    }
    Poly mono = Poly::constant(ch, rand_nonzero_coeff(cmax));
    for (std::size_t i = 0; i < ch.dim(); ++i)
      mono *= Poly::variable(ch, i).pow(m[i]);
    p += mono;
  }
  return p;
}

inline VectorField rand_vectorfield(const Chart& ch, int terms = 2,
                                    int maxdeg = 2, int cmax = 3) {
  std::vector<Poly> c;
  for (std::size_t i = 0; i < ch.dim(); ++i)
    c.push_back(rand_poly(ch, terms, maxdeg, cmax));
  return VectorField(ch, std::move(c));
}

inline OneForm rand_oneform(const Chart& ch, int terms = 2, int maxdeg = 2,
                            int cmax = 3) {
  std::vector<Poly> c;
  for (std::size_t i = 0; i < ch.dim(); ++i)
    c.push_back(rand_poly(ch, terms, maxdeg, cmax));
  return OneForm(ch, std::move(c));
}

inline Bivector rand_bivector(const Chart& ch, int terms = 2, int maxdeg = 2,
                              int cmax = 3) {
  Bivector b = Bivector::build(ch);
  for (std::size_t i = 0; i < ch.dim(); ++i)
    for (std::size_t j = i + 1; j < ch.dim(); ++j)
      b.set_upper(i, j, rand_poly(ch, terms, maxdeg, cmax));
  return b;
}

inline EndoField rand_endo(const Chart& ch, int terms = 2, int maxdeg = 2,
                           int cmax = 3) {
  std::size_t d = ch.dim();
  std::vector<std::vector<Poly>> m(d, std::vector<Poly>(d, Poly::zero(ch)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m[i][j] = rand_poly(ch, terms, maxdeg, cmax);
  return EndoField(ch, std::move(m));
}

/// Random rational point with coordinates n/8, |n/8| <= 5.
inline std::vector<Rational> rand_point(std::size_t dim) {
  std::vector<Rational> pt;
  for (std::size_t i = 0; i < dim; ++i)
    pt.emplace_back(Rational(rand_int(-40, 40), 8));
  return pt;
}

// ---------------------------------------------------------------------------
// Lie algebra material: fixed tables, exact linear algebra, and basis changes
// used to mint fresh valid structure-constant tables from known ones.
// ---------------------------------------------------------------------------

/// Heisenberg algebra in the textbook basis: [e1,e2] = e3.
inline StructureTable heisenberg_table() {
  StructureTable t(3);
  t.set_bracket(0, 1, {Rational(0), Rational(0), Rational(1)});
  return t;
}

/// so(3): [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2.
inline StructureTable so3_table() {
  StructureTable t(3);
  t.set_bracket(0, 1, {Rational(0), Rational(0), Rational(1)});
  t.set_bracket(1, 2, {Rational(1), Rational(0), Rational(0)});
  t.set_bracket(2, 0, {Rational(0), Rational(1), Rational(0)});
  return t;
}

inline StructureTable abelian_table(std::size_t dim) {
  return StructureTable(dim);
}

/// Antisymmetric but non-Jacobi: c¹₁₂ = c²₂₃ = c³₃₁ = 1.
inline StructureTable nonjacobi_table() {
  StructureTable t(3);
  t.set_bracket(0, 1, {Rational(1), Rational(0), Rational(0)});
  t.set_bracket(1, 2, {Rational(0), Rational(1), Rational(0)});
  t.set_bracket(2, 0, {Rational(0), Rational(0), Rational(1)});
  return t;
}

/// Exact Gauss–Jordan inverse; returns false when the matrix is singular.
inline bool invert_rational(RatMatrix m, RatMatrix& inv) {
  std::size_t d = m.size();
  inv.assign(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && m[pivot][col] == 0) ++pivot;
    if (pivot == d) return false;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = m[col][col];
    for (std::size_t j = 0; j < d; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t j = 0; j < d; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return true;
}

/// Random integer matrix, re-drawn until invertible.
inline RatMatrix rand_invertible(std::size_t d, int cmax = 3) {
  for (;;) {
    RatMatrix a(d, std::vector<Rational>(d, Rational(0)));
    for (auto& row : a)
      for (auto& v : row) v = Rational(rand_int(-cmax, cmax));
    RatMatrix inv;
    if (invert_rational(a, inv)) return a;
  }
}

/// Structure constants in the basis fᵢ = Σₐ Aᵃᵢ eₐ:
/// c'ˡᵢⱼ = Σ_{a,b,k} (A⁻¹)ˡₖ Aᵃᵢ Aᵇⱼ cᵏₐᵦ. A change of basis preserves both
/// antisymmetry and the Jacobi identity, so this mints fresh valid tables.
inline StructureTable conjugate_table(const StructureTable& t,
                                      const RatMatrix& A) {
  std::size_t d = t.dim();
  RatMatrix Ainv;
  if (!invert_rational(A, Ainv))
    throw pncalc::InvariantError("conjugating by a singular matrix");
  StructureTable out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      std::vector<Rational> coeffs(d, Rational(0));
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
              coeffs[l] += Ainv[l][k] * A[a][i] * A[b][j] * t.c(k, a, b);
      out.set_bracket(i, j, coeffs);
    }
  return out;
}

/// Abelian group ℝᵈ: μ = x + y, ι = −x.
inline pncalc::PolyGroup abelian_group(std::size_t d) {
  std::vector<std::string> xn, all;
  for (std::size_t i = 0; i < d; ++i) xn.push_back("x" + std::to_string(i + 1));
  all = xn;
  for (std::size_t i = 0; i < d; ++i) all.push_back("y" + std::to_string(i + 1));
  Chart ch(xn);
  Chart dch(all);
  std::vector<Poly> mu, inv;
  for (std::size_t k = 0; k < d; ++k)
    mu.push_back(Poly::variable(dch, k) + Poly::variable(dch, d + k));
  for (std::size_t k = 0; k < d; ++k) inv.push_back(-Poly::variable(ch, k));
  return pncalc::PolyGroup(ch, dch, std::move(mu), std::move(inv));
}

/// Heisenberg group: μ = (x1+y1, x2+y2, x3+y3+x1·y2), ι = (−x1,−x2,−x3+x1·x2).
inline pncalc::PolyGroup heisenberg_group() {
  Chart ch({"x1", "x2", "x3"});
  Chart dch({"x1", "x2", "x3", "y1", "y2", "y3"});
  std::vector<Poly> mu{pncalc::parse_poly("x1 + y1", dch),
                       pncalc::parse_poly("x2 + y2", dch),
                       pncalc::parse_poly("x3 + y3 + x1*y2", dch)};
  std::vector<Poly> inv{pncalc::parse_poly("-x1", ch),
                        pncalc::parse_poly("-x2", ch),
                        pncalc::parse_poly("-x3 + x1*x2", ch)};
  return pncalc::PolyGroup(ch, dch, std::move(mu), std::move(inv));
}

/// Bracket of coefficient vectors over a table: [x,y]ᵏ = Σᵢⱼ xⁱ yʲ cᵏᵢⱼ.
inline std::vector<Rational> bracket_vec(const StructureTable& t,
                                         const std::vector<Rational>& x,
                                         const std::vector<Rational>& y) {
  std::size_t d = t.dim();
  std::vector<Rational> out(d, Rational(0));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        out[k] += x[i] * y[j] * t.c(k, i, j);
  return out;
}

inline std::vector<Rational> rand_rational_vec(std::size_t d, int cmax = 3) {
  std::vector<Rational> v(d);
  for (auto& x : v) x = Rational(rand_int(-cmax, cmax));
  return v;
}

}  // namespace testutil
