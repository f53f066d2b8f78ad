#pragma once

#include <utility>
#include <vector>

#include "pncalc/report.hpp"
#include "pncalc/tensor.hpp"

namespace pncalc {

/// Jacobi–Lie bracket of vector fields: [X,Y]ᵏ = Σᵢ (Xⁱ ∂ᵢYᵏ − Yⁱ ∂ᵢXᵏ).
inline VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (X.chart() != Y.chart()) throw ChartMismatch("bracket across charts");
  const Chart& ch = X.chart();
  std::vector<Poly> out;
  for (std::size_t k = 0; k < ch.dim(); ++k) {
    Poly acc = Poly::zero(ch);
    for (std::size_t i = 0; i < ch.dim(); ++i)
      acc += X.component(i) * Y.component(k).differentiate(i) -
             Y.component(i) * X.component(k).differentiate(i);
    out.push_back(std::move(acc));
  }
  return VectorField(ch, std::move(out));
}

/// Nijenhuis torsion τ(X,Y) = [NX,NY] − N[NX,Y] − N[X,NY] + N²[X,Y],
/// assembled on coordinate fields:
///   τᵏᵢⱼ = Σₗ (Nˡᵢ ∂ₗNᵏⱼ − Nˡⱼ ∂ₗNᵏᵢ) + Σₘ Nᵏₘ (∂ⱼNᵐᵢ − ∂ᵢNᵐⱼ).
inline TorsionTensor nijenhuis_torsion(const EndoField& N) {
  const Chart& ch = N.chart();
  std::size_t d = ch.dim();
  TorsionTensor tau = TorsionTensor::zero(ch);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        Poly acc = Poly::zero(ch);
        for (std::size_t l = 0; l < d; ++l)
          acc += N.entry(l, i) * N.entry(k, j).differentiate(l) -
                 N.entry(l, j) * N.entry(k, i).differentiate(l);
        for (std::size_t m = 0; m < d; ++m)
          acc += N.entry(k, m) * (N.entry(m, i).differentiate(j) -
                                  N.entry(m, j).differentiate(i));
        tau.set_sorted(k, i, j, std::move(acc));
      }
  return tau;
}

/// Bracket of the deformed structure: [X,Y]_N = [NX,Y] + [X,NY] − N[X,Y].
inline VectorField deformed_bracket(const EndoField& N, const VectorField& X,
                                    const VectorField& Y) {
  return lie_bracket(N.apply(X), Y) + lie_bracket(X, N.apply(Y)) -
         N.apply(lie_bracket(X, Y));
}

/// Schouten bracket of bivectors, normalized so that schouten_bivector(P,P)
/// has components Σₗ (Pⁱˡ ∂ₗPʲᵏ + Pʲˡ ∂ₗPᵏⁱ + Pᵏˡ ∂ₗPⁱʲ) — exactly the
/// Jacobiator of the bracket {f,g} = Σ P^{ij} ∂ᵢf ∂ⱼg, so [P,P] = 0 is
/// equivalent to P being Poisson. The bilinear form below is symmetric in
/// (P,Q) and totally antisymmetric in (i,j,k).
inline Trivector schouten_bivector(const Bivector& P, const Bivector& Q) {
  if (P.chart() != Q.chart()) throw ChartMismatch("bracket across charts");
  const Chart& ch = P.chart();
  std::size_t d = ch.dim();
  Trivector out = Trivector::zero(ch);
  Rational minus_half(-1, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        Poly acc = Poly::zero(ch);
        for (std::size_t l = 0; l < d; ++l) {
          acc += P.entry(l, i) * Q.entry(j, k).differentiate(l) +
                 P.entry(l, j) * Q.entry(k, i).differentiate(l) +
                 P.entry(l, k) * Q.entry(i, j).differentiate(l);
          acc += Q.entry(l, i) * P.entry(j, k).differentiate(l) +
                 Q.entry(l, j) * P.entry(k, i).differentiate(l) +
                 Q.entry(l, k) * P.entry(i, j).differentiate(l);
        }
        out.set_sorted(i, j, k, minus_half * acc);
      }
  return out;
}

/// Sharp map: (Π♯α)ⁱ = Σⱼ Π^{ji} αⱼ, i.e. Π(α, −).
inline VectorField sharp(const Bivector& P, const OneForm& a) {
  if (P.chart() != a.chart()) throw ChartMismatch("sharp across charts");
  const Chart& ch = P.chart();
  std::vector<Poly> out;
  for (std::size_t i = 0; i < ch.dim(); ++i) {
    Poly acc = Poly::zero(ch);
    for (std::size_t j = 0; j < ch.dim(); ++j)
      acc += P.entry(j, i) * a.component(j);
    out.push_back(std::move(acc));
  }
  return VectorField(ch, std::move(out));
}

/// Exterior derivative of a function: (df)ᵢ = ∂ᵢf.
inline OneForm d_function(const Poly& f) {
  const Chart& ch = f.chart();
  std::vector<Poly> out;
  for (std::size_t i = 0; i < ch.dim(); ++i) out.push_back(f.differentiate(i));
  return OneForm(ch, std::move(out));
}

/// Cartan formula on one-forms: (L_X α)ᵢ = Σⱼ (Xʲ ∂ⱼαᵢ + αⱼ ∂ᵢXʲ).
inline OneForm lie_derivative_oneform(const VectorField& X, const OneForm& a) {
  if (X.chart() != a.chart()) throw ChartMismatch("Lie derivative across charts");
  const Chart& ch = X.chart();
  std::vector<Poly> out;
  for (std::size_t i = 0; i < ch.dim(); ++i) {
    Poly acc = Poly::zero(ch);
    for (std::size_t j = 0; j < ch.dim(); ++j)
      acc += X.component(j) * a.component(i).differentiate(j) +
             a.component(j) * X.component(j).differentiate(i);
    out.push_back(std::move(acc));
  }
  return OneForm(ch, std::move(out));
}

/// Bracket of one-forms over a bivector:
/// [α,β]_Π = L_{Π♯α} β − L_{Π♯β} α − d(Π(α,β)).
inline OneForm oneform_bracket(const Bivector& P, const OneForm& a,
                               const OneForm& b) {
  VectorField u = sharp(P, a);
  VectorField v = sharp(P, b);
  return lie_derivative_oneform(u, b) - lie_derivative_oneform(v, a) -
         d_function(P.pair(a, b));
}

/// Compatibility defect N·P − P·Nᵀ as a full matrix; zero iff N·P is
/// antisymmetric, i.e. iff N∘Π♯ = Π♯∘N*.
inline std::vector<std::vector<Poly>> compatibility_defect(const EndoField& N,
                                                           const Bivector& P) {
  if (N.chart() != P.chart()) throw ChartMismatch("defect across charts");
  const Chart& ch = N.chart();
  std::size_t d = ch.dim();
  std::vector<std::vector<Poly>> D(d, std::vector<Poly>(d, Poly::zero(ch)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        D[i][j] += N.entry(i, l) * P.entry(l, j) -
                   P.entry(i, l) * N.entry(j, l);
  return D;
}

inline std::optional<Witness> matrix_first_nonzero(
    const std::vector<std::vector<Poly>>& M) {
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j)
      if (!M[i][j].is_zero())
        return Witness{detail::index_label({i, j}), M[i][j].to_string()};
  return std::nullopt;
}

/// The deformed bivector NΠ (matrix product), defined only when N·P is
/// antisymmetric.
inline Bivector np_bivector(const EndoField& N, const Bivector& P) {
  if (N.chart() != P.chart()) throw ChartMismatch("product across charts");
  auto defect = compatibility_defect(N, P);
  if (auto w = matrix_first_nonzero(defect))
    throw NotCompatible("N·P is not antisymmetric; defect at " + w->component +
                        " is " + w->value);
  const Chart& ch = N.chart();
  std::size_t d = ch.dim();
  std::vector<std::vector<Poly>> M(d, std::vector<Poly>(d, Poly::zero(ch)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        M[i][j] += N.entry(i, l) * P.entry(l, j);
  return Bivector(ch, M);
}

/// Magri–Morosi concomitant on coordinate coframes:
/// C(α,β) = [α,β]_{NΠ} − ([N*α,β]_Π + [α,N*β]_Π − N*[α,β]_Π).
inline ConcomitantTensor magri_morosi(const Bivector& P, const EndoField& N) {
  Bivector NP = np_bivector(N, P);  // throws NotCompatible if undefined
  const Chart& ch = P.chart();
  std::size_t d = ch.dim();
  ConcomitantTensor C = ConcomitantTensor::zero(ch);
  for (std::size_t i = 0; i < d; ++i) {
    OneForm a = OneForm::coordinate(ch, i);
    OneForm na = N.apply_transpose(a);
    for (std::size_t j = 0; j < d; ++j) {
      OneForm b = OneForm::coordinate(ch, j);
      OneForm nb = N.apply_transpose(b);
      OneForm val = oneform_bracket(NP, a, b) -
                    (oneform_bracket(P, na, b) + oneform_bracket(P, a, nb) -
                     N.apply_transpose(oneform_bracket(P, a, b)));
      for (std::size_t k = 0; k < d; ++k) C.set(i, j, k, val.component(k));
    }
  }
  return C;
}

/// Full Poisson–Nijenhuis verdict for a bivector/endomorphism pair:
///   poisson      [P,P] = 0
///   nijenhuis    τN = 0
///   compatible   N·P = P·Nᵀ
///   concomitant  C(Π,N) = 0      (skipped when incompatible)
/// plus the informational concomitant_skew check (see the report note).
inline StructureReport pn_verify(const Bivector& P, const EndoField& N) {
  if (P.chart() != N.chart()) throw ChartMismatch("verdict across charts");
  StructureReport r;

  Trivector pp = schouten_bivector(P, P);
  r.add(Check::from_zero_test("poisson", pp.is_zero(), pp.first_nonzero()));

  TorsionTensor tau = nijenhuis_torsion(N);
  r.add(Check::from_zero_test("nijenhuis", tau.is_zero(), tau.first_nonzero()));

  auto defect = compatibility_defect(N, P);
  auto dw = matrix_first_nonzero(defect);
  bool compatible = !dw.has_value();
  r.add(Check::from_zero_test("compatible", compatible, std::move(dw)));

  if (compatible) {
    ConcomitantTensor C = magri_morosi(P, N);
    r.add(Check::from_zero_test("concomitant", C.is_zero(), C.first_nonzero()));

    // Skew-symmetry C(α,β) = −C(β,α) is reported, not asserted: it is not
    // enforced as a structural invariant of the tensor.
    bool skew = true;
    std::optional<Witness> sw;
    for (std::size_t i = 0; i < P.chart().dim() && skew; ++i)
      for (std::size_t j = 0; j < P.chart().dim() && skew; ++j)
        for (std::size_t k = 0; k < P.chart().dim() && skew; ++k) {
          Poly s = C.entry(i, j, k) + C.entry(j, i, k);
          if (!s.is_zero()) {
            skew = false;
            sw = Witness{detail::index_label({i, j, k}), s.to_string()};
          }
        }
    Check skew_check = Check::from_zero_test("concomitant_skew", skew, std::move(sw));
    skew_check.mandatory = false;
    skew_check.note = "informational: skew-symmetry of the concomitant";
    r.add(std::move(skew_check));
  } else {
    r.add(Check::skipped("concomitant",
                         "undefined: N·P is not antisymmetric"));
    Check skew_check = Check::skipped("concomitant_skew",
                                      "undefined: N·P is not antisymmetric");
    skew_check.mandatory = false;
    r.add(std::move(skew_check));
  }
  return r;
}

}  // namespace pncalc
