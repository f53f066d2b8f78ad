#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pncalc/calculus.hpp"
#include "pncalc/liegroup.hpp"
#include "pncalc/report.hpp"

namespace pncalc {

namespace gpddetail {

/// Componentwise substitution: each outer component, a polynomial in k
/// variables, is evaluated at the k `images` living on `target`.
inline std::vector<Poly> compose(const std::vector<Poly>& outer,
                                 const Chart& target,
                                 const std::vector<Poly>& images) {
  std::vector<Poly> out;
  out.reserve(outer.size());
  for (const auto& f : outer) out.push_back(f.substitute(target, images));
  return out;
}

/// The coordinate block starting at `from` as a polynomial map.
inline std::vector<Poly> block_vars(const Chart& ch, std::size_t from,
                                    std::size_t count) {
  std::vector<Poly> v;
  v.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    v.push_back(Poly::variable(ch, from + i));
  return v;
}

inline std::vector<Poly> zeros(const Chart& ch, std::size_t count) {
  return std::vector<Poly>(count, Poly::zero(ch));
}

/// First component where two polynomial maps differ, as a witness.
inline std::optional<Witness> first_diff(const std::vector<Poly>& got,
                                         const std::vector<Poly>& want) {
  for (std::size_t k = 0; k < got.size(); ++k) {
    Poly diff = got[k] - want[k];
    if (!diff.is_zero())
      return Witness{detail::index_label({k}), diff.to_string()};
  }
  return std::nullopt;
}

}  // namespace gpddetail

/// The product groupoid M×G×M over the base M with fiber group G. An arrow
/// is a triple (x, a, y); two arrows compose through the group factor when
/// the middle base point matches. Charts:
///   total chart  (x; a; y)        one arrow, dimension m+d+m
///   pair chart   (x; a; y; b; z)  a composable pair with shared middle y
/// The a/y/b/z blocks get fresh coordinate names so arbitrary base and
/// group chart names never collide.
class TrivialGroupoid {
public:
  /// Assembles the structural maps without verifying the fiber group; meant
  /// for negative tests of groupoid_axioms_verify.
  static TrivialGroupoid unchecked(Chart base, PolyGroup group) {
    return TrivialGroupoid(std::move(base), std::move(group));
  }

  const Chart& base_chart() const noexcept { return base_; }
  const PolyGroup& group() const noexcept { return group_; }
  const Chart& total_chart() const noexcept { return total_; }
  const Chart& pair_chart() const noexcept { return pair_; }
  std::size_t base_dim() const noexcept { return base_.dim(); }
  std::size_t group_dim() const noexcept { return group_.dim(); }
  std::size_t total_dim() const noexcept { return total_.dim(); }

  /// Projection to the first base factor, (x,a,y) ↦ x, on the total chart.
  const std::vector<Poly>& alpha() const noexcept { return alpha_; }
  /// Projection to the last base factor, (x,a,y) ↦ y, on the total chart.
  const std::vector<Poly>& beta() const noexcept { return beta_; }
  /// Unit embedding x ↦ (x, 0, x), on the base chart.
  const std::vector<Poly>& unit() const noexcept { return unit_; }
  /// Arrow inversion (x,a,y) ↦ (y, ι(a), x), on the total chart.
  const std::vector<Poly>& inverse() const noexcept { return inverse_; }
  /// Composition ((x,a,y),(y,b,z)) ↦ (x, μ(a,b), z), on the pair chart.
  const std::vector<Poly>& mult() const noexcept { return mult_; }

  /// Composes two polynomial arrows on `target`; the first arrow's final
  /// base block must equal the second arrow's initial one exactly.
  std::vector<Poly> mult_at(const std::vector<Poly>& first,
                            const std::vector<Poly>& second,
                            const Chart& target) const {
    std::size_t m = base_dim();
    std::size_t d = group_dim();
    if (first.size() != total_dim() || second.size() != total_dim())
      throw DimensionMismatch("arrow component count");
    for (std::size_t i = 0; i < m; ++i)
      if (!(first[m + d + i] - second[i]).is_zero())
        throw ModelMismatch("arrows are not composable");
    std::vector<Poly> images;
    images.reserve(pair_.dim());
    for (std::size_t i = 0; i < m + d + m; ++i) images.push_back(first[i]);
    for (std::size_t i = m; i < m + d + m; ++i) images.push_back(second[i]);
    return gpddetail::compose(mult_, target, images);
  }

private:
  static std::vector<std::string> extended_names(
      const std::vector<std::string>& taken, std::size_t count,
      const char* stem) {
    std::vector<std::string> out = taken;
    auto block = grpdetail::fresh_names(out, count, stem);
    out.insert(out.end(), block.begin(), block.end());
    return out;
  }

  static Chart make_total(const Chart& base, const PolyGroup& group) {
    auto names = extended_names(base.names(), group.dim(), "a");
    return Chart(extended_names(names, base.dim(), "y"));
  }

  static Chart make_pair(const Chart& total, std::size_t m, std::size_t d) {
    auto names = extended_names(total.names(), d, "b");
    return Chart(extended_names(names, m, "z"));
  }

  TrivialGroupoid(Chart base, PolyGroup group)
      : base_(std::move(base)), group_(std::move(group)),
        total_(make_total(base_, group_)),
        pair_(make_pair(total_, base_.dim(), group_.dim())) {
    std::size_t m = base_.dim();
    std::size_t d = group_.dim();

    alpha_ = gpddetail::block_vars(total_, 0, m);
    beta_ = gpddetail::block_vars(total_, m + d, m);

    unit_ = gpddetail::block_vars(base_, 0, m);
    for (const auto& z : gpddetail::zeros(base_, d)) unit_.push_back(z);
    for (const auto& x : gpddetail::block_vars(base_, 0, m))
      unit_.push_back(x);

    inverse_ = gpddetail::block_vars(total_, m + d, m);
    auto avars = gpddetail::block_vars(total_, m, d);
    for (const auto& p :
         gpddetail::compose(group_.inv(), total_, avars))
      inverse_.push_back(p);
    for (const auto& x : gpddetail::block_vars(total_, 0, m))
      inverse_.push_back(x);

    mult_ = gpddetail::block_vars(pair_, 0, m);
    std::vector<Poly> ab = gpddetail::block_vars(pair_, m, d);
    auto bvars = gpddetail::block_vars(pair_, 2 * m + d, d);
    ab.insert(ab.end(), bvars.begin(), bvars.end());
    for (const auto& p : gpddetail::compose(group_.mu(), pair_, ab))
      mult_.push_back(p);
    for (const auto& z : gpddetail::block_vars(pair_, 2 * m + 2 * d, m))
      mult_.push_back(z);
  }

  Chart base_;
  PolyGroup group_;
  Chart total_;
  Chart pair_;
  std::vector<Poly> alpha_;
  std::vector<Poly> beta_;
  std::vector<Poly> unit_;
  std::vector<Poly> inverse_;
  std::vector<Poly> mult_;
};

/// Builds the product groupoid after verifying the fiber group's axioms;
/// throws InvariantError naming the first violated group identity.
inline TrivialGroupoid build_trivial_groupoid(Chart base, PolyGroup group) {
  StructureReport g = group_verify_report(group);
  if (!g.overall_pass())
    for (const auto& c : g.checks)
      if (c.mandatory && c.status != CheckStatus::Pass)
        throw InvariantError("fiber group fails its '" + c.name + "' axiom");
  return TrivialGroupoid::unchecked(std::move(base), std::move(group));
}

/// Exact verdicts on the groupoid axioms, each an identity of polynomial
/// maps in the free coordinates of the appropriate chart:
///   alpha_unit / beta_unit          both projections of a unit return x
///   alpha_mult / beta_mult          a composite runs from the first
///                                   arrow's start to the second's end
///   alpha_inverse / beta_inverse    inversion swaps the two projections
///   unit_left / unit_right          units are neutral for composition
///   inverse_left / inverse_right    an arrow composed with its inverse is
///                                   the unit at the surviving base point
///   involution                      ι∘ι = id
///   associativity                   (pq)r = p(qr) on composable triples
inline StructureReport groupoid_axioms_report(const TrivialGroupoid& Y) {
  using gpddetail::block_vars;
  using gpddetail::compose;
  using gpddetail::first_diff;
  std::size_t m = Y.base_dim();
  std::size_t d = Y.group_dim();
  const Chart& B = Y.base_chart();
  const Chart& T = Y.total_chart();
  const Chart& P = Y.pair_chart();
  StructureReport r;

  auto check = [&](const char* name, std::optional<Witness> w) {
    r.add(Check::from_zero_test(name, !w, std::move(w)));
  };

  check("alpha_unit", first_diff(compose(Y.alpha(), B, Y.unit()),
                                 block_vars(B, 0, m)));
  check("beta_unit", first_diff(compose(Y.beta(), B, Y.unit()),
                                block_vars(B, 0, m)));
  check("alpha_mult", first_diff(compose(Y.alpha(), P, Y.mult()),
                                 block_vars(P, 0, m)));
  check("beta_mult", first_diff(compose(Y.beta(), P, Y.mult()),
                                block_vars(P, 2 * m + 2 * d, m)));
  check("alpha_inverse",
        first_diff(compose(Y.alpha(), T, Y.inverse()), Y.beta()));
  check("beta_inverse",
        first_diff(compose(Y.beta(), T, Y.inverse()), Y.alpha()));

  std::vector<Poly> arrow = block_vars(T, 0, m + d + m);
  std::vector<Poly> unit_at_alpha = compose(Y.unit(), T, Y.alpha());
  std::vector<Poly> unit_at_beta = compose(Y.unit(), T, Y.beta());
  check("unit_left", first_diff(Y.mult_at(unit_at_alpha, arrow, T), arrow));
  check("unit_right", first_diff(Y.mult_at(arrow, unit_at_beta, T), arrow));
  check("inverse_right",
        first_diff(Y.mult_at(arrow, Y.inverse(), T), unit_at_alpha));
  check("inverse_left",
        first_diff(Y.mult_at(Y.inverse(), arrow, T), unit_at_beta));
  check("involution",
        first_diff(compose(Y.inverse(), T, Y.inverse()), arrow));

  {
    // Composable triples (x,a,y), (y,b,z), (z,c,w) on a widened chart.
    std::vector<std::string> names = P.names();
    auto cblock = grpdetail::fresh_names(names, d, "c");
    names.insert(names.end(), cblock.begin(), cblock.end());
    auto wblock = grpdetail::fresh_names(names, m, "w");
    names.insert(names.end(), wblock.begin(), wblock.end());
    Chart Q(names);
    auto piece = [&](std::size_t base_at, std::size_t grp_at,
                     std::size_t end_at) {
      std::vector<Poly> v = block_vars(Q, base_at, m);
      for (const auto& g : block_vars(Q, grp_at, d)) v.push_back(g);
      for (const auto& e : block_vars(Q, end_at, m)) v.push_back(e);
      return v;
    };
    std::vector<Poly> p = piece(0, m, m + d);
    std::vector<Poly> q = piece(m + d, 2 * m + d, 2 * m + 2 * d);
    std::vector<Poly> s = piece(2 * m + 2 * d, 3 * m + 2 * d, 3 * m + 3 * d);
    auto lhs = Y.mult_at(Y.mult_at(p, q, Q), s, Q);
    auto rhs = Y.mult_at(p, Y.mult_at(q, s, Q), Q);
    check("associativity", first_diff(lhs, rhs));
  }
  return r;
}

inline bool groupoid_axioms_verify(const TrivialGroupoid& Y) {
  return groupoid_axioms_report(Y).overall_pass();
}

/// Section X ⊕ V of the algebroid TM ⊕ (M×𝔤): a vector field on the base
/// paired with a polynomial map from the base into the fiber Lie algebra.
struct AlgebroidSection {
  VectorField X;
  std::vector<Poly> V;

  /// Module action f·(X ⊕ V) = (f·X) ⊕ (f·V).
  AlgebroidSection scaled(const Poly& f) const {
    std::vector<Poly> w;
    w.reserve(V.size());
    for (const auto& p : V) w.push_back(f * p);
    return AlgebroidSection{X.scaled(f), std::move(w)};
  }

  AlgebroidSection operator+(const AlgebroidSection& o) const {
    std::vector<Poly> w;
    for (std::size_t i = 0; i < V.size(); ++i) w.push_back(V[i] + o.V[i]);
    return AlgebroidSection{X + o.X, std::move(w)};
  }

  bool operator==(const AlgebroidSection& o) const {
    return X == o.X && V == o.V;
  }
};

namespace gpddetail {

inline void require_section(const TrivialGroupoid& Y,
                            const AlgebroidSection& s) {
  if (s.X.chart() != Y.base_chart())
    throw ModelMismatch("section's vector field lives off the base chart");
  if (s.V.size() != Y.group_dim())
    throw ModelMismatch("section's fiber map has the wrong component count");
  for (const auto& p : s.V)
    if (p.chart() != Y.base_chart())
      throw ModelMismatch("section's fiber map lives off the base chart");
}

}  // namespace gpddetail

/// Bracket on sections of TM ⊕ (M×𝔤):
/// [X₁⊕V₁, X₂⊕V₂] = [X₁,X₂] ⊕ (X₁(V₂) − X₂(V₁) + [V₁,V₂]_𝔤),
/// the unique bracket projecting to the base bracket and restricting to the
/// pointwise fiber bracket; the base fields differentiate each fiber
/// component.
inline AlgebroidSection algebroid_bracket(const TrivialGroupoid& Y,
                                          const AlgebroidSection& s1,
                                          const AlgebroidSection& s2) {
  gpddetail::require_section(Y, s1);
  gpddetail::require_section(Y, s2);
  std::size_t d = Y.group_dim();
  LieAlgebra g = structure_constants(Y.group());
  const StructureTable& t = g.table();
  std::vector<Poly> W;
  W.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    Poly acc = s1.X.apply(s2.V[k]) - s2.X.apply(s1.V[k]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (t.c(k, i, j) != 0) acc += t.c(k, i, j) * s1.V[i] * s2.V[j];
    W.push_back(std::move(acc));
  }
  return AlgebroidSection{lie_bracket(s1.X, s2.X), std::move(W)};
}

/// Right-invariant extension of a section to the total chart:
/// (x,a,y) ↦ (X(x); J(a)·V(x); 0), with J the fiber group's right
/// translation Jacobian in the a-coordinates.
inline VectorField section_extend(const TrivialGroupoid& Y,
                                  const AlgebroidSection& s) {
  gpddetail::require_section(Y, s);
  std::size_t m = Y.base_dim();
  std::size_t d = Y.group_dim();
  const Chart& T = Y.total_chart();
  auto xvars = gpddetail::block_vars(T, 0, m);
  auto avars = gpddetail::block_vars(T, m, d);
  RightJacobian J(Y.group());

  std::vector<Poly> comps;
  comps.reserve(m + d + m);
  for (std::size_t i = 0; i < m; ++i)
    comps.push_back(s.X.component(i).substitute(T, xvars));
  for (std::size_t k = 0; k < d; ++k) {
    Poly acc = Poly::zero(T);
    for (std::size_t i = 0; i < d; ++i)
      acc += J.entry(k, i).substitute(T, avars) *
             s.V[i].substitute(T, xvars);
    comps.push_back(std::move(acc));
  }
  for (std::size_t i = 0; i < m; ++i) comps.push_back(Poly::zero(T));
  return VectorField(T, std::move(comps));
}

/// Component data for a block-diagonal PN candidate on the product
/// groupoid: a bivector/endomorphism pair on the base plus constant fiber
/// data over the group's Lie algebra.
struct DirectSumPN {
  Bivector base_bivector;
  EndoField base_endo;
  AlgBivector fiber_bivector;
  AlgEndo fiber_endo;
};

/// What to put over the final base factor: zero (the right-invariant
/// assembly) or a second copy of the base data (the symmetric assembly).
enum class ThirdBlock { Zero, BaseCopy };

/// Block-diagonal tensors on the total chart.
struct TotalPN {
  Bivector bivector;
  EndoField endo;
};

/// Assembles Π = Π_M ⊕ Λ→ ⊕ third and N = N_M ⊕ n→ ⊕ third on the total
/// chart, extending the fiber data right-invariantly in the a-coordinates.
inline TotalPN direct_sum_pn(const TrivialGroupoid& Y, const DirectSumPN& data,
                             ThirdBlock third = ThirdBlock::Zero) {
  if (data.base_bivector.chart() != Y.base_chart() ||
      data.base_endo.chart() != Y.base_chart())
    throw ModelMismatch("base tensors live off the base chart");
  std::size_t m = Y.base_dim();
  std::size_t d = Y.group_dim();
  const Chart& T = Y.total_chart();
  auto xvars = gpddetail::block_vars(T, 0, m);
  auto avars = gpddetail::block_vars(T, m, d);
  auto yvars = gpddetail::block_vars(T, m + d, m);

  Bivector fiber = extend_bivector(Y.group(), data.fiber_bivector);
  grpdetail::require_group_algebra(Y.group(), data.fiber_endo.algebra());
  EndoField fiber_endo = extend_endo(Y.group(), data.fiber_endo);

  Bivector P = Bivector::build(T);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      P.set_upper(i, j, data.base_bivector.entry(i, j).substitute(T, xvars));
      if (third == ThirdBlock::BaseCopy)
        P.set_upper(m + d + i, m + d + j,
                    data.base_bivector.entry(i, j).substitute(T, yvars));
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      P.set_upper(m + i, m + j, fiber.entry(i, j).substitute(T, avars));

  std::vector<std::vector<Poly>> N(m + d + m,
                                   std::vector<Poly>(m + d + m, Poly::zero(T)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      N[i][j] = data.base_endo.entry(i, j).substitute(T, xvars);
      if (third == ThirdBlock::BaseCopy)
        N[m + d + i][m + d + j] =
            data.base_endo.entry(i, j).substitute(T, yvars);
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      N[m + i][m + j] = fiber_endo.entry(i, j).substitute(T, avars);

  return TotalPN{std::move(P), EndoField(T, std::move(N))};
}

/// Joint verdict for direct-sum PN data on the product groupoid:
///   base.*                       pn_verify on (Π_M, N_M)
///   fiber.*                      group_pn_verify on (G, Λ, n)
///   total.*                      pn_verify on the assembled Π_M⊕Λ→⊕0 pair
///   torsion_block_diagonal       τ(N) has no cross-block component
///   torsion_base_block           the first block of τ(N) is τ(N_M)
///   torsion_fiber_block          the middle block is τ(n→) on the group
///   torsion_third_block          the last block vanishes
///   unit_restriction_bivector    Π at the units (x,0,x) is Π_M ⊕ Λ ⊕ 0
///   unit_restriction_endo        N at the units is N_M ⊕ n ⊕ 0
///   sym.*                        pn_verify on the Π_M⊕Λ→⊕Π_M assembly
///   mixed_term_extension         informational: sections of ∧²(TM⊕(M×𝔤))
///                                with mixed base/fiber wedge terms are out
///                                of scope
inline StructureReport trivial_pn_verify(const TrivialGroupoid& Y,
                                         const DirectSumPN& data) {
  std::size_t m = Y.base_dim();
  std::size_t d = Y.group_dim();
  const Chart& T = Y.total_chart();
  auto xvars = gpddetail::block_vars(T, 0, m);
  auto avars = gpddetail::block_vars(T, m, d);
  StructureReport r;

  r.merge("base.", pn_verify(data.base_bivector, data.base_endo));
  r.merge("fiber.",
          group_pn_verify(Y.group(), data.fiber_bivector, data.fiber_endo));

  TotalPN total = direct_sum_pn(Y, data, ThirdBlock::Zero);
  r.merge("total.", pn_verify(total.bivector, total.endo));

  TorsionTensor tau = nijenhuis_torsion(total.endo);
  auto in_block = [&](std::size_t i, std::size_t lo, std::size_t hi) {
    return lo <= i && i < hi;
  };
  auto same_block = [&](std::size_t k, std::size_t i, std::size_t j) {
    return (in_block(k, 0, m) && in_block(i, 0, m) && in_block(j, 0, m)) ||
           (in_block(k, m, m + d) && in_block(i, m, m + d) &&
            in_block(j, m, m + d)) ||
           (in_block(k, m + d, m + d + m) && in_block(i, m + d, m + d + m) &&
            in_block(j, m + d, m + d + m));
  };
  {
    std::optional<Witness> w;
    for (std::size_t k = 0; k < T.dim() && !w; ++k)
      for (std::size_t i = 0; i < T.dim() && !w; ++i)
        for (std::size_t j = i + 1; j < T.dim() && !w; ++j)
          if (!same_block(k, i, j) && !tau.entry(k, i, j).is_zero())
            w = Witness{detail::index_label({k, i, j}),
                        tau.entry(k, i, j).to_string()};
    r.add(Check::from_zero_test("torsion_block_diagonal", !w, std::move(w)));
  }
  {
    TorsionTensor tau_base = nijenhuis_torsion(data.base_endo);
    std::optional<Witness> w;
    for (std::size_t k = 0; k < m && !w; ++k)
      for (std::size_t i = 0; i < m && !w; ++i)
        for (std::size_t j = i + 1; j < m && !w; ++j) {
          Poly diff = tau.entry(k, i, j) -
                      tau_base.entry(k, i, j).substitute(T, xvars);
          if (!diff.is_zero())
            w = Witness{detail::index_label({k, i, j}), diff.to_string()};
        }
    r.add(Check::from_zero_test("torsion_base_block", !w, std::move(w)));
  }
  {
    TorsionTensor tau_fiber =
        nijenhuis_torsion(extend_endo(Y.group(), data.fiber_endo));
    std::optional<Witness> w;
    for (std::size_t k = 0; k < d && !w; ++k)
      for (std::size_t i = 0; i < d && !w; ++i)
        for (std::size_t j = i + 1; j < d && !w; ++j) {
          Poly diff = tau.entry(m + k, m + i, m + j) -
                      tau_fiber.entry(k, i, j).substitute(T, avars);
          if (!diff.is_zero())
            w = Witness{detail::index_label({m + k, m + i, m + j}),
                        diff.to_string()};
        }
    r.add(Check::from_zero_test("torsion_fiber_block", !w, std::move(w)));
  }
  {
    std::optional<Witness> w;
    for (std::size_t k = 0; k < m && !w; ++k)
      for (std::size_t i = 0; i < m && !w; ++i)
        for (std::size_t j = i + 1; j < m && !w; ++j)
          if (!tau.entry(m + d + k, m + d + i, m + d + j).is_zero())
            w = Witness{detail::index_label({m + d + k, m + d + i, m + d + j}),
                        tau.entry(m + d + k, m + d + i, m + d + j).to_string()};
    r.add(Check::from_zero_test("torsion_third_block", !w, std::move(w)));
  }

  // Restriction along the unit embedding x ↦ (x, 0, x), expected to return
  // the right-invariant block data exactly.
  const Chart& B = Y.base_chart();
  auto at_units = [&](const Poly& p) { return p.substitute(B, Y.unit()); };
  auto expected_bivector = [&](std::size_t i, std::size_t j) -> Poly {
    if (i < m && j < m) return data.base_bivector.entry(i, j);
    if (in_block(i, m, m + d) && in_block(j, m, m + d))
      return Poly::constant(B, data.fiber_bivector.entry(i - m, j - m));
    return Poly::zero(B);
  };
  auto expected_endo = [&](std::size_t i, std::size_t j) -> Poly {
    if (i < m && j < m) return data.base_endo.entry(i, j);
    if (in_block(i, m, m + d) && in_block(j, m, m + d))
      return Poly::constant(B, data.fiber_endo.entry(i - m, j - m));
    return Poly::zero(B);
  };
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < T.dim() && !w; ++i)
      for (std::size_t j = i + 1; j < T.dim() && !w; ++j) {
        Poly diff =
            at_units(total.bivector.entry(i, j)) - expected_bivector(i, j);
        if (!diff.is_zero())
          w = Witness{detail::index_label({i, j}), diff.to_string()};
      }
    r.add(Check::from_zero_test("unit_restriction_bivector", !w, std::move(w)));
  }
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < T.dim() && !w; ++i)
      for (std::size_t j = 0; j < T.dim() && !w; ++j) {
        Poly diff = at_units(total.endo.entry(i, j)) - expected_endo(i, j);
        if (!diff.is_zero())
          w = Witness{detail::index_label({i, j}), diff.to_string()};
      }
    r.add(Check::from_zero_test("unit_restriction_endo", !w, std::move(w)));
  }

  TotalPN sym = direct_sum_pn(Y, data, ThirdBlock::BaseCopy);
  r.merge("sym.", pn_verify(sym.bivector, sym.endo));

  Check mixed = Check::skipped(
      "mixed_term_extension",
      "only block-diagonal second-exterior-power data is supported; wedge "
      "terms mixing base and fiber directions are not implemented");
  mixed.mandatory = false;
  r.add(std::move(mixed));
  return r;
}

}  // namespace pncalc
