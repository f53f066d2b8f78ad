#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "pncalc/liegroup.hpp"

using namespace pncalc;
using testutil::abelian_group;
using testutil::bracket_vec;
using testutil::heisenberg_group;
using testutil::heisenberg_table;
using testutil::rand_int;
using testutil::rand_rational_vec;
using testutil::RatMatrix;

namespace {

/// One-dimensional candidate with μ = x1 + y1 + x1·y1 and the (wrong)
/// inverse −x1: associative with two-sided identity, but the inverse law and
/// the constant-determinant requirement both fail.
PolyGroup mult_group() {
  Chart ch({"x1"});
  Chart dch({"x1", "y1"});
  return PolyGroup(ch, dch, {parse_poly("x1 + y1 + x1*y1", dch)},
                   {parse_poly("-x1", ch)});
}

PolyGroup shifted_group() {
  Chart ch({"x1"});
  Chart dch({"x1", "y1"});
  return PolyGroup(ch, dch, {parse_poly("x1 + y1 + 1", dch)},
                   {parse_poly("-x1", ch)});
}

RatMatrix diag3(int a, int b, int c) {
  RatMatrix m(3, std::vector<Rational>(3, Rational(0)));
  m[0][0] = a;
  m[1][1] = b;
  m[2][2] = c;
  return m;
}

RatMatrix antisym3(const Rational& l12, const Rational& l13,
                   const Rational& l23) {
  RatMatrix m(3, std::vector<Rational>(3, Rational(0)));
  m[0][1] = l12;
  m[1][0] = -l12;
  m[0][2] = l13;
  m[2][0] = -l13;
  m[1][2] = l23;
  m[2][1] = -l23;
  return m;
}

std::vector<std::vector<Poly>> matmul(const std::vector<std::vector<Poly>>& A,
                                      const std::vector<std::vector<Poly>>& B,
                                      const Chart& ch) {
  std::size_t d = A.size();
  std::vector<std::vector<Poly>> C(d, std::vector<Poly>(d, Poly::zero(ch)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) C[i][j] += A[i][l] * B[l][j];
  return C;
}

}  // namespace

TEST_CASE("PolyGroup construction validates shapes") {
  Chart ch({"x1", "x2"});
  Chart dch({"x1", "x2", "y1", "y2"});
  std::vector<Poly> mu{parse_poly("x1 + y1", dch), parse_poly("x2 + y2", dch)};
  std::vector<Poly> inv{parse_poly("-x1", ch), parse_poly("-x2", ch)};
  REQUIRE_NOTHROW(PolyGroup(ch, dch, mu, inv));

  Chart wrong_names({"a1", "a2", "y1", "y2"});
  std::vector<Poly> mu2{parse_poly("a1 + y1", wrong_names),
                        parse_poly("a2 + y2", wrong_names)};
  REQUIRE_THROWS_AS(PolyGroup(ch, wrong_names, mu2, inv), ChartMismatch);

  Chart small({"x1", "x2", "y1"});
  REQUIRE_THROWS_AS(PolyGroup(ch, small, mu, inv), DimensionMismatch);
  REQUIRE_THROWS_AS(PolyGroup(ch, dch, {mu[0]}, inv), DimensionMismatch);
  // Components on the wrong chart.
  REQUIRE_THROWS_AS(PolyGroup(ch, dch, mu, {mu[0], mu[1]}), ChartMismatch);
}

TEST_CASE("group_verify examples") {
  REQUIRE(group_verify(abelian_group(3)));
  REQUIRE(group_verify(heisenberg_group()));

  StructureReport shifted = group_verify_report(shifted_group());
  REQUIRE(!shifted.overall_pass());
  REQUIRE(shifted.find("identity_right")->status == CheckStatus::Fail);
  REQUIRE(shifted.find("identity_right")->witness->value == "1");

  StructureReport mult = group_verify_report(mult_group());
  REQUIRE(!mult.overall_pass());
  REQUIRE(mult.find("identity_right")->status == CheckStatus::Pass);
  REQUIRE(mult.find("identity_left")->status == CheckStatus::Pass);
  REQUIRE(mult.find("associativity")->status == CheckStatus::Pass);
  REQUIRE(mult.find("inverse")->status == CheckStatus::Fail);
  REQUIRE(mult.find("inverse")->witness->value == "-1*x1^2");
  REQUIRE(mult.find("jacobian_det")->status == CheckStatus::Fail);
  REQUIRE(mult.find("jacobian_det")->witness->value == "x1 + 1");
}

TEST_CASE("structure_constants of the chart-level Lie functor") {
  LieAlgebra ab = structure_constants(abelian_group(3));
  REQUIRE(ab.table() == testutil::abelian_table(3));

  LieAlgebra hei = structure_constants(heisenberg_group());
  REQUIRE(hei.table().c(2, 0, 1) == -1);
  REQUIRE(hei.table().c(2, 1, 0) == 1);
  Rational nonzero = 0;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (hei.table().c(k, i, j) != 0) nonzero += 1;
  REQUIRE(nonzero == 2);
}

TEST_CASE("right_jacobian matrices") {
  PolyGroup ab = abelian_group(2);
  RightJacobian Jab(ab);
  REQUIRE(Jab.det() == 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Poly want = (i == j) ? Poly::constant(ab.chart(), 1)
                           : Poly::zero(ab.chart());
      REQUIRE(Jab.entry(i, j) == want);
    }

  PolyGroup hei = heisenberg_group();
  RightJacobian J(hei);
  const Chart& ch = hei.chart();
  REQUIRE(J.det() == 1);
  REQUIRE(J.entry(0, 0) == Poly::constant(ch, 1));
  REQUIRE(J.entry(1, 1) == Poly::constant(ch, 1));
  REQUIRE(J.entry(2, 2) == Poly::constant(ch, 1));
  REQUIRE(J.entry(2, 0) == Poly::variable(ch, 1));
  REQUIRE(J.entry(0, 1).is_zero());
  REQUIRE(J.entry(0, 2).is_zero());
  REQUIRE(J.entry(1, 0).is_zero());
  REQUIRE(J.entry(1, 2).is_zero());
  REQUIRE(J.entry(2, 1).is_zero());

  // J · J⁻¹ = I as exact polynomials.
  auto prod = matmul(J.matrix(), J.inverse(), ch);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Poly want = (i == j) ? Poly::constant(ch, 1) : Poly::zero(ch);
      REQUIRE(prod[i][j] == want);
    }

  REQUIRE_THROWS_AS(right_jacobian(mult_group()), NonConstantDeterminant);
}

TEST_CASE("extend_vector examples") {
  PolyGroup ab = abelian_group(2);
  VectorField e1 = extend_vector(ab, {Rational(1), Rational(0)});
  REQUIRE(e1 == VectorField::coordinate(ab.chart(), 0));

  PolyGroup hei = heisenberg_group();
  const Chart& ch = hei.chart();
  VectorField x1 = extend_vector(hei, {Rational(1), Rational(0), Rational(0)});
  REQUIRE(x1.component(0) == Poly::constant(ch, 1));
  REQUIRE(x1.component(1).is_zero());
  REQUIRE(x1.component(2) == Poly::variable(ch, 1));
  VectorField x3 = extend_vector(hei, {Rational(0), Rational(0), Rational(1)});
  REQUIRE(x3 == VectorField::coordinate(ch, 2));

  REQUIRE_THROWS_AS(extend_vector(hei, {Rational(1)}), DimensionMismatch);
}

TEST_CASE("extend_vector is an exact bracket morphism") {
  for (const PolyGroup& G : {heisenberg_group(), abelian_group(3)}) {
    LieAlgebra g = structure_constants(G);
    for (int rep = 0; rep < 10; ++rep) {
      auto v = rand_rational_vec(3, 4);
      auto w = rand_rational_vec(3, 4);
      VectorField lhs = lie_bracket(extend_vector(G, v), extend_vector(G, w));
      VectorField rhs = extend_vector(G, bracket_vec(g.table(), v, w));
      CAPTURE(rep);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("extend_bivector examples and restriction") {
  PolyGroup hei = heisenberg_group();
  LieAlgebra g = structure_constants(hei);
  const Chart& ch = hei.chart();

  Bivector p13 = extend_bivector(hei, AlgBivector::wedge(g, 0, 2));
  REQUIRE(p13.entry(0, 2) == Poly::constant(ch, 1));
  REQUIRE(p13.entry(0, 1).is_zero());
  REQUIRE(p13.entry(1, 2).is_zero());

  Bivector p12 = extend_bivector(hei, AlgBivector::wedge(g, 0, 1));
  REQUIRE(p12.entry(0, 1) == Poly::constant(ch, 1));
  REQUIRE(p12.entry(0, 2).is_zero());
  REQUIRE(p12.entry(1, 2) == -Poly::variable(ch, 1));

  for (int rep = 0; rep < 5; ++rep) {
    AlgBivector L(g, antisym3(Rational(rand_int(-3, 3)),
                              Rational(rand_int(-3, 3)),
                              Rational(rand_int(-3, 3))));
    auto at0 = origin_matrix(extend_bivector(hei, L));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) REQUIRE(at0[i][j] == L.entry(i, j));
  }

  // The textbook-orientation table is a different algebra object, so the
  // guard must reject bivectors built over it.
  LieAlgebra textbook(heisenberg_table());
  REQUIRE_THROWS_AS(extend_bivector(hei, AlgBivector::wedge(textbook, 0, 2)),
                    AlgebraMismatch);

  PolyGroup ab = abelian_group(3);
  LieAlgebra abg = structure_constants(ab);
  AlgBivector L(abg, antisym3(2, -1, 3));
  Bivector P = extend_bivector(ab, L);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      REQUIRE(P.entry(i, j) == Poly::constant(ab.chart(), L.entry(i, j)));
}

TEST_CASE("extend_endo examples and conjugation property") {
  PolyGroup hei = heisenberg_group();
  LieAlgebra g = structure_constants(hei);
  const Chart& ch = hei.chart();

  EndoField id = extend_endo(hei, AlgEndo::identity(g));
  REQUIRE(id == EndoField::identity(ch));

  AlgEndo n(g, diag3(1, 0, 0));
  EndoField N = extend_endo(hei, n);
  REQUIRE(N.entry(0, 0) == Poly::constant(ch, 1));
  REQUIRE(N.entry(2, 0) == Poly::variable(ch, 1));
  REQUIRE(N.entry(1, 1).is_zero());
  REQUIRE(N.entry(2, 2).is_zero());
  auto at0 = origin_matrix(N);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) REQUIRE(at0[i][j] == n.entry(i, j));

  // N(g)·J(g) = J(g)·n, checked without using the inverse Jacobian.
  RightJacobian J(hei);
  std::vector<std::vector<Poly>> Nm(3, std::vector<Poly>(3, Poly::zero(ch)));
  std::vector<std::vector<Poly>> nm(3, std::vector<Poly>(3, Poly::zero(ch)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Nm[i][j] = N.entry(i, j);
      nm[i][j] = Poly::constant(ch, n.entry(i, j));
    }
  auto lhs = matmul(Nm, J.matrix(), ch);
  auto rhs = matmul(J.matrix(), nm, ch);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) REQUIRE(lhs[i][j] == rhs[i][j]);

  REQUIRE_THROWS_AS(extend_endo(mult_group(), AlgEndo::identity(g)),
                    DimensionMismatch);
}

TEST_CASE("schouten bridge holds as an exact polynomial identity") {
  PolyGroup hei = heisenberg_group();
  LieAlgebra g = structure_constants(hei);
  for (int rep = 0; rep < 5; ++rep) {
    AlgBivector L(g, antisym3(Rational(rand_int(-3, 3)),
                              Rational(rand_int(-3, 3)),
                              Rational(rand_int(-3, 3))));
    Bivector P = extend_bivector(hei, L);
    Trivector lhs = schouten_bivector(P, P);
    Trivector rhs = extend_trivector(hei, alg_schouten(L));
    CAPTURE(rep);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("coboundary_bivector vanishes at the identity") {
  PolyGroup ab = abelian_group(3);
  LieAlgebra abg = structure_constants(ab);
  REQUIRE(coboundary_bivector(ab, AlgBivector(abg, antisym3(2, -1, 3)))
              .is_zero());

  PolyGroup hei = heisenberg_group();
  LieAlgebra g = structure_constants(hei);
  const Chart& ch = hei.chart();
  Bivector cb = coboundary_bivector(hei, AlgBivector::wedge(g, 0, 1));
  REQUIRE(cb.entry(0, 1).is_zero());
  REQUIRE(cb.entry(0, 2) == -Poly::variable(ch, 0));
  REQUIRE(cb.entry(1, 2) == -Poly::variable(ch, 1));

  for (int rep = 0; rep < 5; ++rep) {
    AlgBivector L(g, antisym3(Rational(rand_int(-3, 3)),
                              Rational(rand_int(-3, 3)),
                              Rational(rand_int(-3, 3))));
    auto at0 = origin_matrix(coboundary_bivector(hei, L));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) REQUIRE(at0[i][j] == 0);
  }
}

TEST_CASE("group_pn_verify: passing configurations") {
  PolyGroup ab = abelian_group(2);
  LieAlgebra abg = structure_constants(ab);
  RatMatrix l2(2, std::vector<Rational>(2, Rational(0)));
  l2[0][1] = 1;
  l2[1][0] = -1;
  StructureReport r1 =
      group_pn_verify(ab, AlgBivector(abg, l2), AlgEndo::identity(abg));
  REQUIRE(r1.overall_pass());

  PolyGroup hei = heisenberg_group();
  LieAlgebra g = structure_constants(hei);
  StructureReport r2 = group_pn_verify(hei, AlgBivector::wedge(g, 0, 2),
                                       AlgEndo::identity(g));
  REQUIRE(r2.overall_pass());
  for (const char* name :
       {"alg.poisson", "alg.nijenhuis", "alg.compatible", "alg.concomitant",
        "grp.poisson", "grp.nijenhuis", "grp.compatible", "grp.concomitant",
        "bridge_schouten", "bridge_torsion", "restrict_bivector",
        "restrict_endo"}) {
    CAPTURE(name);
    REQUIRE(r2.find(name) != nullptr);
    REQUIRE(r2.find(name)->status == CheckStatus::Pass);
  }
  REQUIRE(!r2.notes.empty());
}

TEST_CASE("group_pn_verify: failure localizes consistently on both sides") {
  PolyGroup hei = heisenberg_group();
  LieAlgebra g = structure_constants(hei);
  StructureReport r = group_pn_verify(hei, AlgBivector::wedge(g, 0, 1),
                                      AlgEndo::identity(g));
  REQUIRE(!r.overall_pass());
  const Check* alg = r.find("alg.poisson");
  const Check* grp = r.find("grp.poisson");
  REQUIRE(alg->status == CheckStatus::Fail);
  REQUIRE(grp->status == CheckStatus::Fail);
  REQUIRE(alg->witness->component == "(1,2,3)");
  REQUIRE(grp->witness->component == "(1,2,3)");
  REQUIRE(alg->witness->value == grp->witness->value);
  REQUIRE(alg->witness->value == "-1");
  // The bridge and restrictions are identities; they hold regardless.
  REQUIRE(r.find("bridge_schouten")->status == CheckStatus::Pass);
  REQUIRE(r.find("bridge_torsion")->status == CheckStatus::Pass);
  REQUIRE(r.find("restrict_bivector")->status == CheckStatus::Pass);
  REQUIRE(r.find("restrict_endo")->status == CheckStatus::Pass);
}

TEST_CASE("group_pn_verify: verdicts agree name-for-name for a nontrivial pair") {
  PolyGroup hei = heisenberg_group();
  LieAlgebra g = structure_constants(hei);
  // diag(a, c, a) is compatible with e1 ^ e3.
  StructureReport r = group_pn_verify(hei, AlgBivector::wedge(g, 0, 2),
                                      AlgEndo(g, diag3(2, 5, 2)));
  for (const char* name : {"poisson", "nijenhuis", "compatible", "concomitant"}) {
    CAPTURE(name);
    REQUIRE(r.find(std::string("alg.") + name)->status ==
            r.find(std::string("grp.") + name)->status);
  }
  REQUIRE(r.find("restrict_bivector")->status == CheckStatus::Pass);
  REQUIRE(r.find("restrict_endo")->status == CheckStatus::Pass);

  LieAlgebra textbook(heisenberg_table());
  REQUIRE_THROWS_AS(group_pn_verify(hei, AlgBivector::wedge(textbook, 0, 2),
                                    AlgEndo::identity(g)),
                    AlgebraMismatch);
}
