#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "pncalc/calculus.hpp"
#include "pncalc/parse.hpp"

using namespace pncalc;
using testutil::rand_bivector;
using testutil::rand_endo;
using testutil::rand_oneform;
using testutil::rand_poly;
using testutil::rand_vectorfield;

namespace {

Chart chart2() { return Chart({"x1", "x2"}); }
Chart chart3() { return Chart({"x1", "x2", "x3"}); }

VectorField scaled_coordinate(const Chart& ch, const Poly& f, std::size_t i) {
  return VectorField::coordinate(ch, i).scaled(f);
}

}  // namespace

TEST_CASE("lie_bracket basics") {
  Chart ch = chart2();
  Poly x1 = Poly::variable(ch, 0);
  VectorField d1 = VectorField::coordinate(ch, 0);
  VectorField d2 = VectorField::coordinate(ch, 1);
  REQUIRE(lie_bracket(d1, d2).is_zero());
  REQUIRE(lie_bracket(scaled_coordinate(ch, x1, 0), d2).is_zero());
  REQUIRE(lie_bracket(scaled_coordinate(ch, x1, 0),
                      scaled_coordinate(ch, x1, 1)) ==
          scaled_coordinate(ch, x1, 1));
}

TEST_CASE("lie_bracket antisymmetry, bilinearity and Jacobi") {
  Chart ch = chart3();
  for (int rep = 0; rep < 15; ++rep) {
    VectorField X = rand_vectorfield(ch);
    VectorField Y = rand_vectorfield(ch);
    VectorField Z = rand_vectorfield(ch);
    REQUIRE(lie_bracket(X, Y) == -lie_bracket(Y, X));
    REQUIRE(lie_bracket(X + Z, Y) == lie_bracket(X, Y) + lie_bracket(Z, Y));
    VectorField jac = lie_bracket(X, lie_bracket(Y, Z)) +
                      lie_bracket(Y, lie_bracket(Z, X)) +
                      lie_bracket(Z, lie_bracket(X, Y));
    REQUIRE(jac.is_zero());
  }
}

TEST_CASE("nijenhuis_torsion vanishes for identity, constants, and x1*I") {
  Chart ch = chart3();
  REQUIRE(nijenhuis_torsion(EndoField::identity(ch)).is_zero());
  // Constant endomorphism.
  std::size_t d = ch.dim();
  std::vector<std::vector<Poly>> m(d, std::vector<Poly>(d, Poly::zero(ch)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m[i][j] = Poly::constant(ch, testutil::rand_nonzero_coeff(5));
  REQUIRE(nijenhuis_torsion(EndoField(ch, m)).is_zero());
  // f * identity is Nijenhuis for any f in dimension >= 1.
  Chart c2 = chart2();
  Poly x1 = Poly::variable(c2, 0);
  std::vector<std::vector<Poly>> fm{{x1, Poly::zero(c2)}, {Poly::zero(c2), x1}};
  REQUIRE(nijenhuis_torsion(EndoField(c2, fm)).is_zero());
}

TEST_CASE("torsion contraction reproduces the four-term formula") {
  Chart ch = chart3();
  for (int rep = 0; rep < 10; ++rep) {
    EndoField N = rand_endo(ch);
    VectorField X = rand_vectorfield(ch);
    VectorField Y = rand_vectorfield(ch);
    TorsionTensor tau = nijenhuis_torsion(N);
    VectorField direct =
        lie_bracket(N.apply(X), N.apply(Y)) -
        N.apply(lie_bracket(N.apply(X), Y)) -
        N.apply(lie_bracket(X, N.apply(Y))) +
        N.apply(N.apply(lie_bracket(X, Y)));
    REQUIRE(tau.contract(X, Y) == direct);
    // Tensoriality: scaling an argument scales the value.
    Poly f = rand_poly(ch);
    REQUIRE(tau.contract(X.scaled(f), Y) == tau.contract(X, Y).scaled(f));
  }
}

TEST_CASE("torsion and deformed bracket satisfy tau(X,Y) = [NX,NY] - N[X,Y]_N") {
  Chart ch = chart2();
  for (int rep = 0; rep < 10; ++rep) {
    EndoField N = rand_endo(ch);
    VectorField X = rand_vectorfield(ch);
    VectorField Y = rand_vectorfield(ch);
    VectorField lhs = nijenhuis_torsion(N).contract(X, Y);
    VectorField rhs = lie_bracket(N.apply(X), N.apply(Y)) -
                      N.apply(deformed_bracket(N, X, Y));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("deformed_bracket special cases") {
  Chart ch = chart2();
  VectorField d1 = VectorField::coordinate(ch, 0);
  VectorField d2 = VectorField::coordinate(ch, 1);
  EndoField id = EndoField::identity(ch);
  EndoField zero = EndoField::zero(ch);
  for (int rep = 0; rep < 5; ++rep) {
    VectorField X = rand_vectorfield(ch);
    VectorField Y = rand_vectorfield(ch);
    REQUIRE(deformed_bracket(id, X, Y) == lie_bracket(X, Y));
    REQUIRE(deformed_bracket(zero, X, Y).is_zero());
    REQUIRE(deformed_bracket(id, X, Y) == -deformed_bracket(id, Y, X));
  }
  // N = x1 * identity on the plane.
  Poly x1 = Poly::variable(ch, 0);
  std::vector<std::vector<Poly>> fm{{x1, Poly::zero(ch)}, {Poly::zero(ch), x1}};
  EndoField N(ch, fm);
  REQUIRE(deformed_bracket(N, d1, d2) == VectorField::coordinate(ch, 1));
}

TEST_CASE("schouten_bivector: constants are Poisson, degenerate dims vacuous") {
  Chart ch = chart2();
  REQUIRE(schouten_bivector(Bivector::wedge(ch, 0, 1),
                            Bivector::wedge(ch, 0, 1)).is_zero());
  Chart ch1(std::vector<std::string>{"x1"});
  Bivector b1 = Bivector::zero(ch1);
  REQUIRE(schouten_bivector(b1, b1).is_zero());
  // Any bivector on a 2-chart has structurally zero Schouten square.
  Bivector b2 = rand_bivector(ch);
  REQUIRE(schouten_bivector(b2, b2).is_zero());
}

TEST_CASE("schouten_bivector detects a non-Poisson bivector") {
  Chart ch = chart3();
  Poly x2 = Poly::variable(ch, 1);
  Bivector P = Bivector::build(ch);
  P.set_upper(0, 1, x2);                       // x2 d1^d2
  P.set_upper(1, 2, Poly::constant(ch, 1));    // d2^d3
  Trivector t = schouten_bivector(P, P);
  REQUIRE(!t.is_zero());
  REQUIRE(t.entry(0, 1, 2) == Poly::constant(ch, -1));
  auto w = t.first_nonzero();
  REQUIRE(w.has_value());
  REQUIRE(w->component == "(1,2,3)");
  REQUIRE(w->value == "-1");
}

TEST_CASE("lie-poisson bivector of the textbook Heisenberg table is Poisson") {
  // Pi^{12} = x3 encodes [e1,e2] = e3 on the dual chart.
  Chart ch = chart3();
  Bivector P = Bivector::build(ch);
  P.set_upper(0, 1, Poly::variable(ch, 2));
  REQUIRE(schouten_bivector(P, P).is_zero());
}

TEST_CASE("schouten_bivector is symmetric and bilinear on bivectors") {
  Chart ch = chart3();
  for (int rep = 0; rep < 8; ++rep) {
    Bivector P = rand_bivector(ch);
    Bivector Q = rand_bivector(ch);
    Bivector R = rand_bivector(ch);
    REQUIRE(schouten_bivector(P, Q) == schouten_bivector(Q, P));
    // Bilinearity, entry-wise on the single (1,2,3) slot of a 3-chart.
    Trivector lhs = schouten_bivector(P + R, Q);
    Trivector a = schouten_bivector(P, Q), b = schouten_bivector(R, Q);
    REQUIRE(lhs.entry(0, 1, 2) == a.entry(0, 1, 2) + b.entry(0, 1, 2));
  }
}

TEST_CASE("sharp sign convention") {
  Chart ch = chart2();
  Bivector P = Bivector::wedge(ch, 0, 1);
  REQUIRE(sharp(P, OneForm::coordinate(ch, 0)) ==
          VectorField::coordinate(ch, 1));
  REQUIRE(sharp(Bivector::zero(ch), rand_oneform(ch)).is_zero());
  Poly x1 = Poly::variable(ch, 0);
  Bivector xP = P.scaled(x1);
  VectorField v = sharp(xP, OneForm::coordinate(ch, 1));
  REQUIRE(v == -scaled_coordinate(ch, x1, 0));
}

TEST_CASE("d_function") {
  Chart ch = chart2();
  Poly x1 = Poly::variable(ch, 0), x2 = Poly::variable(ch, 1);
  OneForm d12 = d_function(x1 * x2);
  REQUIRE(d12.component(0) == x2);
  REQUIRE(d12.component(1) == x1);
  REQUIRE(d_function(Poly::constant(ch, 7)).is_zero());
  OneForm big = d_function((x1 + x2).pow(2));
  REQUIRE(big.component(0) == Rational(2) * (x1 + x2));
  REQUIRE(big.component(1) == Rational(2) * (x1 + x2));
}

TEST_CASE("lie_derivative_oneform: Cartan examples and naturality") {
  Chart ch = chart2();
  Poly x1 = Poly::variable(ch, 0);
  REQUIRE(lie_derivative_oneform(VectorField::coordinate(ch, 0),
                                 OneForm::coordinate(ch, 1)).is_zero());
  REQUIRE(lie_derivative_oneform(scaled_coordinate(ch, x1, 0),
                                 OneForm::coordinate(ch, 0)) ==
          OneForm::coordinate(ch, 0));
  for (int rep = 0; rep < 10; ++rep) {
    VectorField X = rand_vectorfield(ch);
    Poly f = rand_poly(ch, 3, 3, 3);
    REQUIRE(lie_derivative_oneform(X, d_function(f)) == d_function(X.apply(f)));
    // Module Leibniz: L_X(f a) = X(f) a + f L_X a.
    OneForm a = rand_oneform(ch);
    REQUIRE(lie_derivative_oneform(X, a.scaled(f)) ==
            a.scaled(X.apply(f)) + lie_derivative_oneform(X, a).scaled(f));
  }
}

TEST_CASE("oneform_bracket antisymmetry and Leibniz rule") {
  Chart ch = chart3();
  for (int rep = 0; rep < 8; ++rep) {
    Bivector P = rand_bivector(ch);
    OneForm a = rand_oneform(ch);
    OneForm b = rand_oneform(ch);
    REQUIRE(oneform_bracket(P, a, a).is_zero());
    REQUIRE(oneform_bracket(P, a, b) == -oneform_bracket(P, b, a));
    Poly f = rand_poly(ch);
    // [a, f b] = f [a,b] + ((P# a) f) b
    OneForm lhs = oneform_bracket(P, a, b.scaled(f));
    OneForm rhs = oneform_bracket(P, a, b).scaled(f) +
                  b.scaled(sharp(P, a).apply(f));
    REQUIRE(lhs == rhs);
  }
  Bivector P = Bivector::wedge(ch, 0, 1);
  REQUIRE(oneform_bracket(P, OneForm::coordinate(ch, 0),
                          OneForm::coordinate(ch, 1)).is_zero());
}

TEST_CASE("np_bivector and compatibility") {
  Chart ch = chart2();
  Bivector P = Bivector::wedge(ch, 0, 1);
  EndoField id = EndoField::identity(ch);
  REQUIRE(np_bivector(id, P) == P);
  // Scalar multiples of the identity.
  std::vector<std::vector<Poly>> cm{{Poly::constant(ch, 3), Poly::zero(ch)},
                                    {Poly::zero(ch), Poly::constant(ch, 3)}};
  REQUIRE(np_bivector(EndoField(ch, cm), P) == P.scaled(Poly::constant(ch, 3)));
  Poly x1 = Poly::variable(ch, 0);
  std::vector<std::vector<Poly>> xm{{x1, Poly::zero(ch)}, {Poly::zero(ch), x1}};
  REQUIRE(np_bivector(EndoField(ch, xm), P) == P.scaled(x1));
  // diag(x1, x2) is not compatible with d1^d2; defect witness is x1 - x2.
  std::vector<std::vector<Poly>> dm{{x1, Poly::zero(ch)},
                                    {Poly::zero(ch), Poly::variable(ch, 1)}};
  EndoField D(ch, dm);
  REQUIRE_THROWS_AS(np_bivector(D, P), NotCompatible);
  auto defect = compatibility_defect(D, P);
  auto w = matrix_first_nonzero(defect);
  REQUIRE(w.has_value());
  REQUIRE(w->component == "(1,2)");
  REQUIRE(w->value == "x1 - x2");
}

TEST_CASE("magri_morosi vanishes for the identity and constant data") {
  Chart ch = chart3();
  Bivector P = rand_bivector(ch);
  REQUIRE(magri_morosi(P, EndoField::identity(ch)).is_zero());
  // Constant compatible pair: P = d1^d2, N = diag(a, a, b).
  std::vector<std::vector<Poly>> nm(3, std::vector<Poly>(3, Poly::zero(ch)));
  nm[0][0] = Poly::constant(ch, 5);
  nm[1][1] = Poly::constant(ch, 5);
  nm[2][2] = Poly::constant(ch, -2);
  REQUIRE(magri_morosi(Bivector::wedge(ch, 0, 1), EndoField(ch, nm)).is_zero());
}

TEST_CASE("magri_morosi coframe tensor is tensorial and skew for f*I pairs") {
  Chart ch = chart3();
  for (int rep = 0; rep < 4; ++rep) {
    Bivector P = rand_bivector(ch, 2, 2, 2);
    Poly f = rand_poly(ch, 2, 2, 2);
    std::size_t d = ch.dim();
    std::vector<std::vector<Poly>> nm(d, std::vector<Poly>(d, Poly::zero(ch)));
    for (std::size_t i = 0; i < d; ++i) nm[i][i] = f;
    EndoField N(ch, nm);
    ConcomitantTensor C = magri_morosi(P, N);
    Bivector NP = np_bivector(N, P);
    OneForm a = rand_oneform(ch, 2, 2, 2);
    OneForm b = rand_oneform(ch, 2, 2, 2);
    OneForm direct =
        oneform_bracket(NP, a, b) -
        (oneform_bracket(P, N.apply_transpose(a), b) +
         oneform_bracket(P, a, N.apply_transpose(b)) -
         N.apply_transpose(oneform_bracket(P, a, b)));
    REQUIRE(C.contract(a, b) == direct);
    // Contraction linearity over functions.
    Poly g = rand_poly(ch, 2, 2, 2);
    REQUIRE(C.contract(a.scaled(g), b) == C.contract(a, b).scaled(g));
    // Skew-symmetry on coframes.
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          REQUIRE((C.entry(i, j, k) + C.entry(j, i, k)).is_zero());
  }
}

TEST_CASE("pn_verify: canonical symplectic pair passes") {
  Chart ch = chart2();
  StructureReport r = pn_verify(Bivector::wedge(ch, 0, 1),
                                EndoField::identity(ch));
  REQUIRE(r.overall_pass());
  REQUIRE(r.find("poisson")->status == CheckStatus::Pass);
  REQUIRE(r.find("nijenhuis")->status == CheckStatus::Pass);
  REQUIRE(r.find("compatible")->status == CheckStatus::Pass);
  REQUIRE(r.find("concomitant")->status == CheckStatus::Pass);
}

TEST_CASE("pn_verify: incompatible pair fails with witness and skips the concomitant") {
  Chart ch = chart2();
  Poly x1 = Poly::variable(ch, 0);
  std::vector<std::vector<Poly>> dm{{x1, Poly::zero(ch)},
                                    {Poly::zero(ch), Poly::variable(ch, 1)}};
  StructureReport r = pn_verify(Bivector::wedge(ch, 0, 1), EndoField(ch, dm));
  REQUIRE(!r.overall_pass());
  const Check* comp = r.find("compatible");
  REQUIRE(comp->status == CheckStatus::Fail);
  REQUIRE(comp->witness->component == "(1,2)");
  REQUIRE(comp->witness->value == "x1 - x2");
  REQUIRE(r.find("concomitant")->status == CheckStatus::Skip);
}

TEST_CASE("pn_verify: non-Poisson bivector fails the poisson check") {
  Chart ch = chart3();
  Bivector P = Bivector::build(ch);
  P.set_upper(0, 1, Poly::variable(ch, 1));
  P.set_upper(1, 2, Poly::constant(ch, 1));
  StructureReport r = pn_verify(P, EndoField::identity(ch));
  REQUIRE(r.find("poisson")->status == CheckStatus::Fail);
  REQUIRE(r.find("poisson")->witness.has_value());
  REQUIRE(!r.overall_pass());
}

TEST_CASE("dimension-1 charts are vacuously Poisson") {
  Chart ch1(std::vector<std::string>{"x1"});
  StructureReport r = pn_verify(Bivector::zero(ch1), EndoField::identity(ch1));
  REQUIRE(r.overall_pass());
}
