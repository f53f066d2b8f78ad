#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pncalc/calculus.hpp"
#include "pncalc/report.hpp"
#include "pncalc/tensor.hpp"

namespace pncalc {

/// Parameters of a randomized numeric cross-check run.
struct SamplePlan {
  std::uint64_t seed = 42;
  int count = 20;
  Rational lo = -5;
  Rational hi = 5;
  double fd_step = 1e-4;
  double tolerance = 1e-6;

  void validate() const {
    if (count < 1) throw InvariantError("sample count must be >= 1");
    if (!(fd_step > 0 && fd_step < 1))
      throw InvariantError("fd_step must lie in (0,1)");
    if (!(tolerance > 0)) throw InvariantError("tolerance must be positive");
    if (!(lo < hi)) throw InvariantError("empty sample range");
  }
};

/// Deterministic sample-point generator. Coordinates are rationals n/8 with
/// n integer, drawn from [lo, hi]. The raw mt19937_64 stream is reduced by
/// modulo (the sequence itself is fixed by the standard, so outcomes are
/// platform-independent, unlike std::uniform_int_distribution).
class PointSampler {
public:
  explicit PointSampler(const SamplePlan& plan) : rng_(plan.seed) {
    // Smallest and largest numerator n with lo <= n/8 <= hi.
    lo8_ = ceil_scaled(plan.lo);
    hi8_ = floor_scaled(plan.hi);
    if (hi8_ < lo8_) throw InvariantError("sample range contains no grid point");
  }

  std::vector<Rational> next_point(std::size_t dim) {
    std::vector<Rational> pt;
    pt.reserve(dim);
    long long span = hi8_ - lo8_ + 1;
    for (std::size_t i = 0; i < dim; ++i) {
      long long n = lo8_ + static_cast<long long>(rng_() % static_cast<std::uint64_t>(span));
      pt.emplace_back(Rational(n, 8));
    }
    return pt;
  }

private:
  static long long ceil_scaled(const Rational& r) {
    Rational s = r * 8;
    Integer num = numerator(s), den = denominator(s);
    Integer q = num / den;           // truncates toward zero
    if (q * den < num) q += 1;       // fix up for positive remainders
    return q.template convert_to<long long>();
  }
  static long long floor_scaled(const Rational& r) {
    Rational s = r * 8;
    Integer num = numerator(s), den = denominator(s);
    Integer q = num / den;
    if (q * den > num) q -= 1;
    return q.template convert_to<long long>();
  }

  std::mt19937_64 rng_;
  long long lo8_ = 0, hi8_ = 0;
};

using SymbolicEval = std::function<std::vector<Rational>(const std::vector<Rational>&)>;
using NumericRecipe = std::function<std::vector<double>(const std::vector<double>&)>;
using ExactRecipe = std::function<std::vector<Rational>(const std::vector<Rational>&)>;

inline std::string point_to_string(const std::vector<Rational>& pt) {
  std::string s = "(";
  for (std::size_t i = 0; i < pt.size(); ++i) {
    if (i) s += ", ";
    s += to_string(pt[i]);
  }
  return s + ")";
}

/// Compares a symbolic result against an independent numeric recipe at
/// plan.count seeded random points; PASS iff the worst absolute deviation
/// stays within plan.tolerance.
inline OracleOutcome randomized_identity_check(std::size_t dim,
                                              const SymbolicEval& symbolic,
                                              const NumericRecipe& recipe,
                                              const SamplePlan& plan) {
  plan.validate();
  PointSampler sampler(plan);
  OracleOutcome out;
  out.points = plan.count;
  out.pass = true;
  for (int c = 0; c < plan.count; ++c) {
    std::vector<Rational> pt = sampler.next_point(dim);
    std::vector<double> ptd;
    ptd.reserve(dim);
    for (const auto& r : pt) ptd.push_back(to_double(r));
    std::vector<Rational> sym = symbolic(pt);
    std::vector<double> num = recipe(ptd);
    if (sym.size() != num.size())
      throw DimensionMismatch("symbolic and numeric sides disagree in size");
    for (std::size_t i = 0; i < sym.size(); ++i) {
      double dev = std::abs(to_double(sym[i]) - num[i]);
      if (dev > out.max_deviation) {
        out.max_deviation = dev;
        out.worst_point = point_to_string(pt);
      }
    }
  }
  if (out.max_deviation > plan.tolerance) out.pass = false;
  return out;
}

/// Same contract, but the recipe is evaluated in exact rationals (used for
/// derivative-free identities; any nonzero deviation fails).
inline OracleOutcome exact_identity_check(std::size_t dim,
                                          const SymbolicEval& symbolic,
                                          const ExactRecipe& recipe,
                                          const SamplePlan& plan) {
  plan.validate();
  PointSampler sampler(plan);
  OracleOutcome out;
  out.points = plan.count;
  out.pass = true;
  for (int c = 0; c < plan.count; ++c) {
    std::vector<Rational> pt = sampler.next_point(dim);
    std::vector<Rational> sym = symbolic(pt);
    std::vector<Rational> val = recipe(pt);
    if (sym.size() != val.size())
      throw DimensionMismatch("symbolic and recipe sides disagree in size");
    for (std::size_t i = 0; i < sym.size(); ++i) {
      double dev = std::abs(to_double(Rational(sym[i] - val[i])));
      if (dev > out.max_deviation) {
        out.max_deviation = dev;
        out.worst_point = point_to_string(pt);
      }
    }
  }
  if (out.max_deviation > plan.tolerance) out.pass = false;
  return out;
}

// ---------------------------------------------------------------------------
// Flattened exact evaluation of symbolic tensors (the "left-hand side" of
// every oracle comparison). Layouts match the corresponding fd recipes.
// ---------------------------------------------------------------------------

inline std::vector<Rational> eval_vectorfield(const VectorField& X,
                                              const std::vector<Rational>& pt) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < X.chart().dim(); ++i)
    out.push_back(X.component(i).evaluate(pt));
  return out;
}

inline std::vector<Rational> eval_oneform(const OneForm& a,
                                          const std::vector<Rational>& pt) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.chart().dim(); ++i)
    out.push_back(a.component(i).evaluate(pt));
  return out;
}

/// Upper-triangle order (i<j).
inline std::vector<Rational> eval_bivector(const Bivector& B,
                                           const std::vector<Rational>& pt) {
  std::vector<Rational> out;
  std::size_t d = B.chart().dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      out.push_back(B.entry(i, j).evaluate(pt));
  return out;
}

/// Sorted-triple order (i<j<k).
inline std::vector<Rational> eval_trivector(const Trivector& T,
                                            const std::vector<Rational>& pt) {
  std::vector<Rational> out;
  std::size_t d = T.chart().dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k)
        out.push_back(T.entry(i, j, k).evaluate(pt));
  return out;
}

/// Order: k major, then (i<j).
inline std::vector<Rational> eval_torsion(const TorsionTensor& tau,
                                          const std::vector<Rational>& pt) {
  std::vector<Rational> out;
  std::size_t d = tau.chart().dim();
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        out.push_back(tau.entry(k, i, j).evaluate(pt));
  return out;
}

/// Full row-major (i,j,k) order.
inline std::vector<Rational> eval_concomitant(const ConcomitantTensor& C,
                                              const std::vector<Rational>& pt) {
  std::vector<Rational> out;
  std::size_t d = C.chart().dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        out.push_back(C.entry(i, j, k).evaluate(pt));
  return out;
}

// ---------------------------------------------------------------------------
// Finite-difference recipes. Every central difference below is applied to a
// raw input component polynomial, never to a symbolic product: composite
// derivatives are expanded by the product rule first. This keeps truncation
// error at the level of the inputs' own degree.
// ---------------------------------------------------------------------------

inline double fd_partial(const Poly& p, std::vector<double> pt, std::size_t i,
                         double h) {
  double saved = pt[i];
  pt[i] = saved + h;
  double hi = p.evaluate_double(pt);
  pt[i] = saved - h;
  double lo = p.evaluate_double(pt);
  pt[i] = saved;
  return (hi - lo) / (2.0 * h);
}

namespace fdetail {

/// Values Xᵏ(pt) of a component family.
inline std::vector<double> values(const std::vector<Poly>& comps,
                                  const std::vector<double>& pt) {
  std::vector<double> v;
  v.reserve(comps.size());
  for (const auto& p : comps) v.push_back(p.evaluate_double(pt));
  return v;
}

/// d[i][k] = ∂ᵢ comps[k] by central differences.
inline std::vector<std::vector<double>> derivs(const std::vector<Poly>& comps,
                                               const std::vector<double>& pt,
                                               double h) {
  std::size_t dim = pt.size();
  std::vector<std::vector<double>> d(dim, std::vector<double>(comps.size()));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < comps.size(); ++k)
      d[i][k] = fd_partial(comps[k], pt, i, h);
  return d;
}

/// Signed bivector entries and their fd partials: Pv[i][j], dP[k][i][j].
struct BivectorSamples {
  std::vector<std::vector<double>> v;
  std::vector<std::vector<std::vector<double>>> d;
};

inline BivectorSamples sample_bivector(const Bivector& P,
                                       const std::vector<double>& pt, double h) {
  std::size_t dim = P.chart().dim();
  BivectorSamples s;
  s.v.assign(dim, std::vector<double>(dim, 0.0));
  s.d.assign(dim, std::vector<std::vector<double>>(dim, std::vector<double>(dim, 0.0)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      Poly u = P.entry(i, j);
      double val = u.evaluate_double(pt);
      s.v[i][j] = val;
      s.v[j][i] = -val;
      for (std::size_t k = 0; k < dim; ++k) {
        double dv = fd_partial(u, pt, k, h);
        s.d[k][i][j] = dv;
        s.d[k][j][i] = -dv;
      }
    }
  return s;
}

/// Endo entries and fd partials: Nv[i][j], dN[k][i][j].
struct EndoSamples {
  std::vector<std::vector<double>> v;
  std::vector<std::vector<std::vector<double>>> d;
};

inline EndoSamples sample_endo(const EndoField& N,
                               const std::vector<double>& pt, double h) {
  std::size_t dim = N.chart().dim();
  EndoSamples s;
  s.v.assign(dim, std::vector<double>(dim, 0.0));
  s.d.assign(dim, std::vector<std::vector<double>>(dim, std::vector<double>(dim, 0.0)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      s.v[i][j] = N.entry(i, j).evaluate_double(pt);
      for (std::size_t k = 0; k < dim; ++k)
        s.d[k][i][j] = fd_partial(N.entry(i, j), pt, k, h);
    }
  return s;
}

/// [A,B]ᵏ = Σₗ (Aˡ ∂ₗBᵏ − Bˡ ∂ₗAᵏ) from precomputed values/derivatives.
inline std::vector<double> bracket_vals(const std::vector<double>& Av,
                                        const std::vector<std::vector<double>>& dA,
                                        const std::vector<double>& Bv,
                                        const std::vector<std::vector<double>>& dB) {
  std::size_t dim = Av.size();
  std::vector<double> out(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = 0; l < dim; ++l)
      out[k] += Av[l] * dB[l][k] - Bv[l] * dA[l][k];
  return out;
}

/// One-form bracket [a,b]_M from sampled data; forms are given by values
/// av[m] and derivatives dav[k][m] = ∂ₖ aₘ.
inline std::vector<double> form_bracket(const BivectorSamples& M,
                                        const std::vector<double>& av,
                                        const std::vector<std::vector<double>>& dav,
                                        const std::vector<double>& bv,
                                        const std::vector<std::vector<double>>& dbv) {
  std::size_t dim = av.size();
  // u = M♯a: uᵐ = Σₜ M^{tm} aₜ ; du[k][m] by the product rule.
  std::vector<double> u(dim, 0.0), v(dim, 0.0);
  std::vector<std::vector<double>> du(dim, std::vector<double>(dim, 0.0));
  std::vector<std::vector<double>> dv(dim, std::vector<double>(dim, 0.0));
  for (std::size_t m = 0; m < dim; ++m)
    for (std::size_t t = 0; t < dim; ++t) {
      u[m] += M.v[t][m] * av[t];
      v[m] += M.v[t][m] * bv[t];
      for (std::size_t k = 0; k < dim; ++k) {
        du[k][m] += M.d[k][t][m] * av[t] + M.v[t][m] * dav[k][t];
        dv[k][m] += M.d[k][t][m] * bv[t] + M.v[t][m] * dbv[k][t];
      }
    }
  std::vector<double> out(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    // (L_u b)ₖ − (L_v a)ₖ
    for (std::size_t m = 0; m < dim; ++m)
      out[k] += u[m] * dbv[m][k] + bv[m] * du[k][m] -
                (v[m] * dav[m][k] + av[m] * dv[k][m]);
    // − ∂ₖ M(a,b)
    for (std::size_t t = 0; t < dim; ++t)
      for (std::size_t m = 0; m < dim; ++m)
        out[k] -= M.d[k][t][m] * av[t] * bv[m] +
                  M.v[t][m] * (dav[k][t] * bv[m] + av[t] * dbv[k][m]);
  }
  return out;
}

}  // namespace fdetail

/// Central-difference [X,Y] at a point.
inline std::vector<double> fd_lie_bracket(const VectorField& X,
                                          const VectorField& Y,
                                          const std::vector<double>& pt,
                                          const SamplePlan& plan) {
  double h = plan.fd_step;
  auto Xv = fdetail::values(X.components(), pt);
  auto Yv = fdetail::values(Y.components(), pt);
  auto dX = fdetail::derivs(X.components(), pt, h);
  auto dY = fdetail::derivs(Y.components(), pt, h);
  return fdetail::bracket_vals(Xv, dX, Yv, dY);
}

/// Central-difference Nijenhuis torsion, laid out as eval_torsion.
inline std::vector<double> fd_torsion(const EndoField& N,
                                      const std::vector<double>& pt,
                                      const SamplePlan& plan) {
  std::size_t d = pt.size();
  auto s = fdetail::sample_endo(N, pt, plan.fd_step);
  std::vector<double> out;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        double acc = 0.0;
        for (std::size_t l = 0; l < d; ++l)
          acc += s.v[l][i] * s.d[l][k][j] - s.v[l][j] * s.d[l][k][i];
        for (std::size_t m = 0; m < d; ++m)
          acc += s.v[k][m] * (s.d[j][m][i] - s.d[i][m][j]);
        out.push_back(acc);
      }
  return out;
}

/// Central-difference deformed bracket [X,Y]_N.
inline std::vector<double> fd_deformed_bracket(const EndoField& N,
                                               const VectorField& X,
                                               const VectorField& Y,
                                               const std::vector<double>& pt,
                                               const SamplePlan& plan) {
  double h = plan.fd_step;
  std::size_t d = pt.size();
  auto n = fdetail::sample_endo(N, pt, h);
  auto Xv = fdetail::values(X.components(), pt);
  auto Yv = fdetail::values(Y.components(), pt);
  auto dX = fdetail::derivs(X.components(), pt, h);
  auto dY = fdetail::derivs(Y.components(), pt, h);
  // NX values and product-rule derivatives.
  auto apply = [&](const std::vector<double>& Vv,
                   const std::vector<std::vector<double>>& dV) {
    std::pair<std::vector<double>, std::vector<std::vector<double>>> r;
    r.first.assign(d, 0.0);
    r.second.assign(d, std::vector<double>(d, 0.0));
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m) {
        r.first[l] += n.v[l][m] * Vv[m];
        for (std::size_t k = 0; k < d; ++k)
          r.second[k][l] += n.d[k][l][m] * Vv[m] + n.v[l][m] * dV[k][m];
      }
    return r;
  };
  auto [NXv, dNX] = apply(Xv, dX);
  auto [NYv, dNY] = apply(Yv, dY);
  auto t1 = fdetail::bracket_vals(NXv, dNX, Yv, dY);
  auto t2 = fdetail::bracket_vals(Xv, dX, NYv, dNY);
  auto xy = fdetail::bracket_vals(Xv, dX, Yv, dY);
  std::vector<double> out(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    out[k] = t1[k] + t2[k];
    for (std::size_t m = 0; m < d; ++m) out[k] -= n.v[k][m] * xy[m];
  }
  return out;
}

/// Central-difference Schouten bracket, laid out as eval_trivector.
inline std::vector<double> fd_schouten(const Bivector& P, const Bivector& Q,
                                       const std::vector<double>& pt,
                                       const SamplePlan& plan) {
  std::size_t d = pt.size();
  auto p = fdetail::sample_bivector(P, pt, plan.fd_step);
  auto q = fdetail::sample_bivector(Q, pt, plan.fd_step);
  std::vector<double> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        double acc = 0.0;
        for (std::size_t l = 0; l < d; ++l) {
          acc += p.v[l][i] * q.d[l][j][k] + p.v[l][j] * q.d[l][k][i] +
                 p.v[l][k] * q.d[l][i][j];
          acc += q.v[l][i] * p.d[l][j][k] + q.v[l][j] * p.d[l][k][i] +
                 q.v[l][k] * p.d[l][i][j];
        }
        out.push_back(-0.5 * acc);
      }
  return out;
}

/// Exact-rational sharp map recipe (no differencing involved).
inline std::vector<Rational> exact_sharp(const Bivector& P, const OneForm& a,
                                         const std::vector<Rational>& pt) {
  std::size_t d = pt.size();
  std::vector<Rational> out(d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out[i] += P.entry(j, i).evaluate(pt) * a.component(j).evaluate(pt);
  return out;
}

/// Exact-rational compatibility defect (N·P − P·Nᵀ) at a point, row-major.
inline std::vector<Rational> exact_defect(const EndoField& N, const Bivector& P,
                                          const std::vector<Rational>& pt) {
  std::size_t d = pt.size();
  std::vector<Rational> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Rational acc = 0;
      for (std::size_t l = 0; l < d; ++l)
        acc += N.entry(i, l).evaluate(pt) * P.entry(l, j).evaluate(pt) -
               P.entry(i, l).evaluate(pt) * N.entry(j, l).evaluate(pt);
      out.push_back(acc);
    }
  return out;
}

/// Exact-rational N·P product at a point, upper-triangle layout.
inline std::vector<Rational> exact_np(const EndoField& N, const Bivector& P,
                                      const std::vector<Rational>& pt) {
  std::size_t d = pt.size();
  std::vector<Rational> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Rational acc = 0;
      for (std::size_t l = 0; l < d; ++l)
        acc += N.entry(i, l).evaluate(pt) * P.entry(l, j).evaluate(pt);
      out.push_back(acc);
    }
  return out;
}

/// Central-difference df.
inline std::vector<double> fd_d_function(const Poly& f,
                                         const std::vector<double>& pt,
                                         const SamplePlan& plan) {
  std::vector<double> out;
  for (std::size_t i = 0; i < pt.size(); ++i)
    out.push_back(fd_partial(f, pt, i, plan.fd_step));
  return out;
}

/// Central-difference Cartan formula.
inline std::vector<double> fd_lie_derivative_oneform(const VectorField& X,
                                                     const OneForm& a,
                                                     const std::vector<double>& pt,
                                                     const SamplePlan& plan) {
  double h = plan.fd_step;
  std::size_t d = pt.size();
  auto Xv = fdetail::values(X.components(), pt);
  auto av = fdetail::values(a.components(), pt);
  auto dX = fdetail::derivs(X.components(), pt, h);
  auto da = fdetail::derivs(a.components(), pt, h);
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out[i] += Xv[j] * da[j][i] + av[j] * dX[i][j];
  return out;
}

/// Central-difference one-form bracket.
inline std::vector<double> fd_oneform_bracket(const Bivector& P,
                                              const OneForm& a, const OneForm& b,
                                              const std::vector<double>& pt,
                                              const SamplePlan& plan) {
  double h = plan.fd_step;
  auto M = fdetail::sample_bivector(P, pt, h);
  auto av = fdetail::values(a.components(), pt);
  auto bv = fdetail::values(b.components(), pt);
  auto da = fdetail::derivs(a.components(), pt, h);
  auto db = fdetail::derivs(b.components(), pt, h);
  return fdetail::form_bracket(M, av, da, bv, db);
}

/// Central-difference Magri–Morosi concomitant, laid out as eval_concomitant.
inline std::vector<double> fd_magri_morosi(const Bivector& P, const EndoField& N,
                                           const std::vector<double>& pt,
                                           const SamplePlan& plan) {
  double h = plan.fd_step;
  std::size_t d = pt.size();
  auto p = fdetail::sample_bivector(P, pt, h);
  auto n = fdetail::sample_endo(N, pt, h);

  // NP entries and derivatives via the product rule.
  fdetail::BivectorSamples np;
  np.v.assign(d, std::vector<double>(d, 0.0));
  np.d.assign(d, std::vector<std::vector<double>>(d, std::vector<double>(d, 0.0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t l = 0; l < d; ++l) {
        np.v[i][m] += n.v[i][l] * p.v[l][m];
        for (std::size_t k = 0; k < d; ++k)
          np.d[k][i][m] += n.d[k][i][l] * p.v[l][m] + n.v[i][l] * p.d[k][l][m];
      }

  std::vector<std::vector<double>> zero_d(d, std::vector<double>(d, 0.0));
  std::vector<double> out;
  for (std::size_t i = 0; i < d; ++i) {
    // a = dxⁱ (constant); n*a has components (N*a)ₘ = Nⁱₘ — raw N entries.
    std::vector<double> av(d, 0.0);
    av[i] = 1.0;
    std::vector<double> nav(d);
    std::vector<std::vector<double>> dnav(d, std::vector<double>(d));
    for (std::size_t m = 0; m < d; ++m) {
      nav[m] = n.v[i][m];
      for (std::size_t k = 0; k < d; ++k) dnav[k][m] = n.d[k][i][m];
    }
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> bv(d, 0.0);
      bv[j] = 1.0;
      std::vector<double> nbv(d);
      std::vector<std::vector<double>> dnbv(d, std::vector<double>(d));
      for (std::size_t m = 0; m < d; ++m) {
        nbv[m] = n.v[j][m];
        for (std::size_t k = 0; k < d; ++k) dnbv[k][m] = n.d[k][j][m];
      }
      auto t_np = fdetail::form_bracket(np, av, zero_d, bv, zero_d);
      auto t_na = fdetail::form_bracket(p, nav, dnav, bv, zero_d);
      auto t_nb = fdetail::form_bracket(p, av, zero_d, nbv, dnbv);
      auto t_ab = fdetail::form_bracket(p, av, zero_d, bv, zero_d);
      for (std::size_t k = 0; k < d; ++k) {
        double nstar = 0.0;  // (N*[a,b]_P)ₖ = Σₘ Nᵐₖ [a,b]ₘ
        for (std::size_t m = 0; m < d; ++m) nstar += n.v[m][k] * t_ab[m];
        out.push_back(t_np[k] - (t_na[k] + t_nb[k] - nstar));
      }
    }
  }
  return out;
}

}  // namespace pncalc
