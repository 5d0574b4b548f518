#ifndef OAX_TESTS_FIXTURES_HPP
#define OAX_TESTS_FIXTURES_HPP

// The concrete fields used across the test suites, built through the parser
// so the tests also pin the public text form.

#include <oax/model.hpp>
#include <oax/parser.hpp>

namespace oax::fixtures {

inline DisplacementField linear_n3() {
  Chart c(3);
  return DisplacementField(c, {parse_polynomial("x1+2*x2", c), parse_polynomial("x3/3", c),
                               parse_polynomial("x1-x2+x3", c)});
}

// quadratic displacement of the constant 2-dim algebra with unity e1 and
// nilpotent e2 (e2*e2 = 0)
inline DisplacementField algebra_n2() {
  Chart c(2);
  return DisplacementField(c, {parse_polynomial("x1^2/2", c), parse_polynomial("x1*x2", c)});
}

// same Hessian as algebra_n2 but with a linear shear that breaks the
// symmetry condition needed by the Backlund construction
inline DisplacementField shear_n2() {
  Chart c(2);
  return DisplacementField(c, {parse_polynomial("x1^2/2+x2", c), parse_polynomial("x1*x2", c)});
}

// not a solution: quadratic displacement of a non-associative algebra
inline DisplacementField nonassoc_n2() {
  Chart c(2);
  return DisplacementField(c, {parse_polynomial("x1^2/2+x2^2/2", c), Polynomial::zero(2)});
}

inline Metric antidiag3() {
  RationalMatrix m(3);
  m.at(0, 2) = 1;
  m.at(1, 1) = 1;
  m.at(2, 0) = 1;
  return Metric(m);
}

inline Metric identity_metric(int n) { return Metric(RationalMatrix::identity(n)); }

// the classical quintic 3-variable prepotential with antidiagonal metric
inline Prepotential a3_wdvv() {
  Chart c(3);
  return Prepotential(c, parse_polynomial("x1^2*x3/2 + x1*x2^2/2 + x2^2*x3^2/4 + x3^5/60", c), antidiag3());
}

// cubic prepotential whose eta-raised Hessian-derivative matrices commute;
// found by the brute-force search in test_transforms
inline Prepotential commuting_cubic() {
  Chart c(2);
  return Prepotential(c, parse_polynomial("x1^3/6 + x1^2*x2 + x1*x2^2/2 + x2^3/3", c), identity_metric(2));
}

// not a solution of the associativity equations
inline Prepotential bad_wdvv_n3() {
  Chart c(3);
  return Prepotential(c, parse_polynomial("x1*x2*x3 + x1^3", c), identity_metric(3));
}

// diagonal decoupled cubic: K^a = (x^a)^2/2 under the identity metric
inline Prepotential diagonal_cubic(int n) {
  Chart c(n);
  Polynomial f(n);
  for (int a = 0; a < n; ++a) f += Polynomial::variable(n, a).pow(3) * Rational(1, 6);
  return Prepotential(c, f, identity_metric(n));
}

}  // namespace oax::fixtures

#endif
