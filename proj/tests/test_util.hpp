#ifndef OAX_TESTS_TEST_UTIL_HPP
#define OAX_TESTS_TEST_UTIL_HPP

// Test-only helpers: seeded random data generators and independent oracle
// implementations. The oracles deliberately avoid the library's integration
// and differentiation paths so agreement is evidence, not tautology.

#include <cstdint>
#include <random>
#include <vector>

#include <oax/polynomial.hpp>

namespace oax::testutil {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }

  Rational rational(int num_abs = 6, int den_max = 4) {
    int num = uniform(-num_abs, num_abs);
    int den = uniform(1, den_max);
    return Rational(num, den);
  }

  Rational nonzero_rational(int num_abs = 6, int den_max = 4) {
    for (;;) {
      Rational r = rational(num_abs, den_max);
      if (r != 0) return r;
    }
  }

  // random x-only polynomial, <= max_terms monomials of total degree <= deg
  Polynomial polynomial(int nvars, int deg, int max_terms = 6) {
    Polynomial p(nvars);
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      Monomial m(nvars);
      int budget = uniform(0, deg);
      for (int a = 0; a < nvars && budget > 0; ++a) {
        int e = uniform(0, budget);
        m.set_var(a, static_cast<std::uint32_t>(e));
        budget -= e;
      }
      p.add_term(m, rational());
    }
    return p;
  }

  Polynomial polynomial_vanishing_at_0(int nvars, int deg, int max_terms = 6) {
    Polynomial p = polynomial(nvars, deg, max_terms);
    std::vector<Rational> zero(static_cast<std::size_t>(nvars), Rational(0));
    return p - Polynomial::constant(nvars, p.eval(zero));
  }

  std::vector<Rational> point(int nvars, int num_abs = 3, int den_max = 3) {
    std::vector<Rational> pt(static_cast<std::size_t>(nvars));
    for (auto& c : pt) c = rational(num_abs, den_max);
    return pt;
  }

private:
  std::mt19937_64 eng_;
};

// independent differentiation: a second, direct term-walk implementation
inline Polynomial naive_diff(const Polynomial& p, int var) {
  Polynomial out(p.nvars() < 0 ? 1 : p.nvars());
  if (p.nvars() < 0) return Polynomial();
  for (const auto& [m, c] : p.terms()) {
    if (m.var(var) == 0) continue;
    Monomial d = m;
    d.set_var(var, m.var(var) - 1);
    Rational coeff = c * Rational(static_cast<int>(m.var(var)));
    out.add_term(d, coeff);
  }
  return out;
}

// Staircase path integral (iterated univariate antiderivatives along the
// coordinate axes): an independent inverse of the gradient for closed forms,
// normalized to P(0) = 0. Different formula from the radial homotopy.
inline Polynomial naive_integrate_oneform(const std::vector<Polynomial>& omega) {
  int n = static_cast<int>(omega.size());
  Polynomial acc(n);
  for (int a = 0; a < n; ++a) {
    // omega_a with x_{a+1..n} set to zero, antidifferentiated in x_a
    for (const auto& [m, c] : omega[static_cast<std::size_t>(a)].terms()) {
      bool tail = false;
      for (int b = a + 1; b < n; ++b)
        if (m.var(b) > 0) tail = true;
      if (tail) continue;
      Monomial t = m;
      t.set_var(a, m.var(a) + 1);
      acc.add_term(t, c / Rational(static_cast<int>(m.var(a)) + 1));
    }
  }
  return acc;
}

inline Polynomial naive_integrate_hessian(const std::vector<Polynomial>& s, int n) {
  std::vector<Polynomial> grad;
  for (int a = 0; a < n; ++a) {
    std::vector<Polynomial> row(s.begin() + static_cast<std::ptrdiff_t>(a) * n,
                                s.begin() + static_cast<std::ptrdiff_t>(a + 1) * n);
    grad.push_back(naive_integrate_oneform(row));
  }
  return naive_integrate_oneform(grad);
}

}  // namespace oax::testutil

#endif
