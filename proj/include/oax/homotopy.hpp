#ifndef OAX_HOMOTOPY_HPP
#define OAX_HOMOTOPY_HPP

#include <span>
#include <string>
#include <vector>

#include <oax/polynomial.hpp>

namespace oax {

// A one-form failed the exactness precondition: d(omega) != 0 at the pair
// (alpha, beta), with the nonzero difference polynomial as witness.
class NotClosedError : public Error {
public:
  // witness = d omega_alpha / dx^beta - d omega_beta / dx^alpha
  NotClosedError(int alpha, int beta, Polynomial witness)
      : Error("one-form is not closed: d_" + std::to_string(beta + 1) + " omega_" + std::to_string(alpha + 1) +
              " - d_" + std::to_string(alpha + 1) + " omega_" + std::to_string(beta + 1) + " = " + witness.to_string()),
        alpha_(alpha),
        beta_(beta),
        witness_(std::move(witness)) {}

  int alpha() const { return alpha_; }
  int beta() const { return beta_; }
  const Polynomial& witness() const { return witness_; }

private:
  int alpha_, beta_;
  Polynomial witness_;
};

// Poincare homotopy with basepoint 0: P(x) = int_0^1 omega_a(t x) x^a dt,
// evaluated exactly term by term (each monomial of omega_a x^a is divided by
// its x-degree). Closedness is checked exactly before integrating; the
// result satisfies dP = omega and P(0) = 0.
inline Polynomial homotopy_integrate_oneform(std::span<const Polynomial> omega) {
  int n = static_cast<int>(omega.size());
  if (n == 0) throw InvariantError("empty one-form");
  int nv = -1;
  for (const auto& w : omega)
    if (w.nvars() >= 0) {
      if (nv >= 0 && w.nvars() != nv) throw InvariantError("one-form component ring mismatch");
      nv = w.nvars();
    }
  if (nv < 0) nv = n;
  if (nv != n) throw InvariantError("one-form must have one component per chart variable");

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Polynomial d = omega[static_cast<std::size_t>(a)].diff(b) - omega[static_cast<std::size_t>(b)].diff(a);
      if (!d.is_zero()) throw NotClosedError(a, b, std::move(d));
    }

  Polynomial p(nv);
  for (int a = 0; a < n; ++a) {
    for (const auto& [m, c] : omega[static_cast<std::size_t>(a)].terms()) {
      Monomial t = m;
      t.set_var(a, m.var(a) + 1);
      p.add_term(t, c / Rational(t.x_degree()));
    }
  }
  return p;
}

// Reconstructs P from its Hessian data: given the symmetric family
// S[a][g] = d^2 P / dx^a dx^g, integrates twice with P(0) = 0, dP(0) = 0.
// S is indexed row-major (a * n + g); symmetry and closedness are checked
// exactly at each stage.
inline Polynomial integrate_hessian(std::span<const Polynomial> s, int n) {
  if (static_cast<int>(s.size()) != n * n) throw InvariantError("hessian data must be n*n");
  for (int a = 0; a < n; ++a)
    for (int g = a + 1; g < n; ++g) {
      Polynomial d = s[static_cast<std::size_t>(a) * n + g] - s[static_cast<std::size_t>(g) * n + a];
      if (!d.is_zero()) throw NotClosedError(a, g, std::move(d));
    }
  std::vector<Polynomial> grad;
  grad.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    std::vector<Polynomial> row(s.begin() + static_cast<std::ptrdiff_t>(a) * n,
                                s.begin() + static_cast<std::ptrdiff_t>(a + 1) * n);
    grad.push_back(homotopy_integrate_oneform(row));
  }
  return homotopy_integrate_oneform(grad);
}

}  // namespace oax

#endif
