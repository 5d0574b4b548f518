#ifndef OAX_TOWER_HPP
#define OAX_TOWER_HPP

#include <string>
#include <utility>
#include <vector>

#include <oax/homotopy.hpp>
#include <oax/model.hpp>

namespace oax {

// Input to a construction that requires an exact solution was not one.
class NotASolutionError : public Error {
public:
  explicit NotASolutionError(const std::string& witness)
      : Error("input does not solve the equations exactly; " + witness) {}
};

// Nonlocal potentials of the Abelian covering:
//   (w_0)^a_b = delta,  (w_1)^a_b = dK^a/dx^b,
//   d(w_k)^b_g/dx^a = K^b_{,ar} (w_{k-1})^r_g              (k >= 2),
//   v_0^a = x^a,  v_1^a = K^a,
//   d^2 v_k^b/dx^a dx^g = K^n_{,ag} dv_{k-1}^b/dx^n        (k >= 2),
// all integration constants fixed by the basepoint-0 homotopy.
struct PotentialTower {
  int order = 0;
  std::vector<std::vector<Polynomial>> w;  // w[k], row-major (upper a, lower b); empty if not built
  std::vector<std::vector<Polynomial>> v;  // v[k], component b; empty if not built

  const Polynomial& w_at(int k, int a, int b) const {
    int n = dim_;
    return w[static_cast<std::size_t>(k)][static_cast<std::size_t>(a * n + b)];
  }
  const Polynomial& v_at(int k, int b) const { return v[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)]; }

  int dim() const { return dim_; }
  int dim_ = 0;
};

namespace detail {

inline void require_solution(const DisplacementField& k) {
  ResidualTensor r = residual_oae(k);
  if (!r.is_zero()) throw NotASolutionError(r.witness_string());
}

inline void check_degree_bound(const Polynomial& p, int bound, const char* what, int k) {
  if (!p.is_zero() && p.x_degree() > bound)
    throw InvariantError(std::string(what) + "_" + std::to_string(k) + " exceeds its degree bound (integration bug)");
}

}  // namespace detail

inline PotentialTower build_w_tower(const DisplacementField& kf, int order) {
  if (order < 1) throw InvariantError("tower order must be >= 1");
  detail::require_solution(kf);
  int n = kf.dim();
  int d = 0;
  for (const auto& c : kf.comps) d = std::max(d, std::max(c.x_degree(), 0));

  PotentialTower t;
  t.order = order;
  t.dim_ = n;
  std::vector<Polynomial> h = hessians(kf);
  auto c = [&](int a, int b, int g) -> const Polynomial& { return h[static_cast<std::size_t>((a * n + b) * n + g)]; };

  std::vector<Polynomial> w0(static_cast<std::size_t>(n) * n, Polynomial(n));
  for (int a = 0; a < n; ++a) w0[static_cast<std::size_t>(a * n + a)] = Polynomial::constant(n, 1);
  t.w.push_back(std::move(w0));

  std::vector<Polynomial> w1(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) w1[static_cast<std::size_t>(a * n + b)] = kf.comps[static_cast<std::size_t>(a)].diff(b);
  t.w.push_back(std::move(w1));

  for (int k = 2; k <= order; ++k) {
    const auto& prev = t.w.back();
    std::vector<Polynomial> wk(static_cast<std::size_t>(n) * n);
    for (int b_up = 0; b_up < n; ++b_up)
      for (int g = 0; g < n; ++g) {
        std::vector<Polynomial> omega(static_cast<std::size_t>(n), Polynomial(n));
        for (int a = 0; a < n; ++a)
          for (int r = 0; r < n; ++r) omega[static_cast<std::size_t>(a)] += c(b_up, a, r) * prev[static_cast<std::size_t>(r * n + g)];
        Polynomial p = homotopy_integrate_oneform(omega);
        detail::check_degree_bound(p, k * (d - 1), "w", k);
        wk[static_cast<std::size_t>(b_up * n + g)] = std::move(p);
      }
    t.w.push_back(std::move(wk));
  }
  return t;
}

inline PotentialTower build_v_tower(const DisplacementField& kf, int order) {
  if (order < 1) throw InvariantError("tower order must be >= 1");
  detail::require_solution(kf);
  int n = kf.dim();
  int d = 0;
  for (const auto& c : kf.comps) d = std::max(d, std::max(c.x_degree(), 0));

  PotentialTower t;
  t.order = order;
  t.dim_ = n;
  std::vector<Polynomial> h = hessians(kf);
  auto c = [&](int a, int b, int g) -> const Polynomial& { return h[static_cast<std::size_t>((a * n + b) * n + g)]; };

  std::vector<Polynomial> v0(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) v0[static_cast<std::size_t>(a)] = Polynomial::variable(n, a);
  t.v.push_back(std::move(v0));
  t.v.push_back(kf.comps);

  for (int k = 2; k <= order; ++k) {
    const auto& prev = t.v.back();
    std::vector<Polynomial> grad_prev(static_cast<std::size_t>(n) * n);
    for (int b = 0; b < n; ++b)
      for (int nu = 0; nu < n; ++nu)
        grad_prev[static_cast<std::size_t>(b * n + nu)] = prev[static_cast<std::size_t>(b)].diff(nu);
    std::vector<Polynomial> vk(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
      std::vector<Polynomial> hess(static_cast<std::size_t>(n) * n, Polynomial(n));
      for (int a = 0; a < n; ++a)
        for (int g = a; g < n; ++g) {
          Polynomial s(n);
          for (int nu = 0; nu < n; ++nu) s += c(nu, a, g) * grad_prev[static_cast<std::size_t>(b * n + nu)];
          hess[static_cast<std::size_t>(a * n + g)] = s;
          hess[static_cast<std::size_t>(g * n + a)] = s;
        }
      Polynomial p = integrate_hessian(hess, n);
      detail::check_degree_bound(p, k * (d - 1) + 1, "v", k);
      vk[static_cast<std::size_t>(b)] = std::move(p);
    }
    t.v.push_back(std::move(vk));
  }
  return t;
}

inline PotentialTower build_towers(const DisplacementField& kf, int order) {
  PotentialTower t = build_w_tower(kf, order);
  t.v = build_v_tower(kf, order).v;
  return t;
}

// Recursion self-consistency: differentiating the stored towers reproduces
// the right-hand sides exactly at every order that was built.
inline ResidualTensor tower_w_recursion_residual(const DisplacementField& kf, const PotentialTower& t) {
  int n = kf.dim();
  std::vector<Polynomial> h = hessians(kf);
  auto c = [&](int a, int b, int g) -> const Polynomial& { return h[static_cast<std::size_t>((a * n + b) * n + g)]; };
  std::vector<Polynomial> out;
  int kmax = static_cast<int>(t.w.size()) - 1;
  for (int k = 1; k <= kmax; ++k)
    for (int b_up = 0; b_up < n; ++b_up)
      for (int g = 0; g < n; ++g)
        for (int a = 0; a < n; ++a) {
          Polynomial e = t.w_at(k, b_up, g).diff(a);
          for (int r = 0; r < n; ++r) e -= c(b_up, a, r) * t.w_at(k - 1, r, g);
          out.push_back(std::move(e));
        }
  return ResidualTensor::from_entries({kmax, n, n, n}, std::move(out));
}

inline ResidualTensor tower_v_recursion_residual(const DisplacementField& kf, const PotentialTower& t) {
  int n = kf.dim();
  std::vector<Polynomial> h = hessians(kf);
  auto c = [&](int a, int b, int g) -> const Polynomial& { return h[static_cast<std::size_t>((a * n + b) * n + g)]; };
  std::vector<Polynomial> out;
  int kmax = static_cast<int>(t.v.size()) - 1;
  for (int k = 1; k <= kmax; ++k)
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a)
        for (int g = 0; g < n; ++g) {
          Polynomial e = t.v_at(k, b).diff(a).diff(g);
          for (int nu = 0; nu < n; ++nu) e -= c(nu, a, g) * t.v_at(k - 1, b).diff(nu);
          out.push_back(std::move(e));
        }
  return ResidualTensor::from_entries({kmax, n, n, n}, std::move(out));
}

}  // namespace oax

#endif
