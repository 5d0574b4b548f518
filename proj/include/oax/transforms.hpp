#ifndef OAX_TRANSFORMS_HPP
#define OAX_TRANSFORMS_HPP

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <oax/spectral.hpp>

namespace oax {

// A construction's extra algebraic condition fails; carries the first
// violating index triple and the nonzero difference polynomial.
class ConditionFailedError : public Error {
public:
  ConditionFailedError(std::string which, std::vector<int> index, Polynomial witness)
      : Error(which + " fails at (" + join(index) + "): " + witness.to_string()),
        which_(std::move(which)),
        index_(std::move(index)),
        witness_(std::move(witness)) {}

  const std::string& which() const { return which_; }
  const std::vector<int>& index() const { return index_; }
  const Polynomial& witness() const { return witness_; }

private:
  static std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  }
  std::string which_;
  std::vector<int> index_;
  Polynomial witness_;
};

// First- and second-kind potentials and the produced new solution.
struct PotentialPair {
  int dim = 0;
  std::vector<Polynomial> first;   // G^b_g, n*n row-major, or empty
  std::vector<Polynomial> second;  // G^b, n entries, or empty
  std::vector<Polynomial> backlund;  // H^b, n entries, or empty
};

namespace detail {

// S^b_{ag} = K^b_{,ar} K^r_{,g}: the right-hand side shared by the
// first-kind potential and the Backlund construction
inline std::vector<Polynomial> momentum_product(const DisplacementField& kf) {
  int n = kf.dim();
  std::vector<Polynomial> h = hessians(kf);
  std::vector<Polynomial> s(static_cast<std::size_t>(n) * n * n, Polynomial(n));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int g = 0; g < n; ++g) {
        Polynomial& e = s[static_cast<std::size_t>((b * n + a) * n + g)];
        for (int r = 0; r < n; ++r)
          e += h[static_cast<std::size_t>((b * n + a) * n + r)] * kf.comps[static_cast<std::size_t>(r)].diff(g);
      }
  return s;
}

}  // namespace detail

// G^b_g with dG^b_g/dx^a = K^b_{,ar} K^r_{,g}, G(0) = 0.
inline PotentialPair intermediate_integral_first(const DisplacementField& kf) {
  detail::require_solution(kf);
  int n = kf.dim();
  std::vector<Polynomial> s = detail::momentum_product(kf);
  PotentialPair out;
  out.dim = n;
  out.first.resize(static_cast<std::size_t>(n) * n);
  for (int b = 0; b < n; ++b)
    for (int g = 0; g < n; ++g) {
      std::vector<Polynomial> omega(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) omega[static_cast<std::size_t>(a)] = s[static_cast<std::size_t>((b * n + a) * n + g)];
      out.first[static_cast<std::size_t>(b * n + g)] = homotopy_integrate_oneform(omega);
    }
  return out;
}

// G^b with d^2 G^b / dx^a dx^g = K^n_{,ag} K^b_{,n}, G(0) = 0, dG(0) = 0.
inline PotentialPair intermediate_integral_second(const DisplacementField& kf) {
  detail::require_solution(kf);
  int n = kf.dim();
  std::vector<Polynomial> h = hessians(kf);
  PotentialPair out;
  out.dim = n;
  for (int b = 0; b < n; ++b) {
    std::vector<Polynomial> hess(static_cast<std::size_t>(n) * n, Polynomial(n));
    for (int a = 0; a < n; ++a)
      for (int g = 0; g < n; ++g) {
        Polynomial& e = hess[static_cast<std::size_t>(a * n + g)];
        for (int nu = 0; nu < n; ++nu)
          e += h[static_cast<std::size_t>((nu * n + a) * n + g)] * kf.comps[static_cast<std::size_t>(b)].diff(nu);
      }
    out.second.push_back(integrate_hessian(hess, n));
  }
  return out;
}

// Conditional Backlund construction: requires K^b_{,ar} K^r_{,g} symmetric
// in (a, g); produces H^b with that product as its Hessian. The caller
// checks residual_oae(H) -- the construction's claim is that it vanishes.
inline PotentialPair backlund_oae(const DisplacementField& kf) {
  detail::require_solution(kf);
  int n = kf.dim();
  std::vector<Polynomial> s = detail::momentum_product(kf);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int g = a + 1; g < n; ++g) {
        Polynomial d = s[static_cast<std::size_t>((b * n + a) * n + g)] - s[static_cast<std::size_t>((b * n + g) * n + a)];
        if (!d.is_zero())
          throw ConditionFailedError("symmetry condition on K^b_{,ar} K^r_{,g}", {b + 1, a + 1, g + 1}, std::move(d));
      }
  PotentialPair out;
  out.dim = n;
  for (int b = 0; b < n; ++b) {
    std::vector<Polynomial> hess(s.begin() + static_cast<std::ptrdiff_t>(b) * n * n,
                                 s.begin() + static_cast<std::ptrdiff_t>(b + 1) * n * n);
    out.backlund.push_back(integrate_hessian(hess, n));
  }
  return out;
}

// Gradient-reduced entry point: H^b from eta^{bn} eta^{rk} F_{,arn} F_{,gk},
// guarded by the symmetry of eta^{rk} F_{,arn} F_{,gk} in (a, g).
inline PotentialPair wdvv_to_oae(const Prepotential& f) {
  ResidualTensor rw = residual_wdvv(f);
  if (!rw.is_zero()) throw NotASolutionError(rw.witness_string());
  int n = f.chart.dim();
  std::vector<Polynomial> t3 = third_derivatives(f);
  auto F3 = [&](int a, int b, int g) -> const Polynomial& { return t3[static_cast<std::size_t>((a * n + b) * n + g)]; };
  std::vector<Polynomial> f2(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) f2[static_cast<std::size_t>(a * n + b)] = f.F.diff(a).diff(b);

  // Q_{a nu g} = eta^{rk} F_{,arn} F_{,gk}; required symmetric in (a, g)
  auto q = [&](int a, int nu, int g) {
    Polynomial e(n);
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) {
        const Rational& et = f.eta.up.at(r, k);
        if (et == 0) continue;
        e += F3(a, r, nu) * f2[static_cast<std::size_t>(g * n + k)] * et;
      }
    return e;
  };
  for (int a = 0; a < n; ++a)
    for (int g = a + 1; g < n; ++g)
      for (int nu = 0; nu < n; ++nu) {
        Polynomial d = q(a, nu, g) - q(g, nu, a);
        if (!d.is_zero())
          throw ConditionFailedError("symmetry condition on eta^{rk} F_{,arn} F_{,gk}", {a + 1, nu + 1, g + 1},
                                     std::move(d));
      }

  PotentialPair out;
  out.dim = n;
  for (int b = 0; b < n; ++b) {
    std::vector<Polynomial> hess(static_cast<std::size_t>(n) * n, Polynomial(n));
    for (int a = 0; a < n; ++a)
      for (int g = 0; g < n; ++g) {
        Polynomial& e = hess[static_cast<std::size_t>(a * n + g)];
        for (int nu = 0; nu < n; ++nu) {
          const Rational& et = f.eta.up.at(b, nu);
          if (et == 0) continue;
          e += q(a, nu, g) * et;
        }
      }
    out.backlund.push_back(integrate_hessian(hess, n));
  }
  return out;
}

// One sample point of the pointwise transformation check.
struct DarbouxPoint {
  std::vector<Rational> x;
  bool usable = false;
  std::string note;
  // J(lam) = lam * M(lam); stored are the M coefficients and the inverse of
  // M over the truncated series ring, then ct(lam) = c * M^{-1}, which is
  // lam times the transformed structure constants.
  std::vector<RationalMatrix> m_series;
  std::vector<RationalMatrix> m_inverse;
  std::vector<std::vector<Rational>> c_tilde_scaled;  // per lam-order, n^3 row-major (a, b, g)
  bool sym_zero = false;
  bool assoc_zero = false;
  std::string witness;
  // optional evaluation at a fixed rational lam0
  std::optional<Rational> lambda0;
  bool numeric_sym_zero = false;
  bool numeric_assoc_zero = false;
};

struct DarbouxReport {
  int order = 0;
  int dim = 0;
  bool degenerate_zero_connection = false;
  std::vector<DarbouxPoint> points;

  int usable_count() const {
    int c = 0;
    for (const auto& p : points) c += p.usable ? 1 : 0;
    return c;
  }
  bool all_zero() const {
    if (usable_count() == 0) return false;
    for (const auto& p : points)
      if (p.usable && !(p.sym_zero && p.assoc_zero)) return false;
    return true;
  }
};

// Deterministic sample points: a small rational lattice first, then seeded
// pseudorandom points.
inline std::vector<std::vector<Rational>> darboux_sample_points(int n, int count, std::uint64_t seed) {
  std::vector<std::vector<Rational>> pts;
  std::vector<Rational> lattice{Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2), Rational(2)};
  // diagonal-ish sweep through the lattice values
  for (std::size_t s = 0; s < lattice.size() && static_cast<int>(pts.size()) < count; ++s) {
    std::vector<Rational> p(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] = lattice[(s + static_cast<std::size_t>(a)) % lattice.size()];
    pts.push_back(std::move(p));
  }
  std::mt19937_64 eng(seed);
  auto rat = [&]() {
    int num = static_cast<int>(eng() % 9) - 4;
    int den = 1 + static_cast<int>(eng() % 3);
    return Rational(num, den);
  };
  while (static_cast<int>(pts.size()) < count * 3) {  // oversample; singular points get skipped
    std::vector<Rational> p(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] = rat();
    pts.push_back(std::move(p));
  }
  return pts;
}

// Pointwise verification of the change of variables x~ = psi(lam): the
// transformed structure constants ct = c * J^{-1} must stay symmetric and
// associative. With the order-N truncation the Jacobian factors exactly as
// lam * M(lam), so the lam-scaled ct is checked modulo lam^{N+1}; the zero
// connection degenerates (J == 0) and passes with ct = 0 by convention.
inline DarbouxReport darboux_verify(const DisplacementField& kf, const VectorSpectralSeries& psi,
                                    const std::vector<std::vector<Rational>>& points, int want,
                                    std::optional<Rational> lambda0 = std::nullopt) {
  int n = kf.dim();
  int order = psi.order;
  DarbouxReport rep;
  rep.order = order;
  rep.dim = n;

  std::vector<Polynomial> h = hessians(kf);
  bool zero_connection = true;
  for (const auto& e : h)
    if (!e.is_zero()) zero_connection = false;
  rep.degenerate_zero_connection = zero_connection;

  for (const auto& pt : points) {
    if (rep.usable_count() >= want) break;
    DarbouxPoint rec;
    rec.x = pt;
    if (zero_connection) {
      rec.usable = true;
      rec.note = "zero connection: transformed constants vanish identically";
      rec.sym_zero = rec.assoc_zero = true;
      rec.numeric_sym_zero = rec.numeric_assoc_zero = true;
      rec.lambda0 = lambda0;
      rep.points.push_back(std::move(rec));
      continue;
    }

    // c at the point
    std::vector<Rational> c(static_cast<std::size_t>(n) * n * n);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = h[i].eval(pt);

    // M_k = d psi_{k+1} / dx at the point
    std::vector<RationalMatrix> m;
    for (int k = 0; k + 1 <= order; ++k) {
      RationalMatrix mk(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          mk.at(a, b) = psi.coeff[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(a)].diff(b).eval(pt);
      m.push_back(std::move(mk));
    }

    if (m.empty() || !m[0].is_invertible()) {
      rec.note = "leading Jacobian coefficient singular at this point; skipped";
      rep.points.push_back(std::move(rec));
      continue;
    }

    rec.usable = true;
    rec.m_series = m;
    rec.m_inverse = series_inverse(m, order);

    // ct_k[a][b][g] = sum_e c^a_{g e} (M^{-1}_k)^e_b
    auto cat = [&](int a, int b, int g) -> const Rational& { return c[static_cast<std::size_t>((a * n + b) * n + g)]; };
    for (int k = 0; k <= order; ++k) {
      std::vector<Rational> ct(static_cast<std::size_t>(n) * n * n, Rational(0));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int g = 0; g < n; ++g) {
            Rational acc(0);
            for (int e = 0; e < n; ++e) acc += cat(a, g, e) * rec.m_inverse[static_cast<std::size_t>(k)].at(e, b);
            ct[static_cast<std::size_t>((a * n + b) * n + g)] = std::move(acc);
          }
      rec.c_tilde_scaled.push_back(std::move(ct));
    }

    auto ct_at = [&](int k, int a, int b, int g) -> const Rational& {
      return rec.c_tilde_scaled[static_cast<std::size_t>(k)][static_cast<std::size_t>((a * n + b) * n + g)];
    };

    rec.sym_zero = true;
    for (int k = 0; k <= order && rec.sym_zero; ++k)
      for (int a = 0; a < n && rec.sym_zero; ++a)
        for (int b = 0; b < n && rec.sym_zero; ++b)
          for (int g = b + 1; g < n; ++g)
            if (ct_at(k, a, b, g) != ct_at(k, a, g, b)) {
              rec.sym_zero = false;
              rec.witness = "symmetry fails at lam-order " + std::to_string(k);
              break;
            }

    // associativity per lam-order: convolution of the scaled series; the
    // overall lam^{-2} prefactor does not affect vanishing
    rec.assoc_zero = true;
    for (int k = 0; k <= order && rec.assoc_zero; ++k)
      for (int a = 0; a < n && rec.assoc_zero; ++a)
        for (int b = 0; b < n && rec.assoc_zero; ++b)
          for (int r = 0; r < n && rec.assoc_zero; ++r)
            for (int nu = 0; nu < n; ++nu) {
              Rational acc(0);
              for (int i = 0; i <= k; ++i)
                for (int g = 0; g < n; ++g)
                  acc += ct_at(i, a, b, g) * ct_at(k - i, g, r, nu) - ct_at(i, a, nu, g) * ct_at(k - i, g, r, b);
              if (acc != 0) {
                rec.assoc_zero = false;
                rec.witness = "associativity fails at lam-order " + std::to_string(k);
                break;
              }
            }

    if (lambda0) {
      rec.lambda0 = lambda0;
      RationalMatrix j(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          Rational acc(0);
          Rational pw = *lambda0;
          for (int k = 0; k + 1 <= order; ++k) {
            acc += pw * m[static_cast<std::size_t>(k)].at(a, b);
            pw *= *lambda0;
          }
          j.at(a, b) = acc;
        }
      auto jinv = j.try_inverse();
      if (!jinv) {
        rec.note += (rec.note.empty() ? "" : "; ") + std::string("numeric Jacobian singular at lam0");
      } else {
        std::vector<Rational> ct(static_cast<std::size_t>(n) * n * n, Rational(0));
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g) {
              Rational acc(0);
              for (int e = 0; e < n; ++e) acc += cat(a, g, e) * jinv->at(e, b);
              ct[static_cast<std::size_t>((a * n + b) * n + g)] = std::move(acc);
            }
        auto nt = [&](int a, int b, int g) -> const Rational& {
          return ct[static_cast<std::size_t>((a * n + b) * n + g)];
        };
        rec.numeric_sym_zero = true;
        for (int a = 0; a < n && rec.numeric_sym_zero; ++a)
          for (int b = 0; b < n && rec.numeric_sym_zero; ++b)
            for (int g = b + 1; g < n; ++g)
              if (nt(a, b, g) != nt(a, g, b)) {
                rec.numeric_sym_zero = false;
                break;
              }
        rec.numeric_assoc_zero = true;
        for (int a = 0; a < n && rec.numeric_assoc_zero; ++a)
          for (int b = 0; b < n && rec.numeric_assoc_zero; ++b)
            for (int r = 0; r < n && rec.numeric_assoc_zero; ++r)
              for (int nu = 0; nu < n; ++nu) {
                Rational acc(0);
                for (int g = 0; g < n; ++g) acc += nt(a, b, g) * nt(g, r, nu) - nt(a, nu, g) * nt(g, r, b);
                if (acc != 0) {
                  rec.numeric_assoc_zero = false;
                  break;
                }
              }
      }
    }
    rep.points.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace oax

#endif
