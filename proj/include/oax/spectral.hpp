#ifndef OAX_SPECTRAL_HPP
#define OAX_SPECTRAL_HPP

#include <optional>
#include <utility>
#include <vector>

#include <oax/tower.hpp>

namespace oax {

// Arbitrary constants seeding the spectral series.
struct VectorSeedSet {
  std::vector<std::vector<Rational>> h;  // h[j][g], j = 0..N

  static VectorSeedSet unit(int n, int order, int g) {
    VectorSeedSet s;
    s.h.assign(static_cast<std::size_t>(order) + 1, std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    s.h[0][static_cast<std::size_t>(g)] = 1;
    return s;
  }
};

struct ScalarSeedSet {
  std::vector<Rational> b;               // b[k], k = 0..N
  std::vector<std::vector<Rational>> d;  // d[j][g], j = 0..N

  // seeds of the flat coordinate chi^a: chi|_{lam=0} = x^a
  static ScalarSeedSet normalized(int n, int order, int a) {
    ScalarSeedSet s;
    s.b.assign(static_cast<std::size_t>(order) + 1, Rational(0));
    s.d.assign(static_cast<std::size_t>(order) + 1, std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    s.d[0][static_cast<std::size_t>(a)] = 1;
    return s;
  }
};

// Truncated solution psi(lam) = sum_k psi_k lam^k of the vector problem
// d psi^a / dx^b = lam K^a_{,bg} psi^g, exact modulo lam^{N+1}.
struct VectorSpectralSeries {
  int order = 0;
  std::vector<std::vector<Polynomial>> coeff;  // coeff[k][a]
  VectorSeedSet seeds;
  int dim = 0;

  // sum_{k <= min(N, cap)} psi_k^a p^k
  Polynomial series(int a, Param p, int cap = -1) const {
    int top = cap < 0 ? order : std::min(order, cap);
    Polynomial out(dim);
    for (int k = 0; k <= top; ++k)
      out += coeff[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] * Polynomial::parameter(dim, p).pow(static_cast<std::uint32_t>(k));
    return out;
  }
};

// Truncated solution of the scalar problem chi_{,ag} = lam K^n_{,ag} chi_{,n}.
struct ScalarSpectralSeries {
  int order = 0;
  std::vector<Polynomial> coeff;  // chi_k
  ScalarSeedSet seeds;
  std::optional<int> normalized_component;  // set when chi|_{lam=0} = x^a
  int dim = 0;

  Polynomial series(Param p, int cap = -1) const {
    int top = cap < 0 ? order : std::min(order, cap);
    Polynomial out(dim);
    for (int k = 0; k <= top; ++k)
      out += coeff[static_cast<std::size_t>(k)] * Polynomial::parameter(dim, p).pow(static_cast<std::uint32_t>(k));
    return out;
  }
};

// phi_a = d chi / dx^a coefficient-wise.
struct CovectorSpectralSeries {
  int order = 0;
  std::vector<std::vector<Polynomial>> coeff;  // coeff[k][a]
  int dim = 0;
};

// psi_k^a = sum_{j=0}^{k} h_j^g (w_{k-j})^a_g
inline VectorSpectralSeries assemble_psi(const PotentialTower& t, const VectorSeedSet& seeds) {
  if (t.w.empty()) throw InvariantError("assemble_psi needs the w-part of the tower");
  int n = t.dim();
  if (static_cast<int>(seeds.h.size()) < t.order + 1) throw InvariantError("seed list shorter than tower order");
  VectorSpectralSeries s;
  s.order = t.order;
  s.dim = n;
  s.seeds = seeds;
  for (int k = 0; k <= t.order; ++k) {
    std::vector<Polynomial> psik(static_cast<std::size_t>(n), Polynomial(n));
    for (int a = 0; a < n; ++a)
      for (int j = 0; j <= k; ++j)
        for (int g = 0; g < n; ++g) {
          const Rational& hh = seeds.h[static_cast<std::size_t>(j)][static_cast<std::size_t>(g)];
          if (hh == 0) continue;
          psik[static_cast<std::size_t>(a)] += t.w_at(k - j, a, g) * hh;
        }
    s.coeff.push_back(std::move(psik));
  }
  return s;
}

// chi_k = b_k + sum_{j=0}^{k} d_{k-j,g} v_j^g
inline ScalarSpectralSeries assemble_chi(const PotentialTower& t, const ScalarSeedSet& seeds) {
  if (t.v.empty()) throw InvariantError("assemble_chi needs the v-part of the tower");
  int n = t.dim();
  if (static_cast<int>(seeds.b.size()) < t.order + 1 || static_cast<int>(seeds.d.size()) < t.order + 1)
    throw InvariantError("seed list shorter than tower order");
  ScalarSpectralSeries s;
  s.order = t.order;
  s.dim = n;
  s.seeds = seeds;
  for (int k = 0; k <= t.order; ++k) {
    Polynomial chik = Polynomial::constant(n, seeds.b[static_cast<std::size_t>(k)]);
    for (int j = 0; j <= k; ++j)
      for (int g = 0; g < n; ++g) {
        const Rational& dd = seeds.d[static_cast<std::size_t>(k - j)][static_cast<std::size_t>(g)];
        if (dd == 0) continue;
        chik += t.v_at(j, g) * dd;
      }
    s.coeff.push_back(std::move(chik));
  }
  // normalization chi|_{lam=0} = x^a holds iff b_0 = 0 and d_0 = e_a
  for (int a = 0; a < n; ++a)
    if (s.coeff[0] == Polynomial::variable(n, a)) {
      s.normalized_component = a;
      break;
    }
  return s;
}

inline CovectorSpectralSeries covector_from_scalar(const ScalarSpectralSeries& chi) {
  CovectorSpectralSeries s;
  s.order = chi.order;
  s.dim = chi.dim;
  for (int k = 0; k <= chi.order; ++k) {
    std::vector<Polynomial> row(static_cast<std::size_t>(chi.dim));
    for (int a = 0; a < chi.dim; ++a) row[static_cast<std::size_t>(a)] = chi.coeff[static_cast<std::size_t>(k)].diff(a);
    s.coeff.push_back(std::move(row));
  }
  return s;
}

// residual of d psi^a / dx^b - lam K^a_{,bg} psi^g, entries bivariate in
// (x, lam), truncated modulo lam^{N+1}
inline ResidualTensor verify_vector_spectral(const DisplacementField& kf, const VectorSpectralSeries& psi) {
  int n = kf.dim();
  std::vector<Polynomial> h = hessians(kf);
  auto c = [&](int a, int b, int g) -> const Polynomial& { return h[static_cast<std::size_t>((a * n + b) * n + g)]; };
  Polynomial lam = Polynomial::parameter(n, Param::kLambda);
  std::vector<Polynomial> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Polynomial e(n);
      for (int k = 0; k <= psi.order; ++k) {
        Polynomial rk = psi.coeff[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)].diff(b);
        if (k > 0)
          for (int g = 0; g < n; ++g)
            rk -= c(a, b, g) * psi.coeff[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(g)];
        e += rk * lam.pow(static_cast<std::uint32_t>(k));
      }
      out.push_back(std::move(e));
    }
  return ResidualTensor::from_entries({n, n}, std::move(out));
}

// residual of chi_{,ag} - lam K^n_{,ag} chi_{,n} modulo lam^{N+1}
inline ResidualTensor verify_scalar_spectral(const DisplacementField& kf, const ScalarSpectralSeries& chi) {
  int n = kf.dim();
  std::vector<Polynomial> h = hessians(kf);
  auto c = [&](int a, int b, int g) -> const Polynomial& { return h[static_cast<std::size_t>((a * n + b) * n + g)]; };
  Polynomial lam = Polynomial::parameter(n, Param::kLambda);
  std::vector<Polynomial> out;
  for (int a = 0; a < n; ++a)
    for (int g = 0; g < n; ++g) {
      Polynomial e(n);
      for (int k = 0; k <= chi.order; ++k) {
        Polynomial rk = chi.coeff[static_cast<std::size_t>(k)].diff(a).diff(g);
        if (k > 0)
          for (int nu = 0; nu < n; ++nu) rk -= c(nu, a, g) * chi.coeff[static_cast<std::size_t>(k - 1)].diff(nu);
        e += rk * lam.pow(static_cast<std::uint32_t>(k));
      }
      out.push_back(std::move(e));
    }
  return ResidualTensor::from_entries({n, n}, std::move(out));
}

// residual of d phi_a / dx^b - lam K^d_{,ab} phi_d modulo lam^{N+1}
inline ResidualTensor verify_covector_adjoint(const DisplacementField& kf, const CovectorSpectralSeries& phi) {
  int n = kf.dim();
  std::vector<Polynomial> h = hessians(kf);
  auto c = [&](int a, int b, int g) -> const Polynomial& { return h[static_cast<std::size_t>((a * n + b) * n + g)]; };
  Polynomial lam = Polynomial::parameter(n, Param::kLambda);
  std::vector<Polynomial> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Polynomial e(n);
      for (int k = 0; k <= phi.order; ++k) {
        Polynomial rk = phi.coeff[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)].diff(b);
        if (k > 0)
          for (int d = 0; d < n; ++d)
            rk -= c(d, a, b) * phi.coeff[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(d)];
        e += rk * lam.pow(static_cast<std::uint32_t>(k));
      }
      out.push_back(std::move(e));
    }
  return ResidualTensor::from_entries({n, n}, std::move(out));
}

}  // namespace oax

#endif
