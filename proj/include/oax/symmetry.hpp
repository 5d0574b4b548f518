#ifndef OAX_SYMMETRY_HPP
#define OAX_SYMMETRY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <oax/spectral.hpp>

namespace oax {

// Evolutionary generator: components G^a for the oriented system, or a
// single scalar g for the gradient-reduced one. Constructors only build
// data; certification always goes through a residual evaluation.
struct SymmetryGenerator {
  std::string kind;
  std::vector<Polynomial> comps;  // size n, or size 1 when scalar
  bool scalar = false;
  std::map<std::string, std::string> meta;

  static SymmetryGenerator vector(std::string kind, std::vector<Polynomial> comps) {
    return SymmetryGenerator{std::move(kind), std::move(comps), false, {}};
  }
  static SymmetryGenerator scalar_gen(std::string kind, Polynomial g) {
    std::vector<Polynomial> c;
    c.push_back(std::move(g));
    return SymmetryGenerator{std::move(kind), std::move(c), true, {}};
  }
};

// Residual of the linearization of the oriented system at K in direction G:
// entry(nu,a,b,g) = G^nu_{,ar} K^r_{,bg} + K^nu_{,ar} G^r_{,bg}
//                 - G^r_{,ab} K^nu_{,rg} - K^r_{,ab} G^nu_{,rg},
// truncated modulo lam^{trunc+1} when G carries the parameter.
inline ResidualTensor linearized_residual(const DisplacementField& kf, const SymmetryGenerator& gen,
                                          int lambda_trunc = -1) {
  if (gen.scalar) throw InvariantError("linearized_residual expects a vector generator");
  int n = kf.dim();
  if (static_cast<int>(gen.comps.size()) != n) throw InvariantError("generator component count mismatch");
  std::vector<Polynomial> hk = hessians(kf);
  DisplacementField gf(kf.chart, gen.comps);
  std::vector<Polynomial> hg = hessians(gf);
  auto K = [&](int a, int b, int g) -> const Polynomial& { return hk[static_cast<std::size_t>((a * n + b) * n + g)]; };
  auto G = [&](int a, int b, int g) -> const Polynomial& { return hg[static_cast<std::size_t>((a * n + b) * n + g)]; };
  Truncation tr = lambda_trunc < 0 ? Truncation::none() : Truncation::order(Param::kLambda, lambda_trunc);
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int nu = 0; nu < n; ++nu)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g) {
          Polynomial e(n);
          for (int r = 0; r < n; ++r) {
            e += Polynomial::mul(G(nu, a, r), K(r, b, g), tr);
            e += Polynomial::mul(K(nu, a, r), G(r, b, g), tr);
            e -= Polynomial::mul(G(r, a, b), K(nu, r, g), tr);
            e -= Polynomial::mul(K(r, a, b), G(nu, r, g), tr);
          }
          out.push_back(e.truncate(tr));
        }
  return ResidualTensor::from_entries({n, n, n, n}, std::move(out));
}

// G^a = psi^a(lam), truncated at the series order.
inline SymmetryGenerator make_tau_symmetry(const VectorSpectralSeries& psi) {
  std::vector<Polynomial> comps;
  for (int a = 0; a < psi.dim; ++a) comps.push_back(psi.series(a, Param::kLambda));
  SymmetryGenerator g = SymmetryGenerator::vector("tau", std::move(comps));
  g.meta["order"] = std::to_string(psi.order);
  return g;
}

// G^a = psi^a(lam) chi(-lam) with the sign flip applied to the chi
// coefficients, truncated at lam^N. Coefficients are the convolution
// rho^a_k = sum_j (-1)^j chi_j psi^a_{k-j}.
inline SymmetryGenerator make_sigma_symmetry(const VectorSpectralSeries& psi, const ScalarSpectralSeries& chi) {
  if (psi.order != chi.order) throw InvariantError("sigma symmetry needs matching series orders");
  Polynomial chi_neg = chi.series(Param::kLambda).negate_param(Param::kLambda);
  Truncation tr = Truncation::order(Param::kLambda, psi.order);
  std::vector<Polynomial> comps;
  for (int a = 0; a < psi.dim; ++a)
    comps.push_back(Polynomial::mul(psi.series(a, Param::kLambda), chi_neg, tr));
  SymmetryGenerator g = SymmetryGenerator::vector("sigma", std::move(comps));
  g.meta["order"] = std::to_string(psi.order);
  return g;
}

// convolution route to the same coefficients, kept separate so the sign-flip
// implementation can be cross-checked against it
inline std::vector<std::vector<Polynomial>> sigma_rho_coefficients(const VectorSpectralSeries& psi,
                                                                   const ScalarSpectralSeries& chi) {
  if (psi.order != chi.order) throw InvariantError("sigma symmetry needs matching series orders");
  std::vector<std::vector<Polynomial>> rho;
  for (int k = 0; k <= psi.order; ++k) {
    std::vector<Polynomial> row(static_cast<std::size_t>(psi.dim), Polynomial(psi.dim));
    for (int a = 0; a < psi.dim; ++a)
      for (int j = 0; j <= k; ++j) {
        Polynomial t = chi.coeff[static_cast<std::size_t>(j)] *
                       psi.coeff[static_cast<std::size_t>(k - j)][static_cast<std::size_t>(a)];
        row[static_cast<std::size_t>(a)] += (j % 2 == 0) ? t : -t;
      }
    rho.push_back(std::move(row));
  }
  return rho;
}

// G^a = psi^a(lam) chi(-lam) + psi^a(-lam) chi(lam)
inline SymmetryGenerator make_zeta_symmetry(const VectorSpectralSeries& psi, const ScalarSpectralSeries& chi) {
  if (psi.order != chi.order) throw InvariantError("zeta symmetry needs matching series orders");
  Polynomial chi_pos = chi.series(Param::kLambda);
  Polynomial chi_neg = chi_pos.negate_param(Param::kLambda);
  Truncation tr = Truncation::order(Param::kLambda, psi.order);
  std::vector<Polynomial> comps;
  for (int a = 0; a < psi.dim; ++a) {
    Polynomial pa = psi.series(a, Param::kLambda);
    comps.push_back(Polynomial::mul(pa, chi_neg, tr) + Polynomial::mul(pa.negate_param(Param::kLambda), chi_pos, tr));
  }
  SymmetryGenerator g = SymmetryGenerator::vector("zeta", std::move(comps));
  g.meta["order"] = std::to_string(psi.order);
  return g;
}

// X_{k,b}: G^a = (w_k)^a_b, and Y^b_{k,g}: G^a = sum_j (-1)^j v_j^b (w_{k-j})^a_g
inline std::vector<SymmetryGenerator> coefficient_symmetries(const PotentialTower& t, int k) {
  if (k > t.order) throw InvariantError("coefficient symmetry order exceeds tower order");
  if (t.w.empty() || t.v.empty()) throw InvariantError("coefficient symmetries need both tower parts");
  int n = t.dim();
  std::vector<SymmetryGenerator> out;
  for (int b = 0; b < n; ++b) {
    std::vector<Polynomial> comps;
    for (int a = 0; a < n; ++a) comps.push_back(t.w_at(k, a, b));
    SymmetryGenerator g = SymmetryGenerator::vector("X", std::move(comps));
    g.meta["k"] = std::to_string(k);
    g.meta["beta"] = std::to_string(b + 1);
    out.push_back(std::move(g));
  }
  for (int b = 0; b < n; ++b)
    for (int ga = 0; ga < n; ++ga) {
      std::vector<Polynomial> comps(static_cast<std::size_t>(n), Polynomial(n));
      for (int a = 0; a < n; ++a)
        for (int j = 0; j <= k; ++j) {
          Polynomial term = t.v_at(j, b) * t.w_at(k - j, a, ga);
          comps[static_cast<std::size_t>(a)] += (j % 2 == 0) ? term : -term;
        }
      SymmetryGenerator g = SymmetryGenerator::vector("Y", std::move(comps));
      g.meta["k"] = std::to_string(k);
      g.meta["beta"] = std::to_string(b + 1);
      g.meta["gamma"] = std::to_string(ga + 1);
      out.push_back(std::move(g));
    }
  return out;
}

// Residual of the linearization of the gradient-reduced system at F in
// direction g:
// entry(a,b,nu,r) = g_{,abd} eta^{dg} F_{,gnr} + F_{,abd} eta^{dg} g_{,gnr}
//                 - g_{,and} eta^{dg} F_{,gbr} - F_{,and} eta^{dg} g_{,gbr}.
inline ResidualTensor wdvv_linearized_residual(const Prepotential& f, const SymmetryGenerator& gen,
                                               int lambda_trunc = -1) {
  if (!gen.scalar || gen.comps.size() != 1) throw InvariantError("wdvv_linearized_residual expects a scalar generator");
  int n = f.chart.dim();
  std::vector<Polynomial> tf = third_derivatives(f);
  Prepotential gp(f.chart, gen.comps[0], f.eta);
  std::vector<Polynomial> tg = third_derivatives(gp);
  auto F3 = [&](int a, int b, int g) -> const Polynomial& { return tf[static_cast<std::size_t>((a * n + b) * n + g)]; };
  auto G3 = [&](int a, int b, int g) -> const Polynomial& { return tg[static_cast<std::size_t>((a * n + b) * n + g)]; };
  Truncation tr = lambda_trunc < 0 ? Truncation::none() : Truncation::order(Param::kLambda, lambda_trunc);
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int nu = 0; nu < n; ++nu)
        for (int r = 0; r < n; ++r) {
          Polynomial e(n);
          for (int d = 0; d < n; ++d)
            for (int g = 0; g < n; ++g) {
              const Rational& et = f.eta.up.at(d, g);
              if (et == 0) continue;
              Polynomial s = Polynomial::mul(G3(a, b, d), F3(g, nu, r), tr);
              s += Polynomial::mul(F3(a, b, d), G3(g, nu, r), tr);
              s -= Polynomial::mul(G3(a, nu, d), F3(g, b, r), tr);
              s -= Polynomial::mul(F3(a, nu, d), G3(g, b, r), tr);
              e += s * et;
            }
          out.push_back(e.truncate(tr));
        }
  return ResidualTensor::from_entries({n, n, n, n}, std::move(out));
}

inline SymmetryGenerator wdvv_chi_symmetry(const ScalarSpectralSeries& chi) {
  SymmetryGenerator g = SymmetryGenerator::scalar_gen("wdvv-chi", chi.series(Param::kLambda));
  g.meta["order"] = std::to_string(chi.order);
  return g;
}

// g = chi(lam) chi(-lam), truncated at lam^N
inline SymmetryGenerator wdvv_chichi_symmetry(const ScalarSpectralSeries& chi) {
  Polynomial pos = chi.series(Param::kLambda);
  Polynomial neg = pos.negate_param(Param::kLambda);
  SymmetryGenerator g = SymmetryGenerator::scalar_gen(
      "wdvv-chichi", Polynomial::mul(pos, neg, Truncation::order(Param::kLambda, chi.order)));
  g.meta["order"] = std::to_string(chi.order);
  return g;
}

// Xt^b_k: g = v_k^b, and Zt^{ab}_k: g = sum_j (-1)^j v_j^a v_{k-j}^b
inline std::vector<SymmetryGenerator> wdvv_coefficient_symmetries(const PotentialTower& t, int k) {
  if (k > t.order) throw InvariantError("coefficient symmetry order exceeds tower order");
  if (t.v.empty()) throw InvariantError("wdvv coefficient symmetries need the v-part");
  int n = t.dim();
  std::vector<SymmetryGenerator> out;
  for (int b = 0; b < n; ++b) {
    SymmetryGenerator g = SymmetryGenerator::scalar_gen("Xt", t.v_at(k, b));
    g.meta["k"] = std::to_string(k);
    g.meta["beta"] = std::to_string(b + 1);
    out.push_back(std::move(g));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Polynomial acc(n);
      for (int j = 0; j <= k; ++j) {
        Polynomial term = t.v_at(j, a) * t.v_at(k - j, b);
        acc += (j % 2 == 0) ? term : -term;
      }
      SymmetryGenerator g = SymmetryGenerator::scalar_gen("Zt", std::move(acc));
      g.meta["k"] = std::to_string(k);
      g.meta["alpha"] = std::to_string(a + 1);
      g.meta["beta"] = std::to_string(b + 1);
      out.push_back(std::move(g));
    }
  return out;
}

// Exact rank of a set of generators viewed as coefficient vectors over the
// union of their monomials. Reported, never asserted.
inline int generator_family_rank(const std::vector<SymmetryGenerator>& gens) {
  std::map<std::pair<int, Monomial>, int, bool (*)(const std::pair<int, Monomial>&, const std::pair<int, Monomial>&)>
      columns([](const std::pair<int, Monomial>& x, const std::pair<int, Monomial>& y) {
        if (x.first != y.first) return x.first < y.first;
        return GrlexLess{}(x.second, y.second);
      });
  for (const auto& g : gens)
    for (std::size_t c = 0; c < g.comps.size(); ++c)
      for (const auto& [m, v] : g.comps[c].terms()) columns.try_emplace({static_cast<int>(c), m}, 0);
  int idx = 0;
  for (auto& [key, col] : columns) col = idx++;
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : gens) {
    std::vector<Rational> row(columns.size(), Rational(0));
    for (std::size_t c = 0; c < g.comps.size(); ++c)
      for (const auto& [m, v] : g.comps[c].terms())
        row[static_cast<std::size_t>(columns.at({static_cast<int>(c), m}))] = v;
    rows.push_back(std::move(row));
  }
  // exact Gaussian elimination
  int rank = 0;
  std::size_t ncols = columns.size();
  for (std::size_t col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
    const Rational p = rows[static_cast<std::size_t>(rank)][col];
    for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      Rational f = rows[i][col] / p;
      for (std::size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[static_cast<std::size_t>(rank)][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace oax

#endif
