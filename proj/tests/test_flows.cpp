#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oax/flows.hpp>

#include "fixtures.hpp"
#include "test_util.hpp"

using namespace oax;
using testutil::Rng;

namespace {

VectorSeedSet random_vector_seeds(Rng& rng, int n, int order) {
  VectorSeedSet s;
  for (int j = 0; j <= order; ++j) {
    std::vector<Rational> row;
    for (int g = 0; g < n; ++g) row.push_back(rng.nonzero_rational(3, 2));
    s.h.push_back(std::move(row));
  }
  return s;
}

ScalarSeedSet random_scalar_seeds(Rng& rng, int n, int order) {
  ScalarSeedSet s;
  for (int k = 0; k <= order; ++k) s.b.push_back(rng.rational(3, 2));
  for (int j = 0; j <= order; ++j) {
    std::vector<Rational> row;
    for (int g = 0; g < n; ++g) row.push_back(rng.nonzero_rational(3, 2));
    s.d.push_back(std::move(row));
  }
  return s;
}

FlowBundle bundle_for(const DisplacementField& k, int order, int seed) {
  Rng rng(static_cast<std::uint64_t>(seed));
  return make_flow_bundle(k, order, random_vector_seeds(rng, k.dim(), order),
                          random_scalar_seeds(rng, k.dim(), order));
}

}  // namespace

TEST_CASE("extended flow right-hand sides match a direct coefficient expansion") {
  DisplacementField k = fixtures::algebra_n2();
  FlowBundle b = bundle_for(k, 4, 211);
  VectorSpectralSeries psi = assemble_psi(b.tower, b.hseeds);
  ScalarSpectralSeries chi = assemble_chi(b.tower, b.sseeds);
  int n = 2, N = 4;

  SUBCASE("tau flow of chi(mu)") {
    ExtendedFlowRhs rhs = extended_flow_rhs(b, FlowSpec{FlowKind::TauLambda}, N);
    REQUIRE(rhs.dchi_mu.size() == 1);
    CHECK(rhs.dchi_mu[0].dens.size() == 1);
    CHECK(rhs.dchi_mu[0].dens[0].key() == "lam+mu");
    // numerator = lam mu psi^n(lam) d_n chi(mu): expand coefficient-wise
    const Polynomial& num = rhs.dchi_mu[0].num;
    for (int a = 0; a <= N; ++a)
      for (int bb = 0; bb <= N; ++bb) {
        Polynomial expect(n);
        if (a >= 1 && bb >= 1)
          for (int nu = 0; nu < n; ++nu)
            expect += psi.coeff[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(nu)] *
                      chi.coeff[static_cast<std::size_t>(bb - 1)].diff(nu);
        CHECK(num.coeff_of_param(Param::kLambda, static_cast<std::uint32_t>(a))
                  .coeff_of_param(Param::kMu, static_cast<std::uint32_t>(bb)) == expect);
      }
  }

  SUBCASE("sigma flow of psi(mu), tagged part") {
    ExtendedFlowRhs rhs = extended_flow_rhs(b, FlowSpec{FlowKind::SigmaLambda}, N);
    REQUIRE(rhs.dpsi_mu.size() == 2);
    for (int al = 0; al < n; ++al) {
      REQUIRE(rhs.dpsi_mu[static_cast<std::size_t>(al)].size() == 2);
      const FlowTerm& tagged = rhs.dpsi_mu[static_cast<std::size_t>(al)][1];
      REQUIRE(tagged.dens.size() == 1);
      CHECK(tagged.dens[0].key() == "lam-mu");
      // numerator = lam mu chi(-lam)_{,b} psi^b(mu) psi^al(lam)
      for (int a = 1; a <= N; ++a)
        for (int bb = 1; bb <= N; ++bb) {
          Polynomial expect(n);
          for (int be = 0; be < n; ++be)
            for (int j = 0; j <= a - 1; ++j) {
              Polynomial term = chi.coeff[static_cast<std::size_t>(j)].diff(be) *
                                psi.coeff[static_cast<std::size_t>(a - 1 - j)][static_cast<std::size_t>(al)] *
                                psi.coeff[static_cast<std::size_t>(bb - 1)][static_cast<std::size_t>(be)];
              expect += (j % 2 == 0) ? term : -term;
            }
          CHECK(tagged.num.coeff_of_param(Param::kLambda, static_cast<std::uint32_t>(a))
                    .coeff_of_param(Param::kMu, static_cast<std::uint32_t>(bb)) == expect);
        }
    }
  }

  SUBCASE("zeta flow matches the symmetry combination") {
    ExtendedFlowRhs rhs = extended_flow_rhs(b, FlowSpec{FlowKind::ZetaLambda}, N);
    SymmetryGenerator z = make_zeta_symmetry(psi, chi);
    for (int a = 0; a < n; ++a) CHECK(rhs.dK[static_cast<std::size_t>(a)] == z.comps[static_cast<std::size_t>(a)]);
  }
}

TEST_CASE("cleared_difference common denominators") {
  int n = 2;
  Polynomial x = Polynomial::variable(n, 0);
  Polynomial one = Polynomial::constant(n, 1);
  DenomFactor lp = DenomFactor::plus(Param::kLambda, Param::kMu);
  DenomFactor lm = DenomFactor::minus(Param::kLambda, Param::kMu);
  // x/(lam+mu) - x/(lam+mu) = 0
  CHECK(cleared_difference({FlowTerm{x, {lp}}}, {FlowTerm{x, {lp}}}, n, Truncation::box(4)).is_zero());
  // 1/(lam-mu) vs (lam+mu)/((lam-mu)(lam+mu)) are equal after clearing
  Polynomial lam_plus_mu = lp.poly(n);
  CHECK(cleared_difference({FlowTerm{one, {lm}}}, {FlowTerm{lam_plus_mu, {lm, lp}}}, n, Truncation::box(4)).is_zero());
  // 1/(lam-mu) vs 1/(lam+mu) differ
  CHECK(!cleared_difference({FlowTerm{one, {lm}}}, {FlowTerm{one, {lp}}}, n, Truncation::box(4)).is_zero());
  CHECK_THROWS_AS(DenomFactor::plus(Param::kMu, Param::kLambda), InvariantError);
}

TEST_CASE("tau flows commute on bundles") {
  SUBCASE("zero connection is trivial") {
    FlowBundle b = bundle_for(fixtures::linear_n3(), 3, 223);
    CommutationReport r = check_tau_tau(b, 3);
    CHECK(r.zero());
  }

  SUBCASE("constant-algebra bundle") {
    FlowBundle b = bundle_for(fixtures::algebra_n2(), 4, 227);
    CommutationReport r = check_tau_tau(b, 4);
    CHECK(r.zero());
    CHECK(r.residuals.size() == 3);
  }

  SUBCASE("reduced quintic bundle") {
    FlowBundle b = bundle_for(gradient_reduce(fixtures::a3_wdvv()), 3, 229);
    CommutationReport r = check_tau_tau(b, 3);
    CHECK(r.zero());
  }
}

TEST_CASE("sigma pairs commute at the K level") {
  SUBCASE("trivial bundle") {
    FlowBundle b = bundle_for(fixtures::linear_n3(), 3, 233);
    CHECK(check_sigma_pairs(b, 3).zero());
  }
  SUBCASE("quadratic bundle") {
    FlowBundle b = bundle_for(fixtures::algebra_n2(), 4, 239);
    CHECK(check_sigma_pairs(b, 4).zero());
  }
  SUBCASE("reduced quintic bundle") {
    FlowBundle b = bundle_for(gradient_reduce(fixtures::a3_wdvv()), 3, 241);
    CHECK(check_sigma_pairs(b, 3).zero());
  }
}

TEST_CASE("perturbed series break commutation") {
  // sanity that the checks can fail: corrupt one tower entry
  FlowBundle b = bundle_for(fixtures::algebra_n2(), 3, 251);
  b.tower.w[2][1] += Polynomial::variable(2, 0) * Polynomial::variable(2, 1);
  CommutationReport r = check_tau_tau(b, 3);
  CHECK(!r.zero());
  CHECK(!r.witness().empty());
}

TEST_CASE("w-hierarchy commutes") {
  SUBCASE("k = 0 against anything is constant") {
    FlowBundle b = bundle_for(fixtures::algebra_n2(), 3, 257);
    for (int l = 0; l <= 2; ++l) CHECK(check_w_hierarchy(b, 0, l).zero());
  }
  SUBCASE("quadratic bundle (1,2)") {
    FlowBundle b = bundle_for(fixtures::algebra_n2(), 4, 263);
    CHECK(check_w_hierarchy(b, 1, 2).zero());
  }
  SUBCASE("reduced quintic (2,3)") {
    FlowBundle b = bundle_for(gradient_reduce(fixtures::a3_wdvv()), 4, 269);
    CommutationReport r = check_w_hierarchy(b, 2, 3);
    CHECK(r.zero());
    // swap symmetry of the verdict
    CHECK(check_w_hierarchy(b, 3, 2).zero() == r.zero());
  }
  SUBCASE("tower order precondition") {
    FlowBundle b = bundle_for(fixtures::algebra_n2(), 3, 271);
    CHECK_THROWS_AS(check_w_hierarchy(b, 3, 3), InvariantError);
  }
}

TEST_CASE("gradient-reduced flows commute") {
  SUBCASE("low-degree prepotential is trivial") {
    Chart c(3);
    Prepotential f(c, parse_polynomial("x1^2+x2*x3", c), fixtures::identity_metric(3));
    FlowBundle b = bundle_for(gradient_reduce(f), 3, 277);
    CHECK(check_wdvv_flows(b, f.eta, 3).zero());
  }
  SUBCASE("diagonal cubic") {
    Prepotential f = fixtures::diagonal_cubic(2);
    FlowBundle b = bundle_for(gradient_reduce(f), 4, 281);
    CommutationReport r = check_wdvv_flows(b, f.eta, 4);
    CHECK(r.zero());
    CHECK(r.residuals.size() == 4);
  }
  SUBCASE("quintic prepotential") {
    Prepotential f = fixtures::a3_wdvv();
    FlowBundle b = bundle_for(gradient_reduce(f), 3, 283);
    CHECK(check_wdvv_flows(b, f.eta, 3).zero());
  }
}

TEST_CASE("order consistency: a passing check passes at lower truncation") {
  FlowBundle b = bundle_for(fixtures::algebra_n2(), 4, 293);
  for (int tr = 2; tr <= 4; ++tr) {
    CHECK(check_tau_tau(b, tr).zero());
    CHECK(check_sigma_pairs(b, tr).zero());
  }
}

TEST_CASE("extended sigma-sigma is reported, not asserted") {
  FlowBundle b = bundle_for(fixtures::algebra_n2(), 3, 307);
  CommutationReport r = check_sigma_extended_info(b, 3);
  CHECK(!r.asserted);
  REQUIRE(r.residuals.size() == 1);
  // record the empirical outcome either way
  MESSAGE("extended sigma-sigma chi-level zero: ", r.zero());
}

TEST_CASE("coefficient flow right-hand sides") {
  FlowBundle b = bundle_for(fixtures::algebra_n2(), 4, 401);
  // tau^b_k on K and the covering: matches the tower and the symmetry family
  ExtendedFlowRhs rhs = extended_flow_rhs(b, FlowSpec{FlowKind::TauCoeff, 2, 1, -1}, 4);
  for (int a = 0; a < 2; ++a) CHECK(rhs.dK[static_cast<std::size_t>(a)] == b.tower.w_at(2, a, 1));
  REQUIRE(rhs.dw.size() == 5);
  for (const auto& e : rhs.dw[0]) CHECK(e.is_zero());  // w_0 is constant
  // d(w_1)^a_p / d tau^b_2 = c^a_{nr} (w_1)^n_b (w_0)^r_p = c^a_{np} (w_1)^n_b
  std::vector<Polynomial> h = hessians(b.K);
  for (int a = 0; a < 2; ++a)
    for (int p = 0; p < 2; ++p) {
      Polynomial expect(2);
      for (int nu = 0; nu < 2; ++nu) expect += h[static_cast<std::size_t>((a * 2 + nu) * 2 + p)] * b.tower.w_at(1, nu, 1);
      CHECK(rhs.dw[1][static_cast<std::size_t>(a * 2 + p)] == expect);
    }

  ExtendedFlowRhs sig = extended_flow_rhs(b, FlowSpec{FlowKind::SigmaCoeff, 2, 0, 1}, 4);
  auto gens = coefficient_symmetries(b.tower, 2);
  // Y^b_{2,g} with b=0 (beta), g=1 (gamma): generators are listed X first (2), then Y row-major
  const SymmetryGenerator& y = gens[static_cast<std::size_t>(2 + 0 * 2 + 1)];
  REQUIRE(y.kind == "Y");
  for (int a = 0; a < 2; ++a) CHECK(sig.dK[static_cast<std::size_t>(a)] == y.comps[static_cast<std::size_t>(a)]);
  CHECK_THROWS_AS(extended_flow_rhs(b, FlowSpec{FlowKind::TauCoeff, 9, 0, -1}, 4), InvariantError);
}
