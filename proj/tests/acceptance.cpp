// Acceptance suite: one criterion per line, every check demanding exact
// zero in rational arithmetic, each with its wall-clock budget.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <oax/runner.hpp>

#include "test_util.hpp"

using namespace oax;

namespace {

struct Prepared {
  std::string name;
  SolutionBundle bundle;
};

std::vector<Prepared> trusted_bundles() {
  std::vector<Prepared> out;
  for (const auto& e : bundled_entries()) {
    if (e.counterexample) continue;
    out.push_back(Prepared{e.name, make_bundle(parse_solution_text(e.text, e.name))});
  }
  return out;
}

std::vector<Prepared> counterexample_bundles() {
  std::vector<Prepared> out;
  for (const auto& e : bundled_entries()) {
    if (!e.counterexample) continue;
    out.push_back(Prepared{e.name, make_bundle(parse_solution_text(e.text, e.name))});
  }
  return out;
}

constexpr int kOrder = 4;
constexpr std::uint64_t kSeed = 20240809;

bool criterion_solution_validation(std::string& note) {
  auto sols = trusted_bundles();
  if (sols.size() != 4) {
    note = "expected 4 bundled solutions";
    return false;
  }
  for (const auto& p : sols) {
    if (!residual_oae(p.bundle.K).is_zero()) {
      note = p.name + ": oae residual nonzero";
      return false;
    }
    if (p.bundle.is_wdvv() && !residual_wdvv(*p.bundle.prepotential).is_zero()) {
      note = p.name + ": wdvv residual nonzero";
      return false;
    }
  }
  auto bad = counterexample_bundles();
  if (bad.size() != 2) {
    note = "expected 2 bundled counterexamples";
    return false;
  }
  for (const auto& p : bad) {
    ResidualTensor r = p.bundle.is_wdvv() ? residual_wdvv(Prepotential(p.bundle.K.chart, *p.bundle.data.prepotential,
                                                                       Metric(*p.bundle.data.eta)))
                                          : residual_oae(p.bundle.K);
    if (r.is_zero() || !r.witness().has_value()) {
      note = p.name + ": counterexample not rejected with witness";
      return false;
    }
  }
  return true;
}

bool criterion_spectral_towers(std::string& note) {
  for (const auto& p : trusted_bundles()) {
    PotentialTower t;
    try {
      t = build_towers(p.bundle.K, kOrder);
    } catch (const Error& e) {
      note = p.name + ": " + e.what();
      return false;
    }
    if (!tower_w_recursion_residual(p.bundle.K, t).is_zero() || !tower_v_recursion_residual(p.bundle.K, t).is_zero()) {
      note = p.name + ": recursion residual nonzero";
      return false;
    }
    for (const auto& seeds : generate_seed_pairs(kSeed, p.bundle.dim(), kOrder, 3)) {
      if (!verify_vector_spectral(p.bundle.K, assemble_psi(t, seeds.h)).is_zero()) {
        note = p.name + ": vector spectral residual nonzero";
        return false;
      }
      if (!verify_scalar_spectral(p.bundle.K, assemble_chi(t, seeds.bd)).is_zero()) {
        note = p.name + ": scalar spectral residual nonzero";
        return false;
      }
    }
  }
  return true;
}

bool criterion_theorem_symmetries(std::string& note) {
  for (const auto& p : trusted_bundles()) {
    PotentialTower t = build_towers(p.bundle.K, kOrder);
    for (const auto& seeds : generate_seed_pairs(kSeed + 1, p.bundle.dim(), kOrder, 3)) {
      VectorSpectralSeries psi = assemble_psi(t, seeds.h);
      ScalarSpectralSeries chi = assemble_chi(t, seeds.bd);
      if (!linearized_residual(p.bundle.K, make_tau_symmetry(psi), kOrder).is_zero()) {
        note = p.name + ": tau symmetry residual nonzero";
        return false;
      }
      if (!linearized_residual(p.bundle.K, make_sigma_symmetry(psi, chi), kOrder).is_zero()) {
        note = p.name + ": sigma symmetry residual nonzero";
        return false;
      }
    }
  }
  return true;
}

bool criterion_coefficient_hierarchies(std::string& note) {
  for (const auto& p : trusted_bundles()) {
    PotentialTower t = build_towers(p.bundle.K, kOrder);
    for (int k = 0; k <= kOrder; ++k) {
      for (const auto& g : coefficient_symmetries(t, k))
        if (!linearized_residual(p.bundle.K, g).is_zero()) {
          note = p.name + ": " + g.kind + " at k=" + std::to_string(k) + " fails";
          return false;
        }
      if (p.bundle.is_wdvv())
        for (const auto& g : wdvv_coefficient_symmetries(t, k))
          if (!wdvv_linearized_residual(*p.bundle.prepotential, g).is_zero()) {
            note = p.name + ": " + g.kind + " at k=" + std::to_string(k) + " fails";
            return false;
          }
    }
  }
  return true;
}

bool criterion_cks_reduction(std::string& note) {
  SolutionBundle a3 = make_bundle(parse_solution_text(*bundled_text("a3-wdvv"), "a3-wdvv"));
  const Prepotential& f = *a3.prepotential;
  PotentialTower t = build_towers(a3.K, kOrder);
  for (const auto& seeds : generate_seed_pairs(kSeed + 2, 3, kOrder, 3)) {
    ScalarSpectralSeries chi = assemble_chi(t, seeds.bd);
    if (!wdvv_linearized_residual(f, wdvv_chi_symmetry(chi), kOrder).is_zero()) {
      note = "chi symmetry residual nonzero";
      return false;
    }
    if (!wdvv_linearized_residual(f, wdvv_chichi_symmetry(chi), kOrder).is_zero()) {
      note = "chi(lam)chi(-lam) symmetry residual nonzero";
      return false;
    }
    // reduction coherence: psi from eta-raised seeds equals eta grad chi
    VectorSeedSet sh;
    for (int j = 0; j <= kOrder; ++j) {
      std::vector<Rational> row(3, Rational(0));
      for (int a = 0; a < 3; ++a)
        for (int g = 0; g < 3; ++g) row[static_cast<std::size_t>(a)] += f.eta.up.at(a, g) * seeds.bd.d[static_cast<std::size_t>(j)][static_cast<std::size_t>(g)];
      sh.h.push_back(std::move(row));
    }
    VectorSpectralSeries psi = assemble_psi(t, sh);
    for (int k = 0; k <= kOrder; ++k)
      for (int a = 0; a < 3; ++a) {
        Polynomial rhs(3);
        for (int b = 0; b < 3; ++b) {
          const Rational& e = f.eta.up.at(a, b);
          if (e == 0) continue;
          rhs += chi.coeff[static_cast<std::size_t>(k)].diff(b) * e;
        }
        if (psi.coeff[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] != rhs) {
          note = "reduction coherence fails at order " + std::to_string(k);
          return false;
        }
      }
  }
  return true;
}

bool criterion_flow_commutativity(std::string& note) {
  for (const auto& p : trusted_bundles()) {
    SeedStream stream(kSeed + 3);
    FlowBundle b{p.bundle.K, build_towers(p.bundle.K, kOrder), stream.vector_seeds(p.bundle.dim(), kOrder),
                 stream.scalar_seeds(p.bundle.dim(), kOrder)};
    CommutationReport tt = check_tau_tau(b, kOrder);
    if (!tt.zero() || tt.residuals.size() != 3) {
      note = p.name + ": tau-tau " + tt.witness();
      return false;
    }
    if (!check_sigma_pairs(b, kOrder).zero()) {
      note = p.name + ": sigma pairs fail";
      return false;
    }
    for (int k = 0; k <= 3; ++k)
      for (int l = k; l <= 3; ++l)
        if (!check_w_hierarchy(b, k, l).zero()) {
          note = p.name + ": w-hierarchy (" + std::to_string(k) + "," + std::to_string(l) + ") fails";
          return false;
        }
    if (p.bundle.is_wdvv()) {
      CommutationReport wf = check_wdvv_flows(b, p.bundle.prepotential->eta, kOrder);
      if (!wf.zero() || wf.residuals.size() != 4) {
        note = p.name + ": wdvv flows " + wf.witness();
        return false;
      }
    }
  }
  return true;
}

bool criterion_darboux(std::string& note) {
  for (const auto& p : trusted_bundles()) {
    PotentialTower t = build_w_tower(p.bundle.K, kOrder);
    SeedStream stream(kSeed + 4);
    for (int set = 0; set < 3; ++set) {
      VectorSpectralSeries psi = assemble_psi(t, stream.vector_seeds(p.bundle.dim(), kOrder));
      auto pts = darboux_sample_points(p.bundle.dim(), 10, kSeed + 5 + static_cast<std::uint64_t>(set));
      DarbouxReport rep = darboux_verify(p.bundle.K, psi, pts, 10);
      if (rep.usable_count() < 10) {
        note = p.name + ": only " + std::to_string(rep.usable_count()) + " usable points";
        return false;
      }
      if (!rep.all_zero()) {
        note = p.name + ": transformed constants fail";
        return false;
      }
    }
  }
  return true;
}

bool criterion_backlund(std::string& note) {
  // constructive cases
  {
    SolutionBundle alg = make_bundle(parse_solution_text(*bundled_text("algebra-n2"), "algebra-n2"));
    PotentialPair p = backlund_oae(alg.K);
    if (!residual_oae(DisplacementField(alg.K.chart, p.backlund)).is_zero()) {
      note = "algebra-n2 output is not a solution";
      return false;
    }
  }
  {
    SolutionBundle cc = make_bundle(parse_solution_text(*bundled_text("commuting-cubic"), "commuting-cubic"));
    PotentialPair p = wdvv_to_oae(*cc.prepotential);
    if (!residual_oae(DisplacementField(cc.K.chart, p.backlund)).is_zero()) {
      note = "commuting-cubic output is not a solution";
      return false;
    }
  }
  // condition failures with correct witnesses
  {
    Chart c2(2);
    DisplacementField shear(c2, {parse_polynomial("x1^2/2+x2", c2), parse_polynomial("x1*x2", c2)});
    if (!residual_oae(shear).is_zero()) {
      note = "shear input unexpectedly not a solution";
      return false;
    }
    bool threw = false;
    try {
      backlund_oae(shear);
    } catch (const ConditionFailedError& e) {
      threw = true;
      // recompute the defect directly: S^b_{ag} - S^b_{ga} at the witness index
      auto idx = e.index();
      int b = idx[0] - 1, a = idx[1] - 1, g = idx[2] - 1;
      std::vector<Polynomial> h = hessians(shear);
      auto S = [&](int bb, int aa, int gg) {
        Polynomial acc(2);
        for (int r = 0; r < 2; ++r)
          acc += h[static_cast<std::size_t>((bb * 2 + aa) * 2 + r)] * shear.comps[static_cast<std::size_t>(r)].diff(gg);
        return acc;
      };
      if (e.witness() != S(b, a, g) - S(b, g, a) || e.witness().is_zero()) {
        note = "shear witness does not match the direct defect";
        return false;
      }
    }
    if (!threw) {
      note = "shear input passed the symmetry condition";
      return false;
    }
  }
  {
    SolutionBundle a3 = make_bundle(parse_solution_text(*bundled_text("a3-wdvv"), "a3-wdvv"));
    bool threw = false;
    try {
      wdvv_to_oae(*a3.prepotential);
    } catch (const ConditionFailedError& e) {
      threw = true;
      if (e.witness().is_zero()) {
        note = "quintic condition witness is zero";
        return false;
      }
      // direct evaluation of the defect at the reported index
      const Prepotential& f = *a3.prepotential;
      auto idx = e.index();
      int a = idx[0] - 1, nu = idx[1] - 1, g = idx[2] - 1;
      auto q = [&](int aa, int nn, int gg) {
        Polynomial acc(3);
        for (int r = 0; r < 3; ++r)
          for (int k = 0; k < 3; ++k) {
            const Rational& et = f.eta.up.at(r, k);
            if (et == 0) continue;
            acc += f.F.diff(aa).diff(r).diff(nn) * f.F.diff(gg).diff(k) * et;
          }
        return acc;
      };
      if (e.witness() != q(a, nu, g) - q(g, nu, a)) {
        note = "quintic witness does not match the direct defect";
        return false;
      }
    }
    if (!threw) {
      note = "quintic unexpectedly satisfied the compatibility condition";
      return false;
    }
  }
  return true;
}

bool criterion_kernel_properties(std::string& note) {
  testutil::Rng rng(kSeed + 6);
  for (int i = 0; i < 100; ++i) {
    int n = rng.uniform(2, 4);
    Polynomial p = rng.polynomial_vanishing_at_0(n, 6, 8);
    std::vector<Polynomial> grad;
    for (int a = 0; a < n; ++a) grad.push_back(p.diff(a));
    if (homotopy_integrate_oneform(grad) != p) {
      note = "homotopy round-trip fails";
      return false;
    }
  }
  for (int i = 0; i < 100; ++i) {
    Polynomial p = rng.polynomial(3, 5, 8);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (p.diff(a).diff(b) != p.diff(b).diff(a)) {
          note = "mixed partials differ";
          return false;
        }
  }
  for (int i = 0; i < 100; ++i) {
    int n = rng.uniform(1, 4);
    RationalMatrix m(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m.at(a, b) = rng.rational();
    auto inv = m.try_inverse();
    if (inv.has_value() != (m.determinant() != 0)) {
      note = "invertibility disagrees with the determinant";
      return false;
    }
    if (inv && !(m * *inv == RationalMatrix::identity(n))) {
      note = "inverse does not multiply back to identity";
      return false;
    }
  }
  Chart c3(3);
  for (int i = 0; i < 100; ++i) {
    Polynomial p = rng.polynomial(3, 6, 8);
    if (parse_polynomial(p.to_string(), c3) != p) {
      note = "parser round-trip fails";
      return false;
    }
  }
  return true;
}

bool criterion_determinism(std::string& note) {
  RunOptions opts;
  opts.order = kOrder;
  opts.points = 10;
  opts.seed = kSeed;
  std::string a = run_suite(opts).to_text();
  std::string b = run_suite(opts).to_text();
  if (a != b) {
    note = "reports differ between runs";
    return false;
  }
  if (a.find("\"all_pass\": true") == std::string::npos) {
    note = "suite reports failures";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int num;
    const char* label;
    double limit_s;
    std::function<bool(std::string&)> fn;
  };
  std::vector<Criterion> criteria = {
      {1, "solution-validation", 1.0, criterion_solution_validation},
      {2, "spectral-towers", 30.0, criterion_spectral_towers},
      {3, "spectral-symmetries", 60.0, criterion_theorem_symmetries},
      {4, "coefficient-hierarchies", 120.0, criterion_coefficient_hierarchies},
      {5, "cks-reduction", 60.0, criterion_cks_reduction},
      {6, "flow-commutativity", 300.0, criterion_flow_commutativity},
      {7, "darboux-transformation", 60.0, criterion_darboux},
      {8, "backlund-constructions", 30.0, criterion_backlund},
      {9, "kernel-properties", 30.0, criterion_kernel_properties},
      {10, "report-determinism", 0.0, criterion_determinism},  // no budget
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::string note;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.fn(note);
    } catch (const std::exception& e) {
      note = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = c.limit_s <= 0.0 || secs <= c.limit_s;
    bool pass = ok && in_budget;
    failures += pass ? 0 : 1;
    std::string budget = c.limit_s > 0 ? " (limit " + std::to_string(static_cast<int>(c.limit_s)) + "s)" : "";
    std::printf("[%s] %2d %-26s %8.2fs%s%s%s\n", pass ? "PASS" : "FAIL", c.num, c.label, secs, budget.c_str(),
                note.empty() ? "" : " -- ", note.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
