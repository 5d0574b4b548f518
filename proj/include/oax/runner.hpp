#ifndef OAX_RUNNER_HPP
#define OAX_RUNNER_HPP

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <oax/flows.hpp>
#include <oax/registry.hpp>
#include <oax/report.hpp>
#include <oax/seeds.hpp>
#include <oax/symmetry.hpp>
#include <oax/transforms.hpp>

namespace oax {

struct RunOptions {
  int order = 4;
  std::uint64_t seed = 0;
  int points = 10;
  int seed_sets = 3;
  std::string pairs = "tau,sigma,w,wdvv";
  std::optional<std::string> seeds_file;
  std::optional<std::string> lambda0;
};

namespace detail {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - start).count();
    start = now;
    return s;
  }
};

struct PreparedInput {
  std::string id;
  std::string digest;
  SolutionBundle bundle;
};

inline PreparedInput prepare_input(const std::string& name_or_path) {
  auto [text, id] = resolve_input(name_or_path);
  ParsedSolution parsed = parse_solution_text(text, id);
  return PreparedInput{id, digest_hex(text), make_bundle(parsed)};
}

inline Report base_report(const std::string& command, const PreparedInput& in, const RunOptions& opts) {
  Report r;
  r.command = command;
  r.input_id = in.id;
  r.input_digest = in.digest;
  r.seed = opts.seed;
  r.order = opts.order;
  return r;
}

inline bool require_trusted(Report& rep, const PreparedInput& in) {
  if (in.bundle.trusted) return true;
  rep.add("input-trusted", in.bundle.is_wdvv() ? "wdvv" : "ae", false, in.bundle.rejection);
  rep.sort_records();
  return false;
}

inline std::vector<SeedPair> seed_pairs_for(const PreparedInput& in, const RunOptions& opts) {
  if (opts.seeds_file) return load_seed_file(*opts.seeds_file, in.bundle.dim(), opts.order);
  return generate_seed_pairs(opts.seed, in.bundle.dim(), opts.order, opts.seed_sets);
}

// h determined from d through the metric, for the reduction coherence check
inline VectorSeedSet eta_raised_seeds(const Metric& eta, const ScalarSeedSet& sd, int order) {
  int n = eta.dim();
  VectorSeedSet sh;
  for (int j = 0; j <= order; ++j) {
    std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
    for (int a = 0; a < n; ++a)
      for (int g = 0; g < n; ++g) row[static_cast<std::size_t>(a)] += eta.up.at(a, g) * sd.d[static_cast<std::size_t>(j)][static_cast<std::size_t>(g)];
    sh.h.push_back(std::move(row));
  }
  return sh;
}

}  // namespace detail

// residual gates for one input: the solution side of the acceptance surface
inline Report run_verify(const std::string& input, const RunOptions& opts) {
  detail::PreparedInput in = detail::prepare_input(input);
  Report rep = detail::base_report("verify", in, opts);
  detail::Timer timer;

  if (in.bundle.is_wdvv()) {
    const Prepotential& f = *in.bundle.prepotential;
    ResidualTensor rw = residual_wdvv(f);
    rep.add("residual-wdvv", "wdvv", rw.is_zero(), rw.witness_string(), timer.lap());
    ResidualTensor ro = residual_oae(in.bundle.K);
    rep.add("residual-oae-reduced", "gr", ro.is_zero() == rw.is_zero(),
            ro.is_zero() == rw.is_zero() ? "" : "reduction changed the verdict", timer.lap());
    bool bridge = true;
    int n = f.chart.dim();
    for (int nu = 0; nu < n && bridge; ++nu)
      for (int a = 0; a < n && bridge; ++a)
        for (int b = 0; b < n && bridge; ++b)
          for (int g = 0; g < n; ++g) {
            Polynomial rhs(n);
            for (int d = 0; d < n; ++d) {
              const Rational& e = f.eta.up.at(nu, d);
              if (e == 0) continue;
              rhs += rw.at({d, a, g, b}) * e;
            }
            if (ro.at({nu, a, b, g}) != rhs) {
              bridge = false;
              break;
            }
          }
    rep.add("reduction-bridge", "gr", bridge, bridge ? "" : "eta-contracted residual mismatch", timer.lap());
  } else {
    ResidualTensor ro = residual_oae(in.bundle.K);
    rep.add("residual-oae", "ae", ro.is_zero(), ro.witness_string(), timer.lap());
    auto [assoc, pot] = residual_structure(connection_from_displacement(in.bundle.K));
    rep.add("structure-associativity", "ae0", assoc.is_zero(), assoc.witness_string(), timer.lap());
    rep.add("structure-potentiality", "dif", pot.is_zero(), pot.witness_string(), timer.lap());
  }
  rep.sort_records();
  return rep;
}

// towers, spectral series, and their exact verification
inline Report run_hierarchy(const std::string& input, const RunOptions& opts) {
  detail::PreparedInput in = detail::prepare_input(input);
  Report rep = detail::base_report("hierarchy", in, opts);
  if (!detail::require_trusted(rep, in)) return rep;
  detail::Timer timer;

  const DisplacementField& k = in.bundle.K;
  PotentialTower tower;
  try {
    tower = build_towers(k, opts.order);
    rep.add("tower-build", "wrec", true, "", timer.lap());
  } catch (const Error& e) {
    rep.add("tower-build", "wrec", false, e.what(), timer.lap());
    rep.sort_records();
    return rep;
  }
  ResidualTensor wr = tower_w_recursion_residual(k, tower);
  rep.add("tower-w-recursion", "wrec", wr.is_zero(), wr.witness_string(), timer.lap());
  ResidualTensor vr = tower_v_recursion_residual(k, tower);
  rep.add("tower-v-recursion", "vrec_oae", vr.is_zero(), vr.witness_string(), timer.lap());

  // degree growth bounds (violations would have thrown in build_towers;
  // re-assert on the stored data)
  int d = 0;
  for (const auto& c : k.comps) d = std::max(d, std::max(c.x_degree(), 0));
  bool degrees_ok = true;
  for (int kk = 0; kk <= opts.order && degrees_ok; ++kk) {
    for (int a = 0; a < k.dim() && degrees_ok; ++a) {
      for (int b = 0; b < k.dim(); ++b)
        if (!tower.w_at(kk, a, b).is_zero() && tower.w_at(kk, a, b).x_degree() > kk * (d - 1)) {
          degrees_ok = false;
          break;
        }
      if (!tower.v_at(kk, a).is_zero() && tower.v_at(kk, a).x_degree() > kk * (d - 1) + 1) degrees_ok = false;
    }
  }
  rep.add("tower-degree-bounds", "wrec", degrees_ok, "", timer.lap());

  std::vector<SeedPair> seeds = detail::seed_pairs_for(in, opts);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    std::string tag = "seed" + std::to_string(i);
    VectorSpectralSeries psi = assemble_psi(tower, seeds[i].h);
    ScalarSpectralSeries chi = assemble_chi(tower, seeds[i].bd);
    ResidualTensor rv = verify_vector_spectral(k, psi);
    rep.add("spectral-vector-" + tag, "zcr", rv.is_zero(), rv.witness_string(), timer.lap());
    ResidualTensor rs = verify_scalar_spectral(k, chi);
    rep.add("spectral-scalar-" + tag, "ssp_oae", rs.is_zero(), rs.witness_string(), timer.lap());
    ResidualTensor rc = verify_covector_adjoint(k, covector_from_scalar(chi));
    rep.add("covector-adjoint-" + tag, "zcr_phi_oae", rc.is_zero(), rc.witness_string(), timer.lap());

    if (in.bundle.is_wdvv()) {
      const Metric& eta = in.bundle.prepotential->eta;
      VectorSpectralSeries psi_eta = assemble_psi(tower, detail::eta_raised_seeds(eta, seeds[i].bd, opts.order));
      bool coherent = true;
      for (int kk = 0; kk <= opts.order && coherent; ++kk)
        for (int a = 0; a < k.dim(); ++a) {
          Polynomial rhs(k.dim());
          for (int b = 0; b < k.dim(); ++b) {
            const Rational& e = eta.up.at(a, b);
            if (e == 0) continue;
            rhs += chi.coeff[static_cast<std::size_t>(kk)].diff(b) * e;
          }
          if (psi_eta.coeff[static_cast<std::size_t>(kk)][static_cast<std::size_t>(a)] != rhs) {
            coherent = false;
            break;
          }
        }
      rep.add("reduction-coherence-" + tag, "grzcr", coherent, "", timer.lap());
    }
  }

  // normalized flat coordinates: chi^a|_{lam=0} = x^a
  bool normalized_ok = true;
  for (int a = 0; a < k.dim(); ++a) {
    ScalarSpectralSeries chi = assemble_chi(tower, ScalarSeedSet::normalized(k.dim(), opts.order, a));
    if (!chi.normalized_component || *chi.normalized_component != a || !verify_scalar_spectral(k, chi).is_zero())
      normalized_ok = false;
  }
  rep.add("normalized-flat-coordinates", "chik_oae", normalized_ok, "", timer.lap());

  rep.sort_records();
  return rep;
}

// every symmetry family, certified through the linearized equations
inline Report run_symmetries(const std::string& input, const RunOptions& opts) {
  detail::PreparedInput in = detail::prepare_input(input);
  Report rep = detail::base_report("symmetries", in, opts);
  if (!detail::require_trusted(rep, in)) return rep;
  detail::Timer timer;

  const DisplacementField& k = in.bundle.K;
  PotentialTower tower = build_towers(k, opts.order);
  std::vector<SeedPair> seeds = detail::seed_pairs_for(in, opts);

  std::vector<SymmetryGenerator> rho_family;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    std::string tag = "seed" + std::to_string(i);
    VectorSpectralSeries psi = assemble_psi(tower, seeds[i].h);
    ScalarSpectralSeries chi = assemble_chi(tower, seeds[i].bd);

    ResidualTensor rt = linearized_residual(k, make_tau_symmetry(psi), opts.order);
    rep.add("symmetry-tau-" + tag, "nls0", rt.is_zero(), rt.witness_string(), timer.lap());
    SymmetryGenerator sigma = make_sigma_symmetry(psi, chi);
    ResidualTensor rs = linearized_residual(k, sigma, opts.order);
    rep.add("symmetry-sigma-" + tag, "nls1", rs.is_zero(), rs.witness_string(), timer.lap());
    ResidualTensor rz = linearized_residual(k, make_zeta_symmetry(psi, chi), opts.order);
    rep.add("symmetry-zeta-" + tag, "zeta_flow", rz.is_zero(), rz.witness_string(), timer.lap());

    // the sign-flip product must equal the convolution coefficients
    auto rho = sigma_rho_coefficients(psi, chi);
    bool equiv = true;
    for (int kk = 0; kk <= opts.order && equiv; ++kk)
      for (int a = 0; a < k.dim(); ++a)
        if (sigma.comps[static_cast<std::size_t>(a)].coeff_of_param(Param::kLambda, static_cast<std::uint32_t>(kk)) !=
            rho[static_cast<std::size_t>(kk)][static_cast<std::size_t>(a)]) {
          equiv = false;
          break;
        }
    rep.add("sigma-rho-equivalence-" + tag, "nls1", equiv, "", timer.lap());
    for (auto& row : rho) rho_family.push_back(SymmetryGenerator::vector("rho", row));
  }
  rep.add_info("sigma-family-rank", "nls1",
               "exact rank of the stacked rho-coefficient family: " + std::to_string(generator_family_rank(rho_family)),
               timer.lap());

  for (int kk = 0; kk <= opts.order; ++kk) {
    bool all_ok = true;
    std::string witness;
    for (const auto& g : coefficient_symmetries(tower, kk)) {
      ResidualTensor r = linearized_residual(k, g);
      if (!r.is_zero()) {
        all_ok = false;
        witness = g.kind + "[" + g.meta.at("k") + "]: " + r.witness_string();
        break;
      }
    }
    rep.add("coefficient-symmetries-k" + std::to_string(kk), "oae_new_sym2", all_ok, witness, timer.lap());
  }

  if (in.bundle.is_wdvv()) {
    const Prepotential& f = *in.bundle.prepotential;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      std::string tag = "seed" + std::to_string(i);
      ScalarSpectralSeries chi = assemble_chi(tower, seeds[i].bd);
      ResidualTensor rc = wdvv_linearized_residual(f, wdvv_chi_symmetry(chi), opts.order);
      rep.add("wdvv-symmetry-chi-" + tag, "sp1", rc.is_zero(), rc.witness_string(), timer.lap());
      ResidualTensor rcc = wdvv_linearized_residual(f, wdvv_chichi_symmetry(chi), opts.order);
      rep.add("wdvv-symmetry-chichi-" + tag, "sp1", rcc.is_zero(), rcc.witness_string(), timer.lap());

      // scalar and eta-raised vector direction certify simultaneously
      SymmetryGenerator g = wdvv_chi_symmetry(chi);
      std::vector<Polynomial> comps(static_cast<std::size_t>(k.dim()), Polynomial(k.dim()));
      for (int a = 0; a < k.dim(); ++a)
        for (int b = 0; b < k.dim(); ++b) {
          const Rational& e = f.eta.up.at(a, b);
          if (e == 0) continue;
          comps[static_cast<std::size_t>(a)] += g.comps[0].diff(b) * e;
        }
      ResidualTensor rv = linearized_residual(k, SymmetryGenerator::vector("eta-grad-chi", comps), opts.order);
      rep.add("wdvv-reduction-coherence-" + tag, "grzcr", rc.is_zero() && rv.is_zero(), rv.witness_string(),
              timer.lap());
    }
    for (int kk = 0; kk <= opts.order; ++kk) {
      bool all_ok = true;
      std::string witness;
      for (const auto& g : wdvv_coefficient_symmetries(tower, kk)) {
        ResidualTensor r = wdvv_linearized_residual(f, g);
        if (!r.is_zero()) {
          all_ok = false;
          witness = g.kind + "[" + g.meta.at("k") + "]: " + r.witness_string();
          break;
        }
      }
      rep.add("wdvv-coefficient-symmetries-k" + std::to_string(kk), "oae_new_sym2wdvv", all_ok, witness, timer.lap());
    }
  }
  rep.sort_records();
  return rep;
}

// extended-flow commutation with cleared denominators
inline Report run_commute(const std::string& input, const RunOptions& opts) {
  detail::PreparedInput in = detail::prepare_input(input);
  Report rep = detail::base_report("commute", in, opts);
  if (!detail::require_trusted(rep, in)) return rep;
  detail::Timer timer;

  std::vector<std::string> tokens;
  {
    std::string token;
    for (std::size_t i = 0; i <= opts.pairs.size(); ++i) {
      if (i == opts.pairs.size() || opts.pairs[i] == ',') {
        if (!token.empty()) tokens.push_back(token);
        token.clear();
      } else {
        token += opts.pairs[i];
      }
    }
    for (const auto& t : tokens)
      if (t != "tau" && t != "sigma" && t != "w" && t != "wdvv")
        throw Error("unknown --pairs token '" + t + "' (expected tau,sigma,w,wdvv)");
  }
  auto wants = [&](const std::string& what) {
    for (const auto& t : tokens)
      if (t == what) return true;
    return false;
  };
  SeedStream stream(opts.seed);
  FlowBundle bundle{in.bundle.K, build_towers(in.bundle.K, opts.order),
                    stream.vector_seeds(in.bundle.dim(), opts.order), stream.scalar_seeds(in.bundle.dim(), opts.order)};

  if (wants("tau")) {
    CommutationReport r = check_tau_tau(bundle, opts.order);
    for (const auto& [label, res] : r.residuals)
      rep.add("commute-tau-tau-" + label, "ext_fl_c", res.is_zero(), res.witness_string(), timer.lap());
  }
  if (wants("sigma")) {
    CommutationReport r = check_sigma_pairs(bundle, opts.order);
    for (const auto& [label, res] : r.residuals)
      rep.add("commute-" + label, "extfl1", res.is_zero(), res.witness_string(), timer.lap());
    CommutationReport info = check_sigma_extended_info(bundle, std::min(opts.order, 3));
    rep.add_info("commute-sigma-extended", "extfl1",
                 std::string("extended sigma-sigma chi-level residual is ") + (info.zero() ? "zero" : "nonzero") +
                     " (reported, not asserted)",
                 timer.lap());
  }
  if (wants("w")) {
    int top = std::min(3, opts.order - 1);
    for (int k = 0; k <= top; ++k)
      for (int l = k; l <= top; ++l) {
        CommutationReport r = check_w_hierarchy(bundle, k, l);
        rep.add("commute-w-" + std::to_string(k) + std::to_string(l), "wkflow", r.zero(), r.witness(), timer.lap());
      }
  }
  if (wants("wdvv") && in.bundle.is_wdvv()) {
    CommutationReport r = check_wdvv_flows(bundle, in.bundle.prepotential->eta, opts.order);
    for (const auto& [label, res] : r.residuals)
      rep.add("commute-wdvv-" + label, "ext_fl_comm_wdvv", res.is_zero(), res.witness_string(), timer.lap());
  }
  rep.sort_records();
  return rep;
}

// pointwise transformation check
inline Report run_darboux(const std::string& input, const RunOptions& opts) {
  detail::PreparedInput in = detail::prepare_input(input);
  Report rep = detail::base_report("darboux", in, opts);
  if (!detail::require_trusted(rep, in)) return rep;
  detail::Timer timer;

  const DisplacementField& k = in.bundle.K;
  PotentialTower tower = build_w_tower(k, opts.order);
  SeedStream stream(opts.seed);
  VectorSpectralSeries psi = assemble_psi(tower, stream.vector_seeds(k.dim(), opts.order));

  std::optional<Rational> lambda0;
  if (opts.lambda0) lambda0 = rational_from_string(*opts.lambda0);

  auto pts = darboux_sample_points(k.dim(), opts.points, opts.seed);
  DarbouxReport dr = darboux_verify(k, psi, pts, opts.points, lambda0);

  bool enough = dr.usable_count() >= opts.points;
  rep.add("darboux-usable-points", "dt2", enough,
          enough ? "" : "only " + std::to_string(dr.usable_count()) + " usable points", timer.lap());
  bool sym = enough, assoc = enough;
  std::string sw, aw;
  for (const auto& p : dr.points) {
    if (!p.usable) continue;
    if (!p.sym_zero && sym) {
      sym = false;
      sw = p.witness;
    }
    if (!p.assoc_zero && assoc) {
      assoc = false;
      aw = p.witness;
    }
  }
  rep.add("darboux-symmetry", "sym2", sym, sw, timer.lap());
  rep.add("darboux-associativity", "ae2a", assoc, aw, timer.lap());
  if (dr.degenerate_zero_connection)
    rep.add_info("darboux-degenerate", "dt2", "zero connection: transformation degenerates, constants vanish");
  if (lambda0) {
    bool num = enough;
    for (const auto& p : dr.points)
      if (p.usable && !(p.numeric_sym_zero && p.numeric_assoc_zero)) num = false;
    rep.add("darboux-numeric-lambda0", "dt2", num, "", timer.lap());
  }
  rep.sort_records();
  return rep;
}

// intermediate integrals and the conditional constructions
inline Report run_backlund(const std::string& input, const RunOptions& opts) {
  detail::PreparedInput in = detail::prepare_input(input);
  Report rep = detail::base_report("backlund", in, opts);
  if (!detail::require_trusted(rep, in)) return rep;
  detail::Timer timer;

  const DisplacementField& k = in.bundle.K;
  int n = k.dim();
  std::vector<Polynomial> h = hessians(k);

  {
    PotentialPair g1 = intermediate_integral_first(k);
    bool ok = true;
    for (int b = 0; b < n && ok; ++b)
      for (int g = 0; g < n && ok; ++g)
        for (int a = 0; a < n; ++a) {
          Polynomial rhs(n);
          for (int r = 0; r < n; ++r)
            rhs += h[static_cast<std::size_t>((b * n + a) * n + r)] * k.comps[static_cast<std::size_t>(r)].diff(g);
          if (g1.first[static_cast<std::size_t>(b * n + g)].diff(a) != rhs) {
            ok = false;
            break;
          }
        }
    rep.add("intermediate-first", "firint", ok, "", timer.lap());
  }
  {
    PotentialPair g2 = intermediate_integral_second(k);
    bool ok = true;
    for (int b = 0; b < n && ok; ++b)
      for (int a = 0; a < n && ok; ++a)
        for (int g = 0; g < n; ++g) {
          Polynomial rhs(n);
          for (int nu = 0; nu < n; ++nu)
            rhs += h[static_cast<std::size_t>((nu * n + a) * n + g)] * k.comps[static_cast<std::size_t>(b)].diff(nu);
          if (g2.second[static_cast<std::size_t>(b)].diff(a).diff(g) != rhs) {
            ok = false;
            break;
          }
        }
    rep.add("intermediate-second", "firint2", ok, "", timer.lap());
  }

  if (in.bundle.is_wdvv()) {
    try {
      PotentialPair p = wdvv_to_oae(*in.bundle.prepotential);
      rep.add("wdvv-backlund-condition", "firint_wdvv_oae_cor", true, "", timer.lap());
      ResidualTensor r = residual_oae(DisplacementField(k.chart, p.backlund));
      rep.add("wdvv-backlund-residual", "firint_wdvv_oae", r.is_zero(), r.witness_string(), timer.lap());
    } catch (const ConditionFailedError& e) {
      rep.add("wdvv-backlund-condition", "firint_wdvv_oae_cor", false, e.what(), timer.lap());
    }
  }
  try {
    PotentialPair p = backlund_oae(k);
    rep.add("backlund-condition", "sym_cond", true, "", timer.lap());
    ResidualTensor r = residual_oae(DisplacementField(k.chart, p.backlund));
    rep.add("backlund-residual", "firint_oae", r.is_zero(), r.witness_string(), timer.lap());
  } catch (const ConditionFailedError& e) {
    rep.add("backlund-condition", "sym_cond", false, e.what(), timer.lap());
  }
  rep.sort_records();
  return rep;
}

// emits the gradient reduction of a wdvv bundle as an oae bundle
inline Report run_reduce(const std::string& input, const RunOptions& opts, std::string* emitted) {
  detail::PreparedInput in = detail::prepare_input(input);
  Report rep = detail::base_report("reduce", in, opts);
  if (!in.bundle.is_wdvv()) {
    rep.add("reduce-kind", "gr", false, "input is not a wdvv bundle");
    rep.sort_records();
    return rep;
  }
  if (!detail::require_trusted(rep, in)) return rep;
  detail::Timer timer;

  ParsedSolution out;
  out.id = in.id + "-reduced";
  out.kind = ParsedSolution::Kind::kOae;
  out.dim = in.bundle.dim();
  out.kcomps = in.bundle.K.comps;
  std::string text = serialize_solution(out);
  if (emitted) *emitted = text;

  ResidualTensor r = residual_oae(in.bundle.K);
  rep.add("reduce-residual", "gr", r.is_zero(), r.witness_string(), timer.lap());
  SolutionBundle round = make_bundle(parse_solution_text(text, out.id));
  rep.add("reduce-round-trip", "gr", round.trusted && round.K.comps == in.bundle.K.comps, "", timer.lap());
  rep.sort_records();
  return rep;
}

// Everything on every bundled input. Counterexamples are expected to be
// rejected; the quintic's gradient-reduced construction is expected to fail
// its compatibility condition. Those expectations are part of the suite.
inline SuiteReport run_suite(const RunOptions& opts) {
  SuiteReport suite;
  suite.seed = opts.seed;
  suite.order = opts.order;

  for (const auto& entry : bundled_entries()) {
    std::string name = entry.name;
    if (entry.counterexample) {
      detail::PreparedInput in = detail::prepare_input(name);
      Report rep = detail::base_report("verify", in, opts);
      rep.add("expected-rejection", in.bundle.is_wdvv() ? "wdvv" : "ae", !in.bundle.trusted,
              in.bundle.trusted ? "counterexample unexpectedly passed the residual gate" : in.bundle.rejection);
      rep.sort_records();
      suite.reports.push_back(std::move(rep));
      continue;
    }
    suite.reports.push_back(run_verify(name, opts));
    suite.reports.push_back(run_hierarchy(name, opts));
    suite.reports.push_back(run_symmetries(name, opts));
    suite.reports.push_back(run_commute(name, opts));
    suite.reports.push_back(run_darboux(name, opts));

    Report back = run_backlund(name, opts);
    if (name == "a3-wdvv") {
      // the compatibility condition provably fails here; the correct outcome
      // is a condition failure with a witness, so assert exactly that
      for (auto& rec : back.records)
        if (rec.id == "wdvv-backlund-condition") {
          bool failed_as_expected = rec.verdict == "fail" && !rec.witness.empty();
          rec.verdict = failed_as_expected ? "pass" : "fail";
          rec.id = "wdvv-backlund-condition-expected-failure";
          if (failed_as_expected) rec.witness = "condition fails with witness, as required: " + rec.witness;
        } else if (rec.id == "backlund-condition") {
          bool failed_as_expected = rec.verdict == "fail" && !rec.witness.empty();
          rec.verdict = failed_as_expected ? "pass" : "fail";
          rec.id = "backlund-condition-expected-failure";
          if (failed_as_expected) rec.witness = "condition fails with witness, as required: " + rec.witness;
        }
      back.sort_records();
    }
    suite.reports.push_back(std::move(back));

    detail::PreparedInput in = detail::prepare_input(name);
    if (in.bundle.is_wdvv()) {
      std::string emitted;
      suite.reports.push_back(run_reduce(name, opts, &emitted));
    }
  }
  return suite;
}

}  // namespace oax

#endif
