#ifndef OAX_MODEL_HPP
#define OAX_MODEL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <oax/chart.hpp>
#include <oax/matrix.hpp>
#include <oax/polynomial.hpp>

namespace oax {

// Structured record of an exactly-evaluated residual: every entry is kept as
// a full polynomial so a nonzero verdict always carries a located witness.
struct ResidualTensor {
  std::vector<int> shape;
  std::vector<Polynomial> entries;  // row-major

  static ResidualTensor from_entries(std::vector<int> shape, std::vector<Polynomial> entries) {
    std::size_t count = 1;
    for (int s : shape) count *= static_cast<std::size_t>(s);
    if (count != entries.size()) throw InvariantError("residual tensor shape/entry mismatch");
    return ResidualTensor{std::move(shape), std::move(entries)};
  }

  bool is_zero() const {
    for (const auto& e : entries)
      if (!e.is_zero()) return false;
    return true;
  }

  // first nonzero entry in row-major order, indices 1-based for display
  std::optional<std::pair<std::vector<int>, const Polynomial*>> witness() const {
    for (std::size_t flat = 0; flat < entries.size(); ++flat) {
      if (entries[flat].is_zero()) continue;
      std::vector<int> idx(shape.size());
      std::size_t rem = flat;
      for (int d = static_cast<int>(shape.size()) - 1; d >= 0; --d) {
        idx[static_cast<std::size_t>(d)] = static_cast<int>(rem % static_cast<std::size_t>(shape[static_cast<std::size_t>(d)])) + 1;
        rem /= static_cast<std::size_t>(shape[static_cast<std::size_t>(d)]);
      }
      return std::make_pair(std::move(idx), &entries[flat]);
    }
    return std::nullopt;
  }

  std::string witness_string(std::size_t max_len = 120) const {
    auto w = witness();
    if (!w) return "";
    std::string s = "entry(";
    for (std::size_t i = 0; i < w->first.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(w->first[i]);
    }
    s += ") = " + w->second->to_string();
    if (s.size() > max_len) s = s.substr(0, max_len) + "...";
    return s;
  }

  const Polynomial& at(std::initializer_list<int> idx) const {
    if (idx.size() != shape.size()) throw InvariantError("residual index rank mismatch");
    std::size_t flat = 0;
    int d = 0;
    for (int i : idx) {
      flat = flat * static_cast<std::size_t>(shape[static_cast<std::size_t>(d)]) + static_cast<std::size_t>(i);
      ++d;
    }
    return entries[flat];
  }
};

// Displacement vector K^a whose Hessian gives the structure constants.
struct DisplacementField {
  Chart chart;
  std::vector<Polynomial> comps;  // K^a, a = 0..n-1

  DisplacementField(Chart c, std::vector<Polynomial> k) : chart(c), comps(std::move(k)) {
    if (static_cast<int>(comps.size()) != chart.dim()) throw InvariantError("displacement component count != chart dimension");
    for (auto& p : comps)
      if (p.nvars() >= 0 && p.nvars() != chart.dim()) throw InvariantError("displacement component ring mismatch");
  }

  int dim() const { return chart.dim(); }
};

// Structure "constants" c^a_{bg}, symmetric in the lower pair. Asymmetric
// input is rejected, never silently symmetrized.
struct ConnectionField {
  Chart chart;
  std::vector<Polynomial> entries;  // row-major (a, b, g)

  ConnectionField(Chart c, std::vector<Polynomial> e) : chart(c), entries(std::move(e)) {
    int n = chart.dim();
    if (static_cast<int>(entries.size()) != n * n * n) throw InvariantError("connection must have n^3 entries");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = b + 1; g < n; ++g)
          if (at(a, b, g) != at(a, g, b)) throw InvariantError("connection entries not symmetric in the lower index pair");
  }

  int dim() const { return chart.dim(); }

  const Polynomial& at(int a, int b, int g) const {
    int n = chart.dim();
    return entries[static_cast<std::size_t>((a * n + b) * n + g)];
  }
};

// Constant nondegenerate symmetric metric: eta^{ab} and its exact inverse.
struct Metric {
  RationalMatrix up;    // eta^{ab}
  RationalMatrix down;  // eta_{ab}

  explicit Metric(RationalMatrix eta_up) : up(std::move(eta_up)), down(1) {
    if (!up.is_symmetric()) throw InvariantError("metric must be symmetric");
    down = up.inverse();  // throws SingularMatrixError if degenerate
  }

  int dim() const { return up.size(); }
};

struct Prepotential {
  Chart chart;
  Polynomial F;
  Metric eta;

  Prepotential(Chart c, Polynomial f, Metric m) : chart(c), F(std::move(f)), eta(std::move(m)) {
    if (eta.dim() != chart.dim()) throw InvariantError("metric dimension != chart dimension");
    if (F.nvars() >= 0 && F.nvars() != chart.dim()) throw InvariantError("prepotential ring mismatch");
  }
};

// second partials of every component, cached row-major (a, b, g)
inline std::vector<Polynomial> hessians(const DisplacementField& k) {
  int n = k.dim();
  std::vector<Polynomial> h(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    std::vector<Polynomial> first(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) first[static_cast<std::size_t>(b)] = k.comps[static_cast<std::size_t>(a)].diff(b);
    for (int b = 0; b < n; ++b)
      for (int g = b; g < n; ++g) {
        Polynomial d = first[static_cast<std::size_t>(b)].diff(g);
        h[static_cast<std::size_t>((a * n + b) * n + g)] = d;
        h[static_cast<std::size_t>((a * n + g) * n + b)] = d;
      }
  }
  return h;
}

inline ConnectionField connection_from_displacement(const DisplacementField& k) {
  return ConnectionField(k.chart, hessians(k));
}

// Residual of the oriented associativity system for K:
// entry(nu,a,b,g) = sum_r [ K^nu_{,ar} K^r_{,bg} - K^r_{,ab} K^nu_{,rg} ].
// Convention (documented): entry(nu,a,b,g) = -entry(nu,g,b,a).
inline ResidualTensor residual_oae(const DisplacementField& k) {
  int n = k.dim();
  std::vector<Polynomial> h = hessians(k);
  auto c = [&](int a, int b, int g) -> const Polynomial& { return h[static_cast<std::size_t>((a * n + b) * n + g)]; };
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int nu = 0; nu < n; ++nu)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g) {
          Polynomial e(n);
          for (int r = 0; r < n; ++r) e += c(nu, a, r) * c(r, b, g) - c(r, a, b) * c(nu, r, g);
          out.push_back(std::move(e));
        }
  return ResidualTensor::from_entries({n, n, n, n}, std::move(out));
}

// associativity residual c^nu_{ar} c^r_{bg} - c^nu_{rg} c^r_{ab}, and
// potentiality residual d c^a_{bg} / dx^r - d c^a_{rg} / dx^b
inline std::pair<ResidualTensor, ResidualTensor> residual_structure(const ConnectionField& c) {
  int n = c.dim();
  std::vector<Polynomial> assoc, pot;
  assoc.reserve(static_cast<std::size_t>(n) * n * n * n);
  pot.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int nu = 0; nu < n; ++nu)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g) {
          Polynomial e(n);
          for (int r = 0; r < n; ++r) e += c.at(nu, a, r) * c.at(r, b, g) - c.at(nu, r, g) * c.at(r, a, b);
          assoc.push_back(std::move(e));
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g)
        for (int r = 0; r < n; ++r) pot.push_back(c.at(a, b, g).diff(r) - c.at(a, r, g).diff(b));
  return {ResidualTensor::from_entries({n, n, n, n}, std::move(assoc)),
          ResidualTensor::from_entries({n, n, n, n}, std::move(pot))};
}

// K^a = eta^{ab} dF/dx^b
inline DisplacementField gradient_reduce(const Prepotential& f) {
  int n = f.chart.dim();
  std::vector<Polynomial> grad(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) grad[static_cast<std::size_t>(b)] = f.F.diff(b);
  std::vector<Polynomial> k(static_cast<std::size_t>(n), Polynomial(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Rational& e = f.eta.up.at(a, b);
      if (e == 0) continue;
      k[static_cast<std::size_t>(a)] += grad[static_cast<std::size_t>(b)] * e;
    }
  return DisplacementField(f.chart, std::move(k));
}

// third partials of F, row-major (a, b, g), fully symmetric
inline std::vector<Polynomial> third_derivatives(const Prepotential& f) {
  int n = f.chart.dim();
  std::vector<Polynomial> t(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    Polynomial fa = f.F.diff(a);
    for (int b = a; b < n; ++b) {
      Polynomial fab = fa.diff(b);
      for (int g = b; g < n; ++g) {
        Polynomial fabg = fab.diff(g);
        int idx[3] = {a, b, g};
        int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (auto& p : perms)
          t[static_cast<std::size_t>((idx[p[0]] * n + idx[p[1]]) * n + idx[p[2]])] = fabg;
      }
    }
  }
  return t;
}

// Residual of the associativity system for F:
// entry(a,b,nu,r) = F_{,abd} eta^{dg} F_{,gnr} - F_{,and} eta^{dg} F_{,gbr}.
inline ResidualTensor residual_wdvv(const Prepotential& f) {
  int n = f.chart.dim();
  std::vector<Polynomial> t3 = third_derivatives(f);
  auto F3 = [&](int a, int b, int g) -> const Polynomial& { return t3[static_cast<std::size_t>((a * n + b) * n + g)]; };
  // contract once: C(a,b,g) = eta^{gd} F_{,abd}
  std::vector<Polynomial> cr(static_cast<std::size_t>(n) * n * n, Polynomial(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g) {
        Polynomial& e = cr[static_cast<std::size_t>((a * n + b) * n + g)];
        for (int d = 0; d < n; ++d) {
          const Rational& v = f.eta.up.at(g, d);
          if (v == 0) continue;
          e += F3(a, b, d) * v;
        }
      }
  auto C = [&](int a, int b, int g) -> const Polynomial& { return cr[static_cast<std::size_t>((a * n + b) * n + g)]; };
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int nu = 0; nu < n; ++nu)
        for (int r = 0; r < n; ++r) {
          Polynomial e(n);
          for (int g = 0; g < n; ++g) e += C(a, b, g) * F3(g, nu, r) - C(a, nu, g) * F3(g, b, r);
          out.push_back(std::move(e));
        }
  return ResidualTensor::from_entries({n, n, n, n}, std::move(out));
}

}  // namespace oax

#endif
