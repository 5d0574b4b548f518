#ifndef OAX_POLYNOMIAL_HPP
#define OAX_POLYNOMIAL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <oax/chart.hpp>
#include <oax/errors.hpp>
#include <oax/rational.hpp>

namespace oax {

// Formal expansion parameters. Every polynomial carries three parameter
// exponent slots next to its chart variables; truncation in a parameter is a
// property of operations, never of the ring.
enum class Param : int { kLambda = 0, kMu = 1, kZeta = 2 };

inline constexpr int kNumParams = 3;
inline constexpr std::array<const char*, kNumParams> kParamNames = {"lam", "mu", "zeta"};

// Exponent vector: chart variables first, then the parameter slots.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(int nvars) : e_(static_cast<std::size_t>(nvars) + kNumParams, 0) {}

  int nvars() const { return static_cast<int>(e_.size()) - kNumParams; }

  std::uint32_t var(int a) const { return e_[static_cast<std::size_t>(a)]; }
  std::uint32_t param(Param p) const { return e_[slot(p)]; }

  void set_var(int a, std::uint32_t v) { e_[static_cast<std::size_t>(a)] = v; }
  void set_param(Param p, std::uint32_t v) { e_[slot(p)] = v; }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (std::uint32_t x : e_) d += x;
    return d;
  }
  std::uint32_t x_degree() const {
    std::uint32_t d = 0;
    for (int i = 0; i < nvars(); ++i) d += e_[static_cast<std::size_t>(i)];
    return d;
  }
  std::uint32_t param_degree() const { return total_degree() - x_degree(); }

  Monomial times(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }

private:
  std::size_t slot(Param p) const { return e_.size() - kNumParams + static_cast<std::size_t>(p); }

  std::vector<std::uint32_t> e_;
  friend struct GrlexLess;
};

// Graded lexicographic order: total degree first, then lexicographic with
// earlier slots more significant. Canonical term order of the whole library.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::uint32_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    // same length is an invariant of every call site
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i];
    return false;
  }
};

// Per-parameter exponent caps; -1 leaves a slot unbounded. Chart variables
// are never truncated. Caps cut a quotient ring, so applying them inside
// products is consistent with applying them afterwards.
struct Truncation {
  std::array<int, kNumParams> cap{-1, -1, -1};

  static Truncation none() { return {}; }
  static Truncation order(Param p, int n) {
    Truncation t;
    t.cap[static_cast<std::size_t>(p)] = n;
    return t;
  }
  static Truncation box(int n) { return Truncation{{n, n, n}}; }

  bool unbounded() const { return cap[0] < 0 && cap[1] < 0 && cap[2] < 0; }

  bool keeps(const Monomial& m) const {
    for (int i = 0; i < kNumParams; ++i)
      if (cap[static_cast<std::size_t>(i)] >= 0 &&
          m.param(static_cast<Param>(i)) > static_cast<std::uint32_t>(cap[static_cast<std::size_t>(i)]))
        return false;
    return true;
  }
};

// Sparse exact multivariate polynomial over Rational in the chart variables
// and the three formal parameters. No zero coefficient is ever stored.
class Polynomial {
public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  // Default-constructed value is the zero polynomial of an unspecified ring;
  // it combines with any ring (needed for container initialization).
  Polynomial() : nvars_(-1) {}
  explicit Polynomial(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > Chart::kMaxDim) throw InvariantError("bad variable count");
  }

  static Polynomial zero(int nvars) { return Polynomial(nvars); }

  static Polynomial constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.emplace(Monomial(nvars), c);
    return p;
  }

  static Polynomial variable(int nvars, int a) {
    if (a < 0 || a >= nvars) throw InvariantError("variable index out of range");
    Polynomial p(nvars);
    Monomial m(nvars);
    m.set_var(a, 1);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
  }

  static Polynomial parameter(int nvars, Param q) {
    Polynomial p(nvars);
    Monomial m(nvars);
    m.set_param(q, 1);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
  }

  static Polynomial term(int nvars, Monomial m, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  bool operator==(const Polynomial& o) const {
    if (is_zero() && o.is_zero()) return true;
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    join(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    join(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    return mul(a, b, Truncation::none());
  }

  friend Polynomial operator*(const Polynomial& a, const Rational& s) {
    Polynomial r = a;
    if (s == 0) {
      r.terms_.clear();
      return r;
    }
    for (auto& [m, c] : r.terms_) c *= s;
    return r;
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& a) { return a * s; }

  static Polynomial mul(const Polynomial& a, const Polynomial& b, const Truncation& t) {
    if (a.is_zero() || b.is_zero()) {
      int nv = std::max(a.nvars_, b.nvars_);
      return nv < 0 ? Polynomial() : Polynomial(nv);
    }
    if (a.nvars_ != b.nvars_) throw InvariantError("ring mismatch in multiplication");
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma.times(mb);
        if (!t.keeps(m)) continue;
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  Polynomial pow(std::uint32_t k) const {
    if (nvars_ < 0) {
      if (k == 0) throw InvariantError("0^0 of ringless zero");
      return *this;
    }
    Polynomial r = constant(nvars_, 1);
    for (std::uint32_t i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  // exact partial derivative in chart variable a
  Polynomial diff(int a) const {
    if (nvars_ < 0) return *this;
    if (a < 0 || a >= nvars_) throw InvariantError("diff: variable index out of range");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      std::uint32_t e = m.var(a);
      if (e == 0) continue;
      Monomial d = m;
      d.set_var(a, e - 1);
      r.add_term(d, c * Rational(e));
    }
    return r;
  }

  Polynomial truncate(const Truncation& t) const {
    if (t.unbounded()) return *this;
    Polynomial r(nvars_ < 0 ? 0 : nvars_);
    r.nvars_ = nvars_;
    for (const auto& [m, c] : terms_)
      if (t.keeps(m)) r.terms_.emplace(m, c);
    return r;
  }

  // substitute p -> -p (sign flip of odd-order coefficients)
  Polynomial negate_param(Param p) const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_)
      if (m.param(p) % 2 == 1) c = -c;
    return r;
  }

  Polynomial swap_params(Param p, Param q) const {
    if (p == q) return *this;
    Polynomial r(nvars_ < 0 ? 0 : nvars_);
    r.nvars_ = nvars_;
    for (const auto& [m, c] : terms_) {
      Monomial t = m;
      std::uint32_t ep = m.param(p);
      t.set_param(p, m.param(q));
      t.set_param(q, ep);
      r.add_term(t, c);
    }
    return r;
  }

  // coefficient of p^k, with the p-slot cleared
  Polynomial coeff_of_param(Param p, std::uint32_t k) const {
    Polynomial r(nvars_ < 0 ? 0 : nvars_);
    r.nvars_ = nvars_;
    for (const auto& [m, c] : terms_) {
      if (m.param(p) != k) continue;
      Monomial t = m;
      t.set_param(p, 0);
      r.terms_.emplace(std::move(t), c);
    }
    return r;
  }

  // substitute every chart variable by a rational value; parameters survive
  Polynomial eval_x(std::span<const Rational> point) const {
    if (nvars_ < 0) return *this;
    if (static_cast<int>(point.size()) != nvars_) throw InvariantError("eval: point dimension mismatch");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (int a = 0; a < nvars_; ++a)
        for (std::uint32_t i = 0; i < m.var(a); ++i) v *= point[static_cast<std::size_t>(a)];
      Monomial t = m;
      for (int a = 0; a < nvars_; ++a) t.set_var(a, 0);
      r.add_term(t, v);
    }
    return r;
  }

  // full evaluation; requires a parameter-free polynomial
  Rational eval(std::span<const Rational> point) const {
    Polynomial p = eval_x(point);
    if (p.is_zero()) return Rational(0);
    if (p.terms_.size() != 1 || p.terms_.begin()->first.total_degree() != 0)
      throw InvariantError("eval: polynomial still carries formal parameters");
    return p.terms_.begin()->second;
  }

  // substitute p -> value (rational), keeping everything else formal
  Polynomial eval_param(Param p, const Rational& value) const {
    Polynomial r(nvars_ < 0 ? 0 : nvars_);
    r.nvars_ = nvars_;
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (std::uint32_t i = 0; i < m.param(p); ++i) v *= value;
      Monomial t = m;
      t.set_param(p, 0);
      r.add_term(t, v);
    }
    return r;
  }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.total_degree()));
    return d;
  }
  int x_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.x_degree()));
    return d;
  }
  int param_degree(Param p) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.param(p)));
    return d;
  }

  bool has_params() const {
    for (const auto& [m, c] : terms_)
      if (m.param_degree() > 0) return true;
    return false;
  }

  // Canonical form: terms in descending graded-lex order, coefficients as
  // leading rationals, grammar-pure (a leading negative term is written as
  // "0-..." because the expression grammar has no unary minus).
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      bool neg = c < 0;
      if (first) {
        if (neg) out += "0-";
        first = false;
      } else {
        out += neg ? '-' : '+';
      }
      Rational a = neg ? Rational(-c) : c;
      std::string vars;
      for (std::size_t i = 0; i < static_cast<std::size_t>(std::max(nvars_, 0)) + kNumParams; ++i) {
        std::uint32_t e = (i < static_cast<std::size_t>(nvars_))
                              ? m.var(static_cast<int>(i))
                              : m.param(static_cast<Param>(i - static_cast<std::size_t>(nvars_)));
        if (e == 0) continue;
        if (!vars.empty()) vars += '*';
        vars += (i < static_cast<std::size_t>(nvars_))
                    ? "x" + std::to_string(i + 1)
                    : std::string(kParamNames[i - static_cast<std::size_t>(nvars_)]);
        if (e > 1) vars += "^" + std::to_string(e);
      }
      if (vars.empty()) {
        out += rational_to_string(a);
      } else {
        if (a != 1) {
          out += rational_to_string(a);
          out += '*';
        }
        out += vars;
      }
    }
    return out;
  }

private:
  // reconcile the "zero of any ring" sentinel before an in-place op
  void join(const Polynomial& o) {
    if (nvars_ < 0) {
      nvars_ = o.nvars_;
      return;
    }
    if (o.nvars_ >= 0 && o.nvars_ != nvars_) throw InvariantError("ring mismatch");
  }

  int nvars_;
  TermMap terms_;
};

inline Polynomial diff(const Polynomial& p, int a) { return p.diff(a); }

}  // namespace oax

#endif
