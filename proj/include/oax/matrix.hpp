#ifndef OAX_MATRIX_HPP
#define OAX_MATRIX_HPP

#include <optional>
#include <vector>

#include <oax/errors.hpp>
#include <oax/rational.hpp>

namespace oax {

// Dense square matrix over Rational.
class RationalMatrix {
public:
  RationalMatrix() : n_(0) {}
  explicit RationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Rational(0)) {
    if (n < 1) throw InvariantError("matrix size must be positive");
  }

  static RationalMatrix identity(int n) {
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int size() const { return n_; }

  Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  bool operator==(const RationalMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  bool is_symmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.n_ != b.n_) throw InvariantError("matrix size mismatch");
    RationalMatrix r(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const Rational& aik = a.at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < a.n_; ++j) r.at(i, j) += aik * b.at(k, j);
      }
    return r;
  }

  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.n_ != b.n_) throw InvariantError("matrix size mismatch");
    RationalMatrix r(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
  }

  // Fraction-free (Bareiss) determinant: rows are scaled to integers first,
  // then eliminated with exact integer divisions only. Decides singularity.
  Rational determinant() const {
    std::vector<Int> m(a_.size());
    Rational scale(1);
    for (int i = 0; i < n_; ++i) {
      Int l = 1;
      for (int j = 0; j < n_; ++j) l = lcm(l, rat_den(at(i, j)));
      scale *= Rational(l);
      for (int j = 0; j < n_; ++j) {
        Rational v = at(i, j) * Rational(l);
        m[static_cast<std::size_t>(i) * n_ + j] = rat_num(v);
      }
    }
    auto e = [&](int i, int j) -> Int& { return m[static_cast<std::size_t>(i) * n_ + j]; };
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n_ - 1; ++k) {
      if (e(k, k) == 0) {
        int p = -1;
        for (int i = k + 1; i < n_; ++i)
          if (e(i, k) != 0) {
            p = i;
            break;
          }
        if (p < 0) return Rational(0);
        for (int j = 0; j < n_; ++j) std::swap(e(k, j), e(p, j));
        sign = -sign;
      }
      for (int i = k + 1; i < n_; ++i) {
        for (int j = k + 1; j < n_; ++j) e(i, j) = (e(k, k) * e(i, j) - e(i, k) * e(k, j)) / prev;
        e(i, k) = 0;
      }
      prev = e(k, k);
    }
    return Rational(sign * e(n_ - 1, n_ - 1)) / scale;
  }

  bool is_invertible() const { return determinant() != 0; }

  // Gauss-Jordan with exact arithmetic; first nonzero pivot (deterministic).
  std::optional<RationalMatrix> try_inverse() const {
    RationalMatrix a = *this;
    RationalMatrix inv = identity(n_);
    for (int col = 0; col < n_; ++col) {
      int p = -1;
      for (int i = col; i < n_; ++i)
        if (a.at(i, col) != 0) {
          p = i;
          break;
        }
      if (p < 0) return std::nullopt;
      if (p != col)
        for (int j = 0; j < n_; ++j) {
          std::swap(a.at(p, j), a.at(col, j));
          std::swap(inv.at(p, j), inv.at(col, j));
        }
      Rational d = a.at(col, col);
      for (int j = 0; j < n_; ++j) {
        a.at(col, j) /= d;
        inv.at(col, j) /= d;
      }
      for (int i = 0; i < n_; ++i) {
        if (i == col) continue;
        Rational f = a.at(i, col);
        if (f == 0) continue;
        for (int j = 0; j < n_; ++j) {
          a.at(i, j) -= f * a.at(col, j);
          inv.at(i, j) -= f * inv.at(col, j);
        }
      }
    }
    return inv;
  }

  RationalMatrix inverse() const {
    auto inv = try_inverse();
    if (!inv) throw SingularMatrixError();
    return *inv;
  }

private:
  int n_;
  std::vector<Rational> a_;
};

inline RationalMatrix invert_matrix(const RationalMatrix& m) { return m.inverse(); }

// Inverse of M(lam) = M[0] + lam M[1] + ... modulo lam^{order+1}.
// Exists over the truncated ring iff M[0] is invertible.
inline std::vector<RationalMatrix> series_inverse(const std::vector<RationalMatrix>& m, int order) {
  if (m.empty()) throw InvariantError("empty matrix series");
  RationalMatrix lead_inv = m[0].inverse();
  int n = m[0].size();
  std::vector<RationalMatrix> inv(static_cast<std::size_t>(order) + 1, RationalMatrix(n));
  inv[0] = lead_inv;
  for (int k = 1; k <= order; ++k) {
    // inv_k = -M0^{-1} * sum_{j=1..k} M_j inv_{k-j}
    RationalMatrix acc(n);
    for (int j = 1; j <= k; ++j) {
      if (static_cast<std::size_t>(j) >= m.size()) break;
      RationalMatrix prod = m[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) acc.at(i, c) += prod.at(i, c);
    }
    RationalMatrix t = lead_inv * acc;
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c) inv[static_cast<std::size_t>(k)].at(i, c) = -t.at(i, c);
  }
  return inv;
}

}  // namespace oax

#endif
