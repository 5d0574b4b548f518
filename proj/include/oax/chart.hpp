#ifndef OAX_CHART_HPP
#define OAX_CHART_HPP

#include <string>

#include <oax/errors.hpp>

namespace oax {

// Coordinate chart x^1..x^n. Greek indices in the equations range over the
// chart dimension; everything internal is 0-based, names are 1-based.
class Chart {
public:
  static constexpr int kMaxDim = 16;

  explicit Chart(int dimension) : dim_(dimension) {
    if (dim_ < 1 || dim_ > kMaxDim)
      throw InvariantError("chart dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }

  int dim() const { return dim_; }

  std::string var_name(int alpha) const {
    check_index(alpha);
    return "x" + std::to_string(alpha + 1);
  }

  void check_index(int alpha) const {
    if (alpha < 0 || alpha >= dim_) throw InvariantError("variable index out of chart range");
  }

  friend bool operator==(const Chart& a, const Chart& b) { return a.dim_ == b.dim_; }

private:
  int dim_;
};

}  // namespace oax

#endif
