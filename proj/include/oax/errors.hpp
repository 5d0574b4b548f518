#ifndef OAX_ERRORS_HPP
#define OAX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oax {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Violated internal precondition (dimension mismatch, bad index, ...).
class InvariantError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

class SingularMatrixError : public Error {
public:
  SingularMatrixError() : Error("matrix is singular (exact zero determinant)") {}
  explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

}  // namespace oax

#endif
