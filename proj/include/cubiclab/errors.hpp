#pragma once
#ifndef CUBICLAB_ERRORS_HPP
#define CUBICLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cubiclab {

/// Base of every domain error raised by the library. The CLI maps these to
/// exit code 1; anything else is a usage or internal error.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CUBICLAB_DEFINE_ERROR(Name)                                         \
  class Name : public DomainError {                                         \
   public:                                                                  \
    explicit Name(const std::string& what) : DomainError(#Name, what) {}    \
  };

CUBICLAB_DEFINE_ERROR(DimensionMismatch)
CUBICLAB_DEFINE_ERROR(ZeroForm)
CUBICLAB_DEFINE_ERROR(OutOfRange)
CUBICLAB_DEFINE_ERROR(NonFinite)
CUBICLAB_DEFINE_ERROR(RankDeficient)
CUBICLAB_DEFINE_ERROR(VanishingMinor)
CUBICLAB_DEFINE_ERROR(ZeroEigenvalue)
CUBICLAB_DEFINE_ERROR(OutsideBox)
CUBICLAB_DEFINE_ERROR(NonDiagonal)
CUBICLAB_DEFINE_ERROR(DepthTooLarge)
CUBICLAB_DEFINE_ERROR(Overflow)
CUBICLAB_DEFINE_ERROR(ZeroPrediction)
CUBICLAB_DEFINE_ERROR(ParseError)

#undef CUBICLAB_DEFINE_ERROR

}  // namespace cubiclab

#endif  // CUBICLAB_ERRORS_HPP
