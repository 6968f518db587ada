#pragma once

#include <stdexcept>
#include <string>

namespace tprobe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A builder or constructor received parameters outside their valid range.
class BadParameter : public Error {
 public:
  using Error::Error;
};

/// A conditional expectation was requested on an event of probability zero.
class EmptyCondition : public Error {
 public:
  using Error::Error;
};

/// Two policy parameters coincide so closely that a closed form is undefined.
class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its size bound.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A value passed to the type oracle lies below the membership threshold.
class BelowThreshold : public Error {
 public:
  using Error::Error;
};

}  // namespace tprobe
