#pragma once

#include <stdexcept>
#include <string>

namespace tginv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A multi-index component is out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not chain, or a result would leave the cubical-tail family.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside an operation's domain (non-finite entry, 0 to a negative power, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A materialization or branch enumeration exceeds its configured cap.
class CapError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to have full rank does not.
class RankError : public Error {
 public:
  using Error::Error;
};

/// A null-space witness failed certification.
class WitnessError : public Error {
 public:
  using Error::Error;
};

/// The polynomial handed to the root finder is identically zero.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The requested analysis is not available for this tensor family.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A tensor or report file is malformed; the message names the offending field.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tginv
