// Copyright (c) 2026 miap contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef MIAP_ERROR_HPP
#define MIAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace miap {

// Error taxonomy. Everything derives from Error so callers can catch the
// whole family; the CLI maps ConfigError to exit code 1 and the rest to 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class LengthError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class ValueError : public Error {
 public:
  using Error::Error;
};

class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace miap

#endif  // MIAP_ERROR_HPP
