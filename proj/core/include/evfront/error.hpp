// Copyright 2026 The evfront Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace evfront {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent parameters (kernel sizes, DoG radii, tables...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Invalid visual-field geometry, or data that does not match it.
class GeometryError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Tensor shape or channel-index mismatch.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Stimulus that cannot be represented (e.g. above Nyquist).
class StimulusError : public Error {
 public:
  using Error::Error;
};

/// Numerical routine could not produce a defined result.
class ComputeError : public Error {
 public:
  using Error::Error;
};

/// File-system or decoding failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace evfront
