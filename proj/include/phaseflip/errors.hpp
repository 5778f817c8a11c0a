// Copyright 2026 The phaseflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace phaseflip {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// A circuit contains stochastic elements where a unitary was required.
class CompositionError : public Error {
 public:
  using Error::Error;
};

class DegeneratePulseError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

class ResonanceError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

class CoherenceError : public Error {
 public:
  using Error::Error;
};

class TimeError : public Error {
 public:
  using Error::Error;
};

class ReadoutConstraintError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Fit preconditions violated or curvature singular.
class FitError : public Error {
 public:
  using Error::Error;
};

// Config schema violation; path is a JSON-pointer-like location ("$.noise.qubits.Q1").
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace phaseflip
