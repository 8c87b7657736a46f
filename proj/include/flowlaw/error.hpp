/* Copyright 2026 The Flowlaw Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flowlaw {

// Base of every exception thrown by the library. The C API maps each
// subclass onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite or out-of-domain physical input.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent shapes, unsupported network depth or activation.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Malformed archive or CSV contents. The message names the offending field.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  TrainingError(const std::string& what, std::size_t iteration)
      : Error(what), iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, std::vector<double> residuals,
                   std::size_t step = 0)
      : Error(what), residuals_(std::move(residuals)), step_(step) {}
  const std::vector<double>& residuals() const noexcept { return residuals_; }
  std::size_t step() const noexcept { return step_; }

 private:
  std::vector<double> residuals_;
  std::size_t step_;
};

}  // namespace flowlaw
