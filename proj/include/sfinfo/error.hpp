// Copyright 2026 The sfinfo Authors
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

namespace sfinfo {

// Base class for every error raised by the library. The CLI maps
// UserError subclasses to exit code 1 and everything else to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UserError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public UserError {
 public:
  using UserError::UserError;
};

class InvalidInputError : public UserError {
 public:
  using UserError::UserError;
};

class DimensionError : public UserError {
 public:
  using UserError::UserError;
};

class ParseError : public UserError {
 public:
  using UserError::UserError;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class AbsoluteContinuityError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  // A negative iteration means the failure happened outside an optimizer run.
  NumericalError(const std::string& what, int iteration)
      : Error(iteration >= 0
                  ? what + " (iteration " + std::to_string(iteration) + ")"
                  : what),
        iteration_(iteration) {}

  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path)
      : Error(what + ": " + path), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A failure inside one repetition of a batch, tagged with where it happened.
class RunError : public Error {
 public:
  RunError(int sim_id, int repetition, const std::string& cause)
      : Error("simulation " + std::to_string(sim_id) + ", repetition " +
              std::to_string(repetition) + ": " + cause),
        sim_id_(sim_id),
        repetition_(repetition) {}

  int sim_id() const { return sim_id_; }
  int repetition() const { return repetition_; }

 private:
  int sim_id_;
  int repetition_;
};

}  // namespace sfinfo
