//
// Copyright 2026 The ngdb Authors
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
//

#ifndef NGDB_COMMON_ERROR_HPP_
#define NGDB_COMMON_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ngdb {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (bad id, arity, shape, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A name or id could not be resolved against a vocabulary.
class NotFound : public Error {
 public:
  using Error::Error;
};

// Malformed textual input. `location` is a 1-based line number for files and
// a 0-based character offset for query strings.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t location)
      : Error(what), location_(location) {}

  std::size_t location() const { return location_; }

 private:
  std::size_t location_;
};

// A numeric computation produced NaN or infinity.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A randomized procedure ran out of attempts.
class ExhaustedError : public Error {
 public:
  using Error::Error;
};

}  // namespace ngdb

#endif  // NGDB_COMMON_ERROR_HPP_
