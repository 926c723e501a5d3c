// Copyright 2026 The klmu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KLMU_ERROR_HPP
#define KLMU_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace klmu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (permutations, polynomials, move logs).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical input does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured size or node budget was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A search stopped at its node budget; carries the unexplored frontier.
class PartialResultError : public ResourceError {
 public:
  PartialResultError(const std::string& what, std::size_t frontier)
      : ResourceError(what), frontier_(frontier) {}
  std::size_t frontier() const noexcept { return frontier_; }

 private:
  std::size_t frontier_;
};

/// Database contents disagree with themselves or with the file format.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace klmu

#endif  // KLMU_ERROR_HPP
