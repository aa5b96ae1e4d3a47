// Copyright 2026 The hlc-verify Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hlc {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map it to an exit code in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request exceeds what a table, sieve or search was sized for.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A bound was evaluated below its stated validity threshold.
class ValidityError : public Error {
 public:
  using Error::Error;
};

// A rational-log denominator vanished or went negative.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class EmptyRangeError : public Error {
 public:
  using Error::Error;
};

class ResumeError : public Error {
 public:
  using Error::Error;
};

class CoverageError : public Error {
 public:
  using Error::Error;
};

class ChainError : public Error {
 public:
  using Error::Error;
};

class SearchCapError : public Error {
 public:
  using Error::Error;
};

// Raised when a scan report contains counterexamples to Segal's criterion:
// the smallest failing p_k is the smallest m+n for which the conjecture fails.
class RefutationError : public Error {
 public:
  RefutationError(std::uint64_t smallest_failing_prime, const std::string& what)
      : Error(what), smallest_failing_prime_(smallest_failing_prime) {}

  std::uint64_t smallest_failing_prime() const noexcept { return smallest_failing_prime_; }

 private:
  std::uint64_t smallest_failing_prime_;
};

}  // namespace hlc
