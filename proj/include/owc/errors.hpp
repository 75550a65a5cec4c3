// Copyright 2026 The owcnot Authors
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

namespace owc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A label, dimension or argument outside its permitted range.
class RangeError : public Error {
   public:
    using Error::Error;
};

/// A state (or amplitude pair) whose norm is not 1 within tolerance.
class NormError : public Error {
   public:
    NormError(const std::string &what, double norm) : Error(what), norm_(norm) {
    }
    double norm() const {
        return norm_;
    }

   private:
    double norm_;
};

/// A forced measurement outcome whose Born probability is (numerically) zero.
class ImpossibleBranch : public Error {
   public:
    ImpossibleBranch(const std::string &what, double probability, std::size_t step)
        : Error(what), probability_(probability), step_(step) {
    }
    double probability() const {
        return probability_;
    }
    /// Index of the failing step within a pattern (0 for a lone measurement).
    std::size_t step() const {
        return step_;
    }

   private:
    double probability_;
    std::size_t step_;
};

/// Raised by extract_subsystem when the discarded part is still entangled.
class NotPure : public Error {
   public:
    NotPure(const std::string &what, double purity) : Error(what), purity_(purity) {
    }
    double purity() const {
        return purity_;
    }

   private:
    double purity_;
};

/// Malformed text input (tables, edge lists, amplitude strings).
class ParseError : public Error {
   public:
    using Error::Error;
};

}  // namespace owc
