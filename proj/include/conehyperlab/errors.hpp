// Copyright 2026 The conehyperlab Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace conehyperlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParam : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Matrix too close to singular for the requested factorization.
class SingularInput : public Error {
 public:
  using Error::Error;
};

class OutOfBall : public Error {
 public:
  using Error::Error;
};

/// A Gamma factor of the c-function sits on a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Gram-Schmidt lost orthogonality (quadrature too coarse).
class IllConditioned : public Error {
 public:
  using Error::Error;
};

class MissingWeight : public Error {
 public:
  using Error::Error;
};

/// Non-integer power of a phase that is not determined at the point.
class BranchError : public Error {
 public:
  using Error::Error;
};

class DegenerateArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace conehyperlab
