// Copyright 2026 The FactGraph Authors
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

namespace factgraph {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken caller contract (empty claim text, zero predictions, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Corpus or claim file could not be ingested. Fatal for the run.
class IngestError : public Error {
 public:
  using Error::Error;
};

// Unknown page title or sentence index.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Inconsistent configuration: missing head, dimension mismatch, bad key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A feature that was not enabled (e.g. online retrieval in offline mode).
class DisabledFeatureError : public Error {
 public:
  using Error::Error;
};

// Failure talking to an external service. Callers may retry.
class RetryableError : public Error {
 public:
  using Error::Error;
};

// Network transport failed (connection refused, timeout, 5xx).
class TransportError : public RetryableError {
 public:
  using RetryableError::RetryableError;
};

// The remote service answered, but the requested item does not exist.
class NotFoundError : public RetryableError {
 public:
  using RetryableError::RetryableError;
};

// Training produced a NaN or infinite loss.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace factgraph
