// Copyright 2026 The intentsim Authors.
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

#ifndef INTENT_ERRORS_HPP_
#define INTENT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace intent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (bad JSON, wrong types).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a domain invariant. Carries the JSON path
// of the offending field, e.g. "objects[3].position".
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DegenerateTarget : public Error {
 public:
  DegenerateTarget() : Error("target coincides with pose position") {}
};

class UnparsablePrompt : public Error {
 public:
  using Error::Error;
};

class EmptyCandidateSet : public Error {
 public:
  EmptyCandidateSet() : Error("no candidate tracks") {}
};

// Any failure of a semantic scoring backend. The caller keeps its previous
// prior when this is raised.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class BackendTimeout : public BackendUnavailable {
 public:
  using BackendUnavailable::BackendUnavailable;
};

class MalformedResponse : public BackendUnavailable {
 public:
  using BackendUnavailable::BackendUnavailable;
};

class TransportError : public BackendUnavailable {
 public:
  using BackendUnavailable::BackendUnavailable;
};

}  // namespace intent

#endif  // INTENT_ERRORS_HPP_
