// Copyright 2026 The kfree Authors
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

#ifndef KFREE_ERRORS_HPP_
#define KFREE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace kfree {

// Failure categories shared by every module. The C API maps each one to a
// distinct status code and the CLI maps those to process exit codes.
enum class ErrorKind {
  kDomain,       // argument outside the mathematical domain of an operation
  kSize,         // an enumeration guard would be exceeded
  kIo,           // file could not be opened, read or written
  kCorrupt,      // persisted data failed validation
  kVersion,      // persisted data has an unsupported schema version
  kInfeasible,   // no object satisfies the requested constraints
  kUnsupported,  // a case the implementation deliberately does not cover
  kUndefined,    // value is mathematically undefined (e.g. 0/0 fraction)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void Require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) Fail(kind, what);
}

}  // namespace kfree

#endif  // KFREE_ERRORS_HPP_
