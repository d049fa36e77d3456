// Copyright 2026 The dmupdate Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmu {

// Base of every error the library throws. Callers that only care about
// "bad input vs. everything else" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

class NotFinite : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when a product dimension or a dense tensor would exceed its cap.
class SizeCap : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class InvalidProjector : public Error {
 public:
  using Error::Error;
};

class IncompleteFamily : public Error {
 public:
  using Error::Error;
};

// Trace fell to (numerically) zero: an update annihilated the state.
class ZeroTrace : public Error {
 public:
  using Error::Error;
};

class InvalidDdm : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class UnknownWord : public Error {
 public:
  explicit UnknownWord(const std::string& word, const std::string& detail = {})
      : Error("unknown word '" + word + "'" +
              (detail.empty() ? std::string{} : ": " + detail)),
        word_(word) {}

  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

class SpaceMismatch : public Error {
 public:
  SpaceMismatch(const std::string& actor, const std::string& expected,
                const std::string& found)
      : Error("actor '" + actor + "' lives in space '" + expected +
              "' but is used as '" + found + "'"),
        actor_(actor),
        expected_(expected),
        found_(found) {}

  const std::string& actor() const noexcept { return actor_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::string actor_, expected_, found_;
};

class UnknownActor : public Error {
 public:
  explicit UnknownActor(const std::string& actor)
      : Error("unknown actor '" + actor + "'") {}
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

}  // namespace dmu
