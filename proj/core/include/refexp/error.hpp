// Copyright 2026 The refexp Authors. All Rights Reserved.
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

namespace refexp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed a value that violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Vector or layer dimensions do not line up.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A model does not have the layer shape an operation requires.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Object id not present in the scene.
class UnknownObject : public Error {
 public:
  explicit UnknownObject(int id)
      : Error("unknown object id " + std::to_string(id)), id_(id) {}
  int id() const noexcept { return id_; }

 private:
  int id_;
};

/// Scene violates one of its structural invariants.
class InvalidScene : public Error {
 public:
  using Error::Error;
};

/// A JSON document (scene, model, dataset, annotation) could not be decoded.
/// `field()` names the offending field, or is empty for syntax errors.
class FormatError : public Error {
 public:
  FormatError(std::string field, std::string message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(std::move(message)) {}
  const std::string& field() const noexcept { return field_; }
  /// The description without the field prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

class LabelOutOfRange : public Error {
 public:
  using Error::Error;
};

/// No unambiguous candidate relation survived for the target.
class EmptyCandidates : public Error {
 public:
  explicit EmptyCandidates(int target_id)
      : Error("no unambiguous relation for object " + std::to_string(target_id)),
        target_id_(target_id) {}
  int target_id() const noexcept { return target_id_; }

 private:
  int target_id_;
};

}  // namespace refexp
