// Copyright 2026 The KBC Tagger Authors.
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

#ifndef KBC_ERRORS_H_
#define KBC_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kbc {

// Broad classes of failure. The command-line front end maps these onto
// process exit codes.
enum class ErrorKind {
  kUsage,      // bad flags, bad config documents
  kData,       // unreadable or malformed corpora, vocab/tagset mismatches
  kNumerical,  // NaN/Inf during training
  kContract,   // API misuse (precondition violated by the caller)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Shape disagreement between tensors.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string &what)
      : Error(ErrorKind::kContract, "dimension error: " + what) {}
};

// Label index or tag string outside the tagset.
class LabelError : public Error {
 public:
  explicit LabelError(const std::string &what)
      : Error(ErrorKind::kData, "label error: " + what) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string &what)
      : Error(ErrorKind::kContract, "contract error: " + what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &what)
      : Error(ErrorKind::kData, "i/o error: " + what) {}
};

// Malformed line in an input file.
class ParseError : public Error {
 public:
  ParseError(const std::string &file, std::size_t line, const std::string &what)
      : Error(ErrorKind::kData, file + ":" + std::to_string(line) +
                                    ": parse error: " + what),
        file_(file),
        line_(line) {}
  const std::string &file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// Standoff annotation that cannot be placed on its text.
class AnnotationError : public Error {
 public:
  AnnotationError(const std::string &annotation_id, const std::string &what)
      : Error(ErrorKind::kData,
              "annotation error in " + annotation_id + ": " + what),
        annotation_id_(annotation_id) {}
  const std::string &annotation_id() const { return annotation_id_; }

 private:
  std::string annotation_id_;
};

class SplitError : public Error {
 public:
  explicit SplitError(const std::string &what)
      : Error(ErrorKind::kData, "split error: " + what) {}
};

class VocabError : public Error {
 public:
  explicit VocabError(const std::string &what)
      : Error(ErrorKind::kData, "vocab error: " + what) {}
};

class TaskError : public Error {
 public:
  explicit TaskError(const std::string &what)
      : Error(ErrorKind::kData, "task error: " + what) {}
};

// Gold and predicted sequences disagree in count or length.
class AlignmentError : public Error {
 public:
  explicit AlignmentError(const std::string &what)
      : Error(ErrorKind::kData, "alignment error: " + what) {}
};

// Checkpoint tagsets or vocabulary do not cover the data being evaluated.
class CompatibilityError : public Error {
 public:
  explicit CompatibilityError(const std::string &what)
      : Error(ErrorKind::kData, "compatibility error: " + what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string &what)
      : Error(ErrorKind::kNumerical, "numerical abort: " + what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what)
      : Error(ErrorKind::kUsage, "config error: " + what) {}
};

}  // namespace kbc

#endif  // KBC_ERRORS_H_
