#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redustat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed test-method text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that uses a construct outside the supported grammar.
class UnsupportedConstruct : public Error {
 public:
  UnsupportedConstruct(std::string construct, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) +
              ": unsupported construct: " + construct),
        construct_(std::move(construct)),
        line_(line),
        column_(column) {}

  const std::string& construct() const noexcept { return construct_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string construct_;
  std::size_t line_;
  std::size_t column_;
};

/// A document (tree, CSV, config) does not match its schema. `path` locates
/// the offending field, e.g. "/nodes/3/kind" or "line 4, column prs".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class NotAncestorClosed : public Error {
 public:
  explicit NotAncestorClosed(std::size_t id)
      : Error("retained set is not ancestor-closed at statement " + std::to_string(id)),
        id_(id) {}

  std::size_t id() const noexcept { return id_; }

 private:
  std::size_t id_;
};

class OriginalDoesNotFail : public Error {
 public:
  using Error::Error;
};

/// The oracle process could not be started at all. Distinct from an Invalid
/// verdict: it aborts the reduction.
class SpawnFailure : public Error {
 public:
  using Error::Error;
};

class CountMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus is empty") {}
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class AllZeroDifferences : public Error {
 public:
  AllZeroDifferences() : Error("all paired differences are zero") {}
};

class ConstantInput : public Error {
 public:
  ConstantInput() : Error("all values are identical") {}
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace redustat
