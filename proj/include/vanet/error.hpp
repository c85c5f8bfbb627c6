#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vanet {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownVehicle : public Error {
 public:
  explicit UnknownVehicle(const std::string& id)
      : Error("unknown vehicle '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class InvalidDistance : public Error {
 public:
  using Error::Error;
};

class OutOfOrderTick : public Error {
 public:
  OutOfOrderTick(long long previous, long long now)
      : Error("controller tick " + std::to_string(now) +
              " is not after previous tick " + std::to_string(previous)) {}
};

class SenderNotEquipped : public Error {
 public:
  explicit SenderNotEquipped(const std::string& id)
      : Error("vehicle '" + id + "' is not equipped for V2V") {}
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(const std::string& id)
      : Error("duplicate id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class NoResponderAvailable : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

/// Well-formed input that violates a semantic constraint.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& field, const std::string& message)
      : Error(field + ": " + message), field_(field), message_(message) {}
  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

/// A failure during a scenario run, tagged with the tick it happened on.
class RunError : public Error {
 public:
  RunError(long long tick, const std::string& message)
      : Error("tick " + std::to_string(tick) + ": " + message), tick_(tick) {}
  long long tick() const noexcept { return tick_; }

 private:
  long long tick_;
};

}  // namespace vanet
