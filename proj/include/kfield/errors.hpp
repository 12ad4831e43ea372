#pragma once

#include <stdexcept>
#include <string>

namespace kfield {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundVariable : Error {
  explicit UnboundVariable(const std::string& variable)
      : Error("unbound variable: " + variable), name(variable) {}
  std::string name;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct ParseError : Error {
  ParseError(int line_, int column_, const std::string& message)
      : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " +
              message),
        line(line_),
        column(column_) {}
  int line;
  int column;
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& message, int line_ = 0)
      : Error(line_ > 0 ? "schema error at line " + std::to_string(line_) + ": " + message
                        : "schema error: " + message),
        line(line_) {}
  int line;
};

struct ChartMismatch : Error {
  explicit ChartMismatch(const std::string& message) : Error("chart mismatch: " + message) {}
};

struct GridTooSmall : Error {
  explicit GridTooSmall(const std::string& message) : Error("grid too small: " + message) {}
};

struct GaugeConstraintViolated : Error {
  explicit GaugeConstraintViolated(const std::string& message)
      : Error("gauge constraint violated: " + message) {}
};

struct NotProjectable : Error {
  explicit NotProjectable(const std::string& message) : Error("not projectable: " + message) {}
};

struct CflViolated : Error {
  explicit CflViolated(double cfl_number)
      : Error("CFL condition violated: c*dt/dx = " + std::to_string(cfl_number)),
        cfl(cfl_number) {}
  double cfl;
};

struct NonFiniteState : Error {
  explicit NonFiniteState(const std::string& message) : Error("non-finite state: " + message) {}
};

struct DomainMismatch : Error {
  explicit DomainMismatch(const std::string& message) : Error("domain mismatch: " + message) {}
};

}  // namespace kfield
