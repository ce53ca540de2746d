#ifndef KSEG_ERRORS_H_
#define KSEG_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kseg {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a pure function (e.g. a non-hangul scalar).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. `line` is 1-based; 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0,
             std::size_t column = 0)
      : Error(Format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string Format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

// Provenance or tree shape does not allow the requested conversion.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Gold and predicted data do not line up and cannot be scored.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace kseg

#endif  // KSEG_ERRORS_H_
