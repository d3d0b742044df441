#pragma once

#include <stdexcept>
#include <string>

namespace pgkit {

// Base class for all library errors. CLI maps these to exit code 2
// (input/usage problems); property failures are reported via return
// values, not exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Incidence-file parse failure; `row` is the 1-based physical line
// number in the input text (comment and blank rows count).
struct ParseError : Error {
  int row;
  ParseError(int row_, const std::string& what_)
      : Error("row " + std::to_string(row_) + ": " + what_), row(row_) {}
};

}  // namespace pgkit
