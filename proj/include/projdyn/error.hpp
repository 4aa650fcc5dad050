#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace projdyn {

// Error categories; numeric values double as CLI exit codes.
enum class Errc : int {
  ParseError = 2,
  InvalidLift = 3,
  NotAS = 4,
  BudgetExceeded = 5,
  IoError = 6,
  NotAPoint = 7,
  DegreeTooSmall = 8,
  PatchNearIndeterminacy = 9,
  InvalidArgument = 10,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  Error(Errc code, const std::string& msg, std::size_t position)
      : std::runtime_error(msg), code_(code), position_(position),
        has_position_(true) {}

  Errc code() const { return code_; }
  bool has_position() const { return has_position_; }
  std::size_t position() const { return position_; }

 private:
  Errc code_;
  std::size_t position_ = 0;
  bool has_position_ = false;
};

}  // namespace projdyn
