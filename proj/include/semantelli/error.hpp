#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semantelli {

enum class ErrorCode {
  EmptyQuery,
  InvalidArgument,
  NotFound,
  ParseError,
  DuplicateEngineId,
  NoEnginesEnabled,
  UnknownEngine,
  AllEnginesFailed,
  InvalidUrl,
  BindError,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure that crosses a module boundary is reported as an Error
// carrying one of the codes above. Engine fetches are the exception: they
// encode failure in FetchOutcome and never throw.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace semantelli
