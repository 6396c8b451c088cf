#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fishgame {

enum class errc {
  stock_depleted,
  meaningless_margin,
  not_realistic,
  non_positive_parameter,
  non_convergence,
  unachievable,
  not_applicable,
  degenerate_reference,
  empty_input,
  parse_error,
  unknown_field,
  validation_error,
  path_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::stock_depleted: return "StockDepleted";
    case errc::meaningless_margin: return "MeaninglessMargin";
    case errc::not_realistic: return "NotRealistic";
    case errc::non_positive_parameter: return "NonPositiveParameter";
    case errc::non_convergence: return "NonConvergence";
    case errc::unachievable: return "Unachievable";
    case errc::not_applicable: return "NotApplicable";
    case errc::degenerate_reference: return "DegenerateReference";
    case errc::empty_input: return "EmptyInput";
    case errc::parse_error: return "ParseError";
    case errc::unknown_field: return "UnknownField";
    case errc::validation_error: return "ValidationError";
    case errc::path_error: return "PathError";
  }
  return "UnknownError";
}

/// Exception carrying a typed error code alongside the message.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// One validation finding; validate() collects these instead of throwing.
struct Issue {
  errc code;
  std::string message;
};

}  // namespace fishgame
