#pragma once

#include <stdexcept>
#include <string>

namespace tke {

enum class ErrorCode {
    UNBOUNDED,
    EMPTY_OR_LOWDIM,
    ORIGIN_OUTSIDE,
    NONPRIMITIVE_NORMAL,
    LOWDIM,
    NOT_CANONICAL,
    NONCONVEX_INPUT,
    DEGENERATE_HULL,
    SLOPE_MISMATCH,
    NOT_FULL,
    UNBOUNDED_BELOW,
    NOT_A_SOLUTION,
    NONCONVEX_GRID,
    DEGENERATE,
    BAD_INPUT,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::UNBOUNDED: return "UNBOUNDED";
        case ErrorCode::EMPTY_OR_LOWDIM: return "EMPTY_OR_LOWDIM";
        case ErrorCode::ORIGIN_OUTSIDE: return "ORIGIN_OUTSIDE";
        case ErrorCode::NONPRIMITIVE_NORMAL: return "NONPRIMITIVE_NORMAL";
        case ErrorCode::LOWDIM: return "LOWDIM";
        case ErrorCode::NOT_CANONICAL: return "NOT_CANONICAL";
        case ErrorCode::NONCONVEX_INPUT: return "NONCONVEX_INPUT";
        case ErrorCode::DEGENERATE_HULL: return "DEGENERATE_HULL";
        case ErrorCode::SLOPE_MISMATCH: return "SLOPE_MISMATCH";
        case ErrorCode::NOT_FULL: return "NOT_FULL";
        case ErrorCode::UNBOUNDED_BELOW: return "UNBOUNDED_BELOW";
        case ErrorCode::NOT_A_SOLUTION: return "NOT_A_SOLUTION";
        case ErrorCode::NONCONVEX_GRID: return "NONCONVEX_GRID";
        case ErrorCode::DEGENERATE: return "DEGENERATE";
        case ErrorCode::BAD_INPUT: return "BAD_INPUT";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace tke
