#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tfsdr {

enum class ErrorCode {
    InvalidInput,
    NonSymmetric,
    NoConvergence,
    Degenerate,
    RankDeficient,
    DimensionMismatch,
    TooManySlices,
    EmptySlice,
    DegenerateSlice,
    DegenerateGap,
    AllFailed,
    Io,
    Config,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class SdrError : public std::runtime_error {
public:
    SdrError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace tfsdr
