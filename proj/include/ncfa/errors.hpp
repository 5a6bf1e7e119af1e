#pragma once

#include <stdexcept>
#include <string>

namespace ncfa {

enum class Errc {
    // algebra construction / arithmetic
    EmptyBlocks,
    WeightBelowOne,
    TraceMismatch,
    AlgebraMismatch,
    NonPositiveP,
    NotSelfAdjoint,
    NotPositive,
    ZeroElement,
    PTooCloseToOne,
    // model construction
    BadOrder,
    InvalidIrrepTable,
    NotASubgroup,
    WrongModelKind,
    LambdaNotCoprime,
    DeltaTooSmall,
    DeltaOutOfRange,
    // checkers
    POutOfRange,
    DegenerateOrder,
    NotNormalized,
    OutOfRegion,
    NormTooLarge,
    GridStraddlesOne,
    NotABiprojection,
    // search / cli
    ConfigInvalid,
    ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace ncfa
