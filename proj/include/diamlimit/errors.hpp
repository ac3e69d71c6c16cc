#pragma once

#include <stdexcept>
#include <string>

namespace diamlimit {

/// Base class for all diamlimit errors; carries a stable short code
/// (e.g. "NonUniqueAxis") next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct NonUniqueAxisError : Error {
    explicit NonUniqueAxisError(const std::string& what)
        : Error("NonUniqueAxis", what) {}
};

struct NotPositiveDefiniteError : Error {
    explicit NotPositiveDefiniteError(const std::string& what)
        : Error("NotPositiveDefinite", what) {}
};

struct Lemma1ViolatedError : Error {
    explicit Lemma1ViolatedError(const std::string& what)
        : Error("Lemma1Violated", what) {}
};

struct BetaOutOfRangeError : Error {
    explicit BetaOutOfRangeError(const std::string& what)
        : Error("BetaOutOfRange", what) {}
};

struct NotEnoughPairsError : Error {
    explicit NotEnoughPairsError(const std::string& what)
        : Error("NotEnoughPairs", what) {}
};

struct EmptyProcessError : Error {
    explicit EmptyProcessError(const std::string& what)
        : Error("EmptyProcess", what) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& what)
        : Error("DimensionMismatch", what) {}
};

struct InvalidSpecError : Error {
    explicit InvalidSpecError(const std::string& what)
        : Error("InvalidSpec", what) {}
};

} // namespace diamlimit
