#ifndef TWOFOLD_ERRORS_HPP
#define TWOFOLD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twofold {

/// A fold coefficient is (numerically) zero, so the point is not a two-fold.
struct DegenerateFoldError : std::runtime_error {
    explicit DegenerateFoldError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation that requires the reversibility relations was called without them.
struct NotReversibleError : std::runtime_error {
    explicit NotReversibleError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation restricted to the invisible-invisible class was called outside it.
struct NotEllipticError : std::runtime_error {
    explicit NotEllipticError(const std::string& what) : std::runtime_error(what) {}
};

/// Orbit assembly did not close within tolerance.
struct NotClosedError : std::runtime_error {
    explicit NotClosedError(const std::string& what) : std::runtime_error(what) {}
};

/// The integrated orbit never re-reached the switching plane.
struct NoReturnError : std::runtime_error {
    explicit NoReturnError(const std::string& what) : std::runtime_error(what) {}
};

/// The event budget of an integration run was exhausted.
struct MaxEventsExceededError : std::runtime_error {
    explicit MaxEventsExceededError(const std::string& what) : std::runtime_error(what) {}
};

/// Two switching events inside a single step; the step size must shrink.
struct StepTooCoarseError : std::runtime_error {
    explicit StepTooCoarseError(const std::string& what) : std::runtime_error(what) {}
};

/// A field-spec record failed to parse or violates the perturbation rules.
struct SpecParseError : std::runtime_error {
    explicit SpecParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twofold

#endif
