#ifndef QPOLY_ERRORS_HPP
#define QPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpoly {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or unusable input: bad rational syntax, bad polytope file,
// unknown labels, infeasible or unbounded systems on load.
struct InputError : Error {
    explicit InputError(const std::string& what) : Error(what) {}
};

// A verification condition failed: empty face, non-maximal support,
// mismatched expectation.
struct VerifyError : Error {
    explicit VerifyError(const std::string& what) : Error(what) {}
};

// A configured work budget was exhausted before the computation finished.
struct BudgetError : Error {
    explicit BudgetError(const std::string& what) : Error(what) {}
};

}  // namespace qpoly

#endif
