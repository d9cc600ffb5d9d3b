#ifndef WMT_ERRORS_HPP
#define WMT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wmt {

/// Violated mathematical precondition (parameter outside the admissible range).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric routine failed to reach its tolerance; carries the best estimate achieved.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double best_estimate, double achieved_error)
        : std::runtime_error(what + " (best estimate " + std::to_string(best_estimate) +
                             ", achieved error " + std::to_string(achieved_error) + ")"),
          best_estimate(best_estimate),
          achieved_error(achieved_error) {}

    double best_estimate;
    double achieved_error;
};

/// An exponential would exceed double range; carries the offending exponent.
class ExpOverflowError : public std::runtime_error {
public:
    explicit ExpOverflowError(double exponent)
        : std::runtime_error("exponential overflow: exponent " + std::to_string(exponent) +
                             " exceeds the double-precision limit"),
          exponent(exponent) {}

    double exponent;
};

} // namespace wmt

#endif
