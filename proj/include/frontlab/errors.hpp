#pragma once

#include <stdexcept>
#include <string>

namespace frontlab {

/// Exit codes used by the CLI.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitHypothesis = 2,
    kExitAccuracy = 3,
    kExitIo = 4,
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A theorem or formula was requested on inputs violating its hypotheses
/// (open domain, unsupported singularity class, mode mismatch, ...).
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical non-convergence or resolution failure.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace frontlab
