#pragma once
// Exception taxonomy shared by the library and the command-line tools.
// The CLI maps these to process exit codes: validation_error -> 2,
// convergence_error -> 3, io_error -> 4.

#include <stdexcept>
#include <string>

namespace betalab {

/// Invalid parameters, domain violations, or impossible configurations.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure failed to stabilize within its budget.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File input/output failure.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace betalab
