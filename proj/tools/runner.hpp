#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace landau::lab {

enum ExitCode : int {
    kPass = 0,
    kInternalError = 1,
    kConfigError = 2,
    kWeightAuditFail = 10,
    kKernelFail = 11,
    kBoundFail = 12,
    kStabilityAbort = 13,
    kContractionAbort = 14,
    kBoundaryDecayFail = 15,
};

// Validates, runs the selected mode, writes artifacts under cfg.out and returns the exit code.
// Progress and the failure reason go to `log`.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace landau::lab
