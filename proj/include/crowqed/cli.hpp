#pragma once

#include <string>

#include "crowqed/config.hpp"

namespace crowqed::cli {

/// Executes one configured command and writes its artifact. Returns 0 on
/// success; throws io::ValidationError / io::IoError otherwise.
int run(const io::RunConfig& config);

/// Worker-count resolution: explicit value, else CROWQED_WORKERS, else
/// hardware concurrency (at least 1).
int effective_workers(int requested);

}  // namespace crowqed::cli
