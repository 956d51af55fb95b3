#pragma once

namespace flatreach {

/// Worker count for parallel scans: FLATREACH_THREADS when set (clamped to
/// [1, hardware]), otherwise the OpenMP default.
int worker_count();

/// Applies FLATREACH_THREADS to the OpenMP runtime. Called once by the CLI.
void apply_thread_env();

}  // namespace flatreach
