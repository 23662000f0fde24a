#pragma once

namespace tensvd {

// Caps internal (Eigen) parallelism from the TENSVD_THREADS environment
// variable. Unset, empty or invalid values mean 1, keeping results and
// timings reproducible. Returns the thread count in effect.
int configure_threads_from_env();

} // namespace tensvd
