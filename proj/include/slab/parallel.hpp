#pragma once

namespace slab {

// Current OpenMP thread budget (1 when built without OpenMP).
int max_threads();

// Honors the SLAB_THREADS environment variable as a hard cap on parallelism.
// Called once at tool startup; ignored values: unset, empty, non-numeric, <1.
void apply_thread_cap_from_env();

}  // namespace slab
