#pragma once

namespace minsel {

// Number of worker threads the parallel kernels may use. Controlled by
// the MINSEL_THREADS environment variable; 0, unset or unparseable means
// "all available". Re-read on every call so tests can adjust it.
int worker_threads();

}  // namespace minsel
