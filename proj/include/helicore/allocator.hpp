#pragma once

// Field buffers are a few MB and churn every RK stage. With glibc's default
// thresholds each one is mmapped or trimmed back to the kernel on free, and on
// hosts with expensive page faults that dominates the FFT cost. Executables
// call this once at startup; the library itself never touches malloc policy.

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace helicore {

inline void retain_heap() {
#if defined(__GLIBC__)
  mallopt(M_MMAP_THRESHOLD, 256 << 20);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
  mallopt(M_TOP_PAD, 64 << 20);
#endif
}

}  // namespace helicore
