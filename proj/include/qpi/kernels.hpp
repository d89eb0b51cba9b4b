#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qpi {

/// Execution policy for the data-parallel kernels (series convolution,
/// enumeration sums, audits). Every parallel kernel has a serial reference
/// twin; tests assert they produce identical results and the bench target
/// times them against each other. All merged state is exact-integer, so
/// results are schedule-independent.
enum class exec_policy {
  automatic,  // parallel when the work size clears a threshold
  serial,
  parallel,
};

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline bool use_parallel(exec_policy p, std::size_t work, std::size_t threshold) {
#ifndef _OPENMP
  (void)p;
  (void)work;
  (void)threshold;
  return false;
#else
  switch (p) {
    case exec_policy::serial:
      return false;
    case exec_policy::parallel:
      return hardware_threads() > 1;
    case exec_policy::automatic:
      return hardware_threads() > 1 && work >= threshold;
  }
  return false;
#endif
}

}  // namespace qpi
