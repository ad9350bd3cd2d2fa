#pragma once
#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ice {

// Every parallel loop in the library also has this serial path; tests compare
// the two for exact equality and ice-bench times them against each other.
enum class Exec { Serial, Parallel };

// Runs body(i) for i in [0, count). Slot-indexed writes keep results
// deterministic regardless of schedule. The first thrown exception (lowest i)
// is rethrown after the loop; exceptions must not escape an OpenMP region.
template <typename F>
void parallel_for(std::size_t count, Exec exec, F&& body) {
  if (count == 0) return;
#ifdef _OPENMP
  if (exec == Exec::Parallel && count > 1) {
    std::vector<std::exception_ptr> errors(count);
    bool failed = false;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
#pragma omp atomic write
        failed = true;
      }
    }
    if (failed)
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return;
  }
#endif
  (void)exec;
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace ice
