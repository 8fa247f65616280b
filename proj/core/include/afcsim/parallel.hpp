#ifndef AFCSIM_PARALLEL_HPP
#define AFCSIM_PARALLEL_HPP

#include <functional>

namespace afcsim {

/// Global worker count for parallel maps (0 = hardware concurrency).
/// The CLI exposes this as --threads.
void set_thread_count(int n);
int thread_count();

/// Runs fn(begin, end) over a partition of [0, n). Results must not depend
/// on the partitioning: chunks are disjoint and no reduction order is
/// involved, so outputs are byte-identical for any thread count.
void parallel_for(int n, const std::function<void(int, int)>& fn);

}  // namespace afcsim

#endif
