#ifndef FLOQ_UTIL_HPP
#define FLOQ_UTIL_HPP

#include <functional>

namespace floq {

// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency).
// Exceptions are captured and the first one rethrown after the pool joins.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

} // namespace floq

#endif
