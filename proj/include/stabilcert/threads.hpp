#ifndef STABILCERT_THREADS_HPP
#define STABILCERT_THREADS_HPP

#include <cstddef>
#include <functional>

namespace stabilcert {

/// Worker count from STABILCERT_THREADS (0 or unset means auto).
unsigned resolve_thread_count();

/// Run body(i) for i in [0, count) across the resolved worker count.
/// Bodies must be independent; exceptions propagate to the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace stabilcert

#endif  // STABILCERT_THREADS_HPP
