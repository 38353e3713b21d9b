// Deterministic index-space parallelism: the body writes only to its own
// index slot, so results are identical for any worker count.

#ifndef RPL_PARALLEL_HPP
#define RPL_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rpl {

// Resolves a requested worker count: values >= 1 are taken as-is, anything
// else falls back to RPL_THREADS, then to hardware_concurrency().
int resolve_threads(int requested);

template <typename Body>
void parallel_for_index(std::size_t count, int threads, const Body& body) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rpl

#endif  // RPL_PARALLEL_HPP
