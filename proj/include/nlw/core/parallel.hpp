#ifndef NLW_CORE_PARALLEL_HPP
#define NLW_CORE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace nlw {

/// Runs fn(i) for i in [0, n) on up to `threads` workers and returns the
/// results in index order. Work items must be independent; any reduction is
/// done by the caller over the ordered result, so output never depends on
/// scheduling.
template <class Fn>
auto parallel_map(std::size_t n, unsigned threads, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<R>> slots(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));

  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(fn(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          slots[i].emplace(fn(i));
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(n);
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace nlw

#endif
