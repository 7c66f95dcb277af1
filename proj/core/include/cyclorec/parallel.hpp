#pragma once

// Index-ordered parallel map: results land in input order whatever the worker count.

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace cyclorec {

template <class Fn>
auto parallel_map(size_t count, unsigned workers, Fn&& fn) -> std::vector<decltype(fn(size_t{}))> {
  using R = decltype(fn(size_t{}));
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<size_t> next{0};
  auto body = [&] {
    for (size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (n <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(body);
  }
  // Report the failure with the smallest index so the outcome is worker-independent.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace cyclorec
