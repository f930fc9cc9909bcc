#ifndef AGN_RUNTIME_HPP
#define AGN_RUNTIME_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace agn {

// Worker cap shared by all parallel loops. Initialised from AGN_THREADS,
// overridable at runtime (tests exercise thread-count independence).
inline std::atomic<int>& thread_cap_storage() {
  static std::atomic<int> cap = [] {
    int n = 1;
    if (const char* env = std::getenv("AGN_THREADS")) {
      n = std::atoi(env);
    }
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (n <= 0) n = 1;
    return n < hw ? n : hw;
  }();
  return cap;
}

inline int thread_cap() { return thread_cap_storage().load(); }

inline void set_thread_cap(int n) {
  thread_cap_storage().store(n < 1 ? 1 : n);
}

// Static block partition over [0, count). Each index is processed exactly
// once and results must be written to disjoint slots, so the outcome is
// independent of the number of workers.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const int workers = thread_cap();
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t nw =
      std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  const std::size_t chunk = (count + nw - 1) / nw;
  for (std::size_t w = 0; w < nw; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace agn

#endif  // AGN_RUNTIME_HPP
