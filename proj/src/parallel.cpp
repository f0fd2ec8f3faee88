#include "bcn/parallel.hpp"

#include <atomic>

namespace bcn {

namespace {
std::atomic<int> g_threads{0};
}

void set_default_threads(int threads) { g_threads.store(threads); }

int default_threads() {
  const int configured = g_threads.load();
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace bcn
