#pragma once

#include <thread>
#include <vector>

#include "bcn/logical.hpp"

namespace bcn {

/// Process-wide default worker count for column-parallel construction.
/// 0 means std::thread::hardware_concurrency().
void set_default_threads(int threads);
int default_threads();

/// Runs body(first, last) over disjoint contiguous slices of [begin, end).
/// Each slice writes only its own output range, so results are identical
/// for every thread count.
template <typename Body>
void parallel_for(Index begin, Index end, Body&& body, int threads = 0) {
  if (threads <= 0) threads = default_threads();
  const Index total = end - begin;
  if (threads <= 1 || total < 1024) {
    body(begin, end);
    return;
  }
  const Index chunk = (total + threads - 1) / threads;
  std::vector<std::thread> workers;
  for (Index lo = begin; lo < end; lo += chunk) {
    const Index hi = std::min(end, lo + chunk);
    workers.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace bcn
