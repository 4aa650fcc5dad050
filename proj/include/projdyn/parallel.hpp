#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace projdyn {

// Row-parallel helper. Writers own disjoint rows, so results are identical
// for every worker count.
inline void parallel_rows(int rows, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || rows <= 1) {
    for (int j = 0; j < rows; ++j) fn(j);
    return;
  }
  int nw = std::min(workers, rows);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w)
    pool.emplace_back([&] {
      for (;;) {
        int j = next.fetch_add(1);
        if (j >= rows) return;
        fn(j);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace projdyn
