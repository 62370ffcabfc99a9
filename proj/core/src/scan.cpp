#include "scan.hpp"

#include <atomic>
#include <thread>

namespace mforge::detail {

namespace {

// first failing tuple with leading index `lead`, in lex order, or nullopt
std::optional<std::vector<size_t>> scan_block(
    size_t n, int arity, size_t lead,
    const std::function<bool(const std::vector<size_t>&)>& ok) {
  std::vector<size_t> t(static_cast<size_t>(arity), 0);
  t[0] = lead;
  while (true) {
    if (!ok(t)) return t;
    int pos = arity - 1;
    while (pos >= 1) {
      if (++t[pos] < n) break;
      t[pos] = 0;
      --pos;
    }
    if (pos < 1) return std::nullopt;
  }
}

}  // namespace

ScanResult scan_tuples(size_t n, int arity, int threads,
                       const std::function<bool(const std::vector<size_t>&)>& ok) {
  ScanResult result;
  result.domain = 1;
  for (int k = 0; k < arity; ++k) result.domain *= n;
  if (n == 0) return result;

  std::vector<std::optional<std::vector<size_t>>> block_hit(n);
  std::atomic<size_t> next{0};
  std::atomic<size_t> best{n};  // smallest leading index with a failure

  auto worker = [&] {
    while (true) {
      const size_t b = next.fetch_add(1);
      if (b >= n) return;
      if (b > best.load()) continue;
      auto hit = scan_block(n, arity, b, ok);
      if (hit) {
        block_hit[b] = std::move(hit);
        size_t cur = best.load();
        while (b < cur && !best.compare_exchange_weak(cur, b)) {
        }
      }
    }
  };

  const size_t nthreads = std::min<size_t>(std::max(threads, 1), n);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (size_t b = 0; b < n; ++b)
    if (block_hit[b]) {
      result.first_fail = std::move(block_hit[b]);
      break;
    }
  return result;
}

}  // namespace mforge::detail
