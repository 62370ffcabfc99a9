#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace mforge::detail {

struct ScanResult {
  std::optional<std::vector<size_t>> first_fail;  // lexicographically smallest
  uint64_t domain = 0;                            // n^arity
};

// Scan {0..n-1}^arity in lexicographic order, parallel over the leading
// index. Workers skip leading blocks above the best failing block found so
// far; within a block the first failure is the block minimum, so the overall
// result is independent of thread count and scheduling.
ScanResult scan_tuples(size_t n, int arity, int threads,
                       const std::function<bool(const std::vector<size_t>&)>& ok);

}  // namespace mforge::detail
