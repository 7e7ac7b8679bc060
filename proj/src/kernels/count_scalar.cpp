#include "reluvol/kernels/count_kernel.hpp"

namespace reluvol::kernels {

std::uint64_t count_box_scalar(const HalfspaceSystem& sys, std::span<const std::int64_t> lo,
                               std::span<const std::int64_t> hi) {
  const std::size_t d = sys.dim;
  for (std::size_t i = 0; i < d; ++i)
    if (lo[i] > hi[i]) return 0;
  std::vector<std::int64_t> y(lo.begin(), lo.end());
  std::uint64_t count = 0;
  for (;;) {
    bool inside = true;
    for (std::size_t f = 0; f < sys.count && inside; ++f) {
      std::int64_t s = 0;
      const std::int64_t* a = sys.normals.data() + f * d;
      for (std::size_t i = 0; i < d; ++i) s += a[i] * y[i];
      inside = s <= sys.rhs[f];
    }
    if (inside) ++count;
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (y[i] < hi[i]) {
        ++y[i];
        break;
      }
      y[i] = lo[i];
      if (i == 0) return count;
    }
    if (d == 0) return count;
  }
}

}  // namespace reluvol::kernels
