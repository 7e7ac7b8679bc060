// Compiled with -mavx2; only reached through count_box() after a CPUID check.
#include "reluvol/kernels/count_kernel.hpp"

#include <immintrin.h>

#include <bit>

namespace reluvol::kernels {

std::uint64_t count_box_avx2(const HalfspaceSystem& sys, std::span<const std::int64_t> lo,
                             std::span<const std::int64_t> hi) {
  const std::size_t d = sys.dim;
  if (d == 0) return count_box_scalar(sys, lo, hi);
  for (std::size_t i = 0; i < d; ++i)
    if (lo[i] > hi[i]) return 0;

  // Enumerate the prefix y_0..y_{d-2}; the last coordinate runs in lanes of 4.
  const std::size_t last = d - 1;
  const std::int64_t y0 = lo[last];
  const std::size_t len = static_cast<std::size_t>(hi[last] - lo[last] + 1);
  const std::size_t chunks = (len + 3) / 4;
  std::vector<std::int64_t> slack(sys.count);

  const std::size_t tail = len % 4;
  const int tail_mask = tail == 0 ? 0xF : (1 << tail) - 1;

  std::vector<std::int64_t> y(lo.begin(), lo.begin() + static_cast<std::ptrdiff_t>(last));
  std::uint64_t count = 0;
  for (;;) {
    for (std::size_t f = 0; f < sys.count; ++f) {
      const std::int64_t* a = sys.normals.data() + f * d;
      std::int64_t s = sys.rhs[f];
      for (std::size_t i = 0; i < last; ++i) s -= a[i] * y[i];
      slack[f] = s;
    }
    for (std::size_t k = 0; k < chunks; ++k) {
      const std::int64_t base = y0 + static_cast<std::int64_t>(4 * k);
      __m256i violated = _mm256_setzero_si256();
      for (std::size_t f = 0; f < sys.count; ++f) {
        const std::int64_t c = sys.normals[f * d + last];
        // c * (base + lane) without a 64-bit vector multiply: lane is 0..3.
        const __m256i v = _mm256_add_epi64(_mm256_set1_epi64x(c * base), _mm256_set_epi64x(3 * c, 2 * c, c, 0));
        violated = _mm256_or_si256(violated, _mm256_cmpgt_epi64(v, _mm256_set1_epi64x(slack[f])));
      }
      const int bad = _mm256_movemask_pd(_mm256_castsi256_pd(violated));
      const int ok = ~bad & (k + 1 == chunks ? tail_mask : 0xF);
      count += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(ok)));
    }

    std::size_t i = last;
    bool done = true;
    while (i > 0) {
      --i;
      if (y[i] < hi[i]) {
        ++y[i];
        done = false;
        break;
      }
      y[i] = lo[i];
    }
    if (done) return count;
  }
}

}  // namespace reluvol::kernels
