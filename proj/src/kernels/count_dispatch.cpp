#include <cstdlib>
#include <cstring>

#include "reluvol/errors.hpp"
#include "reluvol/kernels/count_kernel.hpp"

namespace reluvol::kernels {

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(RELUVOL_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa selected_isa() {
  static const Isa isa = [] {
    const char* env = std::getenv("RELUVOL_ISA");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return avx2_available() ? Isa::avx2 : Isa::scalar;
  }();
  return isa;
}

#if !defined(RELUVOL_HAVE_AVX2)
std::uint64_t count_box_avx2(const HalfspaceSystem& sys, std::span<const std::int64_t> lo,
                             std::span<const std::int64_t> hi) {
  return count_box_scalar(sys, lo, hi);
}
#endif

std::uint64_t count_box(const HalfspaceSystem& sys, std::span<const std::int64_t> lo,
                        std::span<const std::int64_t> hi, Isa isa) {
  if (isa == Isa::avx2 && avx2_available()) return count_box_avx2(sys, lo, hi);
  return count_box_scalar(sys, lo, hi);
}

namespace {

constexpr unsigned long kEnumerationLimit = 1ul << 36;

BigInt count_box_bigint(const IntMat& normals, const IntVec& rhs, const IntVec& lo, const IntVec& hi) {
  const std::size_t d = lo.size();
  IntVec y = lo;
  BigInt count = 0;
  for (;;) {
    bool inside = true;
    for (std::size_t f = 0; f < normals.size() && inside; ++f) inside = dot(normals[f], y) <= rhs[f];
    if (inside) ++count;
    std::size_t i = d;
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

}  // namespace

BigInt count_box_exact(const IntMat& normals, const IntVec& rhs, const IntVec& lo, const IntVec& hi) {
  const std::size_t d = lo.size();
  BigInt cells = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (lo[i] > hi[i]) return 0;
    cells *= hi[i] - lo[i] + 1;
  }
  if (cells > kEnumerationLimit) throw PreconditionError("bounding box too large for lattice-point enumeration");

  const BigInt limit = BigInt(1) << 62;
  bool narrow = true;
  for (std::size_t f = 0; f < normals.size() && narrow; ++f) {
    BigInt bound = abs(rhs[f]);
    for (std::size_t i = 0; i < d; ++i) {
      BigInt m = std::max(BigInt(abs(lo[i])), BigInt(abs(hi[i]))) + 4;
      bound += abs(normals[f][i]) * m;
    }
    narrow = bound < limit;
  }
  if (!narrow) return count_box_bigint(normals, rhs, lo, hi);

  HalfspaceSystem sys;
  sys.dim = d;
  sys.count = normals.size();
  for (std::size_t f = 0; f < normals.size(); ++f) {
    for (const auto& a : normals[f]) sys.normals.push_back(a.get_si());
    sys.rhs.push_back(rhs[f].get_si());
  }
  std::vector<std::int64_t> l, h;
  for (std::size_t i = 0; i < d; ++i) {
    l.push_back(lo[i].get_si());
    h.push_back(hi[i].get_si());
  }
  const std::uint64_t c = count_box(sys, l, h, selected_isa());
  return BigInt(static_cast<unsigned long>(c));
}

}  // namespace reluvol::kernels
