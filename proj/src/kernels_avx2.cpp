#include "kernels_impl.hpp"

#if defined(CPA_HAVE_AVX2_KERNELS)

#include <immintrin.h>

// Table entries and flat offsets fit in int32 because GroupTable caps the
// order well below 46341.

namespace cpa::kernels::detail {

namespace {

#define CPA_AVX2 __attribute__((target("avx2")))

CPA_AVX2 inline __m256i load8(const ElementIndex* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

CPA_AVX2 inline void store8(ElementIndex* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

CPA_AVX2 inline __m256i gather(const ElementIndex* base, __m256i idx) {
  return _mm256_i32gather_epi32(reinterpret_cast<const int*>(base), idx, 4);
}

CPA_AVX2 inline bool all_equal(__m256i a, __m256i b) {
  return _mm256_movemask_epi8(_mm256_cmpeq_epi32(a, b)) == -1;
}

}  // namespace

CPA_AVX2 bool commutes_with_all_avx2(const ElementIndex* product, std::size_t n, ElementIndex x) {
  const ElementIndex* row = product + static_cast<std::size_t>(x) * n;
  const int stride = static_cast<int>(n);
  const __m256i lane_offsets =
      _mm256_mullo_epi32(_mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7), _mm256_set1_epi32(stride));
  const __m256i step = _mm256_set1_epi32(8 * stride);
  __m256i column_idx = _mm256_add_epi32(lane_offsets, _mm256_set1_epi32(static_cast<int>(x)));
  std::size_t y = 0;
  for (; y + 8 <= n; y += 8) {
    if (!all_equal(load8(row + y), gather(product, column_idx))) return false;
    column_idx = _mm256_add_epi32(column_idx, step);
  }
  for (; y < n; ++y) {
    if (row[y] != product[y * n + x]) return false;
  }
  return true;
}

CPA_AVX2 void compose_avx2(const ElementIndex* outer, const ElementIndex* inner, ElementIndex* out,
                           std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) store8(out + i, gather(outer, load8(inner + i)));
  for (; i < n; ++i) out[i] = outer[inner[i]];
}

CPA_AVX2 void conjugate_all_avx2(const ElementIndex* product, std::size_t n, ElementIndex g,
                                 ElementIndex g_inv, ElementIndex* out) {
  const ElementIndex* left = product + static_cast<std::size_t>(g_inv) * n;
  const __m256i stride = _mm256_set1_epi32(static_cast<int>(n));
  const __m256i column = _mm256_set1_epi32(static_cast<int>(g));
  std::size_t x = 0;
  for (; x + 8 <= n; x += 8) {
    __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(load8(left + x), stride), column);
    store8(out + x, gather(product, idx));
  }
  for (; x < n; ++x) out[x] = product[static_cast<std::size_t>(left[x]) * n + g];
}

CPA_AVX2 bool respects_row_avx2(const ElementIndex* product, std::size_t n,
                                const ElementIndex* image, ElementIndex a) {
  const ElementIndex* row = product + static_cast<std::size_t>(a) * n;
  const ElementIndex* image_row = product + static_cast<std::size_t>(image[a]) * n;
  std::size_t b = 0;
  for (; b + 8 <= n; b += 8) {
    __m256i lhs = gather(image, load8(row + b));
    __m256i rhs = gather(image_row, load8(image + b));
    if (!all_equal(lhs, rhs)) return false;
  }
  for (; b < n; ++b) {
    if (image[row[b]] != image_row[image[b]]) return false;
  }
  return true;
}

CPA_AVX2 void displacement_avx2(const ElementIndex* product, const ElementIndex* inverse,
                                std::size_t n, const ElementIndex* image, ElementIndex* out) {
  const __m256i stride = _mm256_set1_epi32(static_cast<int>(n));
  std::size_t x = 0;
  for (; x + 8 <= n; x += 8) {
    __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(load8(inverse + x), stride), load8(image + x));
    store8(out + x, gather(product, idx));
  }
  for (; x < n; ++x) out[x] = product[static_cast<std::size_t>(inverse[x]) * n + image[x]];
}

#undef CPA_AVX2

}  // namespace cpa::kernels::detail

#endif
