#include "cpa/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace cpa::kernels {

namespace {

const KernelSet kScalar{
    "scalar",
    detail::commutes_with_all_scalar,
    detail::compose_scalar,
    detail::conjugate_all_scalar,
    detail::respects_row_scalar,
    detail::displacement_scalar,
};

#if defined(CPA_HAVE_AVX2_KERNELS)
const KernelSet kAvx2{
    "avx2",
    detail::commutes_with_all_avx2,
    detail::compose_avx2,
    detail::conjugate_all_avx2,
    detail::respects_row_avx2,
    detail::displacement_avx2,
};
#endif

const KernelSet& select() {
  if (const char* forced = std::getenv("CPA_KERNELS");
      forced != nullptr && std::string_view(forced) == "scalar") {
    return kScalar;
  }
  if (const KernelSet* fast = avx2()) return *fast;
  return kScalar;
}

}  // namespace

const KernelSet& scalar() { return kScalar; }

const KernelSet* avx2() {
#if defined(CPA_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() {
  static const KernelSet& chosen = select();
  return chosen;
}

bool commutes_with_all(std::span<const ElementIndex> product, std::size_t n, ElementIndex x) {
  assert(product.size() == n * n && x < n);
  return active().commutes_with_all(product.data(), n, x);
}

void compose(std::span<const ElementIndex> outer, std::span<const ElementIndex> inner,
             std::span<ElementIndex> out) {
  assert(inner.size() == out.size());
  active().compose(outer.data(), inner.data(), out.data(), out.size());
}

void conjugate_all(std::span<const ElementIndex> product, std::size_t n, ElementIndex g,
                   ElementIndex g_inv, std::span<ElementIndex> out) {
  assert(product.size() == n * n && out.size() == n);
  active().conjugate_all(product.data(), n, g, g_inv, out.data());
}

bool respects_row(std::span<const ElementIndex> product, std::size_t n,
                  std::span<const ElementIndex> image, ElementIndex a) {
  assert(product.size() == n * n && image.size() == n);
  return active().respects_row(product.data(), n, image.data(), a);
}

void displacement(std::span<const ElementIndex> product, std::span<const ElementIndex> inverse,
                  std::span<const ElementIndex> image, std::span<ElementIndex> out) {
  const std::size_t n = inverse.size();
  assert(product.size() == n * n && image.size() == n && out.size() == n);
  active().displacement(product.data(), inverse.data(), n, image.data(), out.data());
}

}  // namespace cpa::kernels
