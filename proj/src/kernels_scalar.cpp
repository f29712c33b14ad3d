#include "kernels_impl.hpp"

namespace cpa::kernels::detail {

bool commutes_with_all_scalar(const ElementIndex* product, std::size_t n, ElementIndex x) {
  const ElementIndex* row = product + static_cast<std::size_t>(x) * n;
  for (std::size_t y = 0; y < n; ++y) {
    if (row[y] != product[y * n + x]) return false;
  }
  return true;
}

void compose_scalar(const ElementIndex* outer, const ElementIndex* inner, ElementIndex* out,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = outer[inner[i]];
}

void conjugate_all_scalar(const ElementIndex* product, std::size_t n, ElementIndex g,
                          ElementIndex g_inv, ElementIndex* out) {
  const ElementIndex* left = product + static_cast<std::size_t>(g_inv) * n;
  for (std::size_t x = 0; x < n; ++x) {
    out[x] = product[static_cast<std::size_t>(left[x]) * n + g];
  }
}

bool respects_row_scalar(const ElementIndex* product, std::size_t n, const ElementIndex* image,
                         ElementIndex a) {
  const ElementIndex* row = product + static_cast<std::size_t>(a) * n;
  const ElementIndex* image_row = product + static_cast<std::size_t>(image[a]) * n;
  for (std::size_t b = 0; b < n; ++b) {
    if (image[row[b]] != image_row[image[b]]) return false;
  }
  return true;
}

void displacement_scalar(const ElementIndex* product, const ElementIndex* inverse, std::size_t n,
                         const ElementIndex* image, ElementIndex* out) {
  for (std::size_t x = 0; x < n; ++x) {
    out[x] = product[static_cast<std::size_t>(inverse[x]) * n + image[x]];
  }
}

}  // namespace cpa::kernels::detail
