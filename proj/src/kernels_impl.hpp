#pragma once

#include <cstddef>

#include "cpa/types.hpp"

namespace cpa::kernels::detail {

bool commutes_with_all_scalar(const ElementIndex* product, std::size_t n, ElementIndex x);
void compose_scalar(const ElementIndex* outer, const ElementIndex* inner, ElementIndex* out,
                    std::size_t n);
void conjugate_all_scalar(const ElementIndex* product, std::size_t n, ElementIndex g,
                          ElementIndex g_inv, ElementIndex* out);
bool respects_row_scalar(const ElementIndex* product, std::size_t n, const ElementIndex* image,
                         ElementIndex a);
void displacement_scalar(const ElementIndex* product, const ElementIndex* inverse, std::size_t n,
                         const ElementIndex* image, ElementIndex* out);

#if defined(__x86_64__) || defined(_M_X64)
#define CPA_HAVE_AVX2_KERNELS 1
bool commutes_with_all_avx2(const ElementIndex* product, std::size_t n, ElementIndex x);
void compose_avx2(const ElementIndex* outer, const ElementIndex* inner, ElementIndex* out,
                  std::size_t n);
void conjugate_all_avx2(const ElementIndex* product, std::size_t n, ElementIndex g,
                        ElementIndex g_inv, ElementIndex* out);
bool respects_row_avx2(const ElementIndex* product, std::size_t n, const ElementIndex* image,
                       ElementIndex a);
void displacement_avx2(const ElementIndex* product, const ElementIndex* inverse, std::size_t n,
                       const ElementIndex* image, ElementIndex* out);
#endif

}  // namespace cpa::kernels::detail
