#pragma once

// Data-parallel inner loops over dense multiplication tables.
//
// Every kernel has a portable scalar reference implementation. On x86-64
// an AVX2 variant (gather + compare) is compiled alongside it and chosen at
// runtime when the CPU supports it. Setting CPA_KERNELS=scalar in the
// environment forces the reference path.

#include <cstddef>
#include <span>

#include "cpa/types.hpp"

namespace cpa::kernels {

struct KernelSet {
  const char* name;

  /// product[x*n + y] == product[y*n + x] for every y.
  bool (*commutes_with_all)(const ElementIndex* product, std::size_t n, ElementIndex x);

  /// out[i] = outer[inner[i]] for i < n.
  void (*compose)(const ElementIndex* outer, const ElementIndex* inner, ElementIndex* out,
                  std::size_t n);

  /// out[x] = g_inv * x * g for every x (conjugation x -> x^g).
  void (*conjugate_all)(const ElementIndex* product, std::size_t n, ElementIndex g,
                        ElementIndex g_inv, ElementIndex* out);

  /// image[a*b] == image[a]*image[b] for every b, with a fixed.
  bool (*respects_row)(const ElementIndex* product, std::size_t n, const ElementIndex* image,
                       ElementIndex a);

  /// out[x] = x^-1 * image[x] for every x.
  void (*displacement)(const ElementIndex* product, const ElementIndex* inverse, std::size_t n,
                       const ElementIndex* image, ElementIndex* out);
};

const KernelSet& scalar();

/// AVX2 kernels, or nullptr when the build or the CPU lacks AVX2.
const KernelSet* avx2();

/// Kernels selected for this process (AVX2 when available).
const KernelSet& active();

// Convenience wrappers over active().

bool commutes_with_all(std::span<const ElementIndex> product, std::size_t n, ElementIndex x);
void compose(std::span<const ElementIndex> outer, std::span<const ElementIndex> inner,
             std::span<ElementIndex> out);
void conjugate_all(std::span<const ElementIndex> product, std::size_t n, ElementIndex g,
                   ElementIndex g_inv, std::span<ElementIndex> out);
bool respects_row(std::span<const ElementIndex> product, std::size_t n,
                  std::span<const ElementIndex> image, ElementIndex a);
void displacement(std::span<const ElementIndex> product, std::span<const ElementIndex> inverse,
                  std::span<const ElementIndex> image, std::span<ElementIndex> out);

}  // namespace cpa::kernels
