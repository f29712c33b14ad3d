#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cpa/kernels.hpp"
#include "support.hpp"

using namespace cpa;

namespace {

std::vector<GroupTable> sample_groups() {
  std::mt19937 rng(7);
  std::vector<GroupTable> out;
  out.push_back(GroupTable::cyclic(1));
  out.push_back(GroupTable::cyclic(7));
  out.push_back(support::relabeled(support::dihedral8(), rng));
  out.push_back(support::relabeled(GroupTable::direct_product(support::quaternion8(), GroupTable::cyclic(3)), rng));
  // Odd sizes exercise the scalar tail after the 8-wide blocks.
  out.push_back(support::relabeled(support::bundled("order81/sg81_09.pres").table, rng));
  out.push_back(support::relabeled(support::bundled("order243/sg243_28.pres").table, rng));
  out.push_back(support::relabeled(GroupTable::direct_product(support::dihedral8(), GroupTable::cyclic(5)), rng));
  return out;
}

std::vector<ElementIndex> random_permutation(std::size_t n, std::mt19937& rng) {
  std::vector<ElementIndex> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<ElementIndex>(i);
  std::shuffle(p.begin() + (n > 0 ? 1 : 0), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("active kernel set honours CPA_KERNELS") {
  const auto& k = kernels::active();
  CHECK((&k == &kernels::scalar() || &k == kernels::avx2()));
}

TEST_CASE("avx2 kernels agree with scalar kernels") {
  const kernels::KernelSet* fast = kernels::avx2();
  if (fast == nullptr) {
    MESSAGE("AVX2 unavailable; scalar path only");
    return;
  }
  const kernels::KernelSet& ref = kernels::scalar();
  std::mt19937 rng(2024);
  for (const auto& t : sample_groups()) {
    const std::size_t n = t.order();
    CAPTURE(n);
    const ElementIndex* prod = t.products().data();
    std::vector<ElementIndex> a(n), b(n);
    for (ElementIndex x = 0; x < n; ++x) {
      CHECK(ref.commutes_with_all(prod, n, x) == fast->commutes_with_all(prod, n, x));
      ref.conjugate_all(prod, n, x, t.inverse(x), a.data());
      fast->conjugate_all(prod, n, x, t.inverse(x), b.data());
      CHECK(a == b);
    }
    for (int trial = 0; trial < 20; ++trial) {
      const auto p = random_permutation(n, rng);
      const auto q = random_permutation(n, rng);
      ref.compose(p.data(), q.data(), a.data(), n);
      fast->compose(p.data(), q.data(), b.data(), n);
      CHECK(a == b);
      ref.displacement(prod, t.inverses().data(), n, p.data(), a.data());
      fast->displacement(prod, t.inverses().data(), n, p.data(), b.data());
      CHECK(a == b);
      for (ElementIndex x = 0; x < n; ++x) {
        CHECK(ref.respects_row(prod, n, p.data(), x) == fast->respects_row(prod, n, p.data(), x));
      }
    }
    // Genuine homomorphisms must pass every row on both paths.
    for (ElementIndex g = 0; g < n; ++g) {
      ref.conjugate_all(prod, n, g, t.inverse(g), a.data());
      for (ElementIndex x = 0; x < n; ++x) {
        REQUIRE(ref.respects_row(prod, n, a.data(), x));
        REQUIRE(fast->respects_row(prod, n, a.data(), x));
      }
    }
  }
}

TEST_CASE("scalar kernels match their definitions") {
  const GroupTable t = support::dihedral8();
  const auto& k = kernels::scalar();
  const std::size_t n = t.order();
  std::vector<ElementIndex> out(n);
  for (ElementIndex g = 0; g < n; ++g) {
    k.conjugate_all(t.products().data(), n, g, t.inverse(g), out.data());
    for (ElementIndex x = 0; x < n; ++x) CHECK(out[x] == t(t(t.inverse(g), x), g));
  }
  std::size_t central = 0;
  for (ElementIndex x = 0; x < n; ++x) central += k.commutes_with_all(t.products().data(), n, x);
  CHECK(central == 2);
}
