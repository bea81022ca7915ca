#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace hcyclic;

TEST(PlantedInstance, StructureAndChains) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    PlantOptions po;
    po.h = 2 + trial % 4;
    po.block_sizes = random_block_sizes(rng, po.h, 20);
    po.allow_zero_eigenvalue = true;
    auto inst = random_planted_instance(rng, po);
    for (int pass = 0; pass < 2; ++pass) {
      const auto s = detect_cyclic_structure(inst.matrix, default_zero_tol(inst.matrix));
      EXPECT_EQ(s.h, po.h);
      EXPECT_LE(cyclic_pattern_violation(inst.matrix, inst.partition), 0.0);
      for (std::size_t b = 0; b < inst.plan.size(); ++b) {
        ASSERT_EQ(static_cast<int>(inst.right_chains[b].size()), po.h);
        for (int k = 0; k < po.h; ++k) {
          EXPECT_TRUE(verify_chain(inst.matrix, inst.right_chains[b][static_cast<std::size_t>(k)]).passed);
          EXPECT_TRUE(verify_chain(inst.matrix, inst.left_chains[b][static_cast<std::size_t>(k)]).passed);
        }
      }
      scramble_instance(inst, rng);
    }
  }
}

TEST(PlantedInstance, BlockSizesCoverRange) {
  std::mt19937_64 rng(2);
  const auto sizes = random_block_sizes(rng, 3, 24);
  ASSERT_EQ(sizes.size(), 3u);
  for (int s : sizes) {
    EXPECT_GE(s, 1);
    EXPECT_LE(s, 8);
  }
}

TEST(NonnegativeCyclic, IsIrreducibleWithRequestedIndex) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const int h = 2 + trial % 4;
    const auto inst = random_nonnegative_cyclic(rng, h, 1 + trial % 4);
    EXPECT_TRUE(is_nonnegative_irreducible(inst.matrix, 0.0));
    EXPECT_EQ(detect_cyclic_structure(inst.matrix, 0.0).h, h);
  }
}

TEST(RandomDigraph, StronglyConnected) {
  std::mt19937_64 rng(11);
  std::vector<int> seen(9, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_strongly_connected_digraph(rng, 1 + trial % 8);
    EXPECT_TRUE(is_strongly_connected(g));
    ++seen[static_cast<std::size_t>(index_of_imprimitivity(g))];
  }
  // Imprimitive graphs actually show up.
  EXPECT_GT(seen[2] + seen[3] + seen[4], 10);
}
