#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace hcyclic;
using hcyclic::testing::cyclic6;
using hcyclic::testing::max_diff;

namespace {

const OrderedPartition kCyclic6Partition = OrderedPartition::consecutive({2, 2, 2});

// Eigenvector matrix of the worked example, columns for 1, w, w^2, -1/3,
// -w/3, -w^2/3.
ComplexMatrix cyclic6_z() {
  const RootsOfUnity r(3);
  const Complex w = r.omega();
  const Complex w2 = r.power(2);
  return hcyclic::testing::from_rows({{1, 1, 1, 1, 1, 1},
                                      {1, 1, 1, -1, -1, -1},
                                      {1, w, w2, 1, w, w2},
                                      {1, w, w2, -1, -w, -w2},
                                      {1, w2, w, 1, w2, w},
                                      {1, w2, w, -1, -w2, -w}});
}

JordanChain right_chain(Complex lambda, std::vector<ComplexVector> v) {
  return JordanChain{ChainSide::kRight, lambda, std::move(v)};
}

}  // namespace

TEST(Alpha, Examples) {
  EXPECT_EQ(alpha(1, 1, 3), 0);
  EXPECT_EQ(alpha(2, 1, 3), 1);
  EXPECT_EQ(alpha(1, 2, 3), 2);
  EXPECT_THROW(alpha(1, 1, 1), Error);
}

TEST(Alpha, IdentitiesHoldExhaustively) {
  for (int h = 2; h <= 8; ++h) {
    for (int i = -2 * h; i <= 2 * h; ++i) {
      for (int j = -2 * h; j <= 2 * h; ++j) {
        const int a = alpha(i, j, h);
        ASSERT_GE(a, 0);
        ASSERT_LT(a, h);
        ASSERT_EQ(a, alpha(i + 1, j + 1, h));
        ASSERT_EQ(alpha(i + 1, j, h), (a + 1) % h);
        ASSERT_EQ(alpha(i, j - 1, h), (a + 1) % h);
        for (int l = -2 * h; l <= 2 * h; ++l) ASSERT_EQ(a, (alpha(i, l, h) + alpha(l, j, h)) % h);
      }
    }
  }
}

TEST(Cyclic6, DisplayedSimilarityHolds) {
  const ComplexMatrix z = cyclic6_z();
  const RootsOfUnity r(3);
  ComplexMatrix d = ComplexMatrix::Zero(6, 6);
  d.diagonal() << 1.0, r.omega(), r.power(2), -1.0 / 3.0, -r.omega() / 3.0, -r.power(2) / 3.0;
  EXPECT_LT(max_diff(ComplexMatrix(z * d * z.inverse()), cyclic6()), 1e-12);
}

TEST(RotateRightChain, PerronChainOfCyclic6) {
  const ComplexMatrix z = cyclic6_z();
  const auto perron = right_chain(1.0, {z.col(0)});
  const auto res = verify_chain(cyclic6(), perron, 1e-12);
  EXPECT_TRUE(res.passed);
  EXPECT_LE(res.max_residual, 1e-12);

  const RootsOfUnity r(3);
  for (int k = 0; k < 3; ++k) {
    const auto rotated = rotate_right_chain(perron, k, kCyclic6Partition);
    EXPECT_LT(std::abs(rotated.eigenvalue - r.power(k)), 1e-15);
    EXPECT_LT(max_diff(rotated.vectors[0], ComplexVector(z.col(k))), 1e-15) << "k=" << k;
    EXPECT_TRUE(verify_chain(cyclic6(), rotated, 1e-12).passed);
  }
  // Second orbit: column 4 rotates onto columns 5 and 6.
  const auto second = right_chain(-1.0 / 3.0, {z.col(3)});
  for (int k = 0; k < 3; ++k) {
    const auto rotated = rotate_right_chain(second, k, kCyclic6Partition);
    EXPECT_LT(max_diff(rotated.vectors[0], ComplexVector(z.col(3 + k))), 1e-15) << "k=" << k;
  }
}

TEST(RotateRightChain, ZeroIsExactIdentity) {
  std::mt19937_64 rng(1);
  const ComplexVector v = random_well_conditioned(rng, 6).col(0);
  const auto chain = right_chain(Complex(0.3, 0.1), {v, 2.0 * v});
  const auto same = rotate_right_chain(chain, 0, kCyclic6Partition);
  EXPECT_EQ(same.eigenvalue, chain.eigenvalue);
  ASSERT_EQ(same.length(), 2);
  EXPECT_EQ(same.vectors[0], chain.vectors[0]);
  EXPECT_EQ(same.vectors[1], chain.vectors[1]);
}

TEST(RotateRightChain, Errors) {
  const auto chain = right_chain(1.0, {ComplexVector::Ones(6)});
  EXPECT_THROW(rotate_right_chain(chain, 3, kCyclic6Partition), Error);
  EXPECT_THROW(rotate_right_chain(chain, -1, kCyclic6Partition), Error);
  EXPECT_THROW(rotate_right_chain(right_chain(1.0, {ComplexVector::Ones(5)}), 1, kCyclic6Partition), Error);
  const OrderedPartition scattered({{0, 2}, {1, 3}, {4, 5}});
  EXPECT_THROW(rotate_right_chain(chain, 1, scattered), Error);
  JordanChain left = chain;
  left.side = ChainSide::kLeft;
  EXPECT_THROW(rotate_right_chain(left, 1, kCyclic6Partition), Error);
}

// Length-2 chain on a 2-cyclic 6x6 matrix built as Z J Z^{-1}.
TEST(RotateRightChain, PlantedLengthTwoChain) {
  std::mt19937_64 rng(17);
  PlantOptions po;
  po.h = 2;
  po.block_size = 3;
  po.max_chain_length = 2;
  for (int attempt = 0; attempt < 50; ++attempt) {
    const auto inst = random_planted_instance(rng, po);
    for (std::size_t b = 0; b < inst.plan.size(); ++b) {
      if (inst.plan[b].length != 2) continue;
      const auto& base = inst.right_chains[b][0];
      ASSERT_TRUE(verify_chain(inst.matrix, base).passed);
      const auto rotated = rotate_right_chain(base, 1, inst.partition);
      const auto res = verify_chain(inst.matrix, rotated, 1e-9 * inf_norm(inst.matrix));
      EXPECT_TRUE(res.passed) << res.max_residual;
      EXPECT_LT(std::abs(rotated.eigenvalue + base.eigenvalue), 1e-15);
      // Same chain as the independent plant, up to one scalar.
      EXPECT_LT(hcyclic::testing::chain_gauge_distance(rotated, inst.right_chains[b][1]), 1e-10);
      return;
    }
  }
  FAIL() << "no length-2 chain was planted";
}

TEST(RotateLeftChain, PerronRowOfCyclic6) {
  const ComplexMatrix z_inv = cyclic6_z().inverse();
  const JordanChain left{ChainSide::kLeft, 1.0, {z_inv.row(0).transpose()}};
  EXPECT_LE(verify_chain(cyclic6(), left, 1e-12).max_residual, 1e-12);
  const RootsOfUnity r(3);
  for (int k = 0; k < 3; ++k) {
    const auto rotated = rotate_left_chain(left, k, kCyclic6Partition);
    const auto res = verify_chain(cyclic6(), rotated, 1e-10);
    EXPECT_TRUE(res.passed) << "k=" << k << " residual " << res.max_residual;
    // Lines up with row k of Z^{-1}.
    EXPECT_LT(max_diff(rotated.vectors[0], ComplexVector(z_inv.row(k).transpose())), 1e-14);
  }
}

TEST(RotateLeftChain, SignsAlternateForTwoCycles) {
  const OrderedPartition p = OrderedPartition::consecutive({2, 1});
  ComplexVector y(3);
  y << 1.0, 2.0, 3.0;
  const JordanChain left{ChainSide::kLeft, 1.0, {y}};
  const auto rotated = rotate_left_chain(left, 1, p);
  ComplexVector want(3);
  want << 1.0, 2.0, -3.0;
  EXPECT_LT(max_diff(rotated.vectors[0], want), 1e-15);
  EXPECT_EQ(rotate_left_chain(left, 0, p).vectors[0], y);
}

TEST(VerifyChain, Examples) {
  const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  const auto e1 = right_chain(1.0, {ComplexVector::Unit(3, 0)});
  const auto res = verify_chain(i3, e1, 0.0);
  EXPECT_EQ(res.max_residual, 0.0);
  EXPECT_TRUE(res.passed);

  ComplexVector bad = cyclic6_z().col(0);
  bad(1) = 2.0;
  const auto broken = verify_chain(cyclic6(), right_chain(1.0, {bad}), 1e-9);
  EXPECT_FALSE(broken.passed);
  EXPECT_GT(broken.max_residual, 0.1);

  EXPECT_THROW(verify_chain(i3, right_chain(1.0, {ComplexVector::Ones(4)}), 1e-9), Error);
}

TEST(VerifyChain, LinkResidualsOfJordanBlock) {
  const ComplexMatrix j = jordan_block(5.0, 2);
  const auto chain = right_chain(5.0, {ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 1)});
  const auto res = verify_chain(j, chain, 1e-15);
  ASSERT_EQ(res.link_residuals.size(), 2u);
  EXPECT_EQ(res.max_residual, 0.0);
  // Reversed order breaks the second link.
  const auto wrong = right_chain(5.0, {ComplexVector::Unit(2, 1), ComplexVector::Unit(2, 0)});
  EXPECT_FALSE(verify_chain(j, wrong, 1e-9).passed);
}

TEST(RotateAll, PerronOrbitOfCyclic6) {
  const auto orbit = rotate_all(right_chain(1.0, {ComplexVector::Ones(6)}), kCyclic6Partition);
  ASSERT_EQ(orbit.right_chains.size(), 3u);
  EXPECT_EQ(orbit.h, 3);
  EXPECT_EQ(orbit.chain_length, 1);
  const ComplexMatrix z = cyclic6_z();
  for (int k = 0; k < 3; ++k) {
    EXPECT_LT(hcyclic::testing::chain_gauge_distance(orbit.right_chains[static_cast<std::size_t>(k)],
                                                     right_chain(0.0, {z.col(k)})),
              1e-14);
    EXPECT_TRUE(verify_chain(cyclic6(), orbit.right_chains[static_cast<std::size_t>(k)]).passed);
  }
}

TEST(RotateAll, ZeroEigenvalueChainsOfSingularMatrix) {
  // 2-cyclic, block (1,2) is a rank-one 2x2 matrix, so A is singular.
  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a.block(0, 2, 2, 2) << 1, 1, 1, 1;
  a.block(2, 0, 2, 2) << 1, 2, 3, 4;
  const OrderedPartition p = OrderedPartition::consecutive({2, 2});
  ComplexVector x(4);
  x << 0, 0, 1, -1;
  const auto zero = right_chain(0.0, {x});
  ASSERT_TRUE(verify_chain(a, zero, 1e-14).passed);
  const auto orbit = rotate_all(zero, p);
  for (const auto& c : orbit.right_chains) {
    EXPECT_EQ(c.eigenvalue, Complex(0.0));
    EXPECT_TRUE(verify_chain(a, c, 1e-14).passed);
  }
}

TEST(RotateAll, TwoCyclicGivesOppositePair) {
  const ComplexMatrix k2 = cycle_matrix(2);
  const auto orbit = rotate_all(right_chain(1.0, {ComplexVector::Ones(2)}), OrderedPartition::consecutive({1, 1}));
  EXPECT_LT(std::abs(orbit.right_chains[1].eigenvalue + 1.0), 1e-15);
  EXPECT_TRUE(verify_chain(k2, orbit.right_chains[1], 1e-14).passed);
}

TEST(ChainRotation, PlantedSuiteWithComposition) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> pick_h(2, 5);
    PlantOptions po;
    po.h = pick_h(rng);
    po.block_sizes = random_block_sizes(rng, po.h, 24);
    po.allow_zero_eigenvalue = true;
    const auto inst = random_planted_instance(rng, po);
    const double tol = 1e-9 * inf_norm(inst.matrix);
    for (std::size_t b = 0; b < inst.plan.size(); ++b) {
      for (const auto* side : {&inst.right_chains, &inst.left_chains}) {
        const auto& base = (*side)[b][0];
        for (int k = 0; k < po.h; ++k) {
          const auto rotated = rotate_chain(base, k, inst.partition);
          EXPECT_LE(verify_chain(inst.matrix, rotated, tol).max_residual, tol);
          EXPECT_LT(hcyclic::testing::chain_gauge_distance(rotated, (*side)[b][static_cast<std::size_t>(k)]), 1e-9);
          for (int k2 = 0; k2 < po.h; ++k2) {
            const auto twice = rotate_chain(rotated, k2, inst.partition);
            const auto once = rotate_chain(base, (k + k2) % po.h, inst.partition);
            for (int j = 0; j < base.length(); ++j) {
              EXPECT_LT(max_diff(twice.vectors[static_cast<std::size_t>(j)], once.vectors[static_cast<std::size_t>(j)]),
                        1e-12);
            }
          }
        }
      }
    }
  }
}

// Jordan block sizes repeat around each orbit, and every orbit member is
// in the computed spectrum.
TEST(ChainRotation, OrbitClosureOfSpectrum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> pick_h(2, 4);
    PlantOptions po;
    po.h = pick_h(rng);
    po.block_size = 2;
    po.max_chain_length = 1;
    const auto inst = random_planted_instance(rng, po);
    const auto spectrum = eigenvalues(inst.matrix);
    const RootsOfUnity r(po.h);
    for (const auto& lambda : spectrum) {
      for (int k = 1; k < po.h; ++k) {
        double best = 1e300;
        for (const auto& mu : spectrum) best = std::min(best, std::abs(mu - lambda * r.power(k)));
        EXPECT_LE(best, 1e-8 * inf_norm(inst.matrix));
      }
    }
    for (std::size_t b = 0; b < inst.plan.size(); ++b) {
      for (const auto& chain : inst.right_chains[b]) EXPECT_EQ(chain.length(), inst.plan[b].length);
    }
  }
}
