#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pasplit/params.hpp"
#include "pasplit/random.hpp"
#include "pasplit/rational.hpp"
#include "pasplit/samplers.hpp"
#include "pasplit/stats.hpp"

namespace pasplit {
namespace {

TEST(RandomStreamTest, SameKeysSameSequence) {
  RandomStream a(42, 3);
  RandomStream b(42, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(RandomStreamTest, DifferentKeysDiffer) {
  RandomStream a(42, 3);
  RandomStream b(42, 4);
  RandomStream c(43, 3);
  int same_b = 0;
  int same_c = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    same_b += x == b();
    same_c += x == c();
  }
  EXPECT_EQ(same_b, 0);
  EXPECT_EQ(same_c, 0);
}

TEST(RandomStreamTest, UniformAndIndexRanges) {
  RandomStream rng(1, 0);
  Moments m;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    m.add(u);
    ASSERT_LT(rng.index(7), 7u);
  }
  EXPECT_NEAR(m.mean(), 0.5, 4 * m.stderr_of_mean());
}

TEST(RandomStreamTest, SubstreamIsDeterministicAndDistinct) {
  const RandomStream base(5, 9);
  RandomStream s1 = base.substream(1);
  RandomStream s1b = base.substream(1);
  RandomStream s2 = base.substream(2);
  EXPECT_EQ(s1(), s1b());
  EXPECT_NE(s1(), s2());
}

TEST(GrowthParamsTest, Conversions) {
  const auto p = GrowthParams::make(1, 1);
  EXPECT_DOUBLE_EQ(p.alpha(), 0.5);
  EXPECT_DOUBLE_EQ(p.theta(), 0.5);
  EXPECT_DOUBLE_EQ(p.gamma(), 0.5);
  EXPECT_FALSE(p.m().has_value());

  const auto q = GrowthParams::make(-1, 3);
  ASSERT_TRUE(q.m().has_value());
  EXPECT_EQ(*q.m(), 3);
  EXPECT_DOUBLE_EQ(q.alpha(), -0.5);
  EXPECT_DOUBLE_EQ(q.theta(), 1.5);
  const Gem g = q.gem();
  EXPECT_EQ(g.m, 3);

  const auto r = GrowthParams::from_alpha_theta(0.5, 0.5);
  EXPECT_DOUBLE_EQ(r.chi(), 0.5);
  EXPECT_DOUBLE_EQ(r.rho(), 0.5);
}

TEST(GrowthParamsTest, RejectsInvalid) {
  EXPECT_THROW(GrowthParams::make(0, 0), std::invalid_argument);
  EXPECT_THROW(GrowthParams::make(1, -1), std::invalid_argument);
  EXPECT_THROW(GrowthParams::make(-1, 1), std::invalid_argument);  // chi + rho = 0
  EXPECT_THROW(GrowthParams::make(-1, 1.5), std::invalid_argument);
  EXPECT_NO_THROW(GrowthParams::make(-0.5, 1.0));
  EXPECT_THROW(GrowthParams::from_alpha_theta(0.5, 0.6), std::invalid_argument);
}

TEST(SplitSpecTest, Validation) {
  EXPECT_THROW(Gem::make(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(Gem::make(0.5, -0.6), std::invalid_argument);
  EXPECT_THROW(Gem::make(-1.0, 2.5), std::invalid_argument);
  EXPECT_EQ(Gem::make(-0.5, 1.5).m, 3);
  EXPECT_THROW(DirichletSym::make(1), std::invalid_argument);
  EXPECT_DOUBLE_EQ(DirichletSym::make(3).a, 0.5);
  EXPECT_THROW(Explicit::make({0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(Explicit::make({1.5, -0.5}), std::invalid_argument);
  EXPECT_NO_THROW(Explicit::make({0.25, 0.75}));
}

TEST(RationalTest, RoundTrips) {
  EXPECT_EQ(to_string(to_rational(0.5)), "1/2");
  EXPECT_EQ(to_string(to_rational(1.0 / 3.0)), "1/3");
  EXPECT_EQ(to_string(to_rational(-2.0)), "-2");
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1"), Rational(-1));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_DOUBLE_EQ(to_double(Rational(2, 3)), 2.0 / 3.0);
}

TEST(BetaSampleTest, DegenerateEndpoints) {
  RandomStream rng(3, 0);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(beta_sample(0, 1, rng), 0.0);
    EXPECT_EQ(beta_sample(2, 0, rng), 1.0);
  }
  EXPECT_THROW(beta_sample(0, 0, rng), std::invalid_argument);
  EXPECT_THROW(beta_sample(-1, 1, rng), std::invalid_argument);
}

TEST(BetaSampleTest, PowerLawCdf) {
  for (double gamma : {0.5, 1.0, 1.0 / 3.0, 2.0}) {
    RandomStream rng(4, static_cast<std::uint64_t>(gamma * 1000));
    std::vector<double> xs(10000);
    for (auto& x : xs) x = beta_sample(gamma, 1.0, rng);
    const auto ks = ks_test(xs, [gamma](double x) { return std::pow(std::clamp(x, 0.0, 1.0), gamma); });
    EXPECT_TRUE(ks.pass) << "gamma " << gamma << " D " << ks.distance;
  }
}

TEST(BetaSampleTest, GeneralShapeAgainstBoostCdf) {
  RandomStream rng(4, 99);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = beta_sample(0.5, 1.5, rng);
  EXPECT_TRUE(ks_test(xs, [](double x) { return beta_cdf(0.5, 1.5, x); }).pass);
}

TEST(StickExtendTest, UniformSticksForGem01) {
  const Gem g = Gem::make(0, 1);
  RandomStream rng(5, 0);
  std::vector<double> z1, z3;
  for (int i = 0; i < 10000; ++i) {
    StickState s;
    for (int k = 0; k < 3; ++k) stick_extend(s, g, rng);
    z1.push_back(s.z_values[0]);
    z3.push_back(s.z_values[2]);
    EXPECT_NEAR(s.realized_mass() + s.remaining_mass, 1.0, kMassTolerance);
  }
  auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  EXPECT_TRUE(ks_test(z1, uniform_cdf).pass);
  EXPECT_TRUE(ks_test(z3, uniform_cdf).pass);
}

TEST(StickExtendTest, BinarySearchTreeCaseExhaustsAfterTwo) {
  const Gem g = Gem::make(-1, 2);
  RandomStream rng(5, 1);
  std::vector<double> z1;
  for (int i = 0; i < 10000; ++i) {
    StickState s;
    stick_extend(s, g, rng);
    EXPECT_FALSE(s.exhausted);
    stick_extend(s, g, rng);
    EXPECT_EQ(s.z_values[1], 1.0);
    EXPECT_TRUE(s.exhausted);
    EXPECT_EQ(s.remaining_mass, 0.0);
    EXPECT_THROW(stick_extend(s, g, rng), std::logic_error);
    z1.push_back(s.z_values[0]);
  }
  EXPECT_TRUE(ks_test(z1, [](double x) { return x * x; }).pass);
}

TEST(StickExtendTest, HalfHalfShapes) {
  const Gem g = Gem::make(0.5, 0.5);
  RandomStream rng(5, 2);
  std::vector<double> z1, z2;
  for (int i = 0; i < 10000; ++i) {
    StickState s;
    stick_extend(s, g, rng);
    stick_extend(s, g, rng);
    z1.push_back(s.z_values[0]);
    z2.push_back(s.z_values[1]);
  }
  EXPECT_TRUE(ks_test(z1, [](double x) { return beta_cdf(0.5, 1.0, x); }).pass);
  EXPECT_TRUE(ks_test(z2, [](double x) { return beta_cdf(0.5, 1.5, x); }).pass);
}

TEST(StickExtendTest, NegativeAlphaHasExactlyMSticks) {
  const Gem g = Gem::make(-0.5, 2.0);  // m = 4
  RandomStream rng(5, 3);
  for (int i = 0; i < 1000; ++i) {
    StickState s;
    while (!s.exhausted) stick_extend(s, g, rng);
    ASSERT_EQ(s.size(), 4u);
    for (double p : s.prefix_probs) EXPECT_GT(p, 0.0);
    EXPECT_NEAR(s.realized_mass(), 1.0, kMassTolerance);
  }
}

TEST(StickExtendTest, MassConservedAndRemainingNonincreasing) {
  const Gem g = Gem::make(0.7, 0.3);
  RandomStream rng(5, 4);
  StickState s;
  double last = 1.0;
  for (int k = 0; k < 5000; ++k) {
    stick_extend(s, g, rng);
    ASSERT_LE(s.remaining_mass, last);
    last = s.remaining_mass;
    ASSERT_NEAR(s.realized_mass() + s.remaining_mass, 1.0, kMassTolerance);
  }
}

TEST(DirichletTest, UniformCaseMean) {
  RandomStream rng(6, 0);
  Moments m;
  for (int i = 0; i < 10000; ++i) {
    const auto v = dirichlet_sample(2, 1.0, rng);
    EXPECT_NEAR(v[0] + v[1], 1.0, 1e-12);
    m.add(v[0]);
  }
  EXPECT_NEAR(m.mean(), 0.5, 3 * m.stderr_of_mean());
}

TEST(DirichletTest, MarginalIsBeta) {
  RandomStream rng(6, 1);
  std::vector<double> first, third;
  for (int i = 0; i < 10000; ++i) {
    const auto v = dirichlet_sample(3, 0.5, rng);
    first.push_back(v[0]);
    third.push_back(v[2]);
  }
  auto cdf = [](double x) { return beta_cdf(0.5, 1.0, x); };
  EXPECT_TRUE(ks_test(first, cdf).pass);
  EXPECT_TRUE(ks_test(third, cdf).pass);
}

TEST(DirichletTest, SumsToOneAndValidates) {
  RandomStream rng(6, 2);
  for (int m = 2; m <= 7; ++m) {
    for (double a : {0.1, 0.5, 1.0, 3.0}) {
      const auto v = dirichlet_sample(m, a, rng);
      ASSERT_EQ(v.size(), static_cast<std::size_t>(m));
      EXPECT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, 1e-12);
    }
  }
  EXPECT_THROW(dirichlet_sample(1, 1.0, rng), std::invalid_argument);
  EXPECT_THROW(dirichlet_sample(3, 0.0, rng), std::invalid_argument);
}

TEST(SizeBiasedIndexTest, ExplicitVectors) {
  RandomStream rng(7, 0);
  const std::vector<double> one{1.0};
  for (int i = 0; i < 100; ++i) {
    const auto d = size_biased_index(one, rng);
    EXPECT_EQ(d.index, 1u);
    EXPECT_EQ(d.w, 1.0);
  }
  const std::vector<double> half{0.5, 0.5};
  Moments m;
  for (int i = 0; i < 10000; ++i) m.add(size_biased_index(half, rng).index == 1 ? 1.0 : 0.0);
  EXPECT_NEAR(m.mean(), 0.5, 3 * m.stderr_of_mean());
}

TEST(SizeBiasedIndexTest, SkipsZeroEntries) {
  RandomStream rng(7, 1);
  const std::vector<double> probs{0.0, 0.3, 0.0, 0.7};
  for (int i = 0; i < 1000; ++i) {
    const auto d = size_biased_index(probs, rng);
    EXPECT_TRUE(d.index == 2 || d.index == 4);
  }
}

TEST(SizeBiasedIndexTest, LazyGemMatchesBetaLaw) {
  for (auto [chi, rho] : {std::pair{0.0, 1.0}, {1.0, 1.0}, {-1.0, 2.0}}) {
    const auto p = GrowthParams::make(chi, rho);
    RandomStream rng(7, 2);
    std::vector<double> ws, fresh;
    for (int i = 0; i < 10000; ++i) {
      StickState s;
      ws.push_back(size_biased_index(s, p.gem(), rng, 1u << 24).w);
      fresh.push_back(size_biased_fresh(p.gem(), rng, 1u << 24).w);
    }
    const double g = p.gamma();
    auto cdf = [g](double x) { return std::pow(std::clamp(x, 0.0, 1.0), g); };
    EXPECT_TRUE(ks_test(ws, cdf).pass) << chi << "," << rho;
    EXPECT_TRUE(ks_test(fresh, cdf).pass) << chi << "," << rho;
  }
}

TEST(SizeBiasedIndexTest, GuardThrows) {
  RandomStream rng(7, 3);
  const Gem g = Gem::make(0.9, 0.1);
  bool thrown = false;
  for (int i = 0; i < 200 && !thrown; ++i) {
    StickState s;
    try {
      size_biased_index(s, g, rng, 2);
    } catch (const NonTermination&) {
      thrown = true;
    }
  }
  EXPECT_TRUE(thrown);
}

}  // namespace
}  // namespace pasplit
