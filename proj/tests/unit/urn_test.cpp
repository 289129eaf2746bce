#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pasplit/random.hpp"
#include "pasplit/rational.hpp"
#include "pasplit/stats.hpp"
#include "pasplit/urn.hpp"

namespace pasplit {
namespace {

TEST(UrnStepTest, DegenerateColourNeverDrawn) {
  RandomStream rng(1, 0);
  UrnState urn({1.0, 0.0}, 1.0);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(urn.step(rng), 0u);
  EXPECT_EQ(urn.weights(), (std::vector<double>{101.0, 0.0}));
  EXPECT_EQ(urn.step_count(), 100u);
}

TEST(UrnStepTest, SymmetricFirstDraw) {
  Moments red;
  for (std::uint64_t r = 0; r < 20000; ++r) {
    RandomStream rng(2, r);
    UrnState urn({1.0, 1.0}, 1.0);
    red.add(urn.step(rng) == 0 ? 1.0 : 0.0);
  }
  EXPECT_NEAR(red.mean(), 0.5, 3 * red.stderr_of_mean());
}

TEST(UrnStepTest, RecursiveTreeStart) {
  // (1 - chi, 1) with chi = 0.
  const double chi = 0.0;
  Moments red;
  for (std::uint64_t r = 0; r < 20000; ++r) {
    RandomStream rng(3, r);
    UrnState urn({1.0 - chi, 1.0}, 1.0);
    red.add(urn.step(rng) == 0 ? 1.0 : 0.0);
  }
  EXPECT_NEAR(red.mean(), 0.5, 3 * red.stderr_of_mean());
}

TEST(UrnStepTest, Validation) {
  EXPECT_THROW(UrnState({}, 1.0), std::invalid_argument);
  EXPECT_THROW(UrnState({0.0, 0.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(UrnState({-1.0, 2.0}, 1.0), std::invalid_argument);
  RandomStream rng(4, 0);
  EXPECT_THROW(urn_final_fraction(0.0, 1.0, 10, rng), std::invalid_argument);
  EXPECT_THROW(urn_final_fraction(1.0, 1.0, 0, rng), std::invalid_argument);
  EXPECT_THROW(urn_multicolor_fractions(1, 10, rng), std::invalid_argument);
}

TEST(UrnStepTest, TotalWeightBookkeeping) {
  RandomStream rng(5, 0);
  UrnState urn({0.5, 1.25, 2.0}, 2.0);
  urn.run(1000000, rng);
  const auto& w = urn.weights();
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  EXPECT_NEAR(urn.total(), 3.75 + 2.0 * 1e6, 1e-9 * urn.total());
  EXPECT_NEAR(sum, urn.total(), 1e-9 * urn.total());
  const auto f = urn.fractions();
  EXPECT_NEAR(std::accumulate(f.begin(), f.end(), 0.0), 1.0, 1e-12);
}

// Sequence probability by multiplying the step probabilities.
Rational sequential(const std::vector<Rational>& start, const Rational& add, const std::vector<int>& seq) {
  std::vector<Rational> w = start;
  Rational p = 1;
  for (int c : seq) {
    const Rational total = std::accumulate(w.begin(), w.end(), Rational(0));
    p *= w[c] / total;
    w[c] += add;
  }
  return p;
}

// Product of rising factorials over colours divided by the total's.
Rational by_counts(const std::vector<Rational>& start, const Rational& add, const std::vector<int>& seq) {
  std::vector<int> counts(start.size(), 0);
  for (int c : seq) ++counts[c];
  Rational numer = 1;
  for (std::size_t c = 0; c < start.size(); ++c) {
    for (int i = 0; i < counts[c]; ++i) numer *= start[c] + add * i;
  }
  const Rational t0 = std::accumulate(start.begin(), start.end(), Rational(0));
  Rational denom = 1;
  for (std::size_t s = 0; s < seq.size(); ++s) denom *= t0 + add * static_cast<long>(s);
  return numer / denom;
}

TEST(UrnExchangeabilityTest, ExactSequenceProbabilities) {
  const std::vector<std::vector<Rational>> starts{{Rational(1), Rational(1)},
                                                  {Rational(1, 2), Rational(1)},
                                                  {Rational(1), Rational(1), Rational(1)}};
  for (const auto& start : starts) {
    const Rational add = start.size() == 3 ? Rational(2) : Rational(1);
    const int colours = static_cast<int>(start.size());
    for (int len = 1; len <= 6; ++len) {
      int combos = 1;
      for (int i = 0; i < len; ++i) combos *= colours;
      Rational total = 0;
      for (int code = 0; code < combos; ++code) {
        std::vector<int> seq;
        for (int i = 0, c = code; i < len; ++i, c /= colours) seq.push_back(c % colours);
        const Rational p = sequential(start, add, seq);
        EXPECT_EQ(p, by_counts(start, add, seq));
        total += p;
      }
      EXPECT_EQ(total, Rational(1));
    }
  }
}

TEST(UrnExchangeabilityTest, SimulatedSequencesMatchExact) {
  const std::vector<Rational> start{Rational(1, 2), Rational(1)};
  const int samples = 200000;
  std::map<int, double> freq;
  for (int r = 0; r < samples; ++r) {
    RandomStream rng(6, r);
    UrnState urn({0.5, 1.0}, 1.0);
    int code = 0;
    for (int s = 0; s < 3; ++s) code = code * 2 + static_cast<int>(urn.step(rng));
    freq[code] += 1.0 / samples;
  }
  for (int code = 0; code < 8; ++code) {
    const std::vector<int> seq{(code >> 2) & 1, (code >> 1) & 1, code & 1};
    const double p = to_double(sequential(start, Rational(1), seq));
    EXPECT_NEAR(freq[code], p, 4 * std::sqrt(p * (1 - p) / samples)) << code;
  }
}

std::vector<double> two_colour(double r0, double w0, std::size_t replicas, std::uint64_t steps, std::uint64_t seed) {
  std::vector<double> out;
  for (std::uint64_t r = 0; r < replicas; ++r) {
    RandomStream rng(seed, r);
    out.push_back(urn_final_fraction(r0, w0, steps, rng));
  }
  return out;
}

TEST(UrnLimitTest, TwoColourBetaLaws) {
  const auto uniform = two_colour(1, 1, 2000, 10000, 7);
  EXPECT_TRUE(ks_test(uniform, [](double x) { return std::clamp(x, 0.0, 1.0); }, 0.02 + ks_critical_value(2000)).pass);
  const auto square = two_colour(2, 1, 2000, 10000, 8);
  EXPECT_TRUE(ks_test(square, [](double x) { return x * x; }, 0.02 + ks_critical_value(2000)).pass);
  // (1 - chi, k chi + rho) with (chi, rho) = (1/2, 1/2), k = 1.
  const auto half = two_colour(0.5, 1.0, 2000, 10000, 9);
  EXPECT_TRUE(
      ks_test(half, [](double x) { return beta_cdf(0.5, 1.0, x); }, 0.02 + ks_critical_value(2000)).pass);
  // Sanity: the uniform sample is far from x^2.
  EXPECT_FALSE(ks_test(uniform, [](double x) { return x * x; }).pass);
}

TEST(UrnLimitTest, MultiColourMarginals) {
  for (int m : {2, 3, 4}) {
    std::vector<double> first;
    for (std::uint64_t r = 0; r < 2000; ++r) {
      RandomStream rng(10, r);
      const auto f = urn_multicolor_fractions(m, 10000, rng);
      ASSERT_EQ(f.size(), static_cast<std::size_t>(m));
      ASSERT_NEAR(std::accumulate(f.begin(), f.end(), 0.0), 1.0, 1e-12);
      first.push_back(f[0]);
    }
    const double a = 1.0 / (m - 1);
    const auto ks =
        ks_test(first, [a, m](double x) { return beta_cdf(a, (m - 1) * a, x); }, 0.02 + ks_critical_value(2000));
    EXPECT_TRUE(ks.pass) << m << " D " << ks.distance;
  }
}

}  // namespace
}  // namespace pasplit
