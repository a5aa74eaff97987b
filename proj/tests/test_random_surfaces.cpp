#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "quadratis/error.hpp"
#include "quadratis/random_surfaces.hpp"

using namespace quadratis;

TEST_CASE("sample_board") {
  Rng rng(1);
  const Board one = sample_board(1, rng);
  CHECK(one.right() == Permutation{0});
  CHECK(one.up() == Permutation{0});
  CHECK_FALSE(one.placement().has_value());

  Rng a(123), b(123);
  for (int i = 0; i < 20; ++i) CHECK(sample_board(9, a) == sample_board(9, b));
  CHECK_THROWS_AS(sample_board(0, rng), Error);
}

TEST_CASE("sampled permutations are uniform per position") {
  constexpr int kSamples = 10'000;
  constexpr int n = 5;
  std::vector<int> right_hits(n * n, 0), up_hits(n * n, 0);
  Rng rng(2024);
  for (int s = 0; s < kSamples; ++s) {
    const Board b = sample_board(n, rng);
    for (int i = 0; i < n; ++i) {
      ++right_hits[i * n + b.right()[i]];
      ++up_hits[i * n + b.up()[i]];
    }
  }
  const double mean = kSamples / 5.0;
  const double sigma = std::sqrt(kSamples * 0.2 * 0.8);
  for (int k = 0; k < n * n; ++k) {
    CHECK(std::abs(right_hits[k] - mean) <= 4 * sigma);
    CHECK(std::abs(up_hits[k] - mean) <= 4 * sigma);
  }
}

TEST_CASE("wilson interval") {
  const auto [lo, hi] = wilson_interval(75, 100);
  CHECK(lo == doctest::Approx(0.6569).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.8245).epsilon(1e-3));
  const auto [zlo, zhi] = wilson_interval(0, 10);
  CHECK(zlo == 0.0);
  CHECK(zhi > 0.0);
  const auto [flo, fhi] = wilson_interval(10, 10);
  CHECK(flo < 1.0);
  CHECK(fhi == doctest::Approx(1.0));
}

TEST_CASE("exact connectivity probability") {
  CHECK(exact_connectivity_probability(1) == Rational{1, 1});
  CHECK(exact_connectivity_probability(2) == Rational{3, 4});
  CHECK(exact_connectivity_probability(3) == Rational{13, 18});
  std::uint64_t fact = 1;
  for (std::size_t n = 1; n <= 6; ++n) {
    fact *= n;
    const Rational r = exact_connectivity_probability(n);
    CAPTURE(n);
    // r == t_n / (n!)^2 with t_n from the block recurrence.
    CHECK(r.numerator * fact * fact == oracle::transitive_pairs(n) * r.denominator);
  }
  try {
    exact_connectivity_probability(8);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("estimate_connectivity") {
  const auto one = estimate_connectivity(1, 1000, 5);
  CHECK(one.successes == 1000);
  CHECK(one.p_hat == 1.0);

  const auto two = estimate_connectivity(2, 100'000, 9);
  CHECK(two.ci_low <= 0.75);
  CHECK(0.75 <= two.ci_high);
  CHECK(two.p_hat == static_cast<double>(two.successes) / two.trials);

  SUBCASE("deterministic and independent of the worker count") {
    const auto a = estimate_connectivity(6, 20'000, 31, 1);
    const auto b = estimate_connectivity(6, 20'000, 31, 3);
    const auto c = estimate_connectivity(6, 20'000, 31, 1);
    CHECK(a.successes == b.successes);
    CHECK(a.successes == c.successes);
  }
  SUBCASE("agrees with sample_board draws") {
    Rng stream = Rng(44).split(0);
    std::size_t connected = 0;
    for (std::size_t t = 0; t < kTrialsPerStream; ++t) connected += surface_components(sample_board(4, stream)).size() == 1;
    CHECK(estimate_connectivity(4, kTrialsPerStream, 44).successes == connected);
  }
  SUBCASE("larger boards connect more often") {
    CHECK(estimate_connectivity(100, 10'000, 1).p_hat > estimate_connectivity(10, 10'000, 1).p_hat);
  }
  CHECK_THROWS_AS(estimate_connectivity(3, 0, 1), Error);
}

TEST_CASE("property: Wilson intervals cover the exact value") {
  const double exact = exact_connectivity_probability(3).value();
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto est = estimate_connectivity(3, 100'000, seed);
    covered += est.ci_low <= exact && exact <= est.ci_high;
  }
  CHECK(covered >= 93);
}
