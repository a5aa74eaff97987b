#pragma once

#include <cstdint>
#include <utility>

#include "quadratis/rng.hpp"
#include "quadratis/surface.hpp"

namespace quadratis {

struct ConnectivityEstimate {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
};

struct Rational {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Wilson score interval; z defaults to the two-sided 95% quantile.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

// right and up drawn independently and uniformly (Fisher-Yates).
Board sample_board(std::size_t n, Rng& rng);

// Trials run in chunks of kTrialsPerStream; chunk c draws its boards with
// sample_board from Rng(seed).split(c), so the result does not depend on
// `workers`. workers == 0 picks the hardware concurrency.
constexpr std::size_t kTrialsPerStream = 1024;

ConnectivityEstimate estimate_connectivity(std::size_t n, std::size_t trials, std::uint64_t seed,
                                           unsigned workers = 0);

// Fraction of the (n!)^2 pasting pairs whose surface is connected, by
// exhaustion. Throws Error{BudgetExceeded} for n > 7.
Rational exact_connectivity_probability(std::size_t n);

}  // namespace quadratis
