#include "quadratis/random_surfaces.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "quadratis/error.hpp"

namespace quadratis {

namespace {

constexpr std::size_t kMaxExactSquares = 7;

void fill_random_permutation(Permutation& p, Rng& rng) {
  std::iota(p.begin(), p.end(), SquareId{0});
  for (std::size_t i = p.size(); i-- > 1;) std::swap(p[i], p[rng.below(i + 1)]);
}

// Orbit of square 0 under right and up covers every square.
class TransitivityCheck {
 public:
  explicit TransitivityCheck(std::size_t n) : seen_(n), stack_() { stack_.reserve(n); }

  bool operator()(const Permutation& right, const Permutation& up) {
    std::fill(seen_.begin(), seen_.end(), 0);
    std::size_t reached = 1;
    seen_[0] = 1;
    stack_.assign(1, 0);
    while (!stack_.empty()) {
      const SquareId v = stack_.back();
      stack_.pop_back();
      for (SquareId w : {right[v], up[v]}) {
        if (seen_[w]) continue;
        seen_[w] = 1;
        ++reached;
        stack_.push_back(w);
      }
    }
    return reached == seen_.size();
  }

 private:
  std::vector<std::uint8_t> seen_;
  std::vector<SquareId> stack_;
};

}  // namespace

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Board sample_board(std::size_t n, Rng& rng) {
  if (n == 0) throw Error(ErrorCode::ValidationError, "a board needs at least one square", "n");
  Permutation right(n);
  Permutation up(n);
  fill_random_permutation(right, rng);
  fill_random_permutation(up, rng);
  return Board(std::move(right), std::move(up));
}

ConnectivityEstimate estimate_connectivity(std::size_t n, std::size_t trials, std::uint64_t seed, unsigned workers) {
  if (trials == 0) throw Error(ErrorCode::ValidationError, "trials must be positive", "trials");
  if (n == 0) throw Error(ErrorCode::ValidationError, "a board needs at least one square", "n");
  const std::size_t chunks = (trials + kTrialsPerStream - 1) / kTrialsPerStream;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));

  const Rng master(seed);
  std::atomic<std::size_t> next_chunk{0};
  std::atomic<std::size_t> successes{0};
  auto work = [&] {
    // Same draws as sample_board, without building a Board per trial.
    std::size_t local = 0;
    Permutation right(n);
    Permutation up(n);
    TransitivityCheck connected(n);
    for (std::size_t c; (c = next_chunk.fetch_add(1)) < chunks;) {
      Rng rng = master.split(c);
      const std::size_t end = std::min(trials, (c + 1) * kTrialsPerStream);
      for (std::size_t t = c * kTrialsPerStream; t < end; ++t) {
        fill_random_permutation(right, rng);
        fill_random_permutation(up, rng);
        local += connected(right, up);
      }
    }
    successes += local;
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  ConnectivityEstimate est;
  est.n = n;
  est.trials = trials;
  est.successes = successes.load();
  est.p_hat = static_cast<double>(est.successes) / static_cast<double>(trials);
  std::tie(est.ci_low, est.ci_high) = wilson_interval(est.successes, trials);
  est.seed = seed;
  return est;
}

Rational exact_connectivity_probability(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::ValidationError, "a board needs at least one square", "n");
  if (n > kMaxExactSquares) {
    throw Error(ErrorCode::BudgetExceeded, "exact enumeration supports n <= 7", "n");
  }
  // image[p][mask]: the set of images of `mask` under permutation p.
  std::vector<Permutation> perms;
  Permutation p = identity_permutation(n);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  const std::size_t masks = std::size_t{1} << n;
  std::vector<std::uint8_t> image(perms.size() * masks);
  for (std::size_t k = 0; k < perms.size(); ++k) {
    for (std::size_t mask = 0; mask < masks; ++mask) {
      std::uint8_t out = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) out |= static_cast<std::uint8_t>(1u << perms[k][i]);
      image[k * masks + mask] = out;
    }
  }

  const auto full = static_cast<std::uint8_t>(masks - 1);
  std::uint64_t connected = 0;
  for (std::size_t r = 0; r < perms.size(); ++r) {
    const std::uint8_t* right = &image[r * masks];
    for (std::size_t u = 0; u < perms.size(); ++u) {
      const std::uint8_t* up = &image[u * masks];
      std::uint8_t orbit = 1;
      for (;;) {
        const auto grown = static_cast<std::uint8_t>(orbit | right[orbit] | up[orbit]);
        if (grown == orbit) break;
        orbit = grown;
      }
      connected += orbit == full;
    }
  }
  const std::uint64_t total = static_cast<std::uint64_t>(perms.size()) * perms.size();
  const std::uint64_t g = std::gcd(connected, total);
  return {connected / g, total / g};
}

}  // namespace quadratis
