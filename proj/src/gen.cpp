#include "augmap/bench/gen.h"

#include <cmath>
#include <random>
#include <string>

namespace augmap::bench {

entry_seq gen_keys(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> val(0, (std::int64_t(1) << 30) - 1);
  entry_seq out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; i++)
    out.emplace_back(std::int64_t(rng()), val(rng));
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> gen_intervals(std::size_t n,
                                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::int64_t span = std::max<std::int64_t>(8, std::int64_t(n) * 4);
  std::uniform_int_distribution<std::int64_t> start(0, span);
  std::geometric_distribution<std::int64_t> len(0.15);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; i++) {
    std::int64_t l = start(rng);
    out.emplace_back(l, l + len(rng));
  }
  return out;
}

std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>> gen_points(
    std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::int64_t side = std::max<std::int64_t>(8, std::int64_t(n) * 2);
  std::uniform_int_distribution<std::int64_t> coord(0, side);
  std::uniform_int_distribution<std::int64_t> w(0, 1023);
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; i++) {
    std::int64_t x = coord(rng);
    std::int64_t y = coord(rng);
    out.push_back({{x, y}, w(rng)});
  }
  return out;
}

std::vector<inverted_index::triple> gen_triples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t vocab = std::max<std::size_t>(4, std::min<std::size_t>(n / 4 + 1, 1 << 14));
  // zipf-ish: rank drawn as floor(vocab^u), heavier mass on low ranks
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> doc(0, std::int64_t(n) / 2 + 1);
  std::vector<inverted_index::triple> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; i++) {
    auto rank = std::size_t(std::pow(double(vocab), uni(rng))) - 1;
    if (rank >= vocab) rank = vocab - 1;
    out.push_back({"t" + std::to_string(rank), doc(rng), uni(rng)});
  }
  return out;
}

std::vector<std::int64_t> gen_sequence(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> v(0, std::max<std::int64_t>(1, std::int64_t(n)));
  std::vector<std::int64_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; i++) out.push_back(v(rng));
  return out;
}

}  // namespace augmap::bench
