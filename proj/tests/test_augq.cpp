#include <cmath>
#include <optional>
#include <random>

#include "augmap/map.h"
#include "augmap/stats.h"
#include "common.h"
#include "doctest.h"

using namespace testutil;

namespace {

std::vector<std::pair<i64, i64>> seq_entries(i64 lo, i64 hi) {
  std::vector<std::pair<i64, i64>> v;
  for (i64 k = lo; k <= hi; k++) v.emplace_back(k, k);
  return v;
}

i64 sum_fold(const oracle::table& t) {
  i64 s = 0;
  for (auto& e : t) s += e.second;
  return s;
}

}  // namespace

TEST_CASE("aug_val reads the cached root sum") {
  CHECK(wb_sum_map().aug_val() == 0);
  auto m = wb_sum_map::build(seq_entries(1, 100));
  CHECK(m.aug_val() == 5050);
  // definitional equality with mapReduce
  CHECK(m.aug_val() == m.map_reduce([](i64, i64 v) { return v; },
                                    [](i64 a, i64 b) { return a + b; }, i64(0)));
}

TEST_CASE("prefix sums, inclusive and exclusive") {
  CHECK(wb_sum_map().aug_left_excl(7) == 0);
  auto m = wb_sum_map::build({{1, 10}, {2, 20}, {3, 30}});
  CHECK(m.aug_left_incl(2) == 30);
  CHECK(m.aug_left_excl(2) == 10);
  CHECK(m.aug_right_incl(2) == 50);
  CHECK(m.aug_right_excl(2) == 30);
  CHECK(m.aug_left_incl(3) == m.aug_val());

  std::mt19937_64 rng(71);
  for (int t = 0; t < 200; t++) {
    auto es = random_entries(rng, rng() % 400, 800);
    auto tab = oracle::build(es);
    auto mm = wb_sum_map::build(es);
    i64 k = i64(rng() % 900);
    REQUIRE(mm.aug_left_incl(k) ==
            sum_fold(oracle::filter(tab, [&](i64 key, i64) { return key <= k; })));
    REQUIRE(mm.aug_left_excl(k) ==
            sum_fold(oracle::filter(tab, [&](i64 key, i64) { return key < k; })));
    REQUIRE(mm.aug_right_incl(k) ==
            sum_fold(oracle::filter(tab, [&](i64 key, i64) { return key >= k; })));
    // definitional equality: augLeftIncl = augVal(upTo)
    REQUIRE(mm.aug_left_incl(k) == mm.up_to(k).aug_val());
  }
}

TEST_CASE("aug_range over closed bounds") {
  CHECK(wb_sum_map().aug_range(1, 9) == 0);
  auto m = wb_sum_map::build(seq_entries(1, 100));
  CHECK(m.aug_range(10, 20) == 165);
  CHECK(m.aug_range(5, 5) == 5);
  CHECK(m.aug_range(200, 300) == 0);

  std::mt19937_64 rng(73);
  for (int t = 0; t < 300; t++) {
    auto es = random_entries(rng, rng() % 512, 1000);
    auto mm = wb_sum_map::build(es);
    i64 a = i64(rng() % 1100), b = i64(rng() % 1100);
    if (b < a) std::swap(a, b);
    REQUIRE(mm.aug_range(a, b) == mm.range(a, b).aug_val());
  }
}

TEST_CASE("aug_filter equals plain filter for lawful predicates") {
  CHECK(wb_max_map().aug_filter([](i64 a) { return a > 0; }).empty());

  std::mt19937_64 rng(79);
  for (int t = 0; t < 200; t++) {
    auto es = random_entries(rng, rng() % 400, 1 << 20);
    auto mm = wb_max_map::build(es);
    i64 theta = i64(rng() % 1000);
    auto via_aug = mm.aug_filter([theta](i64 a) { return a > theta; });
    auto via_plain = mm.filter([theta](i64, i64 v) { return v > theta; });
    REQUIRE(via_aug.entries() == via_plain.entries());
  }
}

TEST_CASE("aug_filter prunes a whole subtree whose cache fails") {
  auto m = wb_max_map::build(seq_entries(1, 4096));
  i64 theta = m.aug_val();  // above every value
  auto before = augmap::stats::snapshot();
  auto f = m.aug_filter([theta](i64 a) { return a > theta; });
  auto d = augmap::stats::snapshot() - before;
  CHECK(f.empty());
  CHECK(d.nodes_visited == 1);

  // output size k: visited stays within c * k * log2(n/k + 2)
  const std::size_t n = 1 << 14;
  auto es = seq_entries(0, i64(n) - 1);
  std::mt19937_64 rng(83);
  std::vector<i64> vals(n);
  for (std::size_t i = 0; i < n; i++) vals[i] = i64(i);
  std::shuffle(vals.begin(), vals.end(), rng);
  for (std::size_t i = 0; i < n; i++) es[i].second = vals[i];
  auto big = wb_max_map::build(es);
  for (std::size_t k = 16; k <= 1024; k *= 8) {
    i64 th = i64(n - k) - 1;  // values are a permutation of 0..n-1
    before = augmap::stats::snapshot();
    auto out = big.aug_filter([th](i64 a) { return a > th; });
    d = augmap::stats::snapshot() - before;
    REQUIRE(out.size() == k);
    double bound = 20.0 * double(k) * std::log2(double(n) / double(k) + 2.0);
    REQUIRE(double(d.nodes_visited) <= bound);
  }
}

TEST_CASE("aug_project over a key range") {
  auto gp = [](i64 a) { return double(a); };
  auto fp = [](double x, double y) { return x + y; };
  CHECK(wb_sum_map().aug_project<double>(gp, fp, 1, 5) == 0.0);

  auto m = wb_sum_map::build(seq_entries(1, 200));
  // identity projection reduces to aug_range
  CHECK(m.aug_project<double>(gp, fp, 10, 30) == double(m.aug_range(10, 30)));

  std::mt19937_64 rng(103);
  for (int t = 0; t < 100; t++) {
    auto es = random_entries(rng, rng() % 300, 500);
    auto mm = wb_sum_map::build(es);
    i64 a = i64(rng() % 600), b = i64(rng() % 600);
    if (b < a) std::swap(a, b);
    REQUIRE(mm.aug_project<double>(gp, fp, a, b) == double(mm.aug_range(a, b)));
  }
}

TEST_CASE("aug_find steers by cached sums") {
  CHECK(!wb_max_map().aug_find([](i64 a) { return a > 0; }));

  std::mt19937_64 rng(89);
  for (int t = 0; t < 100; t++) {
    auto es = random_entries(rng, 1 + rng() % 300, 1 << 16);
    auto mm = wb_max_map::build(es);
    i64 best = mm.aug_val();
    auto e = mm.aug_find([best](i64 a) { return a >= best; });
    REQUIRE(e.has_value());
    REQUIRE(e->second == best);
    // linear-scan oracle: leftmost maximal entry
    auto entries = mm.entries();
    i64 expect_key = 0;
    i64 seen = INT64_MIN;
    for (auto& kv : entries)
      if (kv.second > seen) {
        seen = kv.second;
        expect_key = kv.first;
      }
    REQUIRE(e->first == expect_key);
  }

  auto m = wb_max_map::build(seq_entries(1, 64));
  CHECK(!m.aug_find([](i64 a) { return a > 64; }));
}

TEST_CASE("repeated (aug_find max, erase) drains in non-increasing order") {
  std::mt19937_64 rng(97);
  auto es = random_entries(rng, 300, 1 << 20);
  auto m = wb_max_map::build(es);
  i64 prev = INT64_MAX;
  while (!m.empty()) {
    i64 best = m.aug_val();
    auto e = m.aug_find([best](i64 a) { return a >= best; });
    REQUIRE(e.has_value());
    REQUIRE(e->second <= prev);
    prev = e->second;
    m = std::move(m).erase(e->first);
  }
}

TEST_CASE("query ops visit O(log n) nodes") {
  const std::size_t n = 1 << 16;
  auto m = wb_sum_map::build(seq_entries(0, i64(n) - 1));
  std::mt19937_64 rng(101);
  double cap = 4.0 * std::log2(double(n) + 1.0) + 8.0;
  for (int t = 0; t < 500; t++) {
    i64 a = i64(rng() % n), b = i64(rng() % n);
    if (b < a) std::swap(a, b);
    auto before = augmap::stats::snapshot();
    (void)m.find(a);
    auto d = augmap::stats::snapshot() - before;
    REQUIRE(double(d.nodes_visited) <= cap);

    before = augmap::stats::snapshot();
    (void)m.aug_left_incl(a);
    d = augmap::stats::snapshot() - before;
    REQUIRE(double(d.nodes_visited) <= cap);

    before = augmap::stats::snapshot();
    (void)m.aug_range(a, b);
    d = augmap::stats::snapshot() - before;
    REQUIRE(double(d.nodes_visited) <= cap);
  }
}
