#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace augmap::bench {

enum class scheme_kind { weight_balanced, treap };

inline const char* scheme_name(scheme_kind s) {
  return s == scheme_kind::weight_balanced ? "wb" : "treap";
}

std::optional<scheme_kind> parse_scheme(const std::string& s);

struct bench_config {
  std::string op;  // union find insert build filter multi-insert range
                   // aug-left aug-range aug-filter
  std::size_t n = std::size_t(1) << 16;
  std::size_t m = std::size_t(1) << 10;
  unsigned threads = 1;
  unsigned rounds = 5;
  std::uint64_t seed = 42;
  scheme_kind scheme = scheme_kind::weight_balanced;
};

struct bench_record {
  bench_config config;
  std::uint64_t time_ns = 0;  // median over rounds
  std::uint64_t comparisons = 0;
  std::uint64_t nodes_allocated = 0;
  std::uint64_t nodes_freed = 0;
  std::int64_t peak_live_nodes = 0;
  std::optional<double> speedup;  // vs threads=1, when both measured
  bool ok = true;
  std::string note;
};

const std::vector<std::string>& known_ops();

// Runs the named benchmark with counters on, `rounds` times, reporting the
// median round. Verifies the result against a sorted-array model when
// n * max(m, 1) <= 2^18. Measures a threads=1 baseline for the speedup
// field when config.threads > 1. Unknown op names throw
// std::invalid_argument; resource exhaustion comes back as ok=false.
bench_record run_bench(const bench_config& cfg);

// csv: one header line, then one row per record in bench_record field order
void emit_csv(const std::vector<bench_record>& records, const std::string& path);
std::string csv_header();
std::string csv_row(const bench_record& r);
std::vector<bench_record> parse_csv(const std::string& path);

}  // namespace augmap::bench
