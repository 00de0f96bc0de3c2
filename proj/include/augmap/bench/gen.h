#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "augmap/inverted_index.h"

// Deterministic synthetic inputs: the same (n, seed) always yields the same
// sequence.

namespace augmap::bench {

using entry_seq = std::vector<std::pair<std::int64_t, std::int64_t>>;

// uniform 64-bit keys (duplicates possible), bounded nonnegative values
entry_seq gen_keys(std::size_t n, std::uint64_t seed);

// closed intervals with l <= r
std::vector<std::pair<std::int64_t, std::int64_t>> gen_intervals(std::size_t n,
                                                                 std::uint64_t seed);

// weighted points in a square
std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>> gen_points(
    std::size_t n, std::uint64_t seed);

// (term, doc, weight) with zipf-ish term frequencies
std::vector<inverted_index::triple> gen_triples(std::size_t n, std::uint64_t seed);

// integer sequence for LIS runs
std::vector<std::int64_t> gen_sequence(std::size_t n, std::uint64_t seed);

}  // namespace augmap::bench
