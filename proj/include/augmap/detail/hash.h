#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

// Deterministic 64-bit key hashes, used as treap priorities. Same key,
// same priority, on every run and platform.

namespace augmap::detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
std::uint64_t key_hash(T v) {
  return mix64(static_cast<std::uint64_t>(v));
}

inline std::uint64_t key_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

inline std::uint64_t key_hash(const std::string& s) {
  return key_hash(std::string_view(s));
}

template <class A, class B>
std::uint64_t key_hash(const std::pair<A, B>& p) {
  return mix64(key_hash(p.first) ^ (key_hash(p.second) * 0x9ddfea08eb382d69ULL));
}

}  // namespace augmap::detail
