#ifndef POLICYGAME_SEEDING_HPP
#define POLICYGAME_SEEDING_HPP

#include <cstdint>
#include <string_view>

namespace policygame {

// splitmix64 finalizer; good enough to derive independent streams from keys.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t seed_combine(std::uint64_t seed, std::uint64_t v) {
  return mix64(seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2)));
}

inline std::uint64_t seed_combine(std::uint64_t seed, std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return seed_combine(seed, h);
}

}  // namespace policygame

#endif  // POLICYGAME_SEEDING_HPP
