#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sdwn {

/// SplitMix64 finalizer. Used as the mixing function for every seed derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over a stream name; gives each consumer its own seed stream.
constexpr std::uint64_t stream_tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Child seed for (parent, index). Children of one parent never depend on how
/// many siblings exist, so adding replications leaves earlier ones untouched.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view stream) {
  return derive_seed(parent, stream_tag(stream));
}

using Rng = std::mt19937_64;

/// Named per-trial seed streams. Deployment, slice assignment, fading and
/// solver restarts each draw from their own stream.
struct TrialSeeds {
  std::uint64_t deployment;
  std::uint64_t slices;
  std::uint64_t fading;
  std::uint64_t solver;

  static TrialSeeds from(std::uint64_t master, std::uint64_t trial) {
    const std::uint64_t base = derive_seed(master, trial);
    return {derive_seed(base, "deployment"), derive_seed(base, "slices"),
            derive_seed(base, "fading"), derive_seed(base, "solver")};
  }
};

/// Uniform double in [0, 1) from a 64-bit hash; used for stateless draws.
inline double unit_from_hash(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace sdwn
