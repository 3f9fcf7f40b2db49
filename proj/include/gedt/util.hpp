#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <string>

namespace gedt {

using Rng = std::mt19937_64;

/// Mixes a parent seed with a sequence of child indices (splitmix64 finalizer
/// per step). Used for the master -> run -> generation -> slot -> episode
/// hierarchy so that no two parallel units share a stream.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path);

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t child)
{
  return derive_seed(parent, {child});
}

// Stream tags for derive_seed. Kept distinct from small integer indices.
inline constexpr std::uint64_t kTagInit = 0x1a17'0000'0000'0001ULL;
inline constexpr std::uint64_t kTagSelection = 0x1a17'0000'0000'0002ULL;
inline constexpr std::uint64_t kTagEvaluation = 0x1a17'0000'0000'0003ULL;
inline constexpr std::uint64_t kTagQInit = 0x1a17'0000'0000'0004ULL;
inline constexpr std::uint64_t kTagPolicy = 0x1a17'0000'0000'0005ULL;
inline constexpr std::uint64_t kTagEpisode = 0x1a17'0000'0000'0006ULL;
inline constexpr std::uint64_t kTagTest = 0x1a17'0000'0000'0007ULL;
inline constexpr std::uint64_t kTagRun = 0x1a17'0000'0000'0008ULL;

/// Shortest round-trip decimal form; always contains a '.', 'e', "inf" or "nan".
std::string format_double(double v);

/// Runs fn(i) for i in [0, n) on up to `workers` threads (0 = hardware
/// concurrency). The first exception thrown by any task is rethrown after
/// all threads have joined.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace gedt
