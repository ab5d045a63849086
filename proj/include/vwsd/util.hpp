#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vwsd {

// 64-bit FNV-1a. Used wherever a stable, documented content hash is needed
// (mock embeddings, generated-image keys). Not for adversarial inputs.
inline constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr uint64_t kFnvPrime = 0x00000100000001b3ULL;

constexpr uint64_t fnv1a64(std::string_view bytes, uint64_t state = kFnvOffset) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

// splitmix64 output function (Steele, Lea & Flood). The project's pinned
// generator: all seeded randomness flows through Rng so fixtures and splits
// are identical across platforms and standard-library versions.
constexpr uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return splitmix64(state_); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double next_signed_unit() { return 2.0 * next_double() - 1.0; }

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  uint64_t uniform(uint64_t n);

  // First k elements of a seeded Fisher-Yates permutation of [0, n).
  std::vector<size_t> sample_indices(size_t n, size_t k);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform(i)]);
    }
  }

 private:
  uint64_t state_;
};

// Derives an independent stream from a content hash and a user seed.
inline uint64_t mix_seed(uint64_t content_hash, uint64_t seed) {
  uint64_t s = content_hash ^ (0x9e3779b97f4a7c15ULL * (seed + 1));
  return splitmix64(s);
}

std::vector<std::string> split(std::string_view text, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string ascii_lower(std::string_view text);
std::string_view trim(std::string_view text);
bool contains_ci(std::string_view haystack, std::string_view needle);

// Shortest round-trip decimal form; the only float formatter used in
// serialized artifacts so outputs are byte-stable.
std::string format_double(double value);

// Half-away-from-zero rounding at a decimal position, applied only at
// presentation time.
double round_decimals(double value, int decimals);

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);  // throws Parse on bad input

std::string read_text_file(const std::string& path);

}  // namespace vwsd
