#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace groma {

enum class StreamPurpose : std::uint8_t {
  SampleDraw = 1,
  Perturbation = 2,
};

/// Identifies an independent random substream. Every unit of parallel work
/// derives its own stream from a key, so results never depend on scheduling.
struct StreamKey {
  std::uint64_t run_seed = 0;
  std::uint64_t point_index = 0;
  StreamPurpose purpose = StreamPurpose::Perturbation;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 64-bit seed obtained by chaining mix64 over every key field.
constexpr std::uint64_t stream_seed(const StreamKey& key) noexcept {
  std::uint64_t h = mix64(key.run_seed);
  h = mix64(h ^ key.point_index);
  h = mix64(h ^ static_cast<std::uint64_t>(key.purpose));
  return h;
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  double normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

RandomStream derive_stream(const StreamKey& key);

struct PerturbationSpec {
  double epsilon = 0.04;
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  bool clip = true;
};

/// Throws InvalidConfig when epsilon < 0 or domain_lo > domain_hi.
void validate(const PerturbationSpec& spec);

/// Draws x2 with x2[i] = x0[i] + u[i], u[i] ~ Uniform[-eps, eps] independently,
/// clipped into the domain when spec.clip is set. Writes into `out`.
void sample_perturbation(std::span<const double> x0, const PerturbationSpec& spec, RandomStream& stream,
                         std::span<double> out);

std::vector<double> sample_perturbation(std::span<const double> x0, const PerturbationSpec& spec,
                                        RandomStream& stream);

}  // namespace groma
