#include "groma/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "groma/error.hpp"

namespace groma {

std::uint64_t RandomStream::below(std::uint64_t bound) {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

RandomStream derive_stream(const StreamKey& key) { return RandomStream(stream_seed(key)); }

void validate(const PerturbationSpec& spec) {
  if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon))
    throw Error(ErrorCode::InvalidConfig, "epsilon must be a finite non-negative number");
  if (!(spec.domain_lo <= spec.domain_hi))
    throw Error(ErrorCode::InvalidConfig, "domain_lo must not exceed domain_hi");
}

void sample_perturbation(std::span<const double> x0, const PerturbationSpec& spec, RandomStream& stream,
                         std::span<double> out) {
  if (out.size() != x0.size())
    throw Error(ErrorCode::DimensionMismatch, "output buffer has " + std::to_string(out.size()) + " entries, expected " +
                                                  std::to_string(x0.size()));
  const double eps = spec.epsilon;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    double v = x0[i] + stream.uniform(-eps, eps);
    // The sum can round one ulp past the ball; pull it back in.
    while (v - x0[i] > eps) v = std::nextafter(v, x0[i]);
    while (x0[i] - v > eps) v = std::nextafter(v, x0[i]);
    if (spec.clip) v = std::clamp(v, spec.domain_lo, spec.domain_hi);
    out[i] = v;
  }
}

std::vector<double> sample_perturbation(std::span<const double> x0, const PerturbationSpec& spec,
                                        RandomStream& stream) {
  std::vector<double> out(x0.size());
  sample_perturbation(x0, spec, stream, out);
  return out;
}

}  // namespace groma
