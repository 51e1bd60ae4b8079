#pragma once

#include <cstdint>
#include <random>

namespace semcomm {

/// Recorded alongside every simulation so curves can be tied to the exact
/// random pipeline that produced them.
inline constexpr const char* kRngIdentity = "mt19937_64/u53/box-muller-cos/marsaglia-tsang";

/// splitmix64 step: the k-th value of the sequence seeded at `x` is
/// splitmix64(x + k * 0x9e3779b97f4a7c15).
std::uint64_t splitmix64(std::uint64_t x);

/// Independent per-stream seeds from one master seed. Stream indices are
/// fixed: 0 encoder construction, 1 prior construction, 16 + i for trial i.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

inline constexpr std::uint64_t kStreamEncoder = 0;
inline constexpr std::uint64_t kStreamPrior = 1;
inline constexpr std::uint64_t kStreamTrialBase = 16;

/// mt19937_64 with pinned output mappings, so every consumer draws the same
/// variates on every platform (std distributions are implementation-defined;
/// these are not):
///   uniform: (x >> 11) * 2^-53 in [0, 1)
///   normal:  Box-Muller, cosine branch, two uniforms per variate
///   gamma:   Marsaglia-Tsang squeeze (boosted below shape 1)
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double normal();
    double gamma(double shape);  // BadParams unless shape > 0

private:
    std::mt19937_64 engine_;
};

}  // namespace semcomm
