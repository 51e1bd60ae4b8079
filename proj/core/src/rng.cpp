#include "semcomm/rng.hpp"

#include <cmath>
#include <numbers>

#include "semcomm/errors.hpp"

namespace semcomm {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    // The stream-th output of the splitmix64 sequence started at `master`.
    return splitmix64(master + stream * 0x9e3779b97f4a7c15ULL);
}

double RandomStream::normal() {
    // log(1 - u) keeps the argument in (0, 1]; cosine branch only, so every
    // variate costs exactly two uniforms.
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::gamma(double shape) {
    if (!(shape > 0.0)) throw Error(ErrorCode::BadParams, "gamma needs shape > 0");
    if (shape < 1.0) {
        // Boost: Gamma(a) = Gamma(a + 1) * U^(1/a).
        double u = uniform();
        while (u == 0.0) u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace semcomm
