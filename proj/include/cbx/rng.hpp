#pragma once

#include <cmath>
#include <cstdint>

namespace cbx {
namespace rng {

/// Independent draw streams. Keys in different streams never collide, so the
/// consumers (initialization, step noise, the second memory noise, batch
/// shuffling) cannot reuse each other's numbers.
enum class Stream : std::uint64_t {
    init = 1,
    step = 2,
    step_aux = 3,
    batch = 4,
};

namespace detail {

/// splitmix64 finalizer; a bijective 64-bit mix with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

/// Stateless hash of the full draw key. Each word is absorbed through a mix
/// round, so keys differing in any single component give unrelated outputs.
constexpr std::uint64_t key_hash(std::uint64_t seed, Stream stream, std::uint64_t iteration,
                                 std::uint64_t particle, std::uint64_t axis) noexcept {
    using detail::golden;
    using detail::mix64;
    std::uint64_t h = mix64(seed + golden);
    h = mix64(h ^ (static_cast<std::uint64_t>(stream) + golden));
    h = mix64(h ^ (iteration + golden));
    h = mix64(h ^ (particle + golden));
    h = mix64(h ^ (axis + golden));
    return h;
}

/// Maps a 64-bit word to the open interval (0, 1).
constexpr double to_unit(std::uint64_t h) noexcept {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform draw on (0, 1), a pure function of the key.
constexpr double uniform_draw(std::uint64_t seed, Stream stream, std::uint64_t iteration,
                              std::uint64_t particle, std::uint64_t axis) noexcept {
    return to_unit(key_hash(seed, stream, iteration, particle, axis));
}

/// Inverse of the standard normal CDF (Wichura's AS 241, PPND16 variant;
/// relative error below 1e-15 on (0, 1)).
inline double inverse_normal_cdf(double p) {
    static constexpr double a[8] = {
        3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
        1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
        3.3430575583588128105e4, 2.5090809287301226727e3};
    static constexpr double b[8] = {
        1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
        2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
        5.2264952788528545610e3};
    static constexpr double c[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[8] = {
        1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
        1.05075007164441684324e-9};
    static constexpr double e[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[8] = {
        1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
        2.04426310338993978564e-15};

    auto poly = [](const double (&k)[8], double r) {
        double s = k[7];
        for (int i = 6; i >= 0; --i) s = s * r + k[i];
        return s;
    };

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = poly(c, r) / poly(d, r);
    } else {
        r -= 5.0;
        value = poly(e, r) / poly(f, r);
    }
    return q < 0.0 ? -value : value;
}

/// Standard normal draw, a pure function of the key. Same key, same value;
/// distinct keys are statistically independent.
inline double normal_draw(std::uint64_t seed, Stream stream, std::uint64_t iteration,
                          std::uint64_t particle, std::uint64_t axis) {
    return inverse_normal_cdf(uniform_draw(seed, stream, iteration, particle, axis));
}

/// Uniform integer in [0, bound) via the fixed-point multiply of the hashed
/// key. Deterministic; bias is below 2^-64 times bound.
constexpr std::uint64_t bounded_draw(std::uint64_t seed, Stream stream, std::uint64_t iteration,
                                     std::uint64_t particle, std::uint64_t bound) noexcept {
    const std::uint64_t h = key_hash(seed, stream, iteration, particle, 0);
    return static_cast<std::uint64_t>(
        (static_cast<__uint128_t>(h) * static_cast<__uint128_t>(bound)) >> 64);
}

}  // namespace rng
}  // namespace cbx
