#ifndef AQUAFUZZ_CORE_RNG_HPP
#define AQUAFUZZ_CORE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace aquafuzz {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (splitmix64(b) + 0x9e3779b97f4a7c15ULL));
}

/// FNV-1a over bytes; used for config/protocol-map fingerprints.
constexpr std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (char c : bytes) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Deterministic, platform-independent generator (splitmix64 stream).
/// Distributions are hand-rolled so results do not depend on the standard
/// library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0xa0761d6478bd642fULL)) {}

    /// Derive an independent named stream from a root seed.
    static Rng substream(std::uint64_t root, std::string_view name) {
        return Rng(hash_mix(root, fnv1a(name)));
    }
    static Rng substream(std::uint64_t root, std::string_view name, std::uint64_t index) {
        return Rng(hash_mix(hash_mix(root, fnv1a(name)), index));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection-free modulo is fine at our scales,
    /// but use Lemire rejection to keep the distribution exact.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Standard normal via Box-Muller.
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        double u2 = uniform();
        double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(6.283185307179586 * u2);
        have_spare_ = true;
        return mag * std::cos(6.283185307179586 * u2);
    }

    double gauss(double mean, double sigma) { return mean + sigma * gauss(); }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace aquafuzz

#endif
