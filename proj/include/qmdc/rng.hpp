#pragma once

#include <cstdint>
#include <random>

namespace qmdc {

// splitmix64 step; used both as a stream deriver and a seed scrambler.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic per-sample stream seed so parallel reductions stay
// order-independent: stream i of master seed s is independent of how
// many other streams were drawn before it.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x51ed270b8a2f9dbdULL));
}

// Gaussian sampler over mt19937_64. std::normal_distribution's sequence is
// implementation-defined, so we roll Marsaglia polar on top of the (fully
// specified) engine to keep outputs stable across standard libraries.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    double uniform01() {
        // 53-bit mantissa in [0,1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qmdc
