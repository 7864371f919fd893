#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace gssvm {

/// Deterministic 64-bit generator (splitmix64 stepping). The algorithm is
/// frozen here because std:: engines/distributions are implementation-defined
/// and would break seed-for-seed reproducibility of shipped outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0. Multiply-shift scaling.
    std::uint64_t below(std::uint64_t n) {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((static_cast<u128>(next_u64()) * n) >> 64);
    }

    /// One pair of standard normals via Box-Muller. The transform is fixed so
    /// a given seed reproduces the same stream in every build.
    std::pair<double, double> normal_pair() {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * 3.141592653589793238462643383279502884 * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    /// Fisher-Yates shuffle driven by below().
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace gssvm
