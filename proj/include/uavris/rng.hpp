#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace uavris {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic seed derivation: child streams are a pure function of the
// parent seed and a tag tuple, so worker count and evaluation order never
// change the numbers a consumer sees.
inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t state = seed ^ 0x2545f4914f6cdd1dULL;
    splitmix64(state);
    for (std::uint64_t p : parts) {
        state ^= p + 0x9e3779b97f4a7c15ULL + (state << 6) + (state >> 2);
        splitmix64(state);
    }
    return splitmix64(state);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// mt19937_64 is fully specified by the standard; the double conversions below
// avoid std::uniform_*_distribution, whose output is implementation-defined.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // (0, 1)
    double uniform_open01() {
        double v;
        do {
            v = uniform01();
        } while (v == 0.0);
        return v;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // {0, ..., n-1}, n >= 1
    int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

    bool coin() { return (next_u64() & 1ULL) != 0; }

private:
    std::mt19937_64 eng_;
};

} // namespace uavris
