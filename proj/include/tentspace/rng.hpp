#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tentspace {

// Deterministic uniform generator. Every random quantity in the library and
// in the verification suites flows through an explicit seed; doubles are
// built from the top 53 bits so streams do not depend on the standard
// library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0,n)
    std::size_t below(std::size_t n) {
        return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n);
    }

    bool coin(double p_true) { return uniform() < p_true; }

private:
    std::mt19937_64 eng_;
};

// Stable FNV-1a hash, used to derive per-check seeds from check names.
inline std::uint64_t stable_hash(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace tentspace
