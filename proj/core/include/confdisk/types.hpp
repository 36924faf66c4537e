#ifndef CONFDISK_TYPES_HPP
#define CONFDISK_TYPES_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace confdisk {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Golden mean conjugate, the default irrational rotation angle (in turns).
inline constexpr double kGoldenTurns = 0.61803398874989484820;

// Tolerance context threaded through geometric and angular comparisons.
struct Tolerances {
    double angle = 1e-9;  // turns
    double geom = 1e-9;   // absolute, in domain units
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SceneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// splitmix64; also used to derive per-worker substreams from (seed, worker).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

// xoshiro256** seeded via splitmix64.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& si : s_) si = sm.next();
    }
    static Rng substream(std::uint64_t seed, std::uint64_t worker) {
        SplitMix64 sm(seed ^ (0x9e3779b97f4a7c15ull * (worker + 1)));
        return Rng(sm.next());
    }
    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }
    // uniform in [0,1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t s_[4];
};

}  // namespace confdisk

#endif
