#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace agentx {

// Seeded stream with platform-independent draws. std::mt19937_64 output is
// fixed by the standard; the std distributions are not, so the conversions
// below are done by hand.
class Rng {
public:
    Rng() : engine_(0) {}
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

    // Uniform integer in [0, n), n > 0, unbiased by rejection.
    std::size_t below(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    // Uniform integer in [lo, hi].
    int between(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1)));
    }

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    std::mt19937_64 engine_;
};

// Fixed derivation order for per-subsystem streams. Appending a new stream
// never changes the seeds of the existing ones.
enum class Stream : std::uint64_t {
    BenignTraffic = 1,
    Attacker = 2,
    Detection = 3,
    Load = 4,
    Policy = 5,
    Operator = 6,
    Scenario = 7,
};

std::uint64_t derive_seed(std::uint64_t master, Stream stream);

inline Rng make_stream(std::uint64_t master, Stream stream) {
    return Rng(derive_seed(master, stream));
}

}  // namespace agentx
