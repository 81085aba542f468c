#pragma once

#include <cstdint>

namespace dualrec {

// Fixed linear-congruential generator (Knuth's MMIX constants) so that seeded
// fixtures are byte-identical across platforms and implementations. The
// bounded draw uses the high 31 bits reduced mod `bound`.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed = 0) : state_(seed * 0x9e3779b97f4a7c15ull + 1) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
        return state_;
    }

    // Uniform-ish draw in [0, bound); bound must be positive.
    std::uint32_t below(std::uint32_t bound) {
        return static_cast<std::uint32_t>((next() >> 33) % bound);
    }

private:
    std::uint64_t state_;
};

} // namespace dualrec
