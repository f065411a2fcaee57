#pragma once

#include <cstdint>
#include <limits>

namespace ckls {

// Stream tags keep independent uses of one seed apart.
enum class StreamTag : std::uint64_t {
    noise = 0,
    exact = 1,
    chi_square = 2,
    oracle = 3,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator so it
// plugs into the <random> distributions.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
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

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Independent generator for (seed, index, tag). Depends only on those three
// values, so adding paths never changes the draws of earlier ones.
inline Xoshiro256 substream(std::uint64_t seed, std::uint64_t index,
                            StreamTag tag = StreamTag::noise) {
    std::uint64_t h = seed;
    std::uint64_t mixed = splitmix64(h);
    h = mixed ^ (index + 0x632BE59BD9B4E019ULL);
    mixed = splitmix64(h);
    h = mixed ^ (static_cast<std::uint64_t>(tag) * 0xD1B54A32D192ED03ULL);
    return Xoshiro256(splitmix64(h));
}

}  // namespace ckls
