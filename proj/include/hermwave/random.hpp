// SPDX-License-Identifier: Apache-2.0

#ifndef HERMWAVE_RANDOM_HPP
#define HERMWAVE_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hermwave {

namespace detail {

// Philox 2x64, 10 rounds: a counter-based bijection (c0, c1) -> (r0, r1) for a
// fixed key. Distinct counters can never collide, which is what makes the
// Gaussian fields addressable out of order.
inline std::pair<std::uint64_t, std::uint64_t> philox2x64(std::uint64_t c0,
                                                          std::uint64_t c1,
                                                          std::uint64_t key) {
    constexpr std::uint64_t MUL = 0xD2B74407B1CE6E93ull;
    constexpr std::uint64_t WEYL = 0x9E3779B97F4A7C15ull;
    for (int round = 0; round < 10; ++round) {
        const unsigned __int128 prod =
            static_cast<unsigned __int128>(MUL) * c0;
        const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
        const std::uint64_t lo = static_cast<std::uint64_t>(prod);
        c0 = hi ^ key ^ c1;
        c1 = lo;
        key += WEYL;
    }
    return {c0, c1};
}

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t zigzag64(std::int64_t v) {
    return (static_cast<std::uint64_t>(v) << 1) ^
           static_cast<std::uint64_t>(v >> 63);
}

}  // namespace detail

/// Derives an independent stream seed, e.g. one per Monte Carlo replica.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return detail::mix64(seed + 0x632BE59BD9B4E019ull * (stream + 1));
}

// Seeded family of i.i.d. N(0,1) variates addressable by (tag, i, j). Each
// lookup is a pure function of (seed, tag, i, j): evaluation order, batching
// and threading cannot change any value.
class GaussianField {
  public:
    enum class Tag : std::uint64_t { scaling = 1, wavelet = 2 };

    explicit GaussianField(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// g^phi at level J, spatial index k.
    double phi(std::int64_t level, std::int64_t k) const {
        return normal(static_cast<std::uint64_t>(Tag::scaling), level, k);
    }

    /// g^psi at scale j, spatial index k.
    double psi(std::int64_t j, std::int64_t k) const {
        return normal(static_cast<std::uint64_t>(Tag::wavelet), j, k);
    }

    double normal(std::uint64_t tag, std::int64_t i, std::int64_t j) const {
        const std::uint64_t key = detail::mix64(seed_ ^ detail::mix64(tag));
        const auto [w0, w1] = detail::philox2x64(detail::zigzag64(i),
                                                 detail::zigzag64(j), key);
        // Box-Muller; u1 in (0,1], u2 in [0,1).
        const double u1 = (double(w0 >> 11) + 1.0) * 0x1p-53;
        const double u2 = double(w1 >> 11) * 0x1p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t seed_;
};

}  // namespace hermwave

#endif
