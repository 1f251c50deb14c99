#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace steiner {

namespace detail {
constexpr std::uint64_t splitmix_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// Counter-based generator keyed by (master_seed, stream_id). Output i of a
/// stream is a fixed function of (key, i), so streams with different ids are
/// independent and any stream can be regenerated without replaying others.
/// Satisfies UniformRandomBitGenerator.
class SeededRng {
public:
    using result_type = std::uint64_t;

    SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
        : master_(master_seed), stream_(stream_id),
          key_(detail::splitmix_mix(master_seed ^ detail::splitmix_mix(stream_id + 0x632be59bd9b4e019ULL))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        ++counter_;
        return detail::splitmix_mix(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform integer in [0, bound) by Lemire's multiply-and-reject.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0,1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& xs) {
        for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(i)]);
    }

    [[nodiscard]] std::uint64_t master_seed() const { return master_; }
    [[nodiscard]] std::uint64_t stream_id() const { return stream_; }

private:
    std::uint64_t master_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace steiner
