// Counter-based RNG: stateless, order-independent draws indexed by (seed, stream, counter).
// Parallel loops draw by index, so results are identical at any thread count.

#ifndef MAXIMAL_RNG_HPP
#define MAXIMAL_RNG_HPP

#include <cstdint>
#include <cmath>

namespace maximal {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(detail::mix64(seed ^ detail::mix64(stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return detail::mix64(base_ ^ detail::mix64(counter + 0x2545f4914f6cdd1dULL));
    }

    // uniform in [0,1)
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // uniform in [a,b)
    double uniform(std::uint64_t counter, double a, double b) const {
        return a + (b - a) * uniform(counter);
    }

    // standard normal via Box-Muller; consumes counters 2i, 2i+1
    double normal(std::uint64_t i) const {
        double u1 = uniform(2 * i), u2 = uniform(2 * i + 1);
        if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t base_;
};

} // namespace maximal

#endif
