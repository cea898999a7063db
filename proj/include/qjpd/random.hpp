#ifndef QJPD_RANDOM_HPP
#define QJPD_RANDOM_HPP

#include <cmath>
#include <cstdint>

namespace qjpd {

// Counter-style generator (splitmix64). Output i depends only on the seed and
// the number of draws, so per-trial substreams derived from (seed, index) are
// independent of evaluation order and of any thread partitioning.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1]
    double uniform() {
        return ((next() >> 11) + 1) * 0x1.0p-53;
    }

    // exponential waiting time with the given rate (1/s)
    double exponential(double rate) {
        return -std::log(uniform()) / rate;
    }

  private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Substream for one trial: decorrelates (seed, index) pairs before seeding.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL)));
}

}  // namespace qjpd

#endif
