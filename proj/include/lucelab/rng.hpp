#ifndef LUCELAB_RNG_HPP
#define LUCELAB_RNG_HPP

#include <cstdint>
#include <random>

namespace lucelab {

// splitmix64 finalizer; used to derive independent stream seeds from
// (master_seed, run_index, stream_tag) tuples.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t run, std::uint64_t tag) {
    return mix64(mix64(mix64(master) ^ run) ^ (tag + 0xa0761d6478bd642fULL));
}

// Thin wrapper around mt19937_64 with the handful of draws the
// simulation needs. One Rng per logical stream; never shared.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_stream(std::uint64_t master, std::uint64_t run, std::uint64_t tag) {
        return Rng(stream_seed(master, run, tag));
    }

    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    // Gamma(shape, rate) parameterization; std:: uses scale.
    double gamma(double shape, double rate) {
        return std::gamma_distribution<double>(shape, 1.0 / rate)(engine_);
    }

    std::uint64_t next_u64() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace lucelab

#endif  // LUCELAB_RNG_HPP
