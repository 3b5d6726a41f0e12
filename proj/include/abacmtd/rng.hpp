#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace abacmtd {

// Deterministic random source. std::mt19937_64 output is bit-exact across
// implementations; the derivations below avoid std::uniform_*_distribution,
// whose sequences are implementation-defined, so seeded runs reproduce
// byte-identically on any toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform double in [0, 1), 53 bits of precision.
    double real() { return static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0); }

    // Uniform-ish index in [0, n). Modulo bias is negligible for the small
    // ranges used here.
    std::size_t index(std::size_t n) {
        assert(n > 0);
        return static_cast<std::size_t>(gen_() % n);
    }

    bool chance(double p) { return real() < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace abacmtd
