#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rational.hpp"

namespace elab {

// Deterministic seeded generator. mt19937_64 output is fixed by the standard,
// and all derived draws below avoid std::uniform_int_distribution (whose
// mapping is implementation-defined), so reports are reproducible
// byte-for-byte across platforms.
class Rng {
public:
    // `stream` decorrelates substreams derived from one user seed; seed()
    // still reports the user seed.
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), eng_(seed ^ (stream * 0x9e3779b97f4a7c15ull)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return eng_(); }

    // uniform in [0, n) by rejection
    int below(int n) {
        if (n <= 0) return 0;
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % (std::uint64_t)n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= lim);
        return (int)(v % (std::uint64_t)n);
    }

    bool flip() { return eng_() & 1; }

    // nonnegative rational with denominator <= maxden
    Rational rational(int maxden) {
        int den = 1 + below(maxden);
        int num = below(den + 1);
        return Rational(num, den);
    }

    // random probability vector of the given size: nonnegative rationals
    // summing to exactly 1, a bounded number of them nonzero
    std::vector<Rational> simplex(int size, int maxden = 8) {
        std::vector<Rational> w(size, 0);
        if (size == 0) return w;
        int den = 1 + below(maxden);
        // distribute `den` unit chunks over the entries
        for (int i = 0; i < den; ++i) w[below(size)] += Rational(1, den);
        return w;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

} // namespace elab
