#pragma once

#include <random>

#include "stabfree/grelem.hpp"

namespace stabfree {

// Deterministic generator for randomized property checks.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long seed) : eng(seed) {}

    long long uniform(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(eng);
    }
    bool flip() { return uniform(0, 1) == 1; }
};

CoeffElem random_coeff(const CoeffRingPtr& ring, Rng& rng, int max_terms = 3, long long height = 5);
Word random_word(unsigned ngens, Rng& rng, int max_letters = 4);
GrElem random_element(const GroupRing& ring, Rng& rng, int max_words = 3, int max_terms = 2,
                      long long height = 5);

}  // namespace stabfree
