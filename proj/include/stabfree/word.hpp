#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace stabfree {

struct Syllable {
    unsigned gen = 0;       // generator index, 0-based
    long long exp = 0;      // nonzero in a reduced word
    bool operator==(const Syllable&) const = default;
    auto operator<=>(const Syllable&) const = default;
};

// Reduced word in a free group: adjacent syllables have distinct generators
// and no exponent is zero. The empty word is the identity. Immutable.
class Word {
public:
    Word() = default;
    static Word generator(unsigned gen, long long exp = 1);
    static Word from_syllables(std::vector<Syllable> syls);
    static Word from_letters(const std::vector<int>& letters);  // +/-(gen+1)

    bool is_identity() const { return s_.empty(); }
    const std::vector<Syllable>& syllables() const { return s_; }
    size_t length() const;  // total letters
    unsigned max_gen() const;  // 1 + largest generator index used; 0 for identity

    Word operator*(const Word& o) const;
    Word inverse() const;
    Word pow(long long k) const;
    std::vector<int> letters() const;

    bool operator==(const Word&) const = default;
    // shortlex: by letter length, then syllable sequence
    std::strong_ordering operator<=>(const Word& o) const;

private:
    std::vector<Syllable> s_;
};

std::vector<long long> abelianization(const Word& w, unsigned m);

struct CyclicReduction {
    Word core;        // cyclically reduced
    Word conjugator;  // w == conjugator * core * conjugator^{-1}
};
CyclicReduction cyclically_reduce(const Word& w);

// Largest root: the primitive word r with w == r^k, k >= 1. Requires w != 1.
Word primitive_root(const Word& w);

// k with base^k == target, if it exists. Requires base != 1.
std::optional<long long> power_exponent(const Word& base, const Word& target);

// Full solution set of { w : w g w^{-1} == target } as the coset
// base * <root>, where root is the primitive root of g (the centralizer of g
// is exactly <root>). Requires g != 1.
struct Conjugators {
    Word base;
    Word root;
};
std::optional<Conjugators> solve_conjugation(const Word& g, const Word& target);

// A point of w1<r1> ∩ w2<r2>, or nullopt when the cosets are disjoint.
// Decided exactly via the abelianized linear system plus bounded word
// comparison along the residual one-parameter family. Roots whose
// abelianizations both vanish are outside the supported domain and raise.
std::optional<Word> coset_intersect(const Word& w1, const Word& r1, const Word& w2,
                                    const Word& r2);

}  // namespace stabfree
