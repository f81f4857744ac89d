#include "stabfree/random.hpp"

namespace stabfree {

CoeffElem random_coeff(const CoeffRingPtr& ring, Rng& rng, int max_terms, long long height) {
    std::vector<std::pair<CoeffElem::Exps, Int>> terms;
    int nt = static_cast<int>(rng.uniform(0, max_terms));
    for (int t = 0; t < nt; ++t) {
        CoeffElem::Exps e(ring->nvars());
        for (size_t i = 0; i < ring->nvars(); ++i)
            e[i] = static_cast<uint32_t>(rng.uniform(0, ring->relation(i).degree() - 1));
        Int c;
        if (ring->characteristic() > 0) {
            long long n = ring->characteristic().get_si();
            c = Int(static_cast<long>(rng.uniform(0, n - 1)));
        } else {
            c = Int(static_cast<long>(rng.uniform(-height, height)));
        }
        terms.emplace_back(std::move(e), std::move(c));
    }
    return CoeffElem::from_terms(ring, terms);
}

Word random_word(unsigned ngens, Rng& rng, int max_letters) {
    if (ngens == 0) return Word();
    int len = static_cast<int>(rng.uniform(0, max_letters));
    std::vector<Syllable> syls;
    for (int i = 0; i < len; ++i) {
        unsigned g = static_cast<unsigned>(rng.uniform(0, ngens - 1));
        long long e = rng.flip() ? 1 : -1;
        syls.push_back({g, e});
    }
    return Word::from_syllables(std::move(syls));
}

GrElem random_element(const GroupRing& ring, Rng& rng, int max_words, int max_terms,
                      long long height) {
    GrElem out = GrElem::zero(ring);
    int nw = static_cast<int>(rng.uniform(0, max_words));
    for (int i = 0; i < nw; ++i) {
        CoeffElem c = random_coeff(ring.coeff, rng, max_terms, height);
        if (c.is_zero()) continue;
        out = out + GrElem::term(ring, random_word(ring.ngens, rng), c);
    }
    return out;
}

}  // namespace stabfree
