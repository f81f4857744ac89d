#include "stabfree/word.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace stabfree {

Word Word::generator(unsigned gen, long long exp) {
    Word w;
    if (exp != 0) w.s_.push_back({gen, exp});
    return w;
}

Word Word::from_syllables(std::vector<Syllable> syls) {
    Word w;
    for (const auto& s : syls) {
        if (s.exp == 0) continue;
        if (!w.s_.empty() && w.s_.back().gen == s.gen) {
            w.s_.back().exp += s.exp;
            if (w.s_.back().exp == 0) w.s_.pop_back();
        } else {
            w.s_.push_back(s);
        }
    }
    return w;
}

Word Word::from_letters(const std::vector<int>& letters) {
    std::vector<Syllable> syls;
    syls.reserve(letters.size());
    for (int l : letters) {
        if (l == 0) throw std::invalid_argument("letter 0 is not a generator");
        unsigned g = static_cast<unsigned>(std::abs(l)) - 1;
        syls.push_back({g, l > 0 ? 1 : -1});
    }
    return from_syllables(std::move(syls));
}

size_t Word::length() const {
    size_t n = 0;
    for (const auto& s : s_) n += static_cast<size_t>(std::llabs(s.exp));
    return n;
}

unsigned Word::max_gen() const {
    unsigned m = 0;
    for (const auto& s : s_) m = std::max(m, s.gen + 1);
    return m;
}

Word Word::operator*(const Word& o) const {
    std::vector<Syllable> syls = s_;
    syls.insert(syls.end(), o.s_.begin(), o.s_.end());
    return from_syllables(std::move(syls));
}

Word Word::inverse() const {
    Word w;
    w.s_.reserve(s_.size());
    for (auto it = s_.rbegin(); it != s_.rend(); ++it) w.s_.push_back({it->gen, -it->exp});
    return w;
}

Word Word::pow(long long k) const {
    if (k == 0) return Word();
    Word base = k > 0 ? *this : inverse();
    unsigned long long e = static_cast<unsigned long long>(k > 0 ? k : -k);
    Word acc;
    while (e > 0) {
        if (e & 1ull) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

std::vector<int> Word::letters() const {
    std::vector<int> out;
    out.reserve(length());
    for (const auto& s : s_) {
        int l = s.exp > 0 ? static_cast<int>(s.gen) + 1 : -(static_cast<int>(s.gen) + 1);
        for (long long i = 0; i < std::llabs(s.exp); ++i) out.push_back(l);
    }
    return out;
}

std::strong_ordering Word::operator<=>(const Word& o) const {
    if (auto c = length() <=> o.length(); c != 0) return c;
    return s_ <=> o.s_;
}

std::vector<long long> abelianization(const Word& w, unsigned m) {
    std::vector<long long> v(m, 0);
    for (const auto& s : w.syllables()) {
        if (s.gen >= m) throw std::invalid_argument("generator index out of range");
        v[s.gen] += s.exp;
    }
    return v;
}

CyclicReduction cyclically_reduce(const Word& w) {
    std::vector<int> L = w.letters();
    size_t i = 0, j = L.size();
    while (j > i + 1 && L[i] == -L[j - 1]) {
        ++i;
        --j;
    }
    CyclicReduction out;
    out.conjugator = Word::from_letters(std::vector<int>(L.begin(), L.begin() + i));
    out.core = Word::from_letters(std::vector<int>(L.begin() + i, L.begin() + j));
    if (i == j) out.core = Word();
    return out;
}

Word primitive_root(const Word& w) {
    if (w.is_identity()) throw std::invalid_argument("identity has no primitive root");
    CyclicReduction cr = cyclically_reduce(w);
    std::vector<int> L = cr.core.letters();
    const size_t n = L.size();
    for (size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (size_t i = d; i < n && periodic; ++i) periodic = L[i] == L[i % d];
        if (periodic) {
            Word root = Word::from_letters(std::vector<int>(L.begin(), L.begin() + d));
            return cr.conjugator * root * cr.conjugator.inverse();
        }
    }
    return w;  // unreachable: d == n always periodic
}

std::optional<long long> power_exponent(const Word& base, const Word& target) {
    if (base.is_identity()) throw std::invalid_argument("power test needs a nontrivial base");
    if (target.is_identity()) return 0;
    for (int dir : {1, -1}) {
        Word p = dir > 0 ? base : base.inverse();
        Word acc = p;
        long long k = 1;
        while (acc.length() <= target.length()) {
            if (acc == target) return dir * k;
            acc = acc * p;
            ++k;
        }
    }
    return std::nullopt;
}

std::optional<Conjugators> solve_conjugation(const Word& g, const Word& target) {
    if (g.is_identity()) throw std::invalid_argument("solve_conjugation requires g != 1");
    if (target.is_identity()) return std::nullopt;
    CyclicReduction cg = cyclically_reduce(g);
    CyclicReduction ct = cyclically_reduce(target);
    std::vector<int> Lg = cg.core.letters();
    std::vector<int> Lt = ct.core.letters();
    if (Lg.size() != Lt.size()) return std::nullopt;
    const size_t n = Lg.size();
    for (size_t k = 0; k < n; ++k) {
        bool match = true;
        for (size_t i = 0; i < n && match; ++i) match = Lg[(k + i) % n] == Lt[i];
        if (!match) continue;
        Word pre = Word::from_letters(std::vector<int>(Lg.begin(), Lg.begin() + k));
        Word w0 = ct.conjugator * pre.inverse() * cg.conjugator.inverse();
        if (!(w0 * g * w0.inverse() == target))
            throw std::logic_error("conjugator reconstruction failed");
        return Conjugators{w0, primitive_root(g)};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// coset intersection

namespace {

struct LinearFamily {
    enum class Kind { NoSolution, Unique, Line, Unconstrained } kind;
    long long a0 = 0, b0 = 0;  // base point
    long long pa = 0, pb = 0;  // direction (Line)
};

long long egcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::llabs(a);
    }
    long long x1, y1;
    long long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// All integer solutions of alpha_i * a - beta_i * b == zeta_i, i < m.
LinearFamily solve_linear(const std::vector<long long>& alpha, const std::vector<long long>& beta,
                          const std::vector<long long>& zeta) {
    const size_t m = alpha.size();
    std::vector<size_t> rows;
    for (size_t i = 0; i < m; ++i) {
        if (alpha[i] == 0 && beta[i] == 0) {
            if (zeta[i] != 0) return {LinearFamily::Kind::NoSolution};
        } else {
            rows.push_back(i);
        }
    }
    if (rows.empty()) return {LinearFamily::Kind::Unconstrained};

    // look for an independent pair of rows
    for (size_t u = 0; u < rows.size(); ++u) {
        for (size_t v = u + 1; v < rows.size(); ++v) {
            size_t i = rows[u], j = rows[v];
            long long A1 = alpha[i], B1 = -beta[i], C1 = zeta[i];
            long long A2 = alpha[j], B2 = -beta[j], C2 = zeta[j];
            long long D = A1 * B2 - A2 * B1;
            if (D == 0) continue;
            long long an = C1 * B2 - C2 * B1;
            long long bn = A1 * C2 - A2 * C1;
            if (an % D != 0 || bn % D != 0) return {LinearFamily::Kind::NoSolution};
            long long a = an / D, b = bn / D;
            for (size_t r : rows)
                if (alpha[r] * a - beta[r] * b != zeta[r]) return {LinearFamily::Kind::NoSolution};
            LinearFamily f{LinearFamily::Kind::Unique};
            f.a0 = a;
            f.b0 = b;
            return f;
        }
    }

    // rank one: a single equation A a + B b == C, remaining rows proportional
    size_t i = rows[0];
    long long A = alpha[i], B = -beta[i], C = zeta[i];
    for (size_t r : rows)
        if (alpha[r] * C != alpha[i] * zeta[r] || beta[r] * C != beta[i] * zeta[r])
            return {LinearFamily::Kind::NoSolution};
    long long x, y;
    long long g = egcd(A, B, x, y);
    if (C % g != 0) return {LinearFamily::Kind::NoSolution};
    LinearFamily f{LinearFamily::Kind::Line};
    f.a0 = x * (C / g);
    f.b0 = y * (C / g);
    f.pa = B / g;
    f.pb = -A / g;
    return f;
}

}  // namespace

std::optional<Word> coset_intersect(const Word& w1, const Word& r1, const Word& w2,
                                    const Word& r2) {
    Word z = w1.inverse() * w2;  // seek r1^a == z * r2^b

    if (r1.is_identity() && r2.is_identity()) {
        if (z.is_identity()) return w1;
        return std::nullopt;
    }
    if (r1.is_identity()) {
        if (power_exponent(r2, z.inverse())) return w1;
        return std::nullopt;
    }
    if (r2.is_identity()) {
        if (power_exponent(r1, z)) return w2;
        return std::nullopt;
    }

    unsigned m = std::max({w1.max_gen(), r1.max_gen(), w2.max_gen(), r2.max_gen()});
    LinearFamily fam =
        solve_linear(abelianization(r1, m), abelianization(r2, m), abelianization(z, m));

    auto check = [&](long long a, long long b) -> std::optional<Word> {
        if (!(r1.pow(a) == z * r2.pow(b))) return std::nullopt;
        return w1 * r1.pow(a);
    };

    switch (fam.kind) {
        case LinearFamily::Kind::NoSolution:
            return std::nullopt;
        case LinearFamily::Kind::Unique:
            return check(fam.a0, fam.b0);
        case LinearFamily::Kind::Unconstrained:
            throw std::invalid_argument(
                "coset_intersect: roots with trivial abelianization are unsupported");
        case LinearFamily::Kind::Line:
            break;
    }

    // residual one-parameter equation g^u == Zp * h^u
    Word g = r1.pow(fam.pa);
    Word h = r2.pow(fam.pb);
    Word zp = r1.pow(-fam.a0) * z * r2.pow(fam.b0);
    auto at = [&](long long u) { return check(fam.a0 + fam.pa * u, fam.b0 + fam.pb * u); };

    if (g.is_identity() && h.is_identity()) return zp.is_identity() ? at(0) : std::nullopt;
    if (g.is_identity()) {
        auto k = power_exponent(h, zp.inverse());
        return k ? at(*k) : std::nullopt;
    }
    if (h.is_identity()) {
        auto k = power_exponent(g, zp);
        return k ? at(*k) : std::nullopt;
    }
    if (g == h) return zp.is_identity() ? at(0) : std::nullopt;

    // growth rate of |g^u| in u is the cyclically reduced length of g
    long long rate_g = static_cast<long long>(cyclically_reduce(g).core.length());
    long long rate_h = static_cast<long long>(cyclically_reduce(h).core.length());
    long long lg = static_cast<long long>(g.length());
    long long lh = static_cast<long long>(h.length());
    long long lz = static_cast<long long>(zp.length());
    long long window;
    if (rate_g != rate_h) {
        window = (lz + lg + lh) / std::llabs(rate_g - rate_h) + 2;
    } else {
        // equal growth rates: either the shift identity holds and the answer
        // is forced, or a solution repeats periodically and one sits inside
        // the window
        if (g * zp == zp * h) return zp.is_identity() ? at(0) : std::nullopt;
        window = lz + 2 * (lg + lh) + 8;
    }
    for (long long u = -window; u <= window; ++u)
        if (auto w = at(u)) return w;
    return std::nullopt;
}

}  // namespace stabfree
