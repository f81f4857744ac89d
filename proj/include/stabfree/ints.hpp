#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace stabfree {

// Arbitrary-precision integer. All coefficient arithmetic in the library is
// exact; nothing is allowed to silently truncate.
using Int = mpz_class;

// Remainder in [0, n) for n > 0.
inline Int mod_floor(const Int& a, const Int& n) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool divides(const Int& n, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), n.get_mpz_t()) != 0;
}

inline Int div_exact(const Int& a, const Int& n) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return q;
}

inline std::optional<Int> inverse_mod(const Int& a, const Int& n) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

inline bool is_prime(unsigned long n) {
    Int v(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(v.get_mpz_t(), 32) != 0;
}

inline std::string int_to_string(const Int& a) { return a.get_str(); }

inline Int int_from_string(const std::string& s) { return Int(s); }

}  // namespace stabfree
