#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace neron {

// All arithmetic in this library is exact; Integer is the only scalar type.
using Integer = mpz_class;
using IntVec = std::vector<Integer>;

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

struct XgcdResult {
    Integer g, s, t;  // g = s*a + t*b, g >= 0
};

inline XgcdResult xgcd(const Integer& a, const Integer& b) {
    XgcdResult r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// b | a, with 0 | a only for a = 0.
inline bool divides(const Integer& b, const Integer& a) {
    if (b == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
}

// Exact quotient a/b; throws if b = 0 or b does not divide a.
inline Integer divexact(const Integer& a, const Integer& b) {
    if (!divides(b, a) || b == 0)
        throw std::invalid_argument("divexact: inexact division");
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Floor division and the matching remainder in [0, b), b > 0 required.
inline Integer fdiv(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer fmod(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace neron
