#pragma once

#include <array>
#include <cstdint>

#include "qres/rational.hpp"

namespace qres {

enum class PrimeStatus { composite, prime, probable_prime };

namespace detail {

inline constexpr std::array<unsigned, 25> small_primes = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Strong probable-prime test to the given base. n odd, n > 2,
// n - 1 = d * 2^s with d odd.
inline bool miller_rabin_round(const BigInt& n, const BigInt& d, unsigned long s,
                               const BigInt& base) {
    BigInt b = mod_floor(base, n);
    if (b == 0) return true; // base divisible by n: no information
    BigInt x = powmod(b, d, n);
    BigInt nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

// Strong Lucas probable-prime test with Selfridge's parameter choice
// (D = 5, -7, 9, -11, ... with jacobi(D, n) = -1; P = 1, Q = (1 - D)/4).
// n odd, n > 2, not a perfect square, gcd(n, small primes) = 1.
inline bool strong_lucas_round(const BigInt& n) {
    long d_abs = 5;
    int sign = 1;
    BigInt D;
    for (;;) {
        D = sign * d_abs;
        int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && abs(D) != n) return false;
        d_abs += 2;
        sign = -sign;
    }
    BigInt Q = (1 - D) / 4;

    BigInt dd = n + 1;
    unsigned long s = mpz_scan1(dd.get_mpz_t(), 0);
    BigInt d = dd >> s;

    // half = 2^{-1} mod n
    BigInt half = (n + 1) / 2;

    // Binary ladder for U_d, V_d (P = 1); track Q^k alongside.
    BigInt U = 1, V = 1, Qk = Q; // k = 1
    long bits = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
    for (long i = bits - 2; i >= 0; --i) {
        // (U, V)_k -> (U, V)_{2k}
        U = U * V % n;
        V = (V * V - 2 * Qk) % n;
        Qk = Qk * Qk % n;
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            // (U, V)_{2k} -> (U, V)_{2k+1}
            BigInt U1 = (U + V) % n * half % n;
            BigInt V1 = (D * U + V) % n * half % n;
            U = U1;
            V = V1;
            Qk = Qk * Q % n;
        }
    }
    U = mod_floor(U, n);
    V = mod_floor(V, n);
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = (V * V - 2 * Qk) % n;
        Qk = Qk * Qk % n;
        if (mod_floor(V, n) == 0) return true;
    }
    return false;
}

} // namespace detail

// Deterministic for |n| < 2^64 (fixed Miller-Rabin base sets with proven
// coverage); Baillie-PSW beyond, reported as probable_prime.
inline PrimeStatus classify_prime(const BigInt& n) {
    if (n < 2) return PrimeStatus::composite;
    for (unsigned p : detail::small_primes) {
        if (n == p) return PrimeStatus::prime;
        if (divides(BigInt(p), n)) return PrimeStatus::composite;
    }
    if (n < 101 * 101) return PrimeStatus::prime;

    BigInt nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    BigInt d = nm1 >> s;

    bool fits64 = mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
    if (fits64) {
        // {2,7,61} is complete below 4759123141; the 12-prime set covers
        // everything below 3.3 * 10^24, in particular all of 64 bits.
        static constexpr std::array<unsigned, 3> small_set = {2, 7, 61};
        static constexpr std::array<unsigned, 12> full_set = {
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        if (n < 4759123141UL) {
            for (unsigned b : small_set)
                if (!detail::miller_rabin_round(n, d, s, b))
                    return PrimeStatus::composite;
        } else {
            for (unsigned b : full_set)
                if (!detail::miller_rabin_round(n, d, s, b))
                    return PrimeStatus::composite;
        }
        return PrimeStatus::prime;
    }

    if (!detail::miller_rabin_round(n, d, s, 2)) return PrimeStatus::composite;
    if (mpz_perfect_square_p(n.get_mpz_t())) return PrimeStatus::composite;
    if (!detail::strong_lucas_round(n)) return PrimeStatus::composite;
    return PrimeStatus::probable_prime;
}

inline bool is_prime(const BigInt& n) {
    return classify_prime(n) != PrimeStatus::composite;
}

} // namespace qres
