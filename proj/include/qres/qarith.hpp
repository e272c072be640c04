#pragma once

#include <stdexcept>
#include <string>

#include "qres/primality.hpp"
#include "qres/rational.hpp"

namespace qres {

// Throws unless q is an odd prime (the modulus of every residue-symbol
// computation in this library).
inline void require_odd_prime(unsigned long q, const char* where) {
    if (q < 3 || q % 2 == 0 || classify_prime(BigInt(q)) == PrimeStatus::composite)
        throw std::invalid_argument(std::string(where) + ": q must be an odd prime, got " +
                                    std::to_string(q));
}

// Inverse of j modulo q, normalized to [1, q-1].
inline BigInt mod_inverse_star(const BigInt& j, const BigInt& q) {
    BigInt r;
    if (!mpz_invert(r.get_mpz_t(), j.get_mpz_t(), q.get_mpz_t()))
        throw std::invalid_argument("mod_inverse_star: argument not invertible");
    return mod_floor(r, q);
}

inline unsigned long mod_inverse_star(unsigned long j, unsigned long q) {
    return mod_inverse_star(BigInt(j), BigInt(q)).get_ui();
}

// p = sum_{i=0}^{q-1} m^i n^{q-1-i}, evaluated by Horner's scheme.
inline BigInt eval_phi_form(const BigInt& m, const BigInt& n, unsigned long q) {
    BigInt acc = 0;
    BigInt npow = 1;
    for (unsigned long i = 0; i < q; ++i) {
        acc = acc * m + npow;
        npow *= n;
    }
    return acc;
}

namespace detail {

// Euler criterion, assuming p prime, p = 1 (mod q), gcd(a, p) = 1.
inline int qth_residue_symbol_unchecked(const BigInt& a, const BigInt& p, unsigned long q) {
    BigInt e = (p - 1) / static_cast<unsigned long>(q);
    return powmod(a, e, p) == 1 ? 1 : -1;
}

} // namespace detail

// +1 iff a is a q-th power residue mod p, via a^((p-1)/q) mod p.
inline int qth_residue_symbol(const BigInt& a, const BigInt& p, unsigned long q) {
    require_odd_prime(q, "qth_residue_symbol");
    if (!is_prime(p)) throw std::invalid_argument("qth_residue_symbol: p must be prime");
    if (mod_floor(p, q) != 1)
        throw std::invalid_argument("qth_residue_symbol: need p = 1 (mod q)");
    if (divides(p, a))
        throw std::invalid_argument("qth_residue_symbol: a divisible by p");
    return detail::qth_residue_symbol_unchecked(a, p, q);
}

// c_q = sum_{j=1}^{q-1} j * j^{-1 mod q} as an ordinary integer.
inline BigInt c_q(unsigned long q) {
    require_odd_prime(q, "c_q");
    BigInt acc = 0;
    for (unsigned long j = 1; j < q; ++j)
        acc += BigInt(j) * mod_inverse_star(j, q);
    return acc;
}

inline int legendre_symbol(const BigInt& a, const BigInt& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

struct QuadraticEulerReport {
    BigInt lhs;   // a^(q(q-1)/2) mod q^2
    int legendre; // (a|q)
    bool ok;      // lhs = legendre (mod q^2)
};

// The q = 2 analogue sanity check: a^(q(q-1)/2) = (a|q) (mod q^2)
// whenever gcd(a, q) = 1.
inline QuadraticEulerReport quadratic_euler_report(const BigInt& a, unsigned long q) {
    require_odd_prime(q, "quadratic_euler_check");
    if (divides(BigInt(q), a))
        throw std::invalid_argument("quadratic_euler_check: a divisible by q");
    BigInt q2 = BigInt(q) * q;
    BigInt lhs = powmod(a, BigInt(q) * ((q - 1) / 2), q2);
    int leg = legendre_symbol(a, BigInt(q));
    return {lhs, leg, lhs == mod_floor(BigInt(leg), q2)};
}

inline bool quadratic_euler_check(const BigInt& a, unsigned long q) {
    return quadratic_euler_report(a, q).ok;
}

} // namespace qres
