#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include "qres/polycore.hpp"
#include "qres/qarith.hpp"

namespace qres {

// Elements of Q(zeta_q) as length-(q-1) rational coordinate vectors, either
// over the power basis 1, z, ..., z^(q-2) (z = zeta_q) or over
// 1, pi, ..., pi^(q-2) (pi = 1 - zeta_q).
enum class CycloBasis { zeta, pi };

struct CycloNum {
    unsigned long q = 0;
    CycloBasis basis = CycloBasis::zeta;
    std::vector<BigRational> coeffs;
};

inline CycloNum cyclo_zero(unsigned long q, CycloBasis basis = CycloBasis::zeta) {
    if (q < 3) throw std::invalid_argument("cyclo: need q >= 3");
    return {q, basis, std::vector<BigRational>(q - 1, BigRational(0))};
}

inline CycloNum cyclo_rational(unsigned long q, const BigRational& r,
                               CycloBasis basis = CycloBasis::zeta) {
    CycloNum x = cyclo_zero(q, basis);
    x.coeffs[0] = r;
    return x;
}

inline CycloNum cyclo_one(unsigned long q, CycloBasis basis = CycloBasis::zeta) {
    return cyclo_rational(q, BigRational(1), basis);
}

// zeta^e in the zeta basis; zeta^(q-1) = -1 - zeta - ... - zeta^(q-2).
inline CycloNum cyclo_zeta_pow(unsigned long q, unsigned long e) {
    CycloNum x = cyclo_zero(q);
    unsigned long em = e % q;
    if (em <= q - 2) {
        x.coeffs[em] = 1;
    } else {
        for (auto& c : x.coeffs) c = -1;
    }
    return x;
}

inline bool cyclo_is_zero(const CycloNum& x) {
    for (const auto& c : x.coeffs)
        if (c != 0) return false;
    return true;
}

// Basis change in both directions. From zeta = 1 - pi (and symmetrically
// pi = 1 - zeta), sum_k c_k g^k with g = 1 - h expands to coordinates
// t_j = (-1)^j sum_{k>=j} C(k,j) c_k; the transform is its own inverse.
inline CycloNum with_basis(const CycloNum& x, CycloBasis target) {
    if (x.basis == target) return x;
    const unsigned long d = x.q - 1;
    std::vector<BigRational> out(d, BigRational(0));
    for (unsigned long j = 0; j < d; ++j) {
        BigRational s = 0;
        for (unsigned long k = j; k < d; ++k) s += BigRational(binomial(k, j)) * x.coeffs[k];
        out[j] = (j % 2 == 1) ? BigRational(-s) : s;
    }
    return {x.q, target, std::move(out)};
}

inline CycloNum to_pi_basis(const CycloNum& x) { return with_basis(x, CycloBasis::pi); }
inline CycloNum to_zeta_basis(const CycloNum& x) { return with_basis(x, CycloBasis::zeta); }

namespace detail {

inline void require_same_q(const CycloNum& a, const CycloNum& b, const char* where) {
    if (a.q != b.q)
        throw std::invalid_argument(std::string(where) + ": mismatched q");
}

// Fold a raw zeta-power coefficient (exponent t >= 0) into a length-(q-1)
// accumulator, applying zeta^q = 1 and zeta^(q-1) = -(1 + ... + zeta^(q-2)).
inline void fold_zeta_power(std::vector<BigRational>& acc, unsigned long q,
                            unsigned long t, const BigRational& c) {
    unsigned long e = t % q;
    if (e <= q - 2) {
        acc[e] += c;
    } else {
        for (auto& a : acc) a -= c;
    }
}

} // namespace detail

inline CycloNum cyclo_add(const CycloNum& a, const CycloNum& b) {
    detail::require_same_q(a, b, "cyclo_add");
    CycloNum bb = with_basis(b, a.basis);
    CycloNum r = a;
    for (unsigned long k = 0; k < a.q - 1; ++k) r.coeffs[k] += bb.coeffs[k];
    return r;
}

inline CycloNum cyclo_neg(const CycloNum& a) {
    CycloNum r = a;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

inline CycloNum cyclo_sub(const CycloNum& a, const CycloNum& b) {
    return cyclo_add(a, cyclo_neg(b));
}

inline CycloNum cyclo_scale(const CycloNum& a, const BigRational& s) {
    CycloNum r = a;
    for (auto& c : r.coeffs) c *= s;
    return r;
}

inline CycloNum cyclo_mul(const CycloNum& a, const CycloNum& b) {
    detail::require_same_q(a, b, "cyclo_mul");
    const unsigned long q = a.q, d = q - 1;
    CycloNum az = to_zeta_basis(a), bz = to_zeta_basis(b);
    std::vector<BigRational> acc(d, BigRational(0));
    for (unsigned long i = 0; i < d; ++i) {
        if (az.coeffs[i] == 0) continue;
        for (unsigned long j = 0; j < d; ++j) {
            if (bz.coeffs[j] == 0) continue;
            detail::fold_zeta_power(acc, q, i + j, az.coeffs[i] * bz.coeffs[j]);
        }
    }
    return with_basis({q, CycloBasis::zeta, std::move(acc)}, a.basis);
}

inline CycloNum cyclo_pow(const CycloNum& x, unsigned long e) {
    CycloNum r = cyclo_one(x.q, x.basis);
    CycloNum base = x;
    while (e > 0) {
        if (e & 1UL) r = cyclo_mul(r, base);
        e >>= 1UL;
        if (e > 0) base = cyclo_mul(base, base);
    }
    return r;
}

inline bool cyclo_eq(const CycloNum& a, const CycloNum& b) {
    detail::require_same_q(a, b, "cyclo_eq");
    CycloNum bb = with_basis(b, a.basis);
    return a.coeffs == bb.coeffs;
}

// The automorphism zeta -> zeta^j, gcd(j, q) = 1.
inline CycloNum cyclo_conjugate(const CycloNum& x, unsigned long j) {
    const unsigned long q = x.q;
    if (j % q == 0) throw std::invalid_argument("cyclo_conjugate: q | j");
    CycloNum xz = to_zeta_basis(x);
    std::vector<BigRational> acc(q - 1, BigRational(0));
    for (unsigned long k = 0; k < q - 1; ++k) {
        if (xz.coeffs[k] == 0) continue;
        detail::fold_zeta_power(acc, q, k * j, xz.coeffs[k]);
    }
    return with_basis({q, CycloBasis::zeta, std::move(acc)}, x.basis);
}

// Field norm to Q: the resultant of the representing polynomial with Phi_q,
// computed as the product of x's images under all q-1 automorphisms.
inline BigRational cyclo_norm(const CycloNum& x) {
    CycloNum prod = cyclo_one(x.q);
    for (unsigned long j = 1; j < x.q; ++j)
        prod = cyclo_mul(prod, cyclo_conjugate(x, j));
    CycloNum pz = to_zeta_basis(prod);
    for (unsigned long k = 1; k < x.q - 1; ++k)
        if (pz.coeffs[k] != 0)
            throw std::logic_error("cyclo_norm: norm did not land in Q");
    return pz.coeffs[0];
}

// v_pi with pi = 1 - zeta_q, normalized so v_pi(pi) = 1 and v_pi(q) = q-1.
// For y with integer coordinates, v_pi(y) = v_q(Norm(y)); a common
// denominator D contributes -(q-1) v_q(D).
inline long pi_valuation(const CycloNum& x) {
    if (cyclo_is_zero(x)) throw std::invalid_argument("pi_valuation: zero element");
    BigInt D = 1;
    for (const auto& c : x.coeffs) {
        BigInt l;
        mpz_lcm(l.get_mpz_t(), D.get_mpz_t(), c.get_den().get_mpz_t());
        D = l;
    }
    BigRational nr = cyclo_norm(cyclo_scale(x, BigRational(D)));
    if (nr.get_den() != 1)
        throw std::logic_error("pi_valuation: integral element with non-integer norm");
    BigInt q(x.q);
    return int_valuation(BigInt(nr.get_num()), q) -
           static_cast<long>(x.q - 1) * int_valuation(D, q);
}

// Canonical residue of Z[zeta_q] modulo pi^e for e in {q, q+1}: coordinate
// a0 lives mod q^2, a1 mod q^2 when e = q+1 (else mod q), higher
// coordinates mod q. (q^2 pi^k and q pi^k for k >= 2 all lie in pi^(q+1).)
struct PiAdicClass {
    unsigned long q = 0;
    unsigned long e = 0;
    BigInt a0, a1;
    std::vector<BigInt> rest; // coordinates 2..q-2

    friend bool operator==(const PiAdicClass&, const PiAdicClass&) = default;

    bool is_zero() const {
        if (a0 != 0 || a1 != 0) return false;
        for (const auto& c : rest)
            if (c != 0) return false;
        return true;
    }

    // Lexicographic key for set containers.
    std::vector<BigInt> key() const {
        std::vector<BigInt> k{BigInt(e), a0, a1};
        k.insert(k.end(), rest.begin(), rest.end());
        return k;
    }
};

inline CycloNum class_representative(const PiAdicClass& c) {
    CycloNum r = cyclo_zero(c.q, CycloBasis::pi);
    r.coeffs[0] = BigRational(c.a0);
    r.coeffs[1] = BigRational(c.a1);
    for (std::size_t k = 0; k < c.rest.size(); ++k)
        r.coeffs[k + 2] = BigRational(c.rest[k]);
    return r;
}

inline PiAdicClass reduce_mod_pi_power(const CycloNum& x, unsigned long e) {
    const unsigned long q = x.q;
    if (e != q && e != q + 1)
        throw std::invalid_argument("reduce_mod_pi_power: e must be q or q+1");
    CycloNum p = to_pi_basis(x);
    for (const auto& c : p.coeffs)
        if (c.get_den() != 1)
            throw std::invalid_argument("reduce_mod_pi_power: non-integer input");
    const BigInt qz(q), q2 = qz * qz;
    PiAdicClass cls;
    cls.q = q;
    cls.e = e;
    cls.a0 = mod_floor(BigInt(p.coeffs[0].get_num()), q2);
    cls.a1 = mod_floor(BigInt(p.coeffs[1].get_num()), e == q + 1 ? q2 : qz);
    for (unsigned long k = 2; k < q - 1; ++k)
        cls.rest.push_back(mod_floor(BigInt(p.coeffs[k].get_num()), qz));

    CycloNum diff = cyclo_sub(x, class_representative(cls));
    if (!cyclo_is_zero(diff) && pi_valuation(diff) < static_cast<long>(e))
        throw std::logic_error("reduce_mod_pi_power: representative not equivalent");
    return cls;
}

// q-th power classes mod pi^e per the two representative-set branches:
// for e = q, a0 must be a q-th power residue mod q^2 and all higher
// coordinates zero; for e = q+1 either a0 = 0 with q | a1 (the pi^q = -q pi
// branch) or a0 a unit q-th power with a1 = 0, higher coordinates zero.
inline bool is_qth_power_class(const PiAdicClass& c) {
    const BigInt qz(c.q), q2 = qz * qz;
    auto qth_power_residue = [&](const BigInt& a, bool unit_only) {
        for (BigInt b = 0; b < q2; ++b) {
            if (unit_only && divides(qz, b)) continue;
            if (powmod(b, qz, q2) == a) return true;
        }
        return false;
    };
    bool rest_zero = true;
    for (const auto& r : c.rest)
        if (r != 0) rest_zero = false;
    if (c.e == c.q)
        return rest_zero && c.a1 == 0 && qth_power_residue(c.a0, false);
    if (c.a0 == 0) return rest_zero && divides(qz, c.a1);
    return rest_zero && c.a1 == 0 && qth_power_residue(c.a0, true);
}

// mu = zeta^i * prod_j (m - n zeta^j)^(j*), the Kummer generator candidate.
inline CycloNum mu_element(unsigned long q, const BigInt& m, const BigInt& n,
                           unsigned long i) {
    require_odd_prime(q, "mu_element");
    if (i >= q) throw std::invalid_argument("mu_element: need i in [0, q-1]");
    CycloNum acc = cyclo_zeta_pow(q, i);
    for (unsigned long j = 1; j < q; ++j) {
        CycloNum factor = cyclo_sub(cyclo_rational(q, BigRational(m)),
                                    cyclo_scale(cyclo_zeta_pow(q, j), BigRational(n)));
        acc = cyclo_mul(acc, cyclo_pow(factor, mod_inverse_star(j, q)));
    }
    return acc;
}

// The unique index i = -n/(m-n) mod q that aligns mu with a rational
// constant mod pi^2.
inline unsigned long canonical_i(unsigned long q, const BigInt& m, const BigInt& n) {
    require_odd_prime(q, "canonical_i");
    if (divides(BigInt(q), m - n))
        throw std::invalid_argument("canonical_i: q divides m-n");
    return mod_floor(-n * mod_inverse_star(m - n, BigInt(q)), BigInt(q)).get_ui();
}

// Integer coordinates a_k of x = sum a_k pi^k (throws if not integral).
inline std::vector<BigInt> pi_coefficients(const CycloNum& x) {
    CycloNum p = to_pi_basis(x);
    std::vector<BigInt> a;
    for (const auto& c : p.coeffs) {
        if (c.get_den() != 1)
            throw std::invalid_argument("pi_coefficients: non-integer coordinate");
        a.push_back(c.get_num());
    }
    return a;
}

// Degree-q truncation of log(mu^(i)) at the canonical index:
// sum_{j=1}^{q-1} sum_{t=1}^{q} -j* (alpha (1-zeta^j))^t / t with
// alpha = -n/(m-n). Contracts: v_pi >= q, and the difference from
// (1-zeta) f_q(alpha) has v_pi >= q+1.
inline CycloNum truncated_log_mu(unsigned long q, const BigInt& m, const BigInt& n,
                                 unsigned long i) {
    require_odd_prime(q, "truncated_log_mu");
    if (divides(BigInt(q), m - n))
        throw std::invalid_argument("truncated_log_mu: q divides m-n");
    if (i != canonical_i(q, m, n))
        throw std::invalid_argument("truncated_log_mu: i must be the canonical index");
    const BigRational alpha = make_rational(-n, m - n);
    CycloNum acc = cyclo_zero(q);
    for (unsigned long j = 1; j < q; ++j) {
        const BigRational js(mod_inverse_star(j, q));
        CycloNum base = cyclo_sub(cyclo_one(q), cyclo_zeta_pow(q, j));
        CycloNum bp = cyclo_one(q);
        BigRational ap = 1;
        for (unsigned long t = 1; t <= q; ++t) {
            bp = cyclo_mul(bp, base);
            ap *= alpha;
            acc = cyclo_add(acc, cyclo_scale(bp, -js * ap / BigRational(t)));
        }
    }

    if (!cyclo_is_zero(acc) && pi_valuation(acc) < static_cast<long>(q))
        throw std::logic_error("truncated_log_mu: valuation below q");
    CycloNum target = cyclo_scale(cyclo_sub(cyclo_one(q), cyclo_zeta_pow(q, 1)),
                                  eval_fq(q, alpha));
    CycloNum diff = cyclo_sub(acc, target);
    if (!cyclo_is_zero(diff) && pi_valuation(diff) < static_cast<long>(q + 1))
        throw std::logic_error("truncated_log_mu: drift from (1-zeta) f_q(alpha)");
    return acc;
}

} // namespace qres
