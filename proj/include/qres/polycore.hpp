#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "qres/poly.hpp"
#include "qres/qarith.hpp"

namespace qres {

// N(x)/(1-x)^d with integer numerator; carrier for Li_{-s}.
struct RatFunc {
    PolyInt numerator;
    unsigned long d;
};

// Polynomial over Z/q^2, residues in [0, q^2), trailing zeros trimmed.
struct PolyQ2 {
    unsigned long q;
    PolyInt coeffs;
};

// Subset of Z/q^2 plus an optional point at infinity; members sorted ascending.
struct ResidueSet {
    unsigned long q;
    std::vector<BigInt> members;
    bool has_infinity = false;

    bool contains(const BigInt& x) const {
        return std::binary_search(members.begin(), members.end(), x);
    }
    std::size_t size() const { return members.size() + (has_infinity ? 1 : 0); }
};

// Li_{-s}(x) as an exact rational function: s-fold application of x*d/dx to
// x/(1-x). The numerator picks up the Eulerian-polynomial coefficients.
inline RatFunc polylog_neg(unsigned long s) {
    PolyInt N = {BigInt(0), BigInt(1)}; // x
    const PolyInt one_minus_x = {BigInt(1), BigInt(-1)};
    for (unsigned long k = 0; k < s; ++k) {
        // N/(1-x)^(k+1) -> x*(N'*(1-x) + (k+1)*N)/(1-x)^(k+2)
        PolyInt t = poly_add(poly_mul(poly_derivative(N), one_minus_x),
                             poly_scale(N, k + 1));
        t.insert(t.begin(), BigInt(0)); // multiply by x
        N = std::move(t);
    }
    return {N, s + 1};
}

inline BigRational eval_polylog_neg(unsigned long s, const BigRational& x) {
    if (s < 1) throw std::invalid_argument("eval_polylog_neg: need s >= 1");
    if (x == 1) throw std::invalid_argument("eval_polylog_neg: pole at x = 1");
    RatFunc li = polylog_neg(s);
    BigRational num = poly_eval(li.numerator, x);
    return num / rat_pow(1 - x, li.d);
}

// f_q(x): coefficient of x^t is (1/t) * sum over 1 <= j,l <= q-1 of
// (-1)^k C(t,k) j*l where k in [1, q-1] is jl mod q; degree q, zero
// constant term, coefficients in Z_(q).
inline PolyExact f_q_exact(unsigned long q) {
    require_odd_prime(q, "f_q_exact");
    PolyExact f(q + 1, BigRational(0));
    for (unsigned long t = 1; t <= q; ++t) {
        std::vector<BigInt> C(t + 1);
        for (unsigned long k = 0; k <= t; ++k) C[k] = binomial(t, k);
        BigInt S = 0;
        for (unsigned long j = 1; j < q; ++j) {
            for (unsigned long l = 1; l < q; ++l) {
                unsigned long k = (j * l) % q;
                if (k > t) continue; // C(t,k) = 0
                BigInt term = C[k] * (j * l);
                if (k % 2 == 1)
                    S -= term;
                else
                    S += term;
            }
        }
        f[t] = make_rational(S, BigInt(t));
        if (mpz_divisible_ui_p(BigRational(f[t]).get_den().get_mpz_t(), q))
            throw std::logic_error("f_q_exact: coefficient not q-integral");
    }
    return f;
}

inline PolyQ2 f_q_mod(unsigned long q) {
    PolyExact f = f_q_exact(q);
    BigInt q2 = BigInt(q) * q;
    PolyInt c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = rational_mod(f[i], q2);
    poly_trim(c);
    return {q, c};
}

// Exact value of f_q at a q-integral rational point.
inline BigRational eval_fq(unsigned long q, const BigRational& x) {
    if (q_valuation(x, BigInt(q)) < Valuation(0))
        throw std::invalid_argument("eval_fq: point has negative q-valuation");
    return poly_eval(f_q_exact(q), x);
}

inline BigRational eval_fq(const PolyExact& f_q, const BigInt& q, const BigRational& x) {
    if (q_valuation(x, q) < Valuation(0))
        throw std::invalid_argument("eval_fq: point has negative q-valuation");
    return poly_eval(f_q, x);
}

namespace detail {

// Horner evaluation of a PolyQ2 at an integer, reduced mod q^2 throughout.
inline BigInt eval_poly_q2(const PolyQ2& f, const BigInt& x, const BigInt& q2) {
    BigInt acc = 0;
    for (std::size_t i = f.coeffs.size(); i-- > 0;)
        acc = mod_floor(acc * x + f.coeffs[i], q2);
    return acc;
}

} // namespace detail

// S_q = {a - f_q(a) mod q^2 : a = 0..q-1}, cross-checked against the zero
// set of f_q mod q^2 (the two agree: f_q = x - x^q mod q makes every
// residue a simple root mod q, and a - f_q(a) is its Hensel lift).
inline ResidueSet compute_Sq(unsigned long q) {
    require_odd_prime(q, "compute_Sq");
    const BigInt q2 = BigInt(q) * q;
    PolyExact f = f_q_exact(q);

    std::vector<BigInt> lifted;
    for (unsigned long a = 0; a < q; ++a) {
        BigRational v = BigRational(a) - poly_eval(f, BigRational(a));
        lifted.push_back(rational_mod(v, q2));
    }
    std::sort(lifted.begin(), lifted.end());

    PolyQ2 fbar = f_q_mod(q);
    std::vector<BigInt> zeros;
    for (BigInt b = 0; b < q2; ++b)
        if (detail::eval_poly_q2(fbar, b, q2) == 0) zeros.push_back(b);

    if (lifted != zeros)
        throw std::logic_error("compute_Sq: lift route disagrees with zero set");
    if (lifted.size() != q)
        throw std::logic_error("compute_Sq: wrong cardinality");
    return {q, std::move(lifted), false};
}

// T_q: classes r in Z/q^2 with v_q(Li_{1-q}(r)) >= 2, plus infinity.
// Classes r = 1 mod q are excluded up front: there the numerator is a q-unit
// (its coefficient sum is (q-1)!) while the denominator (1-r)^q has positive
// valuation, so v_q(Li) <= -q. Infinity stands for ratios n/m with
// m/n = 0 mod q^2; by the reciprocity Li_{1-q}(1/x) = -Li_{1-q}(x) its
// membership test is v_q(Li_{1-q}(x)) >= 2 at a representative x = 0 mod q^2,
// always true since x divides the numerator. Cross-checked against the image
// of S_q under a -> a/(a-1) (the substitution linking the two test points).
inline ResidueSet compute_Tq(unsigned long q) {
    require_odd_prime(q, "compute_Tq");
    const BigInt q2 = BigInt(q) * q;
    const RatFunc li = polylog_neg(q - 1);

    std::vector<BigInt> direct;
    for (BigInt r = 0; r < q2; ++r) {
        if (mod_floor(r, BigInt(q)) == 1) continue;
        BigInt num = poly_eval(li.numerator, r);
        // (1-r)^q is a q-unit here, so v_q(Li(r)) = v_q(numerator)
        assert(!divides(BigInt(q), BigInt(1) - r));
        if (q_valuation(num, BigInt(q)) >= Valuation(2)) direct.push_back(r);
    }
    bool inf_member =
        q_valuation(eval_polylog_neg(q - 1, BigRational(q2)), BigInt(q)) >= Valuation(2);

    ResidueSet S = compute_Sq(q);
    std::vector<BigInt> image;
    bool inf_image = false;
    for (const BigInt& a : S.members) {
        if (mod_floor(a, BigInt(q)) == 1) {
            if (a != 1)
                throw std::logic_error("compute_Tq: class 1 mod q lifted away from 1");
            inf_image = true;
            continue;
        }
        image.push_back(mod_floor(a * mod_inverse_star(a - 1, q2), q2));
    }
    std::sort(image.begin(), image.end());

    if (direct != image || inf_member != inf_image)
        throw std::logic_error("compute_Tq: direct enumeration disagrees with S_q image");
    if (direct.size() + (inf_member ? 1 : 0) != q)
        throw std::logic_error("compute_Tq: wrong cardinality");
    return {q, std::move(direct), inf_member};
}

// F_s(x): coefficient of x^t counts surjections of an s-set onto a t-set,
// via sum_{k=0}^t (-1)^(t-k) C(t,k) k^s.
inline PolyExact F_s_poly(unsigned long s) {
    PolyExact F(s + 1, BigRational(0));
    for (unsigned long t = 0; t <= s; ++t) {
        BigInt acc = 0;
        for (unsigned long k = 0; k <= t; ++k) {
            BigInt term = binomial(t, k) * pow_ui(BigInt(k), s);
            if ((t - k) % 2 == 1)
                acc -= term;
            else
                acc += term;
        }
        F[t] = BigRational(acc);
    }
    poly_trim(F);
    return F;
}

namespace detail {

inline PolyInt to_int_poly(const PolyExact& p, const char* where) {
    PolyInt r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (BigRational(p[i]).get_den() != 1)
            throw std::logic_error(std::string(where) + ": non-integer coefficient");
        r[i] = BigRational(p[i]).get_num();
    }
    poly_trim(r);
    return r;
}

} // namespace detail

// (x+1)*F_s(x) = Li_{-s}(x/(1+x)) cleared of its (1+x) powers, i.e.
// sum_k n_k x^k (1+x)^(s+1-k) with n the Li numerator. Exact identity.
inline bool verify_FLi_identity(unsigned long s) {
    if (s < 1) throw std::invalid_argument("verify_FLi_identity: need s >= 1");
    RatFunc li = polylog_neg(s);
    PolyInt rhs;
    for (std::size_t k = 0; k < li.numerator.size(); ++k) {
        if (li.numerator[k] == 0) continue;
        PolyInt term = poly_shifted_binomial_power(k, BigInt(1), s + 1 - k);
        rhs = poly_add(rhs, poly_scale(term, li.numerator[k]));
    }
    PolyInt F = detail::to_int_poly(F_s_poly(s), "verify_FLi_identity");
    PolyInt lhs = poly_mul(PolyInt{BigInt(1), BigInt(1)}, F);
    return poly_equal(lhs, rhs);
}

// The polynomial Li_{1-q}(-x/(1-x)) = sum_k n_k (-1)^k x^k (1-x)^(q-k):
// substituting z = -x/(1-x) makes 1-z = 1/(1-x), so the Li denominator
// cancels exactly.
inline PolyInt li_fractional_substitution(unsigned long q) {
    RatFunc li = polylog_neg(q - 1);
    PolyInt G;
    for (std::size_t k = 0; k < li.numerator.size(); ++k) {
        if (li.numerator[k] == 0) continue;
        PolyInt term = poly_shifted_binomial_power(k, BigInt(-1), q - k);
        BigInt c = (k % 2 == 1) ? BigInt(-li.numerator[k]) : li.numerator[k];
        G = poly_add(G, poly_scale(term, c));
    }
    return G;
}

// f_q(x) = c_q * Li_{1-q}(-x/(1-x)) mod q^2, coefficientwise.
inline bool verify_fq_li_congruence(unsigned long q) {
    require_odd_prime(q, "verify_fq_li_congruence");
    const BigInt q2 = BigInt(q) * q;
    PolyInt G = li_fractional_substitution(q);
    PolyExact f = f_q_exact(q);
    BigInt cq = c_q(q);
    for (std::size_t t = 0; t <= q; ++t) {
        BigInt g = t < G.size() ? G[t] : BigInt(0);
        BigInt lhs = mod_floor(cq * g, q2);
        BigInt rhs = t < f.size() ? rational_mod(f[t], q2) : BigInt(0);
        if (lhs != rhs) return false;
    }
    return true;
}

// f_q(1-x) + f_q(x) = 0 mod q^2 as a polynomial identity.
inline bool verify_fq_symmetry(unsigned long q) {
    require_odd_prime(q, "verify_fq_symmetry");
    const BigInt q2 = BigInt(q) * q;
    PolyExact f = f_q_exact(q);
    PolyExact sum = poly_add(poly_compose(f, PolyExact{BigRational(1), BigRational(-1)}), f);
    for (const BigRational& c : sum)
        if (rational_mod(c, q2) != 0) return false;
    return true;
}

// Li_{1-q}(1/x) = -Li_{1-q}(x): numerator palindrome plus evaluation at
// q+2 sample points.
inline bool verify_li_reciprocal(unsigned long q) {
    require_odd_prime(q, "verify_li_reciprocal");
    RatFunc li = polylog_neg(q - 1);
    const PolyInt& N = li.numerator;
    if (poly_degree(N) != static_cast<long>(q - 1) || N[0] != 0) return false;
    for (unsigned long k = 1; k < q; ++k)
        if (N[k] != N[q - k]) return false;
    for (unsigned long x = 2; x <= q + 3; ++x) {
        BigRational lhs = eval_polylog_neg(q - 1, make_rational(BigInt(1), BigInt(x)));
        BigRational rhs = -eval_polylog_neg(q - 1, BigRational(x));
        if (lhs != rhs) return false;
    }
    return true;
}

// Lerch's Fermat-quotient congruence: (k^q - k)/q = sum_j j^{-1} floor(jk/q) mod q.
inline bool lerch_check(unsigned long q, const BigInt& k) {
    require_odd_prime(q, "lerch_check");
    if (divides(BigInt(q), k))
        throw std::invalid_argument("lerch_check: q divides k");
    BigInt num = pow_ui(k, q) - k;
    assert(divides(BigInt(q), num));
    BigInt lhs = num / BigInt(q);
    BigInt rhs = 0;
    for (unsigned long j = 1; j < q; ++j)
        rhs += BigInt(mod_inverse_star(j, q)) * floor_div(BigInt(j) * k, BigInt(q));
    return mod_floor(lhs, BigInt(q)) == mod_floor(rhs, BigInt(q));
}

// sum of j*l over pairs with jl = k mod q equals k^q * c_q mod q^2.
inline bool jl_sum_check(unsigned long q, const BigInt& k) {
    require_odd_prime(q, "jl_sum_check");
    const BigInt q2 = BigInt(q) * q;
    unsigned long kmod = mod_floor(k, BigInt(q)).get_ui();
    BigInt lhs = 0;
    for (unsigned long j = 1; j < q; ++j)
        for (unsigned long l = 1; l < q; ++l)
            if ((j * l) % q == kmod) lhs += j * l;
    BigInt rhs = pow_ui(k, q) * c_q(q);
    return mod_floor(lhs, q2) == mod_floor(rhs, q2);
}

} // namespace qres
