#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qres {

// Exact arbitrary-precision integers and rationals. GMP supplies the
// representation; rationals are kept canonical (den > 0, gcd(num,den) = 1)
// by mpq_canonicalize on every constructing path.
using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt pow_ui(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt powmod(const BigInt& base, const BigInt& exp, const BigInt& mod) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

// Canonical residue in [0, m).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const BigInt& d, const BigInt& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

inline BigRational rat_pow(const BigRational& x, unsigned long e) {
    // num and den stay coprime under powering, so no canonicalization cost
    return make_rational(pow_ui(BigInt(x.get_num()), e), pow_ui(BigInt(x.get_den()), e));
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// lcm(1, 2, ..., n)
inline BigInt lcm_upto(unsigned long n) {
    BigInt l = 1;
    for (unsigned long i = 2; i <= n; ++i) {
        BigInt g;
        mpz_lcm_ui(g.get_mpz_t(), l.get_mpz_t(), i);
        l = g;
    }
    return l;
}

// Value of an additive q-adic valuation: a finite integer or +infinity
// (the valuation of 0). Infinity compares above every finite value, so
// "r in q^2 Z_(q)" is the single comparison q_valuation(r, q) >= 2.
class Valuation {
public:
    Valuation(long v) : inf_(false), v_(v) {}
    static Valuation infinity() {
        Valuation v(0);
        v.inf_ = true;
        return v;
    }

    bool is_infinite() const { return inf_; }
    long value() const {
        if (inf_) throw std::logic_error("Valuation::value on infinity");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.inf_ && b.inf_) return std::strong_ordering::equal;
        if (a.inf_) return std::strong_ordering::greater;
        if (b.inf_) return std::strong_ordering::less;
        return a.v_ <=> b.v_;
    }

    // Infinity is absorbing, matching v(x*y) = v(x) + v(y) with x or y = 0.
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return infinity();
        return Valuation(a.v_ + b.v_);
    }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    bool inf_;
    long v_;
};

// Multiplicity of the prime q in a nonzero integer.
inline long int_valuation(const BigInt& n, const BigInt& q) {
    if (n == 0) throw std::invalid_argument("int_valuation: zero input");
    BigInt rem;
    return static_cast<long>(
        mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t()));
}

// v_q on Q, normalized so v_q(q) = 1; v_q(0) = +infinity.
inline Valuation q_valuation(const BigRational& r, const BigInt& q) {
    if (r == 0) return Valuation::infinity();
    return Valuation(int_valuation(BigInt(r.get_num()), q) -
                     int_valuation(BigInt(r.get_den()), q));
}

inline Valuation q_valuation(const BigInt& n, const BigInt& q) {
    if (n == 0) return Valuation::infinity();
    return Valuation(int_valuation(n, q));
}

// Image of r in Z/M under num * den^{-1}; defined only when gcd(den, M) = 1.
inline BigInt rational_mod(const BigRational& r, const BigInt& M) {
    BigInt den(r.get_den()), inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()))
        throw std::domain_error("rational_mod: denominator not invertible");
    return mod_floor(BigInt(r.get_num()) * inv, M);
}

} // namespace qres
