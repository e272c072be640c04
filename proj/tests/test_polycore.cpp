#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qres/polycore.hpp"

using namespace qres;

namespace {

// Triangle recurrence A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1); an
// independent route to the ascent-count coefficients.
std::vector<BigInt> eulerian_row(unsigned long n) {
    std::vector<BigInt> A{BigInt(1)};
    for (unsigned long m = 1; m <= n; ++m) {
        std::vector<BigInt> B(m, BigInt(0));
        for (unsigned long k = 0; k < m; ++k) {
            if (k < A.size()) B[k] += BigInt(k + 1) * A[k];
            if (k >= 1) B[k] += BigInt(m - k) * A[k - 1];
        }
        A = std::move(B);
    }
    return A;
}

// Surjection counts t! * S(s,t) built from the set-partition recurrence
// S(s,t) = t S(s-1,t) + S(s-1,t-1).
std::vector<BigInt> surjection_row(unsigned long s) {
    std::vector<std::vector<BigInt>> S(s + 1, std::vector<BigInt>(s + 1, BigInt(0)));
    S[0][0] = 1;
    for (unsigned long i = 1; i <= s; ++i)
        for (unsigned long t = 1; t <= i; ++t)
            S[i][t] = BigInt(t) * S[i - 1][t] + S[i - 1][t - 1];
    std::vector<BigInt> out(s + 1, BigInt(0));
    BigInt fact = 1;
    out[0] = s == 0 ? BigInt(1) : BigInt(0);
    for (unsigned long t = 1; t <= s; ++t) {
        fact *= t;
        out[t] = fact * S[s][t];
    }
    return out;
}

// Brute-force surjection count: every map [s] -> [t], checked for
// surjectivity with a bitmask.
BigInt count_surjections(unsigned long s, unsigned long t) {
    if (t == 0) return s == 0 ? 1 : 0;
    BigInt count = 0;
    std::vector<unsigned long> f(s, 0);
    while (true) {
        unsigned long mask = 0;
        for (unsigned long v : f) mask |= 1ul << v;
        if (mask == (1ul << t) - 1) ++count;
        std::size_t i = 0;
        while (i < s && ++f[i] == t) f[i++] = 0;
        if (i == s) break;
    }
    return count;
}

BigRational li_value(unsigned long s, const BigRational& x) {
    RatFunc li = polylog_neg(s);
    return poly_eval(li.numerator, x) / rat_pow(1 - x, li.d);
}

const unsigned long primes_to_50[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
const unsigned long primes_to_100[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                       43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

}  // namespace

TEST_CASE("polylog numerators match the ascent triangle", "[polylog]") {
    for (unsigned long s = 1; s <= 10; ++s) {
        RatFunc li = polylog_neg(s);
        REQUIRE(li.d == s + 1);
        auto row = eulerian_row(s);
        REQUIRE(li.numerator.size() == s + 1);
        REQUIRE(li.numerator[0] == 0);
        for (unsigned long k = 1; k <= s; ++k) REQUIRE(li.numerator[k] == row[k - 1]);
    }
}

TEST_CASE("polylog numerators are palindromic and sum to s factorial", "[polylog]") {
    for (unsigned long s = 1; s <= 12; ++s) {
        RatFunc li = polylog_neg(s);
        BigInt sum = 0, fact = 1;
        for (unsigned long k = 1; k <= s; ++k) {
            REQUIRE(li.numerator[k] == li.numerator[s + 1 - k]);
            sum += li.numerator[k];
            fact *= k;
        }
        REQUIRE(sum == fact);
    }
}

TEST_CASE("small polylogs have the expected closed forms", "[polylog]") {
    RatFunc li0 = polylog_neg(0);
    CHECK(li0.numerator == PolyInt{BigInt(0), BigInt(1)});
    CHECK(li0.d == 1);
    RatFunc li2 = polylog_neg(2);
    CHECK(li2.numerator == PolyInt{BigInt(0), BigInt(1), BigInt(1)});
    CHECK(li2.d == 3);
    RatFunc li4 = polylog_neg(4);
    CHECK(li4.numerator == PolyInt{BigInt(0), BigInt(1), BigInt(11), BigInt(11), BigInt(1)});
    CHECK(li4.d == 5);
}

TEST_CASE("closed form agrees with the defining series at one half", "[polylog]") {
    CHECK(eval_polylog_neg(2, BigRational(2)) == -6);
    CHECK(eval_polylog_neg(2, BigRational(1, 2)) == 6);
    CHECK(eval_polylog_neg(1, BigRational(1, 2)) == 2);
    CHECK(eval_polylog_neg(3, BigRational(1, 2)) == 26);
    CHECK(eval_polylog_neg(4, BigRational(1, 2)) == 150);
    // sum over n of n^s x^n truncated at n = 80 must sit just below the
    // closed form, within the geometric tail bound
    const BigRational x(1, 2);
    const BigRational eps(BigInt(1), pow_ui(BigInt(2), 36));
    for (unsigned long s = 1; s <= 6; ++s) {
        BigRational partial = 0;
        for (unsigned long n = 1; n <= 80; ++n)
            partial += BigRational(pow_ui(BigInt(n), s)) * rat_pow(x, n);
        BigRational diff = eval_polylog_neg(s, x) - partial;
        REQUIRE(diff > 0);
        REQUIRE(diff < eps);
    }
}

TEST_CASE("polylog satisfies the reciprocal antisymmetry", "[polylog]") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<long> num(2, 40), den(1, 7);
    for (unsigned long s : {2ul, 4ul, 6ul}) {
        for (int trial = 0; trial < 40; ++trial) {
            BigRational x(num(rng), den(rng));
            x.canonicalize();
            if (x == 1) continue;
            BigRational inv = BigRational(1) / x;
            REQUIRE(li_value(s, x) == -li_value(s, inv));
        }
    }
}

TEST_CASE("f_3 has the expected exact coefficients", "[fq]") {
    PolyExact f = f_q_exact(3);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == 0);
    CHECK(f[1] == -5);
    CHECK(f[2] == -3);
    CHECK(f[3] == -1);
}

TEST_CASE("reduced f_q matches the published tables", "[fq]") {
    auto f3 = f_q_mod(3);
    CHECK(f3.coeffs == PolyInt{BigInt(0), BigInt(4), BigInt(6), BigInt(8)});
    auto f5 = f_q_mod(5);
    CHECK(f5.coeffs ==
          PolyInt{BigInt(0), BigInt(21), BigInt(10), BigInt(0), BigInt(15), BigInt(4)});
    auto f7 = f_q_mod(7);
    CHECK(f7.coeffs == PolyInt{BigInt(0), BigInt(15), BigInt(35), BigInt(14), BigInt(7),
                               BigInt(28), BigInt(28), BigInt(20)});
}

TEST_CASE("f_q reduces to x - x^q mod q", "[fq]") {
    for (unsigned long q : primes_to_50) {
        PolyExact f = f_q_exact(q);
        BigInt qz(q);
        for (unsigned long t = 0; t <= q; ++t) {
            BigInt c = rational_mod(f[t], qz);
            BigInt want = t == 1 ? BigInt(1) : (t == q ? BigInt(q - 1) : BigInt(0));
            REQUIRE(c == want);
        }
    }
}

TEST_CASE("f_q evaluation at rational points", "[fq]") {
    CHECK(eval_fq(3, BigRational(1)) == -9);
    CHECK(eval_fq(3, BigRational(2)) == -30);
    CHECK(eval_fq(3, BigRational(-4, 1)) == 36);  // 64 - 48 + 20
    CHECK_THROWS_AS(eval_fq(3, BigRational(1, 3)), std::invalid_argument);
    CHECK_NOTHROW(eval_fq(3, BigRational(1, 2)));
}

TEST_CASE("fixed residues match the published sets", "[sets]") {
    auto s3 = compute_Sq(3);
    CHECK(s3.members == std::vector<BigInt>{BigInt(0), BigInt(1), BigInt(5)});
    CHECK_FALSE(s3.has_infinity);
    auto s5 = compute_Sq(5);
    CHECK(s5.members ==
          std::vector<BigInt>{BigInt(0), BigInt(1), BigInt(2), BigInt(13), BigInt(24)});
    auto s7 = compute_Sq(7);
    CHECK(s7.members == std::vector<BigInt>{BigInt(0), BigInt(1), BigInt(6), BigInt(17),
                                            BigInt(25), BigInt(33), BigInt(44)});
}

TEST_CASE("vanishing loci match the published sets", "[sets]") {
    auto t3 = compute_Tq(3);
    CHECK(t3.members == std::vector<BigInt>{BigInt(0), BigInt(8)});
    CHECK(t3.has_infinity);
    auto t5 = compute_Tq(5);
    CHECK(t5.members ==
          std::vector<BigInt>{BigInt(0), BigInt(2), BigInt(13), BigInt(24)});
    CHECK(t5.has_infinity);
    auto t7 = compute_Tq(7);
    CHECK(t7.members == std::vector<BigInt>{BigInt(0), BigInt(9), BigInt(11), BigInt(24),
                                            BigInt(47), BigInt(48)});
    CHECK(t7.has_infinity);
}

TEST_CASE("fixed residues are roots of f_q mod q^2 and lift each residue once",
          "[sets]") {
    for (unsigned long q : primes_to_50) {
        auto S = compute_Sq(q);
        BigInt q2 = BigInt(q) * q;
        PolyExact f = f_q_exact(q);
        std::set<BigInt> seen;
        REQUIRE(S.members.size() == q);
        for (const auto& a : S.members) {
            // independent evaluation through exact rationals
            BigRational v = poly_eval(f, BigRational(a));
            REQUIRE(rational_mod(v, q2) == 0);
            seen.insert(mod_floor(a, BigInt(q)));
        }
        REQUIRE(seen.size() == q);  // distinct classes mod q
        REQUIRE(S.contains(BigInt(0)));
        REQUIRE(S.contains(BigInt(1)));
        REQUIRE(S.contains(BigInt((q * q + 1) / 2)));
    }
}

TEST_CASE("vanishing locus membership tracks the order of the numerator",
          "[sets]") {
    for (unsigned long q : {3ul, 5ul, 7ul}) {
        auto T = compute_Tq(q);
        BigInt q2 = BigInt(q) * q;
        for (BigInt r = 0; r < q2; ++r) {
            if (mod_floor(r, BigInt(q)) == 1) {
                REQUIRE_FALSE(T.contains(r));
                continue;
            }
            Valuation v = q_valuation(li_value(q - 1, BigRational(r)), BigInt(q));
            REQUIRE(T.contains(r) == (v >= Valuation(2)));
        }
        REQUIRE(T.has_infinity);
        // the point at infinity through a reciprocal representative
        Valuation vinf = q_valuation(li_value(q - 1, BigRational(1, q2)), BigInt(q));
        REQUIRE(vinf >= Valuation(2));
        REQUIRE(T.contains(BigInt(0)));
        REQUIRE(T.contains(q2 - 1));
    }
    for (unsigned long q : primes_to_50) CHECK_NOTHROW(compute_Tq(q));
}

TEST_CASE("difference-power coefficients match surjection counts", "[fs]") {
    for (unsigned long s = 0; s <= 8; ++s) {
        PolyExact F = F_s_poly(s);
        auto row = surjection_row(s);
        REQUIRE(F.size() == s + 1);
        for (unsigned long t = 0; t <= s; ++t) REQUIRE(F[t] == BigRational(row[t]));
    }
    // direct enumeration for the small cases
    for (unsigned long s = 1; s <= 5; ++s) {
        PolyExact F = F_s_poly(s);
        for (unsigned long t = 1; t <= s; ++t)
            REQUIRE(F[t] == BigRational(count_surjections(s, t)));
    }
    PolyExact f2 = F_s_poly(2);
    CHECK(f2 == PolyExact{BigRational(0), BigRational(1), BigRational(2)});
}

TEST_CASE("powers expand through binomials against surjection counts", "[fs]") {
    // n^s = sum_t F_s[t] C(n,t)
    for (unsigned long s = 1; s <= 8; ++s) {
        PolyExact F = F_s_poly(s);
        for (unsigned long n = 1; n <= 12; ++n) {
            BigRational acc = 0;
            for (unsigned long t = 0; t <= s; ++t)
                acc += F[t] * BigRational(binomial(n, t));
            REQUIRE(acc == BigRational(pow_ui(BigInt(n), s)));
        }
    }
}

TEST_CASE("numerator identity linking the two expansions", "[fs]") {
    for (unsigned long s : {1ul, 2ul, 6ul}) CHECK(verify_FLi_identity(s));
    for (unsigned long s = 1; s <= 10; ++s) REQUIRE(verify_FLi_identity(s));
}

TEST_CASE("fractional substitution of the polylog", "[fq]") {
    PolyInt g3 = li_fractional_substitution(3);
    CHECK(g3 == PolyInt{BigInt(0), BigInt(-1), BigInt(3), BigInt(-2)});
    for (unsigned long q : {3ul, 5ul, 7ul, 11ul, 13ul}) REQUIRE(verify_fq_li_congruence(q));
}

TEST_CASE("f_q is antisymmetric about one half mod q^2", "[fq]") {
    for (unsigned long q : primes_to_50) REQUIRE(verify_fq_symmetry(q));
}

TEST_CASE("reciprocal evaluation of the degree q-1 polylog", "[polylog]") {
    for (unsigned long q : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul})
        REQUIRE(verify_li_reciprocal(q));
}

TEST_CASE("Fermat quotient congruence with floor sums", "[congruence]") {
    // direct instance: q = 5, k = 2: (2^5-2)/5 = 6 and the floor sum is 6
    BigInt lhs = (pow_ui(BigInt(2), 5) - 2) / 5;
    BigInt rhs = 0;
    for (unsigned long j = 1; j < 5; ++j)
        rhs += mod_inverse_star(BigInt(j), BigInt(5)) * floor_div(BigInt(2 * j), BigInt(5));
    CHECK(lhs == 6);
    CHECK(mod_floor(rhs, BigInt(5)) == mod_floor(lhs, BigInt(5)));
    for (unsigned long q : primes_to_100)
        for (unsigned long k = 1; k < q; ++k) REQUIRE(lerch_check(q, BigInt(k)));
    CHECK_THROWS_AS(lerch_check(5, BigInt(5)), std::invalid_argument);
    CHECK(lerch_check(5, BigInt(7)));
    CHECK(lerch_check(5, BigInt(-3)));
}

TEST_CASE("restricted product sums land on k^q times the inverse weight sum",
          "[congruence]") {
    // q = 3, k = 1: pairs (1,1) and (2,2) give 1 + 4 = 5 = 1^3 * 5
    BigInt direct = 0;
    for (unsigned long j = 1; j < 3; ++j)
        for (unsigned long l = 1; l < 3; ++l)
            if ((j * l) % 3 == 1) direct += j * l;
    CHECK(direct == 5);
    CHECK(jl_sum_check(3, BigInt(1)));
    for (unsigned long q : primes_to_100)
        for (unsigned long k = 0; k < q; ++k) REQUIRE(jl_sum_check(q, BigInt(k)));
    // well-defined on residue classes
    CHECK(jl_sum_check(5, BigInt(12)));
    CHECK(jl_sum_check(5, BigInt(-8)));
}

TEST_CASE("polylog evaluation rejects the pole and degenerate index", "[polylog]") {
    CHECK_THROWS_AS(eval_polylog_neg(2, BigRational(1)), std::invalid_argument);
    CHECK_THROWS_AS(eval_polylog_neg(0, BigRational(2)), std::invalid_argument);
    CHECK_THROWS_AS(f_q_exact(4), std::invalid_argument);
    CHECK_THROWS_AS(compute_Sq(2), std::invalid_argument);
}
