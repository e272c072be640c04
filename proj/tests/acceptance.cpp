// Acceptance harness: each criterion prints exactly one [PASS]/[FAIL] line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "qres/qres.hpp"

using namespace qres;

namespace {

int failures = 0;

template <class F>
void criterion(const char* name, F&& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("[%s] %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL", name,
                static_cast<long long>(ms), detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok) ++failures;
}

bool sets_equal(const ResidueSet& s, std::vector<long> members, bool inf) {
    if (s.has_infinity != inf) return false;
    if (s.members.size() != members.size()) return false;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (s.members[i] != members[i]) return false;
    return true;
}

bool primes_equal(const std::vector<FormPrime>& hits, std::vector<long> expect,
                  std::string& detail) {
    if (hits.size() != expect.size()) {
        detail = "count " + std::to_string(hits.size()) + " vs " +
                 std::to_string(expect.size());
        return false;
    }
    for (std::size_t i = 0; i < expect.size(); ++i)
        if (hits[i].p != expect[i]) {
            detail = "mismatch at index " + std::to_string(i);
            return false;
        }
    return true;
}

const unsigned long primes_to_50[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
const unsigned long primes_50_to_100[] = {53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

std::vector<unsigned long> sieve_class(unsigned long bound, unsigned long modulus) {
    std::vector<bool> comp(bound + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        if (i % modulus == 1) out.push_back(i);
        for (unsigned long j = i * i; j <= bound && i <= bound / i; j += i) comp[j] = true;
    }
    return out;
}

}  // namespace

int main() {
    criterion("tables: reduced polynomials, numerators, residue sets", [](std::string& d) {
        bool ok = true;
        ok &= f_q_mod(3).coeffs == PolyInt{BigInt(0), BigInt(4), BigInt(6), BigInt(8)};
        ok &= f_q_mod(5).coeffs == PolyInt{BigInt(0), BigInt(21), BigInt(10), BigInt(0),
                                           BigInt(15), BigInt(4)};
        ok &= f_q_mod(7).coeffs == PolyInt{BigInt(0), BigInt(15), BigInt(35), BigInt(14),
                                           BigInt(7), BigInt(28), BigInt(28), BigInt(20)};
        if (!ok) d = "reduced polynomial tables";

        bool li = true;
        li &= polylog_neg(2).numerator == PolyInt{BigInt(0), BigInt(1), BigInt(1)};
        li &= polylog_neg(4).numerator ==
              PolyInt{BigInt(0), BigInt(1), BigInt(11), BigInt(11), BigInt(1)};
        li &= polylog_neg(6).numerator == PolyInt{BigInt(0), BigInt(1), BigInt(57),
                                                  BigInt(302), BigInt(302), BigInt(57),
                                                  BigInt(1)};
        if (!li) d = "numerator tables";
        ok &= li;

        bool sets = true;
        sets &= sets_equal(compute_Sq(3), {0, 1, 5}, false);
        sets &= sets_equal(compute_Sq(5), {0, 1, 2, 13, 24}, false);
        sets &= sets_equal(compute_Sq(7), {0, 1, 6, 17, 25, 33, 44}, false);
        sets &= sets_equal(compute_Tq(3), {0, 8}, true);
        sets &= sets_equal(compute_Tq(5), {0, 2, 13, 24}, true);
        sets &= sets_equal(compute_Tq(7), {0, 9, 11, 24, 47, 48}, true);
        if (!sets) d = "residue set tables";
        return ok && sets;
    });

    criterion("prime lists: symbol +1 searches at the reference bounds", [](std::string& d) {
        bool ok = primes_equal(search_form_primes(3, BigInt(650), 1),
                               {61, 67, 73, 103, 151, 193, 271, 307, 367, 439, 499, 523,
                                547, 577, 613, 619, 643},
                               d);
        ok &= primes_equal(search_form_primes(5, BigInt(250000), 1),
                           {31, 19141, 30941, 48871, 114641, 125591, 141961, 170101,
                            225241, 246931},
                           d);
        ok &= primes_equal(search_form_primes(7, BigInt(150000000), 1),
                           {43, 10501, 3692053, 109894303, 115928821, 138520537,
                            141903217},
                           d);
        return ok;
    });

    criterion("sweeps: every witness consistent at the reference bounds", [](std::string& d) {
        for (auto [q, b] : {std::pair<unsigned long, long>{3, 1000000},
                            {5, 250000},
                            {7, 150000000}}) {
            auto rep = sweep_equivalences(q, BigInt(b));
            if (!rep.counterexamples.empty()) {
                d = "q=" + std::to_string(q) + ": " +
                    std::to_string(rep.counterexamples.size()) + " counterexamples";
                return false;
            }
            if (rep.records.empty()) {
                d = "q=" + std::to_string(q) + ": empty sweep";
                return false;
            }
            for (const auto& r : rep.records)
                if (!r.a0_ok || !r.all_consistent) {
                    d = "q=" + std::to_string(q) + ": coefficient check failed";
                    return false;
                }
        }
        return true;
    });

    criterion("identities: congruence and set dualities across small q", [](std::string& d) {
        for (unsigned long q : primes_to_50)
            for (const auto& c : run_identity_suites(q))
                if (!c.ok) {
                    d = "q=" + std::to_string(q) + ": " + c.name;
                    return false;
                }
        for (unsigned long q : primes_50_to_100) {
            for (unsigned long k = 1; k < q; ++k)
                if (!lerch_check(q, BigInt(k))) {
                    d = "floor-sum congruence q=" + std::to_string(q);
                    return false;
                }
            for (unsigned long k = 0; k < q; ++k)
                if (!jl_sum_check(q, BigInt(k))) {
                    d = "product-sum congruence q=" + std::to_string(q);
                    return false;
                }
            BigInt q2 = BigInt(q) * q;
            for (BigInt a = 1; a < q2; ++a) {
                if (divides(BigInt(q), a)) continue;
                if (!quadratic_euler_check(a, q)) {
                    d = "quadratic Euler q=" + std::to_string(q);
                    return false;
                }
            }
        }
        // difference-power coefficients determined by the power values
        for (unsigned long s = 0; s <= 8; ++s) {
            PolyExact F = F_s_poly(s);
            for (unsigned long n = 0; n <= s + 1; ++n) {
                BigRational acc = 0;
                for (unsigned long t = 0; t < F.size(); ++t)
                    acc += F[t] * BigRational(binomial(n, t));
                BigRational expect(n == 0 && s == 0 ? BigInt(1) : pow_ui(BigInt(n), s));
                if (acc != expect) {
                    d = "power expansion s=" + std::to_string(s);
                    return false;
                }
            }
        }
        for (unsigned long s = 1; s <= 10; ++s)
            if (!verify_FLi_identity(s)) {
                d = "numerator identity s=" + std::to_string(s);
                return false;
            }
        return true;
    });

    criterion("powers: enumerated classes and logarithm contracts", [](std::string& d) {
        auto key = [](long a0, long a1) {
            return std::vector<BigInt>{BigInt(4), BigInt(a0), BigInt(a1)};
        };
        auto cubes4 = brute_force_qth_powers(3, 4);
        std::set<std::vector<BigInt>> got4;
        for (const auto& c : cubes4) got4.insert(c.key());
        std::set<std::vector<BigInt>> want4 = {key(0, 0), key(0, 3), key(0, 6),
                                               key(1, 0), key(8, 0)};
        if (got4 != want4) {
            d = "cube classes mod pi^4";
            return false;
        }
        auto cubes3 = brute_force_qth_powers(3, 3);
        std::set<BigInt> got3;
        for (const auto& c : cubes3) {
            if (c.a1 != 0) {
                d = "cube classes mod pi^3: nonzero second coordinate";
                return false;
            }
            got3.insert(c.a0);
        }
        if (got3 != std::set<BigInt>{BigInt(0), BigInt(1), BigInt(8)}) {
            d = "cube classes mod pi^3";
            return false;
        }
        for (unsigned long e : {3ul, 4ul}) {
            auto all = all_pi_adic_classes(3, e);
            std::set<std::vector<BigInt>> expect;
            for (const auto& c : all)
                if (is_qth_power_class(c)) expect.insert(c.key());
            auto brute = brute_force_qth_powers(3, e);
            std::set<std::vector<BigInt>> got;
            for (const auto& c : brute) got.insert(c.key());
            if (got != expect) {
                d = "predicate disagrees with enumeration at e=" + std::to_string(e);
                return false;
            }
        }
        for (unsigned long q : {3ul, 5ul, 7ul}) {
            for (const auto& fp : search_form_primes(q, BigInt(10000))) {
                for (const auto& [m, n] : fp.witnesses) {
                    auto rep = truncated_log_consistency(q, m, n);
                    if (!rep.contract_q || !rep.lemma_q || !rep.lemma_q1) {
                        d = "log contract at q=" + std::to_string(q) + " p=" +
                            fp.p.get_str();
                        return false;
                    }
                }
            }
        }
        return true;
    });

    criterion("crosschecks: quadratic partitions against the symbol", [](std::string& d) {
        for (unsigned long p : sieve_class(100000, 3))
            if (!euler_cubic_crosscheck(BigInt(p))) {
                d = "cubic failure at p=" + std::to_string(p);
                return false;
            }
        for (const auto& fp : search_form_primes(3, BigInt(100000)))
            for (const auto& [m, n] : fp.witnesses)
                if (!euler_cubic_witness_check(m, n)) {
                    d = "cubic witness failure at p=" + fp.p.get_str();
                    return false;
                }
        for (unsigned long p : sieve_class(10000, 5))
            if (!quintic_crosscheck(BigInt(p))) {
                d = "quintic failure at p=" + std::to_string(p);
                return false;
            }
        return true;
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
