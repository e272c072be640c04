#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qres/qres.hpp"

using namespace qres;

namespace {

BigInt parse_bigint(const std::string& s, const char* what) {
    BigInt z;
    if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument(std::string(what) + ": not a decimal integer: " + s);
    return z;
}

BigRational parse_rational(const std::string& s, const char* what) {
    BigRational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument(std::string(what) + ": expected N or N/D: " + s);
    if (r.get_den() == 0)
        throw std::invalid_argument(std::string(what) + ": zero denominator: " + s);
    r.canonicalize();
    return r;
}

void emit(json& j, const std::string& path, const ReportTimer& t) {
    if (path.empty()) return;
    finish_report(j, t);
    write_report(j, path);
}

// Primes r mod modulus in [2, bound], ascending. bound must fit a ulong.
std::vector<unsigned long> primes_in_class(unsigned long bound, unsigned long modulus,
                                           unsigned long r) {
    std::vector<bool> comp(bound + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        if (i % modulus == r) out.push_back(i);
        for (unsigned long j = i * i; j <= bound && i <= bound / i; j += i) comp[j] = true;
    }
    return out;
}

int run_fq(unsigned long q, const std::string& json_path) {
    ReportTimer t;
    PolyQ2 fb = f_q_mod(q);
    PolyExact fe = f_q_exact(q);
    std::cout << "fq_mod_q2\t" << format_poly(fb) << "\n";
    std::cout << "fq_exact\t" << format_poly(fe) << "\n";
    json j = make_report("fq", q, BigInt(0));
    json coeffs = json::array(), exact = json::array();
    for (const auto& c : fb.coeffs) coeffs.push_back(json_int(c));
    for (const auto& c : fe) exact.push_back(c.get_str());
    j["results"].push_back(json{{"coeffs_mod_q2", coeffs}, {"coeffs_exact", exact}});
    emit(j, json_path, t);
    return 0;
}

int run_set(const char* name, unsigned long q, const std::string& json_path) {
    ReportTimer t;
    ResidueSet s = std::string(name) == "sq" ? compute_Sq(q) : compute_Tq(q);
    std::cout << format_residue_set(s) << "\n";
    json j = make_report(name, q, BigInt(0));
    j["results"].push_back(to_json(s));
    emit(j, json_path, t);
    return 0;
}

int run_li(unsigned long s, const std::string& at, const std::string& json_path) {
    ReportTimer t;
    RatFunc li = polylog_neg(s);
    json j = make_report("li", s, BigInt(0));
    json row{{"s", s}};
    json num = json::array();
    for (const auto& c : li.numerator) num.push_back(json_int(c));
    row["numerator"] = num;
    row["denominator_power"] = li.d;
    if (at.empty()) {
        std::cout << format_ratfunc(li) << "\n";
    } else {
        BigRational x = parse_rational(at, "--at");
        if (x == 1) throw std::invalid_argument("--at: pole at x = 1");
        BigRational v = poly_eval(li.numerator, x) / rat_pow(1 - x, li.d);
        std::cout << v.get_str() << "\n";
        row["at"] = at;
        row["value"] = v.get_str();
    }
    j["results"].push_back(row);
    emit(j, json_path, t);
    return 0;
}

int run_symbol(unsigned long q, const std::string& ps, const std::string& as,
               const std::string& json_path) {
    ReportTimer t;
    BigInt p = parse_bigint(ps, "--p");
    BigInt a = as.empty() ? BigInt(q) : parse_bigint(as, "--a");
    int s = qth_residue_symbol(a, p, q);
    std::cout << symbol_str(s) << "\n";
    json j = make_report("symbol", q, BigInt(0));
    j["results"].push_back(json{{"p", json_int(p)},
                                {"a", json_int(a)},
                                {"status", status_str(classify_prime(p))},
                                {"symbol", s}});
    emit(j, json_path, t);
    return 0;
}

int run_mu(unsigned long q, const std::string& ms, const std::string& ns,
           const std::string& json_path) {
    ReportTimer t;
    BigInt m = parse_bigint(ms, "--m");
    BigInt n = parse_bigint(ns, "--n");
    BigInt p = eval_phi_form(m, n, q);
    unsigned long i = canonical_i(q, m, n);
    CycloNum mu = mu_element(q, m, n, i);
    std::vector<BigInt> a = pi_coefficients(mu);
    PiAdicClass cls = reduce_mod_pi_power(mu, q + 1);

    std::cout << "p\t" << p << "\t" << status_str(classify_prime(p)) << "\n";
    std::cout << "i\t" << i << "\n";
    std::cout << "mu\t" << format_cyclo(mu) << "\n";
    std::string astr;
    for (const auto& ak : a) {
        if (!astr.empty()) astr += ' ';
        astr += ak.get_str();
    }
    std::cout << "pi_coeffs\t" << astr << "\n";
    std::cout << "class\te=" << cls.e << "\ta0=" << cls.a0 << "\ta1=" << cls.a1 << "\n";
    std::cout << "qth_power_class\t" << (is_qth_power_class(cls) ? "true" : "false") << "\n";

    json j = make_report("mu", q, BigInt(0));
    json ja = json::array();
    for (const auto& ak : a) ja.push_back(json_int(ak));
    j["results"].push_back(json{{"p", json_int(p)},
                                {"m", json_int(m)},
                                {"n", json_int(n)},
                                {"i", i},
                                {"pi_coeffs", ja},
                                {"class", to_json(cls)},
                                {"qth_power_class", is_qth_power_class(cls)}});
    emit(j, json_path, t);
    return 0;
}

int run_search(unsigned long q, const std::string& bs, const std::string& filter,
               const std::string& json_path) {
    ReportTimer t;
    BigInt bound = parse_bigint(bs, "--max-p");
    std::optional<int> f;
    if (filter == "+1") f = 1;
    if (filter == "-1") f = -1;
    auto primes = search_form_primes(q, bound, f);
    for (const auto& fp : primes) {
        int s = detail::qth_residue_symbol_unchecked(BigInt(q), fp.p, q);
        std::cout << fp.p << "\t" << symbol_str(s) << "\t" << status_str(fp.status) << "\t";
        std::string w;
        for (const auto& [m, n] : fp.witnesses) {
            if (!w.empty()) w += ' ';
            w += m.get_str() + "," + n.get_str();
        }
        std::cout << w << "\n";
    }
    json j = make_report("search", q, bound);
    if (!filter.empty()) j["filter"] = filter;
    for (const auto& fp : primes) j["results"].push_back(to_json(fp));
    emit(j, json_path, t);
    return 0;
}

int run_verify(unsigned long q, const std::string& bs, unsigned long threads,
               const std::string& json_path) {
    ReportTimer t;
    BigInt bound = parse_bigint(bs, "--max-p");
    SweepReport rep = sweep_equivalences(q, bound, threads);
    auto checks = run_identity_suites(q);
    bool identities_ok = true;
    for (const auto& c : checks)
        if (!c.ok) identities_ok = false;

    std::cout << "q\t" << q << "\n";
    std::cout << "bound\t" << bound << "\n";
    std::cout << "primes\t" << rep.prime_count << "\n";
    std::cout << "witnesses\t" << rep.witness_count << "\n";
    std::cout << "plus_primes\t" << rep.plus_primes.size() << "\n";
    std::cout << "probable\t" << (rep.any_probable ? "yes" : "no") << "\n";
    std::cout << "counterexamples\t" << rep.counterexamples.size() << "\n";
    for (const auto& c : checks)
        std::cout << "identity:" << c.name << "\t" << (c.ok ? "pass" : "fail") << "\n";
    bool ok = identities_ok && rep.counterexamples.empty();
    std::cout << "result\t" << (ok ? "PASS" : "FAIL") << "\n";

    json j = make_report("verify", q, bound);
    j["results"].push_back(json{{"primes", rep.prime_count},
                                {"witnesses", rep.witness_count},
                                {"plus_primes", rep.plus_primes.size()},
                                {"any_probable", rep.any_probable},
                                {"threads", threads}});
    for (const auto& c : checks) j["results"].push_back(to_json(c));
    for (const auto& r : rep.counterexamples) j["counterexamples"].push_back(to_json(r));
    emit(j, json_path, t);
    return ok ? 0 : 1;
}

int run_crosscheck(bool cubic, bool quintic, const std::string& bs,
                   const std::string& json_path) {
    ReportTimer t;
    if (cubic == quintic)
        throw std::invalid_argument("crosscheck: pass exactly one of --cubic/--quintic");
    BigInt bound = parse_bigint(bs, "--max-p");
    if (!bound.fits_ulong_p())
        throw std::invalid_argument("crosscheck: --max-p too large");
    unsigned long b = bound.get_ui();
    unsigned long modulus = cubic ? 3 : 5;
    auto ps = primes_in_class(b, modulus, 1);
    unsigned long checked = 0, failures = 0;
    json j = make_report("crosscheck", modulus, bound);
    j["mode"] = cubic ? "cubic" : "quintic";
    for (unsigned long p : ps) {
        bool ok = cubic ? euler_cubic_crosscheck(BigInt(p)) : quintic_crosscheck(BigInt(p));
        ++checked;
        if (!ok) {
            ++failures;
            std::cout << "FAIL\t" << p << "\n";
            j["counterexamples"].push_back(json{{"p", p}});
        }
    }
    std::cout << "mode\t" << (cubic ? "cubic" : "quintic") << "\n";
    std::cout << "max_p\t" << b << "\n";
    std::cout << "primes_checked\t" << checked << "\n";
    std::cout << "failures\t" << failures << "\n";
    std::cout << "result\t" << (failures == 0 ? "PASS" : "FAIL") << "\n";
    j["results"].push_back(json{{"primes_checked", checked}, {"failures", failures}});
    emit(j, json_path, t);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qres: power residue symbols over special-form primes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    unsigned long q = 3, s = 2, threads = 1;
    std::string p_str, a_str, m_str, n_str, bound_str, at_str, filter, json_path;
    bool cubic = false, quintic = false;
    int rc = 0;

    auto add_json = [&](CLI::App* sub) {
        sub->add_option("--json", json_path, "write a JSON report to this path");
    };

    auto* c_fq = app.add_subcommand("fq", "print f_q mod q^2 and its exact form");
    c_fq->add_option("--q", q, "odd prime q")->required();
    add_json(c_fq);
    c_fq->callback([&] { rc = run_fq(q, json_path); });

    auto* c_sq = app.add_subcommand("sq", "print the fixed-residue set S_q mod q^2");
    c_sq->add_option("--q", q, "odd prime q")->required();
    add_json(c_sq);
    c_sq->callback([&] { rc = run_set("sq", q, json_path); });

    auto* c_tq = app.add_subcommand("tq", "print the vanishing-locus set T_q mod q^2");
    c_tq->add_option("--q", q, "odd prime q")->required();
    add_json(c_tq);
    c_tq->callback([&] { rc = run_set("tq", q, json_path); });

    auto* c_li = app.add_subcommand("li", "negative-index polylogarithm as a rational function");
    c_li->add_option("--s", s, "index: prints Li_{-s}")->required();
    c_li->add_option("--at", at_str, "evaluate at a rational point N or N/D");
    add_json(c_li);
    c_li->callback([&] { rc = run_li(s, at_str, json_path); });

    auto* c_sym = app.add_subcommand("symbol", "q-th power residue symbol (a/p)_q");
    c_sym->add_option("--q", q, "odd prime q")->required();
    c_sym->add_option("--p", p_str, "prime p = 1 mod q")->required();
    c_sym->add_option("--a", a_str, "base a (default: q itself)");
    add_json(c_sym);
    c_sym->callback([&] { rc = run_symbol(q, p_str, a_str, json_path); });

    auto* c_mu = app.add_subcommand("mu", "Kummer-style generator for a witness pair");
    c_mu->add_option("--q", q, "odd prime q")->required();
    c_mu->add_option("--m", m_str, "witness m")->required();
    c_mu->add_option("--n", n_str, "witness n")->required();
    add_json(c_mu);
    c_mu->callback([&] { rc = run_mu(q, m_str, n_str, json_path); });

    auto* c_se = app.add_subcommand("search", "enumerate special-form primes up to a bound");
    c_se->add_option("--q", q, "odd prime q")->required();
    c_se->add_option("--max-p", bound_str, "upper bound for p")->required();
    c_se->add_option("--filter", filter, "keep only symbol +1 or -1")
        ->check(CLI::IsMember({"+1", "-1"}));
    add_json(c_se);
    c_se->callback([&] { rc = run_search(q, bound_str, filter, json_path); });

    auto* c_ve = app.add_subcommand("verify", "sweep all witnesses and run the identity suites");
    c_ve->add_option("--q", q, "odd prime q")->required();
    c_ve->add_option("--max-p", bound_str, "upper bound for p")->required();
    c_ve->add_option("--threads", threads, "worker threads for the sweep");
    add_json(c_ve);
    c_ve->callback([&] { rc = run_verify(q, bound_str, threads, json_path); });

    auto* c_cc = app.add_subcommand("crosscheck", "compare symbols against quadratic-form criteria");
    c_cc->add_flag("--cubic", cubic, "q = 3 criterion via 4p = L^2 + 27M^2");
    c_cc->add_flag("--quintic", quintic, "q = 5 criterion via 16p = x^2+50u^2+50v^2+125w^2");
    c_cc->add_option("--max-p", bound_str, "upper bound for p")->required();
    add_json(c_cc);
    c_cc->callback([&] { rc = run_crosscheck(cubic, quintic, bound_str, json_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
