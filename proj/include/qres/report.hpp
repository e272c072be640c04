#pragma once

#include <chrono>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qres/verify.hpp"
#include "qres/version.hpp"

namespace qres {

using json = nlohmann::ordered_json;

// --- text rendering ------------------------------------------------------

namespace detail {

// coeffs[d] is the printed coefficient of x^d; builds "8x^3+6x^2+4x".
inline std::string format_poly_terms(const std::vector<std::string>& coeffs) {
    std::string out;
    for (std::size_t d = coeffs.size(); d-- > 0;) {
        std::string c = coeffs[d];
        if (c == "0") continue;
        bool neg = !c.empty() && c[0] == '-';
        std::string mag = neg ? c.substr(1) : c;
        if (out.empty()) {
            if (neg) out += '-';
        } else {
            out += neg ? '-' : '+';
        }
        bool frac = mag.find('/') != std::string::npos;
        if (d == 0) {
            out += mag;
        } else {
            if (mag != "1") out += frac ? "(" + mag + ")" : mag;
            out += 'x';
            if (d > 1) out += '^' + std::to_string(d);
        }
    }
    return out.empty() ? "0" : out;
}

inline std::vector<std::string> coeff_strings(const PolyInt& p) {
    std::vector<std::string> out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(c.get_str());
    return out;
}

inline std::vector<std::string> coeff_strings(const PolyExact& p) {
    std::vector<std::string> out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(c.get_str());
    return out;
}

}  // namespace detail

inline std::string format_poly(const PolyInt& p) {
    return detail::format_poly_terms(detail::coeff_strings(p));
}

inline std::string format_poly(const PolyExact& p) {
    return detail::format_poly_terms(detail::coeff_strings(p));
}

inline std::string format_poly(const PolyQ2& p) { return format_poly(p.coeffs); }

inline std::string format_ratfunc(const RatFunc& f) {
    std::string out = "(" + format_poly(f.numerator) + ")/(1-x)";
    if (f.d != 1) out += "^" + std::to_string(f.d);
    return out;
}

// "0 1 6 17 25 33 44", infinity rendered last as "inf".
inline std::string format_residue_set(const ResidueSet& s) {
    std::string out;
    for (const auto& m : s.members) {
        if (!out.empty()) out += ' ';
        out += m.get_str();
    }
    if (s.has_infinity) {
        if (!out.empty()) out += ' ';
        out += "inf";
    }
    return out;
}

// Integer-coefficient cyclotomic value as a polynomial in z (= chosen root
// of unity) or in p (= 1 - z), e.g. "-305-549z".
inline std::string format_cyclo(const CycloNum& x) {
    char var = x.basis == CycloBasis::zeta ? 'z' : 'p';
    std::string out;
    for (std::size_t d = x.coeffs.size(); d-- > 0;) {
        std::string c = x.coeffs[d].get_str();
        if (c == "0") continue;
        bool neg = c[0] == '-';
        std::string mag = neg ? c.substr(1) : c;
        if (out.empty()) {
            if (neg) out += '-';
        } else {
            out += neg ? '-' : '+';
        }
        bool frac = mag.find('/') != std::string::npos;
        if (d == 0) {
            out += mag;
        } else {
            if (mag != "1") out += frac ? "(" + mag + ")" : mag;
            out += var;
            if (d > 1) out += '^' + std::to_string(d);
        }
    }
    return out.empty() ? "0" : out;
}

inline std::string symbol_str(int s) { return s >= 0 ? "+1" : "-1"; }

inline const char* status_str(PrimeStatus s) {
    switch (s) {
        case PrimeStatus::prime: return "prime";
        case PrimeStatus::probable_prime: return "probable_prime";
        default: return "composite";
    }
}

// --- JSON ---------------------------------------------------------------

// Emit JS-safe integers as numbers, anything wider as a decimal string.
inline json json_int(const BigInt& z) {
    if (z.fits_slong_p()) {
        long v = z.get_si();
        if (v <= 9007199254740992L && v >= -9007199254740992L) return json(v);
    }
    return json(z.get_str());
}

inline json to_json(const ResidueSet& s) {
    json members = json::array();
    for (const auto& m : s.members) members.push_back(json_int(m));
    return json{{"q", s.q}, {"members", members}, {"has_infinity", s.has_infinity}};
}

inline json to_json(const FormPrime& fp) {
    json w = json::array();
    for (const auto& [m, n] : fp.witnesses)
        w.push_back(json{{"m", json_int(m)}, {"n", json_int(n)}});
    return json{{"p", json_int(fp.p)},
                {"status", status_str(fp.status)},
                {"witnesses", w}};
}

inline json to_json(const PiAdicClass& c) {
    json rest = json::array();
    for (const auto& r : c.rest) rest.push_back(json_int(r));
    return json{{"q", c.q},
                {"e", c.e},
                {"a0", json_int(c.a0)},
                {"a1", json_int(c.a1)},
                {"rest", rest}};
}

inline json to_json(const EquivalenceRecord& r) {
    return json{{"p", json_int(r.p)},
                {"m", json_int(r.m)},
                {"n", json_int(r.n)},
                {"i", r.i},
                {"symbol", r.symbol},
                {"vq_li", r.vq_li},
                {"vq_fq", r.vq_fq},
                {"sq_member", r.sq_member},
                {"tq_member", r.tq_member},
                {"a0_ok", r.a0_ok},
                {"a1_mod_q2_zero", r.a1_mod_q2_zero},
                {"all_consistent", r.all_consistent}};
}

inline json to_json(const NamedCheck& c) {
    return json{{"name", c.name}, {"ok", c.ok}};
}

class ReportTimer {
  public:
    ReportTimer() : start_(std::chrono::steady_clock::now()) {}
    long long elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

// Fixed envelope shared by every command; results/counterexamples filled by
// the caller, elapsed_ms appended last so payloads diff cleanly.
inline json make_report(const std::string& command, unsigned long q, const BigInt& bound) {
    json j;
    j["version"] = version;
    j["command"] = command;
    j["q"] = q;
    j["bound"] = json_int(bound);
    j["results"] = json::array();
    j["counterexamples"] = json::array();
    return j;
}

inline void finish_report(json& j, const ReportTimer& t) {
    j["elapsed_ms"] = t.elapsed_ms();
}

inline void write_report(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open report path: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace qres
