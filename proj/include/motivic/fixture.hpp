#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "motivic/digest.hpp"
#include "motivic/exact.hpp"

namespace motivic {

// a + b w, w a root of the field's minimal polynomial
struct FieldElt {
    Rational a, b;
};

struct PrimeKey {
    long p = 0;
    int f = 1;
    int index = 0;
    auto operator<=>(const PrimeKey&) const = default;
};

struct BadPrime {
    PrimeKey key;
    long a_P = 0;  // -1, +1 multiplicative; 0 additive
};

struct LocalFactorOverride {
    std::string kind;
    long p = 0;
    QPoly coeffs;
};

struct OraclePeriods {
    BigComplex embedding_w;
    BigComplex omega1, omega2;
};

struct Oracle {
    std::string source;
    std::vector<OraclePeriods> periods;
    std::optional<std::string> L_E_F_1;
    int root_number = 0;
};

struct CurveData {
    std::string label;
    long disc = 0;                   // field discriminant; sign gives real/imaginary
    std::array<long, 3> min_poly{};  // w^2 + c1 w + c0 stored as {1, c1, c0}
    std::array<FieldElt, 5> ainvs{};
    long conductor_norm = 1;
    long p_max = 0;
    std::map<PrimeKey, long> ap;
    std::vector<BadPrime> bad_primes;
    std::vector<LocalFactorOverride> local_factors;
    std::optional<Oracle> oracle;
    std::string digest;  // sha256 of the canonical fixture JSON

    bool imaginary() const { return disc < 0; }
    long abs_disc() const { return disc < 0 ? -disc : disc; }
    bool ramified(long p) const { return abs_disc() % p == 0; }
    bool bad(const PrimeKey& k) const {
        for (const auto& b : bad_primes)
            if (b.key == k) return true;
        return false;
    }
    bool bad_above(long p) const {
        for (const auto& b : bad_primes)
            if (b.key.p == p) return true;
        return false;
    }
    // primes of F above p present in the table
    std::vector<std::pair<PrimeKey, long>> above(long p) const {
        std::vector<std::pair<PrimeKey, long>> out;
        for (auto it = ap.lower_bound({p, 0, 0}); it != ap.end() && it->first.p == p; ++it) out.push_back(*it);
        return out;
    }
};

class FixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational parse_rational(const nlohmann::json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_string()) return Rational(j.get<std::string>());
    } catch (const std::exception&) {
    }
    throw FixtureError(path + ": expected a rational (integer or \"p/q\" string)");
}

inline const nlohmann::json& need(const nlohmann::json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw FixtureError(path + "." + key + ": missing");
    return j.at(key);
}

inline long need_long(const nlohmann::json& j, const char* key, const std::string& path) {
    const auto& v = need(j, key, path);
    if (!v.is_number_integer()) throw FixtureError(path + "." + key + ": expected integer");
    return v.get<long>();
}

inline Real parse_real(const nlohmann::json& j, const std::string& path) {
    if (j.is_string()) {
        std::string s;
        for (char ch : j.get<std::string>())
            if (ch != ' ') s += ch;
        // PARI prints exact zeros as "0.E-77"
        if (s.rfind("0.E", 0) == 0 || s.rfind("-0.E", 0) == 0) return Real(0);
        return Real(s);
    }
    if (j.is_number()) return Real(j.get<double>());
    throw FixtureError(path + ": expected a decimal string");
}

inline BigComplex parse_complex(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw FixtureError(path + ": expected [re, im]");
    return {parse_real(j[0], path + "[0]"), parse_real(j[1], path + "[1]")};
}

inline bool hasse_ok(long a, long p, int f) {
    // a^2 <= 4 p^f
    Integer bound = 4;
    for (int i = 0; i < f; ++i) bound *= p;
    return Integer(a) * Integer(a) <= bound;
}

}  // namespace detail

inline CurveData parse_fixture(const nlohmann::json& j, const std::string& where = "$") {
    using namespace detail;
    CurveData c;
    c.digest = sha256_hex(j.dump());
    const auto& label = need(j, "label", where);
    if (!label.is_string()) throw FixtureError(where + ".label: expected string");
    c.label = label.get<std::string>();

    const auto& field = need(j, "field", where);
    c.disc = need_long(field, "disc", where + ".field");
    const auto& mp = need(field, "min_poly", where + ".field");
    if (!mp.is_array() || mp.size() != 3 || mp[0] != 1) throw FixtureError(where + ".field.min_poly: expected [1, c1, c0]");
    for (int i = 0; i < 3; ++i) c.min_poly[i] = mp[i].get<long>();
    if (c.min_poly[1] * c.min_poly[1] - 4 * c.min_poly[2] != c.disc)
        throw FixtureError(where + ".field: min_poly discriminant does not match disc");

    const auto& ai = need(j, "ainvs", where);
    if (!ai.is_array() || ai.size() != 5) throw FixtureError(where + ".ainvs: expected five coefficients");
    for (int i = 0; i < 5; ++i) {
        std::string p = where + ".ainvs[" + std::to_string(i) + "]";
        if (!ai[i].is_array() || ai[i].size() != 2) throw FixtureError(p + ": expected [a, b] meaning a + b w");
        c.ainvs[i] = {parse_rational(ai[i][0], p + "[0]"), parse_rational(ai[i][1], p + "[1]")};
    }

    c.conductor_norm = need_long(j, "conductor_norm", where);
    if (c.conductor_norm < 1) throw FixtureError(where + ".conductor_norm: must be positive");
    c.p_max = j.value("p_max", 0L);

    const auto& primes = need(j, "primes", where);
    if (!primes.is_array()) throw FixtureError(where + ".primes: expected array");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::string p = where + ".primes[" + std::to_string(i) + "]";
        const auto& e = primes[i];
        if (!e.is_array() || e.size() != 4) throw FixtureError(p + ": expected [p, f, index, a_P]");
        PrimeKey k{e[0].get<long>(), e[1].get<int>(), e[2].get<int>()};
        long a = e[3].get<long>();
        if (k.f != 1 && k.f != 2) throw FixtureError(p + ": residue degree must be 1 or 2");
        if (!hasse_ok(a, k.p, k.f))
            throw FixtureError(p + ": Hasse bound violated at p=" + std::to_string(k.p) + " f=" + std::to_string(k.f) +
                               " a_P=" + std::to_string(a));
        if (!c.ap.emplace(k, a).second)
            throw FixtureError(p + ": duplicate prime key (" + std::to_string(k.p) + "," + std::to_string(k.f) + "," +
                               std::to_string(k.index) + ")");
    }

    if (j.contains("bad_primes")) {
        const auto& bp = j.at("bad_primes");
        for (std::size_t i = 0; i < bp.size(); ++i) {
            std::string p = where + ".bad_primes[" + std::to_string(i) + "]";
            BadPrime b;
            b.key = {need_long(bp[i], "p", p), static_cast<int>(need_long(bp[i], "f", p)),
                     static_cast<int>(need_long(bp[i], "index", p))};
            b.a_P = need_long(bp[i], "a_P", p);
            if (b.a_P < -1 || b.a_P > 1) throw FixtureError(p + ".a_P: must be -1, 0 or 1");
            c.bad_primes.push_back(b);
        }
    }

    if (j.contains("local_factors")) {
        const auto& lf = j.at("local_factors");
        for (std::size_t i = 0; i < lf.size(); ++i) {
            std::string p = where + ".local_factors[" + std::to_string(i) + "]";
            LocalFactorOverride o;
            o.kind = need(lf[i], "kind", p).get<std::string>();
            o.p = need_long(lf[i], "p", p);
            const auto& cf = need(lf[i], "coeffs", p);
            for (std::size_t t = 0; t < cf.size(); ++t) o.coeffs.push_back(parse_rational(cf[t], p + ".coeffs"));
            if (o.coeffs.empty() || o.coeffs[0] != 1) throw FixtureError(p + ".coeffs: constant term must be 1");
            c.local_factors.push_back(std::move(o));
        }
    }

    // a_P below p_max must be present for every prime; checked for primes up to 200
    if (c.p_max > 0) {
        for (long p = 2; p < std::min<long>(c.p_max, 200); ++p) {
            bool prime = true;
            for (long d = 2; d * d <= p; ++d)
                if (p % d == 0) prime = false;
            if (prime && c.above(p).empty()) throw FixtureError(where + ".primes: no entry for p=" + std::to_string(p));
        }
    }

    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        Oracle orc;
        orc.source = o.value("source", "");
        if (o.contains("periods"))
            for (std::size_t i = 0; i < o.at("periods").size(); ++i) {
                std::string p = where + ".oracle.periods[" + std::to_string(i) + "]";
                const auto& e = o.at("periods")[i];
                OraclePeriods op;
                op.embedding_w = parse_complex(need(e, "embedding_w", p), p + ".embedding_w");
                const auto& om = need(e, "omega", p);
                op.omega1 = parse_complex(om.at(0), p + ".omega[0]");
                op.omega2 = parse_complex(om.at(1), p + ".omega[1]");
                orc.periods.push_back(op);
            }
        if (o.contains("L_E_F_1")) orc.L_E_F_1 = o.at("L_E_F_1").get<std::string>();
        orc.root_number = o.value("root_number", 0);
        c.oracle = orc;
    }
    return c;
}

inline CurveData load_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError(path.string() + ": cannot open");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw FixtureError(path.string() + ": " + e.what());
    }
    return parse_fixture(j, path.filename().string());
}

// a file or a directory of *.json fixtures, sorted by label
inline std::vector<CurveData> ingest(const std::filesystem::path& path) {
    std::vector<CurveData> out;
    if (std::filesystem::is_directory(path)) {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(path))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) out.push_back(load_fixture(f));
    } else {
        out.push_back(load_fixture(path));
    }
    return out;
}

inline std::filesystem::path default_fixture_dir() {
    if (const char* env = std::getenv("MOTIVIC_FIXTURES")) return env;
#ifdef MOTIVIC_DATA_DIR
    return MOTIVIC_DATA_DIR;
#else
    return "data/fixtures";
#endif
}

inline CurveData find_curve(const std::vector<CurveData>& all, const std::string& label) {
    for (const auto& c : all)
        if (c.label == label) return c;
    throw FixtureError("unknown curve label: " + label);
}

}  // namespace motivic
