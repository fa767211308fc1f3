#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace motivic {

// Formal products of periods modulo Q^x.
//
// Symbols are plain strings.  Three of them are radicands (D, Delta_Ad(f), Delta_Ad(f0)):
// their exponents may be half-integers and only the fractional part survives canonicalisation.
// "i" only keeps its parity.  Everything else must carry an integer exponent.

using Exponent = boost::rational<long>;

namespace sym {
inline const std::string pi = "pi";
inline const std::string i = "i";
inline const std::string D = "D";
inline const std::string DeltaF = "Delta_Ad(f)";
inline const std::string DeltaF0 = "Delta_Ad(f0)";
inline const std::string cplus = "c+";
inline const std::string cminus = "c-";
inline const std::string cW = "cW";
inline const std::string dW = "dW";
inline const std::string u1 = "u1";
inline const std::string u2 = "u2";
inline const std::string petW = "<fW,fW>";
inline const std::string petF = "<f,f>";
inline const std::string petF0 = "<f0,f0>";
inline const std::string SD = "<omega,eta>_SD";
inline const std::string regAd = "<rD(alpha),delta>";
inline const std::string regSym = "<rD(alpha'),delta'>";
inline const std::string cplusSym2 = "c+(Sym2)";
inline const std::string cminusSym2 = "c-(Sym2)";
inline const std::string LAd1 = "L(Ad,1)";
inline const std::string LamAd1 = "Lambda(Ad,1)";
inline const std::string dLAd0 = "L'(Ad,0)";
inline const std::string dLSym2 = "L'(Sym2,k-1)";
inline const std::string LAd0f0 = "L(f0,Ad,1)";
inline const std::string LAs2 = "L(f0,As,2)";
inline const std::string Lf0 = "L(f0,1)";
inline const std::string LspinP = "L(f,psi+,k-1)";
inline const std::string LspinM = "L(f,psi-,k-1)";
inline const std::string LamSpinP = "Lambda(f,psi+,k-1)";
inline const std::string LamSpinM = "Lambda(f,psi-,k-1)";
inline const std::string deltaDual = "delta^v";
inline const std::string etaDual = "eta^v";
inline const std::string pairDelta = "<delta,->";
inline const std::string pairEta = "<eta,->";

inline const std::vector<std::string>& order() {
    static const std::vector<std::string> o = {
        pi, i, D, DeltaF, DeltaF0, cplus, cminus, cW, dW, u1, u2, petW, petF, petF0, SD, regAd, regSym,
        cplusSym2, cminusSym2, LAd1, LamAd1, dLAd0, dLSym2, LAd0f0, LAs2, Lf0, LspinP, LspinM, LamSpinP,
        LamSpinM, deltaDual, etaDual, pairDelta, pairEta};
    return o;
}
inline bool is_radicand(const std::string& s) { return s == D || s == DeltaF || s == DeltaF0; }
}  // namespace sym

struct SymbolLess {
    bool operator()(const std::string& a, const std::string& b) const {
        const auto& o = sym::order();
        auto ia = std::find(o.begin(), o.end(), a), ib = std::find(o.begin(), o.end(), b);
        if (ia != ib) return ia < ib;  // unknown symbols sort after the alphabet
        return a < b;
    }
};

inline std::string exponent_str(const Exponent& e) {
    std::ostringstream s;
    s << e.numerator();
    if (e.denominator() != 1) s << '/' << e.denominator();
    return s.str();
}

inline Exponent parse_exponent(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Exponent(std::stol(s));
        return Exponent(std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent '" + s + "'");
    }
}

struct PeriodExpr {
    std::map<std::string, Exponent, SymbolLess> e;

    PeriodExpr() = default;
    PeriodExpr(std::initializer_list<std::pair<const std::string, Exponent>> l) {
        for (const auto& [k, v] : l) mul(k, v);
    }
    static PeriodExpr atom(const std::string& s, Exponent n = 1) { PeriodExpr r; r.mul(s, n); return r; }
    // (2 pi i)^n, rational 2^n dropped
    static PeriodExpr two_pi_i(long n) { return PeriodExpr{{sym::pi, n}, {sym::i, n}}; }

    Exponent get(const std::string& s) const { auto it = e.find(s); return it == e.end() ? Exponent(0) : it->second; }
    PeriodExpr& mul(const std::string& s, Exponent n) {
        if (n.numerator() == 0) return *this;
        auto& v = e[s];
        v += n;
        if (v.numerator() == 0) e.erase(s);
        return *this;
    }
    PeriodExpr& operator*=(const PeriodExpr& o) { for (const auto& [k, v] : o.e) mul(k, v); return *this; }
    friend PeriodExpr operator*(PeriodExpr a, const PeriodExpr& b) { return a *= b; }
    PeriodExpr pow(Exponent n) const { PeriodExpr r; for (const auto& [k, v] : e) r.mul(k, v * n); return r; }
    PeriodExpr inv() const { return pow(-1); }
    friend PeriodExpr operator/(const PeriodExpr& a, const PeriodExpr& b) { return a * b.inv(); }
    bool trivial() const { return e.empty(); }
    friend bool operator==(const PeriodExpr& a, const PeriodExpr& b) { return a.e == b.e; }
    friend bool operator!=(const PeriodExpr& a, const PeriodExpr& b) { return !(a == b); }

    std::string str() const {
        if (e.empty()) return "1";
        std::string out;
        for (const auto& [k, v] : e) {
            if (!out.empty()) out += " * ";
            if (sym::is_radicand(k)) {
                out += "sqrt(" + k + ")";
                Exponent w = v * 2;
                if (w != Exponent(1)) out += "^" + exponent_str(w);
            } else {
                out += k;
                if (v != Exponent(1)) out += "^" + exponent_str(v);
            }
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [k, v] : e) j[k] = exponent_str(v);
        return j;
    }
    static PeriodExpr from_json(const nlohmann::json& j) {
        if (!j.is_object()) throw std::invalid_argument("period expression must be a JSON object");
        PeriodExpr r;
        for (auto it = j.begin(); it != j.end(); ++it) {
            Exponent v = it.value().is_number_integer() ? Exponent(it.value().get<long>())
                                                        : parse_exponent(it.value().get<std::string>());
            r.mul(it.key(), v);
        }
        return r;
    }
};

// representative of the class mod Q^x
inline PeriodExpr canonical(const PeriodExpr& x) {
    PeriodExpr r;
    for (const auto& [k, v] : x.e) {
        if (k == sym::i) {
            // i^2 = -1
            if (v.denominator() != 1) throw std::domain_error("non-integral power of i");
            if (v.numerator() % 2 != 0) r.mul(k, 1);
        } else if (sym::is_radicand(k)) {
            Exponent two = v * 2;
            if (two.denominator() != 1) throw std::domain_error("exponent of " + k + " is not a half-integer");
            if (two.numerator() % 2 != 0) r.mul(k, Exponent(1, 2));
        } else {
            if (v.denominator() != 1) throw std::domain_error("non-integral exponent on " + k);
            r.mul(k, v);
        }
    }
    return r;
}

inline bool equal_mod_rationals(const PeriodExpr& a, const PeriodExpr& b) { return canonical(a / b).trivial(); }

struct Rule {
    std::string name;
    std::string tag;
    std::string lhs;  // single atom
    PeriodExpr rhs;
};

struct RelationSet {
    std::vector<Rule> rules;

    const Rule& at(const std::string& name) const {
        for (const auto& r : rules)
            if (r.name == name) return r;
        throw std::out_of_range("no rule named '" + name + "'");
    }
    bool has(const std::string& name) const {
        return std::any_of(rules.begin(), rules.end(), [&](const Rule& r) { return r.name == name; });
    }
    RelationSet subset(const std::vector<std::string>& names) const {
        RelationSet s;
        for (const auto& n : names) s.rules.push_back(at(n));
        return s;
    }
    RelationSet without(const std::string& name) const {
        RelationSet s;
        for (const auto& r : rules)
            if (r.name != name) s.rules.push_back(r);
        return s;
    }

    nlohmann::json to_json() const {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& r : rules)
            a.push_back({{"name", r.name}, {"citation", r.tag}, {"lhs", r.lhs}, {"rhs", r.rhs.to_json()}});
        return a;
    }
    static RelationSet from_json(const nlohmann::json& a) {
        RelationSet s;
        for (const auto& j : a) {
            Rule r{j.at("name").get<std::string>(), j.at("citation").get<std::string>(),
                   j.at("lhs").get<std::string>(), PeriodExpr::from_json(j.at("rhs"))};
            if (r.tag.empty()) throw std::invalid_argument("rule " + r.name + " has no citation tag");
            s.rules.push_back(std::move(r));
        }
        return s;
    }
};

// All relations for weight (k, 2), k even.  Exponents of pi and i are kept as in the source formulas;
// rational constants (2^c, Gauss sums squared, -4, ...) are dropped.
inline RelationSet relations_catalog(long k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("relations_catalog: k must be even and >= 2");
    using namespace sym;
    const long k1 = k, k2 = 2;
    RelationSet R;
    auto add = [&](std::string name, std::string tag, std::string lhs, PeriodExpr rhs) {
        R.rules.push_back({std::move(name), std::move(tag), std::move(lhs), std::move(rhs)});
    };

    // Whittaker period against Deligne periods of M(f)(k-1)
    add("cW", "rel:whittaker-deligne", cW, PeriodExpr{{pi, -4 * (k1 - 1) + 2 * (k2 - 2)}, {cplus, 1}, {cminus, 1}});
    // ...and its ingredients: twisted spin values
    add("LPSZ", "rel:whittaker-spin", cW, PeriodExpr{{LamSpinP, 1}, {LamSpinM, 1}});
    add("Gamma-spin+", "rel:spin-gamma", LamSpinP, PeriodExpr{{pi, -2 * (k1 - 1) + (k2 - 2)}, {LspinP, 1}});
    add("Gamma-spin-", "rel:spin-gamma", LamSpinM, PeriodExpr{{pi, -2 * (k1 - 1) + (k2 - 2)}, {LspinM, 1}});
    add("Deligne-spin+", "rel:spin-deligne", LspinP, PeriodExpr{{cplus, 1}});
    add("Deligne-spin-", "rel:spin-deligne", LspinM, PeriodExpr{{cminus, 1}});

    add("Chen-Ichino", "rel:petersson-adjoint", petW, PeriodExpr{{pi, 3 * (k - 1) + 5}, {LamAd1, 1}});
    // Serre duality pairing of [f^W]/<rD(alpha),delta> against [w f^W]/c^W
    add("SD", "rel:serre-duality", SD, PeriodExpr{{pi, -3}, {petW, 1}, {regAd, -1}, {cW, -1}});
    // same pairing with [f^W]/d^W, which is rational
    add("SD-dW", "rel:serre-duality", dW, PeriodExpr{{pi, -3}, {petW, 1}, {cW, -1}});
    add("FE-Ad", "rel:adjoint-functional-equation", LamAd1, PeriodExpr{{pi, -3 * (k - 1)}, {DeltaF, Exponent(-1, 2)}, {dLAd0, 1}});
    // Gamma_C(s+k-1)^3 Gamma_C(s) Gamma_R(s+1)^2 at s = 1
    add("Gamma-Ad", "rel:adjoint-gamma", LamAd1, PeriodExpr{{pi, -(3 * k + 3)}, {LAd1, 1}});
    add("Ad-Sym2-shift", "rel:adjoint-sym2-shift", dLAd0, PeriodExpr{{dLSym2, 1}});
    add("Beilinson-Sym2", "rel:sym2-regulator", dLSym2, PeriodExpr{{pi, -2 * (k - 1)}, {cplus, 1}, {cminus, 1}, {regSym, 1}});
    add("Ad-Sym2-regulator", "rel:regulator-twist", regSym, PeriodExpr{{regAd, 1}});

    add("Yoshida+", "rel:yoshida-plus", cplusSym2, PeriodExpr::two_pi_i(12 - 6 * k) * PeriodExpr{{cplus, 1}, {cminus, 1}, {petF, 1}});
    add("Yoshida-", "rel:yoshida-minus", cminusSym2, PeriodExpr::two_pi_i(6 - 2 * k) * PeriodExpr{{cplus, 1}, {cminus, 1}, {petF, 1}});

    // imaginary quadratic base change, weight 2
    add("Urban", "rel:bianchi-adjoint", LAd0f0, PeriodExpr{{pi, 2}, {u1, 1}, {u2, 1}});
    add("Urban-petersson", "rel:bianchi-petersson", petF0, PeriodExpr{{pi, -2}, {LAd0f0, 1}});
    add("Cremona", "rel:bianchi-critical", Lf0, PeriodExpr{{pi, 2}, {u1, 1}});
    add("Cremona-c+", "rel:bianchi-deligne", cplus, PeriodExpr{{pi, 2}, {u1, 1}});
    add("Cremona-c-", "rel:bianchi-deligne", cminus, PeriodExpr{{pi, 2}, {u1, 1}});
    add("Ghate_LW", "rel:asai-critical", LAs2, PeriodExpr::two_pi_i(4) * PeriodExpr{{u1, 1}});
    add("ad_Asai", "rel:adjoint-asai-factorization", LAd1, PeriodExpr{{LAd0f0, 1}, {LAs2, 1}});
    add("Delta-Ad", "rel:adjoint-discriminant", DeltaF, PeriodExpr{{DeltaF0, 1}, {D, 1}});

    // dual natural generators
    add("dual-delta", "rel:dual-generator", deltaDual, PeriodExpr{{pi, 4}, {DeltaF, Exponent(-1, 2)}, {pairDelta, 1}});
    add("dual-eta", "rel:dual-generator", etaDual, PeriodExpr{{pi, 2}, {DeltaF0, Exponent(-1, 2)}, {pairEta, 1}});
    add("transport", "rel:generator-transport", pairDelta, PeriodExpr{{D, Exponent(1, 2)}, {pairEta, 1}});
    return R;
}

struct NormalizeResult {
    PeriodExpr value;               // canonical
    std::vector<std::string> trace;  // rule names in application order
};

inline constexpr int kNormalizeCap = 10000;

// Rewrite to a fixpoint.  Among applicable rules the one listed first in `R` fires.
inline NormalizeResult normalize(const PeriodExpr& x, const RelationSet& R, int cap = kNormalizeCap) {
    std::set<std::string> seen;
    for (const auto& r : R.rules)
        if (!seen.insert(r.lhs).second)
            throw std::invalid_argument("normalize: two rules rewrite " + r.lhs);
    NormalizeResult out;
    PeriodExpr cur = x;
    for (int it = 0;; ++it) {
        const Rule* fire = nullptr;
        for (const auto& r : R.rules)
            if (cur.get(r.lhs).numerator() != 0) { fire = &r; break; }
        if (!fire) break;
        if (it >= cap) throw std::runtime_error("normalize: no fixpoint after " + std::to_string(cap) + " rewrites");
        Exponent n = cur.get(fire->lhs);
        cur.mul(fire->lhs, -n);
        cur *= fire->rhs.pow(n);
        out.trace.push_back(fire->name);
    }
    out.value = canonical(cur);
    return out;
}

struct Chain {
    std::string name;
    PeriodExpr start;
    PeriodExpr target;
    std::vector<std::string> rules;
};

// The period chains behind the main rationality statement and the Bianchi comparison.
inline std::vector<Chain> proof_chains(long k) {
    using namespace sym;
    std::vector<Chain> c;
    // q = sqrt(Delta)/pi^{2k} * SD pairing
    c.push_back({"main", PeriodExpr{{DeltaF, Exponent(1, 2)}, {pi, -2 * k}, {SD, 1}}, PeriodExpr{},
                 {"SD", "Chen-Ichino", "FE-Ad", "Ad-Sym2-shift", "Beilinson-Sym2", "Ad-Sym2-regulator", "cW"}});
    c.push_back({"whittaker", PeriodExpr{{cW, 1}, {pi, 4 * (k - 1)}, {cplus, -1}, {cminus, -1}}, PeriodExpr{},
                 {"LPSZ", "Gamma-spin+", "Gamma-spin-", "Deligne-spin+", "Deligne-spin-"}});
    if (k == 2) {
        c.push_back({"bianchi", PeriodExpr{{dW, 1}}, PeriodExpr{{pi, 2}, {u2, 1}},
                     {"SD-dW", "Chen-Ichino", "Gamma-Ad", "ad_Asai", "Ghate_LW", "Urban", "cW", "Cremona-c+",
                      "Cremona-c-"}});
        c.push_back({"bianchi-dual", PeriodExpr{{deltaDual, 1}, {etaDual, -1}, {pi, -2}}, PeriodExpr{},
                     {"dual-delta", "dual-eta", "transport", "Delta-Ad"}});
        c.push_back({"asai-spin", PeriodExpr{{LAs2, 1}, {Lf0, -1}, {pi, -2}}, PeriodExpr{}, {"Ghate_LW", "Cremona"}});
    }
    return c;
}

struct ChainResult {
    std::string name;
    bool ok = false;
    PeriodExpr value, target;
    std::vector<std::string> trace;
    std::string error;
};

inline ChainResult run_chain(const Chain& ch, const RelationSet& R) {
    ChainResult res;
    res.name = ch.name;
    res.target = canonical(ch.target);
    try {
        auto n = normalize(ch.start, R);
        res.value = n.value;
        res.trace = n.trace;
        res.ok = res.value == res.target;
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

inline ChainResult run_chain(const Chain& ch, long k) { return run_chain(ch, relations_catalog(k).subset(ch.rules)); }

inline nlohmann::json to_json(const ChainResult& r) {
    nlohmann::json j{{"chain", r.name}, {"ok", r.ok}, {"value", r.value.to_json()}, {"value_str", r.value.str()},
                     {"target", r.target.to_json()}, {"trace", r.trace}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

}  // namespace motivic
