#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>

#include "motivic/cache.hpp"
#include "motivic/verify.hpp"

namespace motivic {

struct CliOptions {
    unsigned bits = 0;        // 0: per-command default
    std::size_t terms = 0;    // 0: from the precision
    long height_bound = 10000;
    std::string fixtures;     // empty: MOTIVIC_FIXTURES or the bundled directory
    std::string cache_dir;    // empty: no cache
    bool json = false;
    bool timing = false;
};

class CliError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CliContext {
public:
    explicit CliContext(CliOptions o) : opt(std::move(o)) {
        if (!opt.cache_dir.empty()) cache.emplace(opt.cache_dir);
    }

    CliOptions opt;
    std::optional<Cache> cache;

    const std::vector<CurveData>& curves() {
        if (!curves_) {
            std::filesystem::path p = opt.fixtures.empty() ? default_fixture_dir() : std::filesystem::path(opt.fixtures);
            source_ = p.string();
            curves_ = std::filesystem::exists(p) ? ingest(p) : std::vector<CurveData>{};
        }
        return *curves_;
    }

    std::optional<CurveData> curve(const std::string& label) {
        for (const auto& c : curves())
            if (c.label == label) {
                if (cache) cache->remember_label(label, c.digest);
                return c;
            }
        return std::nullopt;
    }

    CurveData need_curve(const std::string& label) {
        auto c = curve(label);
        if (!c) throw CliError("unknown curve label: " + label + " (fixtures: " + source_ + ")");
        return *c;
    }

    unsigned bits_or(unsigned def) const { return opt.bits ? opt.bits : def; }

private:
    std::optional<std::vector<CurveData>> curves_;
    std::string source_;
};

// ---------------------------------------------------------------- periods

inline int cmd_periods(CliContext& ctx, const std::string& label, std::ostream& out) {
    CurveData c = ctx.need_curve(label);
    unsigned bits = ctx.bits_or(128);
    PrecisionScope ps(bits);
    int digits = static_cast<int>(digits_of(bits)) - 5;
    nlohmann::json j{{"label", label}, {"bits", bits}, {"embeddings", nlohmann::json::array()}};
    bool ok = true;
    Real tol = pow(Real(10), -(static_cast<int>(working_digits()) - 15));
    for (std::size_t e = 0; e < field_embeddings(c).size(); ++e) {
        auto p = period_lattice(c, e);
        auto chk = lattice_self_check(c, e);
        ok = ok && chk.residual < tol;
        j["embeddings"].push_back({{"w", to_string(p.embedding, digits)},
                                   {"a", to_string(p.a, digits)},
                                   {"b", to_string(p.b, digits)},
                                   {"tau", to_string(p.tau(), digits)},
                                   {"g2g3_residual", to_string(chk.residual, 5)}});
        if (!ctx.opt.json) {
            out << label << " embedding " << e << ": w = " << to_string(p.embedding, digits) << "\n"
                << "  a   = " << to_string(p.a, digits) << "\n"
                << "  b   = " << to_string(p.b, digits) << "\n"
                << "  tau = " << to_string(p.tau(), digits) << "\n"
                << "  g2/g3 residual " << to_string(chk.residual, 5) << "\n";
        }
    }
    if (!c.imaginary()) {
        auto pm = res_period_matrix(c);
        auto [r1, i1] = real_and_imaginary_periods(pm.embeddings[0]);
        auto [r2, i2] = real_and_imaginary_periods(pm.embeddings[1]);
        j["real_periods"] = {to_string(r1, digits), to_string(r2, digits)};
        j["imaginary_periods"] = {to_string(i1, digits), to_string(i2, digits)};
        if (!ctx.opt.json)
            out << "  Omega+ = " << to_string(r1, digits) << ", " << to_string(r2, digits) << "\n"
                << "  Omega- = " << to_string(i1, digits) << ", " << to_string(i2, digits) << "\n";
    }
    if (ctx.opt.json) out << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- lvalue

struct LValueRequest {
    std::string label;
    std::string kind = "spin";
    std::string s = "1";
    int derivative = 0;
};

struct LValueResult {
    BigComplex value;
    unsigned bits = 0;
    std::size_t terms = 0;
    int sign = 0;
    bool cached = false;
};

inline LValueResult compute_lvalue(CliContext& ctx, const LValueRequest& rq) {
    Kind kind = kind_from_name(rq.kind);
    unsigned bits = ctx.bits_or(64);
    auto c = ctx.curve(rq.label);
    std::optional<std::string> digest;
    if (c)
        digest = c->digest;
    else if (ctx.cache)
        digest = ctx.cache->digest_for(rq.label);
    if (!digest) throw CliError("unknown curve label: " + rq.label);

    nlohmann::json key{{"curve", *digest}, {"kind", kind_name(curve_kind(kind))}, {"bits", bits},
                       {"terms", ctx.opt.terms}, {"s", rq.s}, {"derivative", rq.derivative}};
    if (ctx.cache)
        if (auto hit = ctx.cache->get(key)) {
            LValueResult r;
            r.value = complex_from_json(hit->at("value"));
            r.bits = bits;
            r.terms = hit->at("terms_used").get<std::size_t>();
            r.sign = hit->at("sign").get<int>();
            r.cached = true;
            return r;
        }
    if (!c) throw CliError("no cached value for " + rq.label + " and no fixture to compute it from");

    PrecisionScope ps(bits + 16);
    EvalOptions eo;
    eo.bits = bits;
    LSpec L = detail::ready_spec(kind, *c, bits, nullptr, ctx.opt.terms);
    Real s(rq.s);
    auto e = evaluate_derivative(L, BigComplex(s), rq.derivative, eo);
    LValueResult r{e.value, bits, e.terms_used, L.sign, false};
    if (ctx.cache)
        ctx.cache->put(key, {{"value", complex_to_json(r.value)}, {"terms_used", r.terms}, {"sign", r.sign}});
    return r;
}

inline int cmd_lvalue(CliContext& ctx, const LValueRequest& rq, std::ostream& out) {
    auto r = compute_lvalue(ctx, rq);
    int digits = static_cast<int>(digits_of(r.bits)) - 3;
    std::string name = std::string(rq.derivative ? "L" + std::string(rq.derivative, '\'') : "L") + "(" + rq.label +
                       ":" + rq.kind + ", " + rq.s + ")";
    if (ctx.opt.json) {
        out << nlohmann::json{{"label", rq.label},      {"kind", rq.kind},     {"s", rq.s},
                              {"derivative", rq.derivative}, {"bits", r.bits}, {"terms", r.terms},
                              {"root_number", r.sign},  {"cached", r.cached},
                              {"re", to_string(r.value.re, digits)}, {"im", to_string(r.value.im, digits)}}
                   .dump(2)
            << "\n";
    } else {
        out << name << " = " << to_string(r.value, digits) << (r.cached ? "  [cached]" : "") << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- verify / predict

inline std::vector<CheckReport> select_checks(CliContext& ctx, const std::string& id) {
    std::string base = id, label;
    if (auto colon = id.find(':'); colon != std::string::npos) {
        base = id.substr(0, colon);
        label = id.substr(colon + 1);
    }
    std::vector<CurveData> cs;
    if (!label.empty())
        cs.push_back(ctx.need_curve(label));
    else
        cs = ctx.curves();
    unsigned bits = ctx.bits_or(64);
    std::vector<CheckReport> out;
    if (base == "all") {
        out = run_global();
        RunConfig cfg;
        cfg.curves = cs;
        cfg.bits = bits;
        cfg.height_bound = ctx.opt.height_bound;
        auto rest = run_all(cfg);
        out.insert(out.end(), rest.begin(), rest.end());
    } else if (base == "frame-identities") {
        out.push_back(check_frame_identities());
    } else if (base == "proof-chains") {
        out.push_back(check_proof_chains());
    } else if (base == "rep-suite") {
        out.push_back(check_rep_suite());
    } else if (base == "euler-factorization") {
        for (const auto& c : cs) out.push_back(check_euler_factorization(c));
    } else if (base == "period-lattice") {
        for (const auto& c : cs) out.push_back(check_period_lattice(c, ctx.bits_or(128)));
    } else if (base == "asai-cw-ratio") {
        RatioOptions ro;
        ro.bits = bits;
        ro.height_bound = ctx.opt.height_bound;
        for (const auto& c : cs)
            if (c.imaginary() || !label.empty()) out.push_back(check_asai_cw_ratio(c, ro));
    } else if (base == "predictions") {
        for (const auto& c : cs) out.push_back(emit_predictions(c, bits));
    } else {
        throw CliError("unknown check id: " + id);
    }
    return out;
}

inline void print_reports(const std::vector<CheckReport>& rs, bool json, bool timing, std::ostream& out) {
    if (json) {
        out << to_json(rs, timing).dump(2) << "\n";
        return;
    }
    for (const auto& r : rs) {
        std::string tag = r.status == CheckStatus::Pass ? "PASS" : r.status == CheckStatus::Fail ? "FAIL" : "EMIT";
        out << tag << "  " << r.check_id;
        if (timing) out << "  (" << std::fixed << std::setprecision(2) << r.wall_seconds << " s)";
        out << "\n";
        for (const auto& v : r.values)
            out << "      " << v.name << " = "
                << (v.digits ? to_string(v.value, std::min(v.digits, 25)) : v.value.re.str()) << "\n";
        if (r.rational) out << "      rational " << r.rational->p.str() << "/" << r.rational->q.str() << "\n";
        for (const auto& n : r.notes) out << "      note: " << n << "\n";
    }
}

inline int cmd_verify(CliContext& ctx, const std::string& id, std::ostream& out) {
    auto rs = select_checks(ctx, id);
    print_reports(rs, ctx.opt.json, ctx.opt.timing, out);
    return all_passed(rs) ? 0 : 1;
}

inline int cmd_predict(CliContext& ctx, const std::string& label, std::ostream& out) {
    auto r = emit_predictions(ctx.need_curve(label), ctx.bits_or(64));
    print_reports({r}, ctx.opt.json, ctx.opt.timing, out);
    return 0;
}

// ---------------------------------------------------------------- reps

enum class RepsMode { Summary, Packet, Sheaves, PK };

inline int cmd_reps(CliContext& ctx, Weight2 lam, std::optional<long> m_opt, RepsMode mode, std::ostream& out) {
    long m = m_opt ? *m_opt : (((lam.a + lam.b + 1) % 2) + 2) % 2;
    nlohmann::json j{{"lambda", to_json(lam)}, {"m", m}};
    Region r = classify_region(lam.a, lam.b);
    std::ostringstream txt;
    switch (mode) {
        case RepsMode::Summary: {
            j["region"] = region_name(r);
            txt << "lambda " << lam.str() << ": region " << region_name(r);
            if (r != Region::Wall) {
                Region use = r == Region::I_II ? Region::I : r == Region::II_III ? Region::II : r == Region::III_IV ? Region::III : r;
                Weight2 L = blattner(lam, use);
                j["blattner"] = to_json(L);
                txt << ", minimal K-type " << L.str();
            }
            txt << "\n";
            break;
        }
        case RepsMode::Packet: {
            auto p = lpacket(lam, m);
            j["packet"] = nlohmann::json::array();
            for (const auto& x : p) {
                nlohmann::json sp = nlohmann::json::array();
                for (const auto& y : restrict_to_sp4(x)) sp.push_back(y.str());
                j["packet"].push_back({{"label", x.str()}, {"sp4", sp}});
                txt << x.str() << "  ->  Sp4: ";
                for (std::size_t i = 0; i < sp.size(); ++i) txt << (i ? " + " : "") << sp[i].get<std::string>();
                txt << "\n";
            }
            break;
        }
        case RepsMode::Sheaves: {
            auto s = sheaf_weights(lam.a + 1, lam.b + 2, m);
            j["sheaves"] = nlohmann::json::array();
            for (int i = 0; i < 4; ++i) {
                j["sheaves"].push_back(to_json(s.E[i]));
                txt << "E_" << i << " = " << s.E[i].str() << "  degrees {";
                bool first = true;
                for (int d : s.degrees.at(s.E[i])) {
                    txt << (first ? "" : ",") << d;
                    first = false;
                }
                txt << "}\n";
            }
            j["coincident"] = s.coincident();
            break;
        }
        case RepsMode::PK: {
            auto t = pk_hom_dims(lam, m);
            j["pk"] = to_json(t);
            j["matches_lemma_pattern"] = same_table(t, pk_expected_pattern(lam));
            for (int which = 0; which < 2; ++which) {
                txt << (which == 0 ? "X^1" : "X^2") << " (rows i = sheaf, columns j = degree)\n";
                for (int i = 0; i < 4; ++i) {
                    txt << "  ";
                    for (int jj = 0; jj < 4; ++jj) txt << (which == 0 ? t.hol[i][jj] : t.gen[i][jj]) << " ";
                    txt << "\n";
                }
            }
            break;
        }
    }
    out << (ctx.opt.json ? j.dump(2) + "\n" : txt.str());
    return 0;
}

// ---------------------------------------------------------------- pcalc

inline int cmd_pcalc(CliContext& ctx, const std::string& chain, long k, std::ostream& out) {
    auto chains = proof_chains(k);
    const Chain& ch = detail::chain_named(chains, chain);
    auto R = relations_catalog(k).subset(ch.rules);
    auto res = run_chain(ch, R);
    if (ctx.opt.json) {
        out << to_json(res).dump(2) << "\n";
        return res.ok ? 0 : 1;
    }
    // replay the rewrites to show every intermediate value
    PeriodExpr cur = canonical(ch.start);
    out << "   " << cur.str() << "\n";
    for (const auto& name : res.trace) {
        const Rule& r = R.at(name);
        Exponent e = cur.get(r.lhs);
        cur = canonical(cur * PeriodExpr{{r.lhs, -e}} * r.rhs.pow(e));
        out << "-> " << (cur.trivial() ? std::string("1") : cur.str()) << "   [" << name << "]\n";
    }
    out << (res.ok ? "closed: " : "open: ") << (res.value.trivial() ? std::string("1") : res.value.str())
        << (res.error.empty() ? "" : "  (" + res.error + ")") << "\n";
    return res.ok ? 0 : 1;
}

}  // namespace motivic
