#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "motivic/pcalc.hpp"

using namespace motivic;
namespace S = motivic::sym;

TEST(PeriodExpr, TrivialCancellation) {
    PeriodExpr e{{S::pi, 2}};
    e *= PeriodExpr{{S::pi, -2}};
    EXPECT_TRUE(normalize(e, RelationSet{}).value.trivial());
}

TEST(PeriodExpr, CanonicalFolding) {
    // i^2, D, i^3 ~ i, D^{3/2} ~ sqrt D
    EXPECT_TRUE(canonical(PeriodExpr{{S::i, 2}, {S::D, 1}}).trivial());
    EXPECT_EQ(canonical(PeriodExpr{{S::i, 3}}), (PeriodExpr{{S::i, 1}}));
    EXPECT_EQ(canonical(PeriodExpr{{S::D, Exponent(3, 2)}}), (PeriodExpr{{S::D, Exponent(1, 2)}}));
    EXPECT_EQ(canonical(PeriodExpr{{S::D, Exponent(-1, 2)}}), (PeriodExpr{{S::D, Exponent(1, 2)}}));
    EXPECT_THROW(canonical(PeriodExpr{{S::pi, Exponent(1, 2)}}), std::domain_error);
    EXPECT_THROW(canonical(PeriodExpr{{S::D, Exponent(1, 3)}}), std::domain_error);
    // pi is transcendental: never folded
    EXPECT_FALSE(canonical(PeriodExpr{{S::pi, 4}}).trivial());
}

TEST(PeriodExpr, FixedSymbolOrder) {
    PeriodExpr e{{S::u2, 1}, {S::pi, 2}, {"zzz", 1}, {S::cW, -1}};
    std::vector<std::string> keys;
    for (const auto& [k, v] : e.e) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{S::pi, S::cW, S::u2, "zzz"}));
    EXPECT_EQ(e.str(), "pi^2 * cW^-1 * u2 * zzz");
}

TEST(Catalog, ExponentsAsPrinted) {
    for (long k = 2; k <= 12; k += 2) {
        auto R = relations_catalog(k);
        EXPECT_EQ(R.at("cW").rhs.get(S::pi), Exponent(-4 * (k - 1)));
        EXPECT_EQ(R.at("Chen-Ichino").rhs.get(S::pi), Exponent(3 * (k - 1) + 5));
        EXPECT_EQ(R.at("Chen-Ichino").rhs.get(S::LamAd1), Exponent(1));
        EXPECT_EQ(R.at("SD").rhs.get(S::pi), Exponent(-3));
        EXPECT_EQ(R.at("FE-Ad").rhs.get(S::pi), Exponent(-3 * (k - 1)));
        EXPECT_EQ(R.at("FE-Ad").rhs.get(S::DeltaF), Exponent(Exponent(-1, 2)));
        EXPECT_EQ(R.at("Beilinson-Sym2").rhs.get(S::pi), Exponent(-2 * (k - 1)));
        EXPECT_EQ(R.at("Yoshida+").rhs.get(S::pi), Exponent(12 - 6 * k));
        EXPECT_EQ(R.at("Yoshida+").rhs.get(S::i), Exponent(12 - 6 * k));
        EXPECT_EQ(R.at("Yoshida-").rhs.get(S::pi), Exponent(6 - 2 * k));
        EXPECT_EQ(R.at("Urban").rhs, (PeriodExpr{{S::pi, 2}, {S::u1, 1}, {S::u2, 1}}));
        EXPECT_EQ(R.at("Cremona").rhs, (PeriodExpr{{S::pi, 2}, {S::u1, 1}}));
        EXPECT_EQ(R.at("Ghate_LW").rhs, (PeriodExpr{{S::pi, 4}, {S::i, 4}, {S::u1, 1}}));
        EXPECT_EQ(R.at("Delta-Ad").rhs, (PeriodExpr{{S::DeltaF0, 1}, {S::D, 1}}));
        for (const auto& r : R.rules) EXPECT_FALSE(r.tag.empty()) << r.name;
    }
    EXPECT_THROW(relations_catalog(3), std::invalid_argument);
    EXPECT_THROW(relations_catalog(0), std::invalid_argument);
}

TEST(Catalog, Weight2ArchimedeanFactor) {
    // L(Ad,1) ~ pi^9 Lambda(Ad,1) at k = 2
    EXPECT_EQ(relations_catalog(2).at("Gamma-Ad").rhs.get(S::pi), Exponent(-9));
}

TEST(Catalog, JsonRoundTrip) {
    auto R = relations_catalog(4);
    auto j = R.to_json();
    auto back = RelationSet::from_json(nlohmann::json::parse(j.dump()));
    ASSERT_EQ(back.rules.size(), R.rules.size());
    for (size_t n = 0; n < R.rules.size(); ++n) {
        EXPECT_EQ(back.rules[n].name, R.rules[n].name);
        EXPECT_EQ(back.rules[n].tag, R.rules[n].tag);
        EXPECT_EQ(back.rules[n].rhs, R.rules[n].rhs);
    }
    auto bad = j;
    bad[0]["citation"] = "";
    EXPECT_THROW(RelationSet::from_json(bad), std::invalid_argument);
}

TEST(Normalize, DivergenceGuard) {
    RelationSet R;
    R.rules.push_back({"a", "t", "x", PeriodExpr{{"y", 1}}});
    R.rules.push_back({"b", "t", "y", PeriodExpr{{"x", 1}}});
    EXPECT_THROW(normalize(PeriodExpr{{"x", 1}}, R, 100), std::runtime_error);
}

TEST(Normalize, AmbiguousLhsRejected) {
    auto R = relations_catalog(2);  // cW has two derivations
    EXPECT_THROW(normalize(PeriodExpr{{S::cW, 1}}, R), std::invalid_argument);
}

TEST(Chains, MainReducesToOneForEvenWeights) {
    for (long k = 2; k <= 12; k += 2) {
        for (const auto& ch : proof_chains(k)) {
            auto r = run_chain(ch, k);
            EXPECT_TRUE(r.ok) << ch.name << " k=" << k << " -> " << r.value.str() << " " << r.error;
        }
        auto main = proof_chains(k).front();
        ASSERT_EQ(main.name, "main");
        auto r = run_chain(main, k);
        EXPECT_TRUE(r.value.trivial());
        EXPECT_EQ(r.value.get(S::pi), Exponent(0));
        EXPECT_EQ(r.value.get(S::DeltaF), Exponent(0));
    }
}

TEST(Chains, BianchiGivesPiSquaredU2) {
    auto chains = proof_chains(2);
    auto it = std::find_if(chains.begin(), chains.end(), [](const Chain& c) { return c.name == "bianchi"; });
    ASSERT_NE(it, chains.end());
    auto r = run_chain(*it, 2);
    EXPECT_EQ(r.value, (PeriodExpr{{S::pi, 2}, {S::u2, 1}}));
    // d^W / (pi^2 u^2) reduces to the empty vector
    Chain q = *it;
    q.start = q.start / PeriodExpr{{S::pi, 2}, {S::u2, 1}};
    EXPECT_TRUE(run_chain(q, 2).value.trivial());
    EXPECT_EQ(proof_chains(4).size(), 2u);  // Bianchi chains only at k = 2
}

TEST(Chains, WrongExponentIsDetected) {
    // perturb Chen-Ichino by one power of pi: the main chain must stop at pi^{+-1}
    auto R = relations_catalog(6);
    auto main = proof_chains(6).front();
    auto sub = R.subset(main.rules);
    for (auto& r : sub.rules)
        if (r.name == "Chen-Ichino") r.rhs.mul(S::pi, 1);
    auto res = normalize(main.start, sub);
    EXPECT_EQ(res.value, (PeriodExpr{{S::pi, 1}}));
}

TEST(Chains, EveryRuleIsNeeded) {
    for (long k : {2L, 8L}) {
        auto R = relations_catalog(k);
        for (const auto& ch : proof_chains(k)) {
            auto sub = R.subset(ch.rules);
            auto full = normalize(ch.start, sub);
            ASSERT_EQ(full.value, canonical(ch.target));
            for (const auto& name : ch.rules) {
                EXPECT_NE(std::find(full.trace.begin(), full.trace.end(), name), full.trace.end())
                    << name << " unused in " << ch.name;
                auto drop = normalize(ch.start, sub.without(name));
                EXPECT_NE(drop.value, canonical(ch.target)) << "chain " << ch.name << " survives without " << name;
            }
        }
    }
}

TEST(Chains, ConfluentUnderRuleOrder) {
    std::mt19937 rng(7);
    for (long k : {2L, 4L, 10L}) {
        auto R = relations_catalog(k);
        for (const auto& ch : proof_chains(k)) {
            auto sub = R.subset(ch.rules);
            auto expect = normalize(ch.start, sub).value;
            std::vector<size_t> p(sub.rules.size());
            std::iota(p.begin(), p.end(), 0);
            auto check = [&] {
                RelationSet perm;
                for (size_t j : p) perm.rules.push_back(sub.rules[j]);
                EXPECT_EQ(normalize(ch.start, perm).value, expect) << ch.name;
            };
            if (p.size() <= 8) {
                do check(); while (std::next_permutation(p.begin(), p.end()));
            } else {
                for (int t = 0; t < 3000; ++t) { std::shuffle(p.begin(), p.end(), rng); check(); }
            }
        }
    }
}

TEST(Chains, ResultJson) {
    auto r = run_chain(proof_chains(2)[2], 2);
    auto j = to_json(r);
    EXPECT_EQ(j["chain"], "bianchi");
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_EQ(j["value"]["pi"], "2");
    EXPECT_EQ(j["value"]["u2"], "1");
}
