#include <gtest/gtest.h>

#include "motivic/hodge.hpp"

using namespace motivic;

namespace {

std::vector<int> merged(const GammaShifts& a, const GammaShifts& b) {
    auto m = a.mu();
    auto n = b.mu();
    m.insert(m.end(), n.begin(), n.end());
    std::sort(m.begin(), m.end());
    return m;
}

std::vector<long> sym2_closed_form(int l1, int l2) {
    std::vector<long> out;
    for (long n = l1 + 1; n <= l1 + l2; ++n)
        if (n % 2 != 0) out.push_back(n);
    for (long n = l1 + l2 + 1; n <= l1 + 2 * l2; ++n)
        if (n % 2 == 0) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(GammaFactor, SpinAtLambdaOneZero) {
    GammaShifts g = gamma_factor(make_spin(1, 0));
    EXPECT_EQ(g.mu(), (GammaShifts{{0, 0}, {}}.mu()));
    EXPECT_EQ(g.degree(), 4u);
}

TEST(GammaFactor, AdjointWeightTwo) {
    GammaShifts g = gamma_factor(make_adjoint(1, 0));
    EXPECT_EQ(g.mu(), (GammaShifts{{1, 1, 1, 0}, {1, 1}}.mu()));
}

TEST(GammaFactor, Sym2AtLambdaOneZero) {
    GammaShifts g = gamma_factor(make_sym2(1, 0));
    EXPECT_EQ(g.mu(), (GammaShifts{{0, 0, 0, -1}, {0, 0}}.mu()));
    EXPECT_EQ(g.degree(), 10u);
}

TEST(GammaFactor, Sym2GeneralShapeForOddWeight) {
    // Gamma_C(s) Gamma_C(s-l2) Gamma_C(s-2 l2) Gamma_C(s-l1) Gamma_R(s+1-w)^2
    for (int l1 = 1; l1 <= 9; ++l1)
        for (int l2 = 0; l2 < l1; ++l2) {
            int w = l1 + l2;
            if (w % 2 == 0) continue;
            GammaShifts want{{0, -l2, -2 * l2, -l1}, {1 - w, 1 - w}};
            EXPECT_EQ(gamma_factor(make_sym2(l1, l2)).mu(), want.mu()) << l1 << "," << l2;
        }
}

TEST(GammaFactor, DegreesPerKind) {
    for (FieldSign f : {FieldSign::Real, FieldSign::Imaginary}) {
        EXPECT_EQ(gamma_factor(make_spin(3, 1)).degree(), 4u);
        EXPECT_EQ(gamma_factor(make_sym2(3, 1)).degree(), 10u);
        EXPECT_EQ(gamma_factor(make_asai(f)).degree(), 4u);
        EXPECT_EQ(gamma_factor(make_res_sym2(f)).degree(), 6u);
        EXPECT_EQ(gamma_factor(make_res_h1(f)).degree(), 4u);
    }
}

TEST(GammaFactor, Sym2IndSplitsIntoResSym2AndAsai) {
    for (FieldSign f : {FieldSign::Real, FieldSign::Imaginary}) {
        GammaShifts whole = gamma_factor(make_sym2_ind(f));
        EXPECT_EQ(whole.mu(), merged(gamma_factor(make_res_sym2(f)), gamma_factor(make_asai(f))));
    }
}

TEST(GammaFactor, DualityOfShifts) {
    for (int l1 = 1; l1 <= 6; ++l1)
        for (int l2 = 0; l2 <= l1; ++l2) {
            // adjoint is self-dual
            auto ad = make_adjoint(l1, l2);
            EXPECT_EQ(ad.hodge.dual().gamma_shifts().mu(), ad.hodge.gamma_shifts().mu());
            // Sym^2 dual is Sym^2(2w)
            auto s2 = make_sym2(l1, l2);
            EXPECT_EQ(s2.hodge.dual().gamma_shifts().mu(), s2.hodge.gamma_shifts().shifted(2 * (l1 + l2)).mu());
        }
}

TEST(Hodge, RejectsBrokenStructures) {
    EXPECT_THROW(HodgeStructure(1, {{1, 1, 0, 1}}), std::invalid_argument);
    EXPECT_THROW(HodgeStructure(1, {{1, 0, 1, 1}, {0, 1, 0, -1}}), std::invalid_argument);
    EXPECT_THROW(make_spin(1, 2), std::invalid_argument);
}

TEST(Hodge, Sym2HodgeNumbers) {
    auto e = make_sym2(2, 1).hodge.entries();
    int total = 0;
    for (auto& x : e) total += x.mult;
    EXPECT_EQ(total, 10);
    EXPECT_EQ(e.front().p, 6);
}

TEST(Critical, Examples) {
    EXPECT_EQ(critical_points(make_spin(1, 0)), (std::vector<long>{1}));
    for (int k = 2; k <= 12; ++k) EXPECT_TRUE(critical_points(make_sym2(k - 1, 0)).empty()) << k;
    EXPECT_EQ(critical_points(make_sym2(2, 1)), (std::vector<long>{3, 4}));
}

TEST(Critical, SpinMatchesClosedForm) {
    for (int l1 = 1; l1 <= 12; ++l1)
        for (int l2 = 0; l2 < l1; ++l2) {
            std::vector<long> want;
            for (long n = l2 + 1; n <= l1; ++n) want.push_back(n);
            EXPECT_EQ(critical_points(make_spin(l1, l2)), want) << l1 << "," << l2;
        }
}

TEST(Critical, Sym2MatchesClosedFormWhenTwoL2AtMostL1) {
    for (int l1 = 1; l1 <= 12; ++l1)
        for (int l2 = 0; 2 * l2 <= l1; ++l2)
            EXPECT_EQ(critical_points(make_sym2(l1, l2)), sym2_closed_form(l1, l2)) << l1 << "," << l2;
}

TEST(Critical, Sym2IsClosedFormCutByGammaCAtTwoL2) {
    // Gamma_C(s - 2 l2) and its dual remove n <= 2 l2 and n > 2 l1
    int mismatches = 0;
    for (int l1 = 1; l1 <= 12; ++l1)
        for (int l2 = 0; l2 < l1; ++l2) {
            std::vector<long> cut;
            for (long n : sym2_closed_form(l1, l2))
                if (n > 2 * l2 && n <= 2 * l1) cut.push_back(n);
            auto got = critical_points(make_sym2(l1, l2));
            EXPECT_EQ(got, cut) << l1 << "," << l2;
            if (got != sym2_closed_form(l1, l2)) ++mismatches;
        }
    // e.g. (4,3): n = 5 sits on a pole of Gamma_C(s - 6)
    EXPECT_GT(mismatches, 0);
    EXPECT_EQ(critical_points(make_sym2(4, 3)), (std::vector<long>{7, 8}));
}

TEST(Critical, Sym2NonemptyIffL2PositiveForOddWeight) {
    for (int l1 = 1; l1 <= 12; ++l1)
        for (int l2 = 0; l2 < l1; ++l2) {
            if ((l1 + l2) % 2 == 0) continue;
            EXPECT_EQ(!critical_points(make_sym2(l1, l2)).empty(), l2 > 0) << l1 << "," << l2;
        }
}

TEST(Critical, EquivalenceFailsForSomeEvenWeight) {
    // (3,1): l2 > 0 but no critical point
    EXPECT_TRUE(critical_points(make_sym2(3, 1)).empty());
}

TEST(Dichotomy, RealAndImaginary) {
    auto r = dichotomy_table(FieldSign::Real);
    EXPECT_EQ(r[0].point, 1);
    EXPECT_TRUE(r[0].critical);
    EXPECT_FALSE(r[1].critical);
    auto i = dichotomy_table(FieldSign::Imaginary);
    EXPECT_FALSE(i[0].critical);
    EXPECT_TRUE(i[1].critical);
    for (auto f : {FieldSign::Real, FieldSign::Imaginary})
        for (auto& row : dichotomy_table(f)) {
            if (row.lfunction == "Asai(f0)") EXPECT_EQ(row.critical, is_critical(make_asai(f), 2));
        }
}
