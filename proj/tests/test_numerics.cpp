#include <gtest/gtest.h>

#include <random>

#include "motivic/numerics.hpp"

using namespace motivic;

namespace {

Real R(const char* s) { return Real(s); }

void expect_close(const Real& a, const Real& b, const Real& tol) {
    EXPECT_LT(abs(a - b), tol) << to_string(a, 40) << " vs " << to_string(b, 40);
}

}  // namespace

TEST(Gamma, NormalizationsAtSmallIntegers) {
    Real pi = const_pi();
    Real tol = ldexp(Real(1), -(int)working_bits() + 8);
    expect_close(gamma_r(BigComplex(2)).re, 1 / pi, tol);
    expect_close(gamma_c(BigComplex(1)).re, 1 / pi, tol);
    expect_close(gamma_c(BigComplex(2)).re, 1 / (2 * pi * pi), tol);
    expect_close(gamma_r(BigComplex(1)).re, Real(1), tol);
}

TEST(Gamma, ComplexLogGammaAgainstMpmath) {
    BigComplex z(R("3.25"), R("-7.5"));
    BigComplex l = lgamma(z);
    expect_close(l.re, R("-5.26356775066313701964326696525337286114834983820906911135104"), R("1e-50"));
    // imaginary part only mod 2 pi
    Real d = l.im - R("-11.4429253344613811512110053258114945069304057081122618834448");
    Real k = round(d / (2 * const_pi()));
    expect_close(d - k * 2 * const_pi(), Real(0), R("1e-50"));

    BigComplex g = gamma(BigComplex(R("-2.5"), R("0.75")));
    expect_close(g.re, R("-0.130709638086572946705055534875885186524619546552243394588109"), R("1e-50"));
    expect_close(g.im, R("-0.144319984055644264391292746579806297587549856337213256939508"), R("1e-50"));
}

TEST(Gamma, PoleErrorNamesTheShift) {
    try {
        gamma_r(BigComplex(-4));
        FAIL();
    } catch (const PoleError& e) {
        EXPECT_EQ(e.at(), -4);
    }
    EXPECT_THROW(gamma_c(BigComplex(0)), PoleError);
    EXPECT_NO_THROW(gamma_r(BigComplex(-3)));
}

TEST(Gamma, DuplicationGammaCEqualsProductOfGammaR) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-6, 6);
    Real tol = ldexp(Real(1), -(int)working_bits() + 12);
    for (int i = 0; i < 50; ++i) {
        BigComplex s(u(rng), u(rng));
        BigComplex a = gamma_c(s);
        BigComplex b = gamma_r(s) * gamma_r(s + BigComplex(1));
        EXPECT_LT(abs(a - b), tol * abs(a)) << i;
    }
}

TEST(GammaShiftsT, ExpandsGammaCIntoTwoShifts) {
    GammaShifts g{{0, -1}, {0}};
    EXPECT_EQ(g.degree(), 5u);
    EXPECT_EQ(g.mu(), (std::vector<int>{-1, 0, 0, 0, 1}));
    EXPECT_TRUE(g.has_pole_at(0));
    EXPECT_TRUE(g.has_pole_at(1));
    EXPECT_FALSE(g.has_pole_at(2));
}

TEST(Kernel, GammaRIsGaussian) {
    GammaShifts g{{}, {0}};
    Real pi = const_pi();
    for (const char* xs : {"0.1", "0.5", "1", "2.5", "4"}) {
        Real x(xs);
        Real want = 2 * exp(-pi * x * x);
        Real got = inv_mellin_kernel(g, x);
        EXPECT_LT(abs(got - want), pow(Real(10), -(int)working_digits() + 5)) << xs;
    }
}

TEST(Kernel, GammaCIsExponential) {
    GammaShifts g{{0}, {}};
    Real pi = const_pi();
    // both regimes: the crossover for degree 2 sits near x = 5
    for (const char* xs : {"0.05", "0.8", "3", "7", "12"}) {
        Real x(xs);
        Real want = 2 * exp(-2 * pi * x);
        Real got = inv_mellin_kernel(g, x);
        EXPECT_LT(abs(got - want), pow(Real(10), -(int)working_digits() + 5)) << xs;
        EXPECT_LT(abs(got - want) / want, Real("1e-40")) << xs;
    }
}

TEST(Kernel, GammaCSquaredIsBesselK0) {
    // (1/2 pi i) int 4 (2 pi)^{-2s} Gamma(s)^2 x^{-s} ds = 8 K_0(4 pi sqrt x)
    GammaShifts g{{0, 0}, {}};
    Real got = inv_mellin_kernel(g, Real(1));
    expect_close(got, R("0.00000976964395489304347119487686394045621795924134298814488965031"), R("1e-55"));
}

TEST(Kernel, MixedParityAgainstContourOracle) {
    GammaShifts g{{0}, {0, 1, -1}};
    Real a = inv_mellin_kernel(g, Real("0.7"));
    EXPECT_LT(abs(a / R("0.0000056952784490768419628748869096859157129124433545174") - 1), R("1e-35"));
    Real b = inv_mellin_kernel(g, Real(20));
    EXPECT_LT(abs(b / R("1.473763207134787294406729966076116972332744032112885672585603551377927e-23") - 1), R("1e-35"));
}

TEST(Kernel, PositiveAndDecreasingForEngineShiftSets) {
    // shift sets with every mu <= 0 (motivic normalization)
    std::vector<GammaShifts> sets = {
        {{}, {0}}, {{0}, {}}, {{0, 0}, {}}, {{0}, {0, 0}}, {{0}, {-1, 0}},
        {{0, 0}, {-1, 0}}, {{0, 0}, {0, 0}}, {{0, 0, 0, -1}, {0, 0}},
    };
    for (const auto& g : sets) {
        Real prev(-1);
        for (int i = 0; i <= 12; ++i) {
            Real x = Real("0.1") * pow(Real(100), Real(i) / 12);
            PrecisionScope ps(96);
            Real v = inv_mellin_kernel(g, at_working(x));
            EXPECT_GT(v, 0) << g.describe() << " x=" << to_string(x, 6);
            if (i > 0) EXPECT_LT(v, prev) << g.describe() << " x=" << to_string(x, 6);
            prev = v;
        }
    }
}

TEST(Rational, Examples) {
    auto r = rational_recognize(BigComplex(Real("0.75")), Integer(100));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->p, 3);
    EXPECT_EQ(r->q, 4);
    EXPECT_EQ(r->residual, 0);

    EXPECT_FALSE(rational_recognize(BigComplex(const_pi()), Integer(10000)));

    {
        PrecisionScope ps(53);
        auto t = rational_recognize(BigComplex(Real("2.9999999999999123")), Integer(100));
        ASSERT_TRUE(t);
        EXPECT_EQ(t->p, 3);
        EXPECT_EQ(t->q, 1);
        EXPECT_NEAR(t->residual.convert_to<double>(), 8.77e-14, 1e-15);
    }
}

TEST(Rational, IdempotentOnExactRationals) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> u(-5000, 5000), v(1, 5000);
    for (int i = 0; i < 200; ++i) {
        Rational q(u(rng), v(rng));
        auto r = rational_recognize(BigComplex(to_real(q)), Integer(10000));
        ASSERT_TRUE(r);
        EXPECT_EQ(r->value(), q);
        EXPECT_EQ(r->residual, 0);
    }
}

TEST(Agm, FixedPointsAndLemniscate) {
    EXPECT_EQ(abs(agm_complex(BigComplex(1), BigComplex(1)) - BigComplex(1)), 0);
    BigComplex a = agm_complex(BigComplex(1), BigComplex(1 / sqrt(Real(2))));
    expect_close(a.re, R("0.847213084793979086606499123482191636481445910326942185060579"), R("1e-55"));
    BigComplex w(1, 1);
    EXPECT_LT(abs(agm_complex(w, w) - w), R("1e-55"));
}

TEST(Agm, Homogeneous) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 20; ++i) {
        BigComplex a(u(rng), u(rng)), b(u(rng), u(rng)), l(u(rng), u(rng));
        if (abs(a + b) < Real("0.1")) continue;
        BigComplex m = agm_complex(a, b);
        BigComplex ml = agm_complex(l * a, l * b);
        EXPECT_LT(abs(ml - l * m), Real("1e-50") * abs(ml)) << i;
    }
}
