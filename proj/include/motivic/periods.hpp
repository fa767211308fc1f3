#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "motivic/fixture.hpp"
#include "motivic/hodge.hpp"
#include "motivic/numerics.hpp"

namespace motivic {

// ---------------------------------------------------------------- embeddings

// roots of w^2 + c1 w + c0: the one with Im > 0 (imaginary), or both real roots in descending order
inline std::vector<BigComplex> field_embeddings(const CurveData& c) {
    Real c1(c.min_poly[1]), c0(c.min_poly[2]);
    Real disc = c1 * c1 - 4 * c0;
    if (c.imaginary()) return {BigComplex(-c1 / 2, sqrt(-disc) / 2)};
    Real s = sqrt(disc);
    return {BigComplex((-c1 + s) / 2), BigComplex((-c1 - s) / 2)};
}

inline BigComplex embed(const FieldElt& x, const BigComplex& w) {
    return BigComplex(to_real(x.a)) + BigComplex(to_real(x.b)) * w;
}

// ---------------------------------------------------------------- lattices

struct EmbeddingPeriods {
    BigComplex embedding;  // image of the field generator
    BigComplex a, b;       // pairings of omega with gamma_1, gamma_2; Im(b/a) > 0
    BigComplex tau() const { return b / a; }
};

class LatticeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

struct EmbeddedModel {
    std::array<BigComplex, 5> a;  // a1 a2 a3 a4 a6
    BigComplex b2, b4, b6, c4, c6, disc;
};

inline EmbeddedModel embed_model(const std::array<BigComplex, 5>& a) {
    EmbeddedModel m;
    m.a = a;
    const auto& [a1, a2, a3, a4, a6] = a;
    m.b2 = a1 * a1 + BigComplex(4) * a2;
    m.b4 = BigComplex(2) * a4 + a1 * a3;
    m.b6 = a3 * a3 + BigComplex(4) * a6;
    BigComplex b8 = a1 * a1 * a6 + BigComplex(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    m.c4 = m.b2 * m.b2 - BigComplex(24) * m.b4;
    m.c6 = -(m.b2 * m.b2 * m.b2) + BigComplex(36) * m.b2 * m.b4 - BigComplex(216) * m.b6;
    m.disc = -(m.b2 * m.b2 * b8) - BigComplex(8) * m.b4 * m.b4 * m.b4 - BigComplex(27) * m.b6 * m.b6 +
             BigComplex(9) * m.b2 * m.b4 * m.b6;
    return m;
}

// roots of a monic cubic x^3 + p2 x^2 + p1 x + p0 (Weierstrass/Durand-Kerner, then Newton)
inline std::array<BigComplex, 3> cubic_roots(const BigComplex& p2, const BigComplex& p1, const BigComplex& p0) {
    auto f = [&](const BigComplex& x) { return ((x + p2) * x + p1) * x + p0; };
    auto df = [&](const BigComplex& x) { return (BigComplex(3) * x + BigComplex(2) * p2) * x + p1; };
    Real scale = 1 + abs(p2) + sqrt(abs(p1)) + cbrt(abs(p0));
    std::array<BigComplex, 3> z;
    BigComplex seed(Real("0.4"), Real("0.9"));
    z[0] = seed * scale;
    z[1] = seed * seed * scale;
    z[2] = seed * seed * seed * scale;
    Real tol = ldexp(Real(1), -(int)working_bits() + 6) * scale;
    for (int it = 0; it < 2000; ++it) {
        Real moved(0);
        for (int i = 0; i < 3; ++i) {
            BigComplex den(1);
            for (int j = 0; j < 3; ++j)
                if (j != i) den *= z[i] - z[j];
            BigComplex step = f(z[i]) / den;
            z[i] -= step;
            moved = std::max(moved, Real(abs(step)));
        }
        if (moved < tol) break;
    }
    for (auto& x : z)
        for (int it = 0; it < 4; ++it) {
            BigComplex d = df(x);
            if (abs(d) == 0) break;
            x -= f(x) / d;
        }
    return z;
}

}  // namespace detail

// reduce (w1, w2) to tau = w2/w1 in the standard fundamental domain, keeping Im tau > 0
inline void reduce_basis(BigComplex& w1, BigComplex& w2) {
    if ((w2 / w1).im < 0) w2 = -w2;
    for (int it = 0; it < 10000; ++it) {
        BigComplex t = w2 / w1;
        Real n = round(t.re);
        if (n != 0) {
            w2 -= BigComplex(n) * w1;
            t = w2 / w1;
        }
        if (norm(t) < 1 - ldexp(Real(1), -(int)working_bits() + 16)) {
            BigComplex old = w1;
            w1 = w2;
            w2 = -old;
            continue;
        }
        return;
    }
    throw LatticeError("reduce_basis: no convergence");
}

// periods of dX/Y for Y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, i.e. dx/(2y + a1 x + a3)
inline EmbeddingPeriods lattice_from_model(const std::array<BigComplex, 5>& ainv) {
    auto m = detail::embed_model(ainv);
    if (abs(m.disc) < ldexp(Real(1), -(int)working_bits() / 2)) throw LatticeError("singular model");
    auto e = detail::cubic_roots(m.b2 / BigComplex(4), m.b4 / BigComplex(2), m.b6 / BigComplex(4));
    BigComplex a = sqrt(e[0] - e[2]);
    BigComplex b = sqrt(e[0] - e[1]);
    BigComplex c = sqrt(e[1] - e[2]);
    if (abs(a + b) < abs(a - b)) b = -b;
    if (abs(a + c) < abs(a - c)) c = -c;
    Real pi = const_pi();
    BigComplex w1 = BigComplex(pi) / agm_complex(a, b);
    BigComplex w2 = BigComplex(Real(0), pi) / agm_complex(a, c);
    reduce_basis(w1, w2);
    return {BigComplex(0), w1, w2};
}

inline EmbeddingPeriods period_lattice(const CurveData& c, std::size_t embedding) {
    auto ws = field_embeddings(c);
    if (embedding >= ws.size()) throw std::out_of_range("period_lattice: no such embedding");
    std::array<BigComplex, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = embed(c.ainvs[i], ws[embedding]);
    auto p = lattice_from_model(a);
    p.embedding = ws[embedding];
    return p;
}

// g2, g3 of the lattice Z a + Z b from the Eisenstein q-series (tau reduced)
inline std::pair<BigComplex, BigComplex> eisenstein_g2_g3(const BigComplex& w1, const BigComplex& w2) {
    BigComplex a = w1, b = w2;
    reduce_basis(a, b);
    BigComplex tau = b / a;
    Real pi = const_pi();
    BigComplex q = exp(BigComplex(Real(0), 2 * pi) * tau);
    BigComplex s3(0), s5(0), qn(1);
    Real eps = ldexp(Real(1), -(int)working_bits() - 8);
    for (long n = 1; n < 100000; ++n) {
        qn *= q;
        if (abs(qn) * Real(n) * Real(n) * Real(n) * Real(n) * Real(n) * Real(n) < eps) break;
        long sig3 = 0, sig5 = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) {
                sig3 += d * d * d;
                sig5 += d * d * d * d * d;
            }
        s3 += BigComplex(Real(sig3)) * qn;
        s5 += BigComplex(Real(sig5)) * qn;
    }
    BigComplex E4 = BigComplex(1) + BigComplex(240) * s3;
    BigComplex E6 = BigComplex(1) - BigComplex(504) * s5;
    BigComplex a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
    Real pi2 = pi * pi, pi4 = pi2 * pi2, pi6 = pi4 * pi2;
    BigComplex g2 = BigComplex(4 * pi4 / 3) * E4 / a4;
    BigComplex g3 = BigComplex(8 * pi6 / 27) * E6 / a6;
    return {g2, g3};
}

struct LatticeCheck {
    Real residual;  // max relative error of g2 against c4/12 and g3 against c6/216
};

inline LatticeCheck lattice_self_check(const CurveData& c, std::size_t embedding) {
    auto p = period_lattice(c, embedding);
    std::array<BigComplex, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = embed(c.ainvs[i], p.embedding);
    auto m = detail::embed_model(a);
    auto [g2, g3] = eisenstein_g2_g3(p.a, p.b);
    BigComplex w2 = m.c4 / BigComplex(12), w3 = m.c6 / BigComplex(216);
    auto rel = [](const BigComplex& x, const BigComplex& y) { return Real(abs(x - y) / max(Real(1), abs(y))); };
    return {max(rel(g2, w2), rel(g3, w3))};
}

// smallest positive real and smallest upper purely imaginary lattice vector of a conjugation-stable lattice
inline std::pair<Real, Real> real_and_imaginary_periods(const EmbeddingPeriods& p) {
    Real tol = ldexp(Real(1), -(int)working_bits() / 2) * abs(p.a);
    std::optional<Real> re, im;
    for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n) {
            if (m == 0 && n == 0) continue;
            BigComplex z = BigComplex(m) * p.a + BigComplex(n) * p.b;
            if (abs(z.im) < tol && z.re > 0 && (!re || z.re < *re)) re = z.re;
            if (abs(z.re) < tol && z.im > 0 && (!im || z.im < *im)) im = z.im;
        }
    if (!re || !im) throw LatticeError("lattice is not stable under complex conjugation");
    return {*re, *im};
}

// ---------------------------------------------------------------- comparison matrices

using Block = std::array<std::array<BigComplex, 2>, 2>;

inline BigComplex det2(const Block& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

// rows: de Rham basis (omega, sqrt(+-D) omega); columns: Betti basis of the +/- part
struct PeriodMatrix {
    FieldSign sign = FieldSign::Imaginary;
    long D = 1;  // |disc|
    Block plus{}, minus{};
    std::vector<EmbeddingPeriods> embeddings;
};

// imaginary case from (a, b) = (a1 + a2 i, b1 + b2 i); the minus block is the literal one
inline PeriodMatrix imaginary_period_matrix(const BigComplex& a, const BigComplex& b, long D) {
    PeriodMatrix pm;
    pm.sign = FieldSign::Imaginary;
    pm.D = D;
    BigComplex sD(sqrt(Real(D)));
    BigComplex i = I_unit();
    BigComplex a1(a.re), a2(a.im), b1(b.re), b2(b.im);
    pm.plus = {{{a1, b1}, {-sD * a2, -sD * b2}}};
    pm.minus = {{{i * a2, i * b2}, {i * sD * a1, i * sD * b1}}};
    return pm;
}

// real case: omega -> (omega^1, omega^2), sqrt(D) omega -> (sqrt(D) omega^1, -sqrt(D) omega^2)
inline PeriodMatrix real_period_matrix(const Real& om1p, const Real& om1m, const Real& om2p, const Real& om2m, long D) {
    PeriodMatrix pm;
    pm.sign = FieldSign::Real;
    pm.D = D;
    BigComplex sD(sqrt(Real(D)));
    BigComplex i = I_unit();
    pm.plus = {{{BigComplex(om1p), BigComplex(om2p)}, {sD * BigComplex(om1p), -sD * BigComplex(om2p)}}};
    pm.minus = {{{i * BigComplex(om1m), i * BigComplex(om2m)}, {i * sD * BigComplex(om1m), -(i * sD * BigComplex(om2m))}}};
    return pm;
}

inline PeriodMatrix res_period_matrix(const CurveData& c) {
    if (c.imaginary()) {
        auto p = period_lattice(c, 0);
        auto pm = imaginary_period_matrix(p.a, p.b, c.abs_disc());
        pm.embeddings = {p};
        return pm;
    }
    auto p1 = period_lattice(c, 0);
    auto p2 = period_lattice(c, 1);
    auto [r1, i1] = real_and_imaginary_periods(p1);
    auto [r2, i2] = real_and_imaginary_periods(p2);
    auto pm = real_period_matrix(r1, i1, r2, i2, c.abs_disc());
    pm.embeddings = {p1, p2};
    return pm;
}

// replace the de Rham basis by g (rows of g give the new basis in the old one)
inline PeriodMatrix change_de_rham_basis(const PeriodMatrix& pm, const std::array<std::array<Rational, 2>, 2>& g) {
    PeriodMatrix out = pm;
    for (int r = 0; r < 2; ++r)
        for (int col = 0; col < 2; ++col) {
            out.plus[r][col] = BigComplex(to_real(g[r][0])) * pm.plus[0][col] + BigComplex(to_real(g[r][1])) * pm.plus[1][col];
            out.minus[r][col] =
                BigComplex(to_real(g[r][0])) * pm.minus[0][col] + BigComplex(to_real(g[r][1])) * pm.minus[1][col];
        }
    return out;
}

struct DelignePeriods {
    BigComplex plus, minus;
};

class DegenerateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// (2 pi i)^{-2 l2} det c^{+-}; the two determinants trade places when l2 is odd
inline DelignePeriods deligne_periods(const PeriodMatrix& pm, int l1, int l2) {
    (void)l1;
    BigComplex dp = det2(pm.plus), dm = det2(pm.minus);
    Real tiny = ldexp(Real(1), -(int)working_bits() / 2);
    if (abs(dp) < tiny || abs(dm) < tiny) throw DegenerateError("deligne_periods: zero determinant");
    // (2 pi i)^{-2 l2} = (-4 pi^2)^{-l2}
    Real pi = const_pi();
    BigComplex scale(pow(-4 * pi * pi, Real(-l2)));
    DelignePeriods d{scale * dp, scale * dm};
    if (l2 % 2 != 0) std::swap(d.plus, d.minus);
    return d;
}

}  // namespace motivic
