#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "motivic/exact.hpp"
#include "motivic/numerics.hpp"
#include "motivic/periods.hpp"

namespace motivic {

// ---------------------------------------------------------------- scalar back ends

template <class T>
struct Scalar;

template <>
struct Scalar<ExactNum> {
    static ExactNum from(const Rational& q, long D = 1) { return ExactNum(QI(q), D); }
    static ExactNum i() { return ExactNum(qi_i()); }
    static ExactNum two_pi_i_pow(long n) { return ExactNum::two_pi_i_pow(n); }
    static ExactNum pi_pow(long n) { return ExactNum::pi_pow(n); }
    static ExactNum sqrtD(long D) { return ExactNum::sqrtD(D); }
    static ExactNum inv(const ExactNum& x) { return x.inverse(); }
    static bool is_zero(const ExactNum& x) { return x.is_zero(); }
    static BigComplex value(const ExactNum& x) { return x.eval(); }
};

template <>
struct Scalar<BigComplex> {
    static BigComplex from(const Rational& q, long = 1) { return BigComplex(to_real(q)); }
    static BigComplex i() { return I_unit(); }
    static BigComplex two_pi_i_pow(long n) {
        // (2 pi i)^n = (2 pi)^n i^n
        Real m = pow(2 * const_pi(), Real(n));
        switch (((n % 4) + 4) % 4) {
            case 0: return {m, Real(0)};
            case 1: return {Real(0), m};
            case 2: return {-m, Real(0)};
            default: return {Real(0), -m};
        }
    }
    static BigComplex pi_pow(long n) { return BigComplex(pow(const_pi(), Real(n))); }
    static BigComplex sqrtD(long D) { return BigComplex(sqrt(Real(D))); }
    static BigComplex inv(const BigComplex& x) { return BigComplex(1) / x; }
    static bool is_zero(const BigComplex& x) { return abs(x) < ldexp(Real(1), -(int)working_bits() / 2); }
    static BigComplex value(const BigComplex& x) { return x; }
};

template <class T>
using Mat2 = std::array<std::array<T, 2>, 2>;

// comparison entries c^{+-}_{ij}: omega_i -> sum_j c+_{ij} v_j^+ + c-_{ij} v_j^-
template <class T>
struct CBlocks {
    Mat2<T> plus, minus;
};

inline CBlocks<BigComplex> blocks_of(const PeriodMatrix& pm) { return {pm.plus, pm.minus}; }

template <class T>
T det2(const Mat2<T>& m) {
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

// Laplace expansion, kept independent of any closed form
template <class T, std::size_t N>
T det_laplace(const std::array<std::array<T, N>, N>& m) {
    if constexpr (N == 1) {
        return m[0][0];
    } else {
        T s = Scalar<T>::from(Rational(0));
        for (std::size_t c = 0; c < N; ++c) {
            std::array<std::array<T, N - 1>, N - 1> minor;
            for (std::size_t r = 1; r < N; ++r) {
                std::size_t cc = 0;
                for (std::size_t k = 0; k < N; ++k)
                    if (k != c) minor[r - 1][cc++] = m[r][k];
            }
            T term = m[0][c] * det_laplace<T, N - 1>(minor);
            if (c % 2) s -= term;
            else s += term;
        }
        return s;
    }
}

// ---------------------------------------------------------------- the Sym^2 frame

// Betti coordinates in (u11, u12, u21, u22), u_ab = v_a^+ v_b^- + v_b^- v_a^+
template <class T>
using UVec = std::array<T, 4>;

template <class T>
struct Sym2Frame {
    int k = 2;
    CBlocks<T> c;
    T cplus, cminus;
    // images of omega11, omega22, omega12 (display order of the comparison matrix)
    std::array<UVec<T>, 3> display;
    // v1 = omega11, v2 = omega12, v3 = omega22, v4 = (2 pi i)^{4(k-1)} u12 / c
    std::array<UVec<T>, 4> v;
    T c_det;     // det(v1, v2, v3, u12)
    T c_closed;  // c+ c- (c+22 c-11 - c+12 c-21)
};

template <class T>
UVec<T> image_of(const CBlocks<T>& c, int i, int j) {
    // omega_i omega_j (symmetrized when i != j)
    const auto& P = c.plus;
    const auto& M = c.minus;
    UVec<T> out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            if (i == j) out[2 * a + b] = P[i][a] * M[i][b];
            else out[2 * a + b] = P[i][a] * M[j][b] + P[j][a] * M[i][b];
        }
    return out;
}

class FrameError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <class T>
Sym2Frame<T> build_frame(const CBlocks<T>& c, int k) {
    using S = Scalar<T>;
    if (k < 2 || k % 2) throw std::invalid_argument("build_frame: k must be even and >= 2");
    Sym2Frame<T> f;
    f.k = k;
    f.c = c;
    f.cplus = det2(c.plus);
    f.cminus = det2(c.minus);
    UVec<T> w11 = image_of(c, 0, 0), w22 = image_of(c, 1, 1), w12 = image_of(c, 0, 1);
    f.display = {w11, w22, w12};
    std::array<std::array<T, 4>, 4> m;
    UVec<T> u12{S::from(0), S::from(1), S::from(0), S::from(0)};
    std::array<UVec<T>, 4> cols{w11, w12, w22, u12};
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col) m[r][col] = cols[col][r];
    f.c_det = det_laplace<T, 4>(m);
    f.c_closed = f.cplus * f.cminus * (c.plus[1][1] * c.minus[0][0] - c.plus[0][1] * c.minus[1][0]);
    if (S::is_zero(f.c_det)) throw FrameError("build_frame: c = 0");
    T scale = S::two_pi_i_pow(4 * (k - 1)) * S::inv(f.c_det);
    UVec<T> v4;
    for (int r = 0; r < 4; ++r) v4[r] = u12[r] * scale;
    f.v = {w11, w12, w22, v4};
    return f;
}

// polarization on the u basis: 2 (2 pi i)^{-2(k-1)} antidiag(1, -1, -1, 1)
template <class T>
T pair(const UVec<T>& x, const UVec<T>& y, int k) {
    T s = x[0] * y[3] + x[3] * y[0] - x[1] * y[2] - x[2] * y[1];
    return Scalar<T>::from(2) * Scalar<T>::two_pi_i_pow(-2 * (k - 1)) * s;
}

// delta' = (w1 (x) conj w2 + conj w2 (x) w1) + (-1)^{k-1} (w2 (x) conj w1 + conj w1 (x) w2), with
// conj acting by -1 on the v^- coordinates
template <class T>
UVec<T> natural_generator(const CBlocks<T>& c, int k) {
    const auto& P = c.plus;
    const auto& M = c.minus;
    T s = Scalar<T>::from((k - 1) % 2 ? -1 : 1);
    UVec<T> out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            T first = P[1][a] * M[0][b] - P[0][a] * M[1][b];
            T second = P[0][a] * M[1][b] - P[1][a] * M[0][b];
            out[2 * a + b] = first + s * second;
        }
    return out;
}

// delta = (2 pi i)^{k-1} delta'
template <class T>
UVec<T> natural_generator_delta(const CBlocks<T>& c, int k) {
    UVec<T> d = natural_generator(c, k);
    for (auto& x : d) x = x * Scalar<T>::two_pi_i_pow(k - 1);
    return d;
}

template <class T>
struct FrameIdentities {
    std::array<T, 3> delta_v;  // <delta', v_i>, i = 1..3
    T v4_normalized;           // <delta', v4> c+ c- / (2 pi i)^{2(k-1)}
    T c_defect;                // c_det - c_closed
};

template <class T>
FrameIdentities<T> frame_identities(const Sym2Frame<T>& f) {
    using S = Scalar<T>;
    UVec<T> d = natural_generator(f.c, f.k);
    FrameIdentities<T> r;
    for (int i = 0; i < 3; ++i) r.delta_v[i] = pair(d, f.v[i], f.k);
    r.v4_normalized = pair(d, f.v[3], f.k) * f.cplus * f.cminus * S::two_pi_i_pow(-2 * (f.k - 1));
    r.c_defect = f.c_det - f.c_closed;
    return r;
}

// ---------------------------------------------------------------- imaginary quadratic e/f frame (k = 2)

// coordinates in (f11, f12, f22) and in (g11, g12 + g21, g22) on Sym^2 H^1(E^sigma)
template <class T>
using FVec = std::array<T, 3>;

template <class T>
struct ImaginaryFrame {
    T a1, a2, b1, b2;
    long D = 1;
    FVec<T> v1, v2, v3;
    T alpha;          // from v1 ^ v2 ^ v3 = f11(1) ^ f12(1) ^ f22(1), v3 = f11 / alpha
    T alpha_printed;  // -(1/2 pi i)(sqrt D/(2 pi)^2)(b1^2 + b2^2)(a1 b2 - a2 b1)
    FVec<T> eta_prime;
};

template <class T>
ImaginaryFrame<T> build_imaginary_frame(const T& a1, const T& a2, const T& b1, const T& b2, long D) {
    using S = Scalar<T>;
    ImaginaryFrame<T> f{a1, a2, b1, b2, D, {}, {}, {}, {}, {}, {}};
    T i = S::i(), two = S::from(2), sD = S::sqrtD(D);
    f.v1 = {two * a1 * a2 * i, two * (a1 * b2 + a2 * b1) * i, two * b1 * b2 * i};
    f.v2 = {sD * (a1 * a1 - a2 * a2) * i, sD * two * (a1 * b1 - a2 * b2) * i, sD * (b1 * b1 - b2 * b2) * i};
    T minor = f.v1[1] * f.v2[2] - f.v1[2] * f.v2[1];
    if (S::is_zero(minor)) throw FrameError("build_imaginary_frame: degenerate periods");
    f.alpha = minor * S::two_pi_i_pow(-3);
    f.v3 = {S::inv(f.alpha), S::from(0), S::from(0)};
    f.alpha_printed = -(S::two_pi_i_pow(-1) * sD * S::from(Rational(1, 4)) * S::pi_pow(-2) * (b1 * b1 + b2 * b2) *
                        (a1 * b2 - a2 * b1));
    T ti = two * i;
    f.eta_prime = {ti * (a1 * a1 + a2 * a2), ti * (a1 * b1 + a2 * b2), ti * (b1 * b1 + b2 * b2)};
    return f;
}

// projection to the first component: f11 -> g11, f12 -> (g12 + g21)/2, f22 -> g22
template <class T>
FVec<T> project_first(const FVec<T>& v) {
    return {v[0], v[1] * Scalar<T>::from(Rational(1, 2)), v[2]};
}

// Poincare pairing on Sym^2 H^1 with <g1, g2> = 1/(2 pi i)
template <class T>
T pair_pd(const FVec<T>& x, const FVec<T>& y) {
    T t2 = Scalar<T>::two_pi_i_pow(-2);
    return t2 * (x[0] * y[2] + x[2] * y[0] - Scalar<T>::from(2) * x[1] * y[1]);
}

template <class T>
struct ImaginaryIdentities {
    T p1v1_eta, p1v2_eta, p1v3_eta;
    T p1v3_expected;  // -2 pi / (sqrt D (a1 b2 - a2 b1))
};

template <class T>
ImaginaryIdentities<T> imaginary_identities(const ImaginaryFrame<T>& f) {
    using S = Scalar<T>;
    ImaginaryIdentities<T> r;
    r.p1v1_eta = pair_pd(project_first(f.v1), f.eta_prime);
    r.p1v2_eta = pair_pd(project_first(f.v2), f.eta_prime);
    r.p1v3_eta = pair_pd(project_first(f.v3), f.eta_prime);
    r.p1v3_expected = -(S::from(2) * S::pi_pow(1) * S::inv(S::sqrtD(f.D) * (f.a1 * f.b2 - f.a2 * f.b1)));
    return r;
}

// ---------------------------------------------------------------- generator transport

// formal tensors over the symbols x = omega^sigma, xbar, y = omega^{sigma^c}, ybar
struct FormalTensor {
    enum Sym { X = 0, XB = 1, Y = 2, YB = 3 };
    std::map<std::pair<int, int>, ExactNum> t;

    static FormalTensor pure(const std::array<ExactNum, 4>& a, const std::array<ExactNum, 4>& b) {
        FormalTensor r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                ExactNum c = a[i] * b[j];
                if (!c.is_zero()) r.t[{i, j}] = r.t[{i, j}] + c;
            }
        r.trim();
        return r;
    }
    // a (x) b + b (x) a
    static FormalTensor sym(const std::array<ExactNum, 4>& a, const std::array<ExactNum, 4>& b) {
        return pure(a, b) + pure(b, a);
    }
    FormalTensor operator+(const FormalTensor& o) const {
        FormalTensor r = *this;
        for (const auto& [k, v] : o.t) r.t[k] = r.t[k] + v;
        r.trim();
        return r;
    }
    FormalTensor operator*(const ExactNum& s) const {
        FormalTensor r;
        for (const auto& [k, v] : t) r.t[k] = v * s;
        r.trim();
        return r;
    }
    FormalTensor operator-(const FormalTensor& o) const { return *this + o * ExactNum(-1); }
    bool operator==(const FormalTensor& o) const { return (*this - o).t.empty(); }
    void trim() {
        for (auto it = t.begin(); it != t.end();)
            it = it->second.is_zero() ? t.erase(it) : std::next(it);
    }
    std::string str() const {
        static const char* nm[] = {"w", "wbar", "w'", "w'bar"};
        std::string s;
        for (const auto& [k, v] : t) s += (s.empty() ? "" : " + ") + ("[" + v.str() + "] " + nm[k.first] + "(x)" + nm[k.second]);
        return s.empty() ? "0" : s;
    }
};

// V1.V2 summand of a symmetric tensor, read as an element of V1 (x) V2 via a.b -> a (x) b
inline FormalTensor mixed_part(const FormalTensor& t) {
    FormalTensor r;
    for (const auto& [k, v] : t.t)
        if (k.first < 2 && k.second >= 2) r.t[k] = v;
    r.trim();
    return r;
}

struct TransportResult {
    FormalTensor delta_prime;
    FormalTensor eta;     // eta' (imaginary) or eta (real), as defined
    ExactNum ratio;       // delta' = ratio * eta
    bool proportional = false;
};

// imaginary case: omega_1 = omega^sigma, omega_2 = sqrt(-D) omega^sigma, eta' = i (w (x) wbar + wbar (x) w)
inline TransportResult transport_imaginary(long D) {
    ExactNum z(0), one(1);
    ExactNum isD = ExactNum(qi_i()) * ExactNum::sqrtD(D);
    std::array<ExactNum, 4> w1{one, z, z, z}, w1b{z, one, z, z};
    std::array<ExactNum, 4> w2{isD, z, z, z}, w2b{z, -isD, z, z};
    TransportResult r;
    r.delta_prime = FormalTensor::sym(w1, w2b) - FormalTensor::sym(w2, w1b);
    r.eta = FormalTensor::sym(w1, w1b) * ExactNum(qi_i());
    auto it = r.eta.t.begin();
    r.ratio = r.delta_prime.t.count(it->first) ? r.delta_prime.t.at(it->first) / it->second : ExactNum(0);
    r.proportional = r.delta_prime == r.eta * r.ratio;
    return r;
}

// real case: omega_1 = (w, w'), omega_2 = sqrt(D) (w, -w'); eta = (w (x) w'bar - wbar (x) w') / sqrt(D),
// compared with the V1 (x) V2 component of delta'
inline TransportResult transport_real(long D) {
    ExactNum z(0), one(1), sD = ExactNum::sqrtD(D);
    std::array<ExactNum, 4> w1{one, z, one, z}, w1b{z, one, z, one};
    std::array<ExactNum, 4> w2{sD, z, -sD, z}, w2b{z, sD, z, -sD};
    TransportResult r;
    r.delta_prime = mixed_part(FormalTensor::sym(w1, w2b) - FormalTensor::sym(w2, w1b));
    std::array<ExactNum, 4> x{one, z, z, z}, xb{z, one, z, z}, y{z, z, one, z}, yb{z, z, z, one};
    r.eta = (FormalTensor::pure(x, yb) - FormalTensor::pure(xb, y)) * sD.inverse();
    auto it = r.eta.t.begin();
    r.ratio = r.delta_prime.t.count(it->first) ? r.delta_prime.t.at(it->first) / it->second : ExactNum(0);
    r.proportional = r.delta_prime == r.eta * r.ratio;
    return r;
}

// ---------------------------------------------------------------- predictions

enum class RegulatorVariant { General, Imaginary, HilbertAsai };

struct RegulatorInputs {
    BigComplex cplus{1}, cminus{1};  // general
    int k = 2;
    BigComplex a, b;  // imaginary
    long D = 1;
};

// the pairing value <delta' (or eta'), r_D(alpha)> implied by the stated relation
inline BigComplex predicted_regulator(const RegulatorInputs& in, const BigComplex& Lprime, RegulatorVariant v) {
    Real pi = const_pi();
    switch (v) {
        case RegulatorVariant::General: {
            BigComplex cc = in.cplus * in.cminus;
            if (abs(cc) == 0) throw FrameError("predicted_regulator: c+ c- = 0");
            return Lprime * BigComplex(pow(pi, Real(2 * (in.k - 1)))) / cc;
        }
        case RegulatorVariant::Imaginary: {
            Real det = in.a.re * in.b.im - in.a.im * in.b.re;
            if (det == 0) throw FrameError("predicted_regulator: degenerate periods");
            return Lprime * BigComplex(4 * pi * pi / (sqrt(Real(in.D)) * det));
        }
        case RegulatorVariant::HilbertAsai: return Lprime;
    }
    return Lprime;
}

}  // namespace motivic
