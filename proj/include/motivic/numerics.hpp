#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace motivic {

namespace bmp = boost::multiprecision;
using Real = bmp::mpfr_float;
using Rational = bmp::mpq_rational;
using Integer = bmp::mpz_int;

inline constexpr unsigned kDefaultBits = 192;

namespace detail {
inline thread_local unsigned g_bits = 0;
}

inline unsigned digits_of(unsigned bits) { return static_cast<unsigned>(bits * 0.30102999566398120); }

inline unsigned working_bits() {
    if (detail::g_bits == 0) {
        detail::g_bits = kDefaultBits;
        Real::default_precision(digits_of(kDefaultBits) + 1);
    }
    return detail::g_bits;
}
inline unsigned working_digits() { return digits_of(working_bits()); }

namespace detail {
inline const unsigned g_boot_bits = working_bits();
}

// RAII guard; every Real created inside gets this precision.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(working_bits()) { set(bits); }
    ~PrecisionScope() { set(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    static void set(unsigned bits) {
        detail::g_bits = bits;
        Real::default_precision(digits_of(bits) + 1);
    }
    unsigned saved_;
};

// copy of x at the current working precision (Boost keeps the source precision on copy)
inline Real at_working(const Real& x) {
    Real r(0, digits_of(working_bits()) + 1);
    mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

inline Real eps_working() { return ldexp(Real(1), -static_cast<int>(working_bits())); }

inline Real const_pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}
inline Real const_euler() {
    Real r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}
inline Real const_log2() {
    Real r;
    mpfr_const_log2(r.backend().data(), MPFR_RNDN);
    return r;
}
inline Real const_catalan() {
    Real r;
    mpfr_const_catalan(r.backend().data(), MPFR_RNDN);
    return r;
}
inline Real zeta_ui(unsigned long k) {
    Real r;
    mpfr_zeta_ui(r.backend().data(), k, MPFR_RNDN);
    return r;
}
inline Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}
inline Real to_real(const Integer& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
    return r;
}

struct BigComplex {
    Real re, im;

    BigComplex() : re(0), im(0) {}
    BigComplex(const Real& r) : re(r), im(0) {}
    BigComplex(const Real& r, const Real& i) : re(r), im(i) {}
    BigComplex(int r) : re(r), im(0) {}
    BigComplex(double r, double i = 0) : re(r), im(i) {}

    unsigned precision_bits() const {
        return static_cast<unsigned>(std::max(mpfr_get_prec(re.backend().data()), mpfr_get_prec(im.backend().data())));
    }

    BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
    BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
    BigComplex& operator*=(const BigComplex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    BigComplex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
    BigComplex& operator/=(const BigComplex& o) {
        Real d = o.re * o.re + o.im * o.im;
        Real r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
    BigComplex& operator/=(const Real& s) { re /= s; im /= s; return *this; }
    BigComplex operator-() const { return {-re, -im}; }
};

inline BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
inline BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
inline BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
inline BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
inline BigComplex operator*(BigComplex a, const Real& s) { return a *= s; }
inline BigComplex operator*(const Real& s, BigComplex a) { return a *= s; }
inline BigComplex operator/(BigComplex a, const Real& s) { return a /= s; }

inline BigComplex I_unit() { return {Real(0), Real(1)}; }
inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }
inline Real norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const BigComplex& z) { return hypot(z.re, z.im); }
inline Real arg(const BigComplex& z) { return atan2(z.im, z.re); }

inline BigComplex exp(const BigComplex& z) {
    Real m = exp(z.re);
    Real s, c;
    s = sin(z.im);
    c = cos(z.im);
    return {m * c, m * s};
}
// principal branch
inline BigComplex log(const BigComplex& z) { return {log(abs(z)), arg(z)}; }
inline BigComplex sqrt(const BigComplex& z) {
    if (z.re == 0 && z.im == 0) return {Real(0), Real(0)};
    Real r = abs(z);
    Real a = sqrt((r + abs(z.re)) / 2);
    if (z.re >= 0) return {a, z.im / (2 * a)};
    Real b = z.im >= 0 ? a : Real(-a);
    return {abs(z.im) / (2 * a), b};
}
inline BigComplex pow(const BigComplex& z, const BigComplex& w) { return exp(w * log(z)); }
// x^w for x > 0
inline BigComplex pow(const Real& x, const BigComplex& w) {
    Real lx = log(x);
    return exp(BigComplex(w.re * lx, w.im * lx));
}
inline BigComplex sin(const BigComplex& z) {
    // sin(x+iy) = sin x cosh y + i cos x sinh y
    return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

inline std::string to_string(const Real& x, int digits = 25) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}
inline std::string to_string(const BigComplex& z, int digits = 25) {
    return to_string(z.re, digits) + (z.im < 0 ? " - " : " + ") + to_string(abs(z.im), digits) + "i";
}

// ---------------------------------------------------------------- Gamma

class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, long at) : std::domain_error(what), at_(at) {}
    long at() const { return at_; }

private:
    long at_;
};

namespace detail {

// B_0, B_2, B_4, ... as exact rationals
inline const std::vector<Rational>& bernoulli_even(std::size_t count) {
    static std::mutex mu;
    static std::vector<Rational> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() >= count) return cache;
    // tangent numbers (Brent-Harvey), then B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))
    std::size_t n = std::max<std::size_t>(count, 2 * cache.size() + 8);
    std::vector<Integer> T(n + 1);
    T[1] = 1;
    for (std::size_t k = 2; k <= n; ++k) T[k] = Integer(k - 1) * T[k - 1];
    for (std::size_t k = 2; k <= n; ++k)
        for (std::size_t j = k; j <= n; ++j) T[j] = Integer(j - k) * T[j - 1] + Integer(j - k + 2) * T[j];
    std::vector<Rational> B(n + 1);
    B[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Integer four = Integer(1) << (2 * k);
        Rational b(Integer(2 * k) * T[k], four * (four - 1));
        B[k] = (k % 2 == 1) ? b : Rational(-b);
    }
    count = n + 1;
    cache.clear();
    for (std::size_t i = 0; i < count; ++i) cache.push_back(B[i]);
    return cache;
}

inline bool near_nonpositive_integer(const BigComplex& z, long& n) {
    if (z.re > Real(0.5)) return false;
    Real r = round(z.re);
    Real tol = ldexp(Real(1), -static_cast<int>(working_bits()) + 16);
    if (abs(z.re - r) < tol && abs(z.im) < tol) {
        n = r.convert_to<long>();
        return true;
    }
    return false;
}

// Stirling for Re z large enough
inline BigComplex lgamma_stirling(const BigComplex& z) {
    const Real pi = const_pi();
    BigComplex lz = log(z);
    BigComplex res = (z - BigComplex(Real(0.5))) * lz - z + BigComplex(log(2 * pi) / 2);
    BigComplex zinv = BigComplex(1) / z;
    BigComplex z2inv = zinv * zinv;
    BigComplex zp = zinv;
    Real eps = eps_working();
    Real az = abs(z);
    std::size_t nmax = static_cast<std::size_t>(std::max(8.0, 3.2 * az.convert_to<double>())) + 4;
    const auto& B = bernoulli_even(nmax + 1);
    for (std::size_t n = 1; n <= nmax; ++n) {
        Real c = to_real(B[n]) / Real((2 * n) * (2 * n - 1));
        BigComplex t = zp * c;
        res += t;
        if (abs(t) < eps * abs(res)) break;
        zp *= z2inv;
    }
    return res;
}

}  // namespace detail

// log Gamma; the imaginary part is correct mod 2*pi only
inline BigComplex lgamma(const BigComplex& z) {
    long n = 0;
    if (detail::near_nonpositive_integer(z, n)) throw PoleError("Gamma has a pole at s = " + std::to_string(n), n);
    const Real pi = const_pi();
    if (z.re < Real(0.5)) {
        BigComplex s = sin(BigComplex(pi * z.re, pi * z.im));
        return BigComplex(log(pi)) - log(s) - lgamma(BigComplex(1) - z);
    }
    double r0 = 0.12 * working_bits() + 2.0;
    Real r(r0);
    if (abs(z.im) >= r) return detail::lgamma_stirling(z);
    long shift = 0;
    if (z.re < r) shift = (r - z.re).convert_to<long>() + 1;
    BigComplex prod(1);
    for (long k = 0; k < shift; ++k) prod *= z + BigComplex(Real(k));
    return detail::lgamma_stirling(z + BigComplex(Real(shift))) - log(prod);
}

inline BigComplex gamma(const BigComplex& z) { return exp(lgamma(z)); }

// Gamma_R(s) = pi^{-s/2} Gamma(s/2)
inline BigComplex gamma_r(const BigComplex& s) {
    BigComplex h = s / Real(2);
    long n = 0;
    if (detail::near_nonpositive_integer(h, n))
        throw PoleError("Gamma_R has a pole at s = " + std::to_string(2 * n), 2 * n);
    return exp(lgamma(h) - h * log(const_pi()));
}

// Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)
inline BigComplex gamma_c(const BigComplex& s) {
    long n = 0;
    if (detail::near_nonpositive_integer(s, n)) throw PoleError("Gamma_C has a pole at s = " + std::to_string(n), n);
    return Real(2) * exp(lgamma(s) - s * log(2 * const_pi()));
}

// ---------------------------------------------------------------- GammaShifts

// L_inf(s) = prod Gamma_C(s + c_i) prod Gamma_R(s + r_j); integer shifts only
struct GammaShifts {
    std::vector<int> gc;
    std::vector<int> gr;

    std::size_t degree() const { return 2 * gc.size() + gr.size(); }

    // Gamma_C(s+a) = Gamma_R(s+a) Gamma_R(s+a+1)
    std::vector<int> mu() const {
        std::vector<int> m;
        for (int a : gc) {
            m.push_back(a);
            m.push_back(a + 1);
        }
        for (int b : gr) m.push_back(b);
        std::sort(m.begin(), m.end());
        return m;
    }

    // s -> s + t
    GammaShifts shifted(int t) const {
        GammaShifts g = *this;
        for (int& a : g.gc) a += t;
        for (int& b : g.gr) b += t;
        return g;
    }

    BigComplex eval(const BigComplex& s) const {
        BigComplex v(1);
        for (int a : gc) v *= gamma_c(s + BigComplex(Real(a)));
        for (int b : gr) v *= gamma_r(s + BigComplex(Real(b)));
        return v;
    }

    BigComplex log_eval(const BigComplex& s) const {
        const Real lpi = log(const_pi());
        const Real l2pi = log(2 * const_pi());
        BigComplex v(0);
        for (int a : gc) {
            BigComplex z = s + BigComplex(Real(a));
            v += lgamma(z) - z * l2pi + BigComplex(const_log2());
        }
        for (int b : gr) {
            BigComplex z = (s + BigComplex(Real(b))) / Real(2);
            v += lgamma(z) - z * lpi;
        }
        return v;
    }

    // poles of L_inf are at s = -mu - 2n
    bool has_pole_at(long s) const {
        for (int m : mu())
            if (s + m <= 0 && (s + m) % 2 == 0) return true;
        return false;
    }

    bool operator==(const GammaShifts& o) const { return mu() == o.mu(); }

    std::string describe() const {
        std::ostringstream os;
        auto term = [&](const char* name, int a) {
            os << name << "(s";
            if (a > 0) os << "+" << a;
            if (a < 0) os << a;
            os << ")";
        };
        std::vector<int> c = gc, r = gr;
        std::sort(c.begin(), c.end());
        std::sort(r.begin(), r.end());
        for (int a : c) term("G_C", a);
        for (int b : r) term("G_R", b);
        return os.str();
    }
};

// ---------------------------------------------------------------- inverse Mellin kernel

namespace detail {

using Series = std::vector<Real>;

inline Series series_mul(const Series& a, const Series& b, std::size_t len) {
    Series c(len, Real(0));
    for (std::size_t i = 0; i < len && i < a.size(); ++i)
        for (std::size_t j = 0; i + j < len && j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// a / (c + d)
inline Series series_div_linear(const Series& a, const Real& c) {
    Series q(a.size());
    Real prev(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        q[i] = (a[i] - prev) / c;
        prev = q[i];
    }
    return q;
}

inline Series series_mul_linear(const Series& a, const Real& c) {
    Series q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        q[i] = c * a[i];
        if (i > 0) q[i] += a[i - 1];
    }
    return q;
}

inline Series series_exp(const Series& a) {
    // a[0] handled separately
    std::size_t n = a.size();
    Series e(n, Real(0));
    e[0] = exp(a[0]);
    for (std::size_t k = 1; k < n; ++k) {
        Real s(0);
        for (std::size_t j = 1; j <= k; ++j) s += Real(j) * a[j] * e[k - j];
        e[k] = s / Real(k);
    }
    return e;
}

// Gamma(1 + d) and Gamma(1/2 + d)
inline Series gamma_one_series(std::size_t len) {
    Series l(len, Real(0));
    if (len > 1) l[1] = -const_euler();
    for (std::size_t k = 2; k < len; ++k) l[k] = (k % 2 ? Real(-1) : Real(1)) * zeta_ui(k) / Real(k);
    return series_exp(l);
}
inline Series gamma_half_series(std::size_t len) {
    Series l(len, Real(0));
    l[0] = log(const_pi()) / 2;
    if (len > 1) l[1] = -const_euler() - 2 * const_log2();
    for (std::size_t k = 2; k < len; ++k) {
        Real c = (ldexp(Real(1), static_cast<int>(k)) - 1) * zeta_ui(k) / Real(k);
        l[k] = k % 2 ? Real(-c) : c;
    }
    return series_exp(l);
}

// Laurent data for Gamma(V/2 + d): d^{-pole} * ser(d)
struct GammaLocal {
    int V = 0;
    int pole = 0;
    Series ser;
};

inline GammaLocal gamma_local(int V, std::size_t len) {
    GammaLocal g;
    g.V = V;
    if (V % 2 == 0) {
        int v = V / 2;
        g.ser = gamma_one_series(len);
        if (v >= 1) {
            for (int j = 1; j <= v - 1; ++j) g.ser = series_mul_linear(g.ser, Real(j));
        } else {
            g.pole = 1;
            for (int j = 1; j <= -v; ++j) g.ser = series_div_linear(g.ser, Real(-j));
        }
    } else {
        // v = 1/2 + n
        int n = (V - 1) / 2;
        g.ser = gamma_half_series(len);
        if (n >= 0) {
            for (int j = 0; j < n; ++j) g.ser = series_mul_linear(g.ser, Real(1) / 2 + j);
        } else {
            for (int j = 1; j <= -n; ++j) g.ser = series_div_linear(g.ser, Real(1) / 2 - j);
        }
    }
    return g;
}

// Gamma(v + d) -> Gamma(v - 1 + d)
inline void gamma_local_step(GammaLocal& g) {
    int V = g.V - 2;
    if (V == 0) {
        g.pole = 1;  // divide by d
    } else {
        g.ser = series_div_linear(g.ser, Real(V) / 2);
    }
    g.V = V;
}

// M(t) = (1/2 pi i) int prod Gamma(z + mu_j/2) t^{-z} dz, residue sum
inline Real kernel_series(const std::vector<int>& mu, const Real& t) {
    std::size_t d = mu.size();
    Real sum(0);
    Real lt = log(t);
    Real eps = eps_working();
    Real maxterm(0);
    for (int parity = 0; parity <= 1; ++parity) {
        std::vector<int> cls;
        for (int m : mu)
            if (((m % 2) + 2) % 2 == parity) cls.push_back(m);
        if (cls.empty()) continue;
        std::size_t len = cls.size();
        // rightmost pole: 2 z0 = max(-mu)
        int twoz0 = -*std::min_element(cls.begin(), cls.end());
        std::vector<GammaLocal> f;
        for (int m : mu) f.push_back(gamma_local(twoz0 + m, len));
        int small_run = 0;
        for (long n = 0; n < 100000; ++n) {
            int order = 0;
            for (auto& g : f) order += g.pole;
            Series p(len, Real(0));
            p[0] = 1;
            for (auto& g : f) p = series_mul(p, g.ser, len);
            // times t^{-z0} exp(-d log t)
            Series e(len, Real(0));
            e[0] = 1;
            for (std::size_t k = 1; k < len; ++k) e[k] = e[k - 1] * (-lt) / Real(k);
            Real coef(0);
            if (order >= 1) {
                std::size_t idx = static_cast<std::size_t>(order - 1);
                for (std::size_t k = 0; k <= idx; ++k) coef += p[k] * e[idx - k];
            }
            Real z0 = Real(twoz0) / 2 - Real(n);
            Real term = coef * exp(-z0 * lt);
            sum += term;
            Real at = abs(term);
            if (at > maxterm) maxterm = at;
            if (order >= 1 && n > 2 && at <= eps * maxterm * ldexp(Real(1), -8)) {
                if (++small_run >= 3) break;
            } else {
                small_run = 0;
            }
            for (auto& g : f) gamma_local_step(g);
        }
        (void)d;
    }
    return sum;
}

inline Real kernel_quadrature(const std::vector<int>& mu, const Real& t, unsigned target_bits) {
    std::size_t d = mu.size();
    double td = std::pow(t.convert_to<double>(), 1.0 / static_cast<double>(d));
    int numin = *std::min_element(mu.begin(), mu.end());
    // saddle point of prod Gamma(c + nu) t^{-c}, kept right of every pole
    double c0 = std::max(td, -0.5 * numin + 1.0);
    Real c(c0);
    Real lt = log(t);
    auto f = [&](const Real& y) {
        BigComplex z(c, y);
        BigComplex s(0);
        for (int m : mu) s += lgamma(z + BigComplex(Real(m) / 2));
        s -= z * lt;
        return exp(s).re;
    };
    Real eps = eps_working();
    double width = c0 + 0.5 * numin;  // distance to nearest pole
    double h0 = std::min(0.5, 2 * M_PI * std::max(width, 0.5) / (working_bits() * 0.6931 + 10));
    Real h(h0);
    Real f0 = f(Real(0));
    Real acc = f0 / 2;
    std::vector<Real> ys;
    int small = 0;
    for (long k = 1; k < 1000000; ++k) {
        Real v = f(h * k);
        acc += v;
        if (abs(v) < eps * abs(acc)) {
            if (++small >= 4) break;
        } else {
            small = 0;
        }
    }
    Real prev = acc * h;
    for (int level = 0; level < 8; ++level) {
        // add midpoints
        Real mids(0);
        small = 0;
        for (long k = 0; k < 2000000; ++k) {
            Real v = f(h * (Real(k) + Real(0.5)));
            mids += v;
            if (abs(v) < eps * abs(acc)) {
                if (++small >= 4) break;
            } else {
                small = 0;
            }
        }
        acc += mids;
        h /= 2;
        Real cur = acc * h;
        if (abs(cur - prev) < abs(cur) * ldexp(Real(1), -static_cast<int>(target_bits) - 4)) return cur * 2 / (2 * const_pi());
        prev = cur;
    }
    throw std::runtime_error("inv_mellin_kernel: quadrature did not converge");
}

}  // namespace detail

// t^{1/d} beyond which the residue series loses more than half the digits
inline double kernel_crossover_tau(std::size_t degree, unsigned bits) {
    return bits * 0.6931471805599453 / (4.0 * static_cast<double>(degree));
}

// phi(x) = (1/2 pi i) int_{(c)} prod_j Gamma_R(s + mu_j) x^{-s} ds
inline Real inv_mellin_kernel(const GammaShifts& shifts, const Real& x) {
    std::vector<int> mu = shifts.mu();
    if (mu.empty()) throw std::invalid_argument("inv_mellin_kernel: empty shift set");
    if (x <= 0) throw std::invalid_argument("inv_mellin_kernel: x must be positive");
    std::size_t d = mu.size();
    unsigned bits = working_bits();
    long summu = 0;
    for (int m : mu) summu += m;
    // phi(x) = 2 pi^{-sum mu / 2} M(pi^d x^2)
    Real pi = const_pi();
    Real t = pow(pi, Real(d)) * x * x;
    double tau = std::pow(t.convert_to<double>(), 1.0 / static_cast<double>(d));
    Real m;
    if (tau < kernel_crossover_tau(d, bits)) {
        unsigned extra = static_cast<unsigned>(2.0 * d * tau / 0.6931471805599453) + 32;
        PrecisionScope ps(bits + extra);
        Real tt = pow(const_pi(), Real(d)) * at_working(x) * at_working(x);
        m = detail::kernel_series(mu, tt);
    } else {
        // exp of a sum of size ~ d tau loses log2(d tau) bits
        unsigned extra = 32 + static_cast<unsigned>(std::log2(2.0 + d * tau));
        PrecisionScope ps(bits + extra);
        Real tt = pow(const_pi(), Real(d)) * at_working(x) * at_working(x);
        m = detail::kernel_quadrature(mu, tt, bits);
    }
    Real r = at_working(m);
    return 2 * r * pow(pi, Real(-summu) / 2);
}

// ---------------------------------------------------------------- rational recognition

struct RationalFit {
    Integer p;
    Integer q;
    Real residual;
    Rational value() const { return Rational(p, q); }
};

// continued fraction convergents with |p|,|q| <= H and residual below 10^{-(digits-10)}
inline std::optional<RationalFit> rational_recognize(const BigComplex& x, const Integer& height_bound,
                                                     std::optional<Real> threshold = std::nullopt) {
    Real tol = threshold ? *threshold : pow(Real(10), -static_cast<int>(working_digits()) + 10);
    if (abs(x.im) > tol) return std::nullopt;
    Real v = x.re;
    Integer p0 = 1, q0 = 0, p1 = 0, q1 = 1;
    Real rem = v;
    for (int iter = 0; iter < 2000; ++iter) {
        Real a = floor(rem);
        Integer ai;
        mpfr_get_z(ai.backend().data(), a.backend().data(), MPFR_RNDN);
        Integer p2 = ai * p0 + p1, q2 = ai * q0 + q1;
        if (abs(p2) > height_bound || q2 > height_bound) break;
        Real res = abs(v - to_real(p2) / to_real(q2));
        if (res <= tol) return RationalFit{p2, q2, res};
        p1 = p0;
        q1 = q0;
        p0 = p2;
        q0 = q2;
        Real frac = rem - a;
        if (frac == 0) break;
        rem = 1 / frac;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- AGM

inline BigComplex agm_complex(BigComplex a, BigComplex b) {
    if ((a.re == 0 && a.im == 0) || (b.re == 0 && b.im == 0)) throw std::invalid_argument("agm_complex: zero argument");
    if (abs(a + b) == 0) throw std::invalid_argument("agm_complex: a = -b");
    Real tol = ldexp(Real(1), -static_cast<int>(working_bits()) + 4);
    for (int it = 0; it < 200; ++it) {
        if (abs(a - b) <= tol * abs(a)) return a;
        BigComplex a1 = (a + b) / Real(2);
        BigComplex c = sqrt(a * b);
        Real dm = abs(a1 - c), dp = abs(a1 + c);
        if (dm > dp || (dm == dp && (c / a1).im <= 0)) c = -c;
        a = std::move(a1);
        b = std::move(c);
    }
    throw std::runtime_error("agm_complex: no convergence");
}

}  // namespace motivic
