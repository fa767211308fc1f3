#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "motivic/numerics.hpp"

namespace motivic {

// ---------------------------------------------------------------- Gaussian rationals

struct QI {
    Rational re, im;

    QI() : re(0), im(0) {}
    QI(const Rational& r) : re(r), im(0) {}
    QI(long r) : re(r), im(0) {}
    QI(const Rational& r, const Rational& i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    QI& operator+=(const QI& o) { re += o.re; im += o.im; return *this; }
    QI& operator-=(const QI& o) { re -= o.re; im -= o.im; return *this; }
    QI& operator*=(const QI& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    QI inverse() const {
        Rational d = re * re + im * im;
        if (d == 0) throw std::domain_error("QI: division by zero");
        return {re / d, -im / d};
    }
    QI& operator/=(const QI& o) { return *this *= o.inverse(); }
    QI operator-() const { return {-re, -im}; }
    bool operator==(const QI& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QI& o) const { return !(*this == o); }
};
inline QI operator+(QI a, const QI& b) { return a += b; }
inline QI operator-(QI a, const QI& b) { return a -= b; }
inline QI operator*(QI a, const QI& b) { return a *= b; }
inline QI operator/(QI a, const QI& b) { return a /= b; }
inline QI qi_i() { return {Rational(0), Rational(1)}; }

// i^n
inline QI qi_ipow(long n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return QI(1);
        case 1: return qi_i();
        case 2: return QI(-1);
        default: return -qi_i();
    }
}

// ---------------------------------------------------------------- ExactNum

// sum of q * pi^n * sqrt(D)^f with q in Q(i), f in {0,1}; D > 0 fixed per value
class ExactNum {
public:
    using Key = std::pair<long, int>;

    ExactNum() = default;
    ExactNum(const QI& q, long D = 1) : D_(D) { add_term({0, 0}, q); }
    ExactNum(long q) : ExactNum(QI(q)) {}

    static ExactNum monomial(const QI& q, long pi_pow, int sqrtD_pow, long D) {
        ExactNum e;
        e.D_ = D;
        e.add_term(e.fold(pi_pow, sqrtD_pow, q));
        return e;
    }
    static ExactNum pi_pow(long n, long D = 1) { return monomial(QI(1), n, 0, D); }
    static ExactNum sqrtD(long D) { return monomial(QI(1), 0, 1, D); }
    static ExactNum two_pi_i_pow(long n, long D = 1) {
        // (2 pi i)^n
        QI c = qi_ipow(n);
        Rational two = n >= 0 ? Rational(Integer(1) << n) : Rational(Integer(1), Integer(1) << (-n));
        return monomial(c * QI(two), n, 0, D);
    }

    long D() const { return D_; }
    const std::map<Key, QI>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ExactNum& operator+=(const ExactNum& o) {
        unify(o);
        for (const auto& [k, q] : o.terms_) add_term({k, q});
        return *this;
    }
    ExactNum& operator-=(const ExactNum& o) { return *this += -o; }
    ExactNum operator-() const {
        ExactNum e = *this;
        for (auto& [k, q] : e.terms_) q = -q;
        return e;
    }
    ExactNum& operator*=(const ExactNum& o) {
        unify(o);
        ExactNum r;
        r.D_ = D_;
        for (const auto& [k1, q1] : terms_)
            for (const auto& [k2, q2] : o.terms_) r.add_term(fold(k1.first + k2.first, k1.second + k2.second, q1 * q2));
        *this = std::move(r);
        return *this;
    }
    // only monomials are invertible here
    ExactNum inverse() const {
        if (terms_.size() != 1) throw std::domain_error("ExactNum: can only invert monomials");
        const auto& [k, q] = *terms_.begin();
        // (q pi^n sqrtD^f)^{-1} = q^{-1} pi^{-n} sqrtD^{-f}; sqrtD^{-1} = sqrtD / D
        QI c = q.inverse();
        if (k.second == 1) c *= QI(Rational(1, D_));
        return monomial(c, -k.first, k.second, D_);
    }
    ExactNum& operator/=(const ExactNum& o) { return *this *= o.inverse(); }

    bool operator==(const ExactNum& o) const {
        ExactNum d = *this;
        d -= o;
        return d.is_zero();
    }
    bool operator!=(const ExactNum& o) const { return !(*this == o); }

    BigComplex eval() const {
        BigComplex s(0);
        Real pi = const_pi();
        Real sd = sqrt(Real(D_));
        for (const auto& [k, q] : terms_) {
            Real m = pow(pi, Real(k.first));
            if (k.second) m *= sd;
            s += BigComplex(to_real(q.re) * m, to_real(q.im) * m);
        }
        return s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, q] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + q.re.str() + (q.im >= 0 ? "+" : "") + q.im.str() + "i)";
            if (k.first) out += "*pi^" + std::to_string(k.first);
            if (k.second) out += "*sqrt(" + std::to_string(D_) + ")";
        }
        return out;
    }

private:
    struct Term {
        Key k;
        QI q;
    };

    static bool is_square(long D, long& r) {
        if (D < 0) return false;
        long s = static_cast<long>(std::sqrt(static_cast<double>(D)));
        for (long t = std::max(0L, s - 2); t <= s + 2; ++t)
            if (t * t == D) {
                r = t;
                return true;
            }
        return false;
    }

    Term fold(long n, int f, QI q) const {
        while (f >= 2) {
            q *= QI(Rational(D_));
            f -= 2;
        }
        long r = 0;
        if (f == 1 && is_square(D_, r)) {
            q *= QI(Rational(r));
            f = 0;
        }
        return {{n, f}, q};
    }

    void unify(const ExactNum& o) {
        if (D_ == o.D_) return;
        if (terms_.empty() || only_rational()) {
            D_ = o.D_;
            return;
        }
        if (o.terms_.empty() || o.only_rational()) return;
        throw std::invalid_argument("ExactNum: mixing different sqrt(D)");
    }
    bool only_rational() const {
        for (const auto& [k, q] : terms_)
            if (k.second) return false;
        return true;
    }

    void add_term(const Term& t) {
        if (t.q.is_zero()) return;
        auto it = terms_.find(t.k);
        if (it == terms_.end()) {
            terms_.emplace(t.k, t.q);
            return;
        }
        it->second += t.q;
        if (it->second.is_zero()) terms_.erase(it);
    }
    void add_term(const Key& k, const QI& q) { add_term(Term{k, q}); }

    long D_ = 1;
    std::map<Key, QI> terms_;
};

inline ExactNum operator+(ExactNum a, const ExactNum& b) { return a += b; }
inline ExactNum operator-(ExactNum a, const ExactNum& b) { return a -= b; }
inline ExactNum operator*(ExactNum a, const ExactNum& b) { return a *= b; }
inline ExactNum operator/(ExactNum a, const ExactNum& b) { return a /= b; }

// ---------------------------------------------------------------- rational polynomials

// ascending coefficients
using QPoly = std::vector<Rational>;

inline void poly_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    poly_trim(c);
    return c;
}
// p(X) -> p(X^k)
inline QPoly poly_inflate(const QPoly& p, std::size_t k) {
    if (p.empty()) return {};
    QPoly q((p.size() - 1) * k + 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) q[i * k] = p[i];
    return q;
}
// exact division; throws if the remainder is nonzero
inline QPoly poly_div_exact(QPoly a, QPoly b) {
    poly_trim(a);
    poly_trim(b);
    if (b.empty()) throw std::domain_error("poly_div_exact: division by zero");
    if (a.size() < b.size()) {
        if (a.empty()) return {};
        throw std::domain_error("poly_div_exact: non-exact division");
    }
    QPoly q(a.size() - b.size() + 1, Rational(0));
    for (std::size_t i = q.size(); i-- > 0;) {
        Rational c = a[i + b.size() - 1] / b.back();
        q[i] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
    }
    poly_trim(a);
    if (!a.empty()) throw std::domain_error("poly_div_exact: non-exact division");
    poly_trim(q);
    return q;
}
inline std::string poly_str(const QPoly& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (!s.empty()) s += p[i] < 0 ? " - " : " + ";
        else if (p[i] < 0) s += "-";
        Rational a = p[i] < 0 ? Rational(-p[i]) : p[i];
        if (a != 1 || i == 0) s += a.str();
        if (i >= 1) s += (a != 1 ? "*" : "") + std::string("X");
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- rational matrices

using QMatrix = std::vector<std::vector<Rational>>;

inline QMatrix qmat_zero(std::size_t n) { return QMatrix(n, std::vector<Rational>(n, Rational(0))); }
inline QMatrix qmat_mul(const QMatrix& a, const QMatrix& b) {
    std::size_t n = a.size();
    QMatrix c = qmat_zero(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

// det(1 - M X) via Faddeev-LeVerrier; returns ascending coefficients
inline QPoly reverse_charpoly(const QMatrix& M) {
    std::size_t n = M.size();
    // char poly det(X - M) = sum c_k X^k, c_n = 1
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    QMatrix Mk = qmat_zero(n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = M (M_{k-1} + c_{n-k+1} I)
        QMatrix t = Mk;
        for (std::size_t i = 0; i < n; ++i) t[i][i] += c[n - k + 1];
        Mk = qmat_mul(M, t);
        Rational tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += Mk[i][i];
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    // det(1 - M X) = X^n det(1/X - M) -> coefficient of X^j is c_{n-j}
    QPoly r(n + 1);
    for (std::size_t j = 0; j <= n; ++j) r[j] = c[n - j];
    poly_trim(r);
    return r;
}

// symmetric square of an n x n matrix on the basis e_i e_j (i <= j)
inline QMatrix sym2_matrix(const QMatrix& A) {
    std::size_t n = A.size();
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) idx.push_back({i, j});
    std::size_t m = idx.size();
    QMatrix S = qmat_zero(m);
    // (A e_j)(A e_l) = sum_{i,k} A_ij A_kl e_i e_k
    for (std::size_t c = 0; c < m; ++c) {
        auto [j, l] = idx[c];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                Rational v = A[i][j] * A[k][l];
                if (v == 0) continue;
                std::size_t a = std::min(i, k), b = std::max(i, k);
                std::size_t r = 0;
                while (idx[r] != std::make_pair(a, b)) ++r;
                S[r][c] += v;
            }
    }
    return S;
}

}  // namespace motivic
