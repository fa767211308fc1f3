#pragma once

#include <gmp.h>

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "motivic/exact.hpp"
#include "motivic/fixture.hpp"
#include "motivic/hodge.hpp"
#include "motivic/numerics.hpp"

namespace motivic {

class MissingData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- local Weil-Deligne data

// geometric Frobenius phi, monodromy N (phi N phi^-1 = q^-1 N), and an inertia element tau of order <= 2
struct LocalRep {
    QMatrix phi, N, tau;
    std::size_t dim() const { return phi.size(); }
};

namespace detail {

inline QMatrix qmat_identity(std::size_t n) {
    QMatrix m = qmat_zero(n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline QMatrix block_diag(const QMatrix& a, const QMatrix& b) {
    std::size_t n = a.size(), m = b.size();
    QMatrix r = qmat_zero(n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = a[i][j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) r[n + i][n + j] = b[i][j];
    return r;
}

inline QMatrix kron(const QMatrix& a, const QMatrix& b) {
    std::size_t n = a.size(), m = b.size();
    QMatrix r = qmat_zero(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a[i][j] == 0) continue;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) r[i * m + k][j * m + l] = a[i][j] * b[k][l];
        }
    return r;
}

inline QMatrix qmat_add(QMatrix a, const QMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += b[i][j];
    return a;
}

inline QMatrix qmat_scale(QMatrix a, const Rational& c) {
    for (auto& row : a)
        for (auto& x : row) x *= c;
    return a;
}

// N(e_j e_l) = (N e_j) e_l + e_j (N e_l) on the basis e_i e_j (i <= j)
inline QMatrix sym2_derivation(const QMatrix& A) {
    std::size_t n = A.size();
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) idx.push_back({i, j});
    auto pos = [&](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), std::make_pair(a, b)) - idx.begin());
    };
    QMatrix S = qmat_zero(idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) {
        auto [j, l] = idx[c];
        for (std::size_t i = 0; i < n; ++i) {
            if (A[i][j] != 0) S[pos(i, l)][c] += A[i][j];
            if (A[i][l] != 0) S[pos(j, i)][c] += A[i][l];
        }
    }
    return S;
}

// columns spanning {x : A x = 0}; A has any number of rows
inline std::vector<std::vector<Rational>> null_space(QMatrix A, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < A.size(); ++col) {
        std::size_t piv = row;
        while (piv < A.size() && A[piv][col] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[row]);
        Rational inv = 1 / A[row][col];
        for (auto& x : A[row]) x *= inv;
        for (std::size_t r = 0; r < A.size(); ++r) {
            if (r == row || A[r][col] == 0) continue;
            Rational f = A[r][col];
            for (std::size_t c = 0; c < ncols; ++c) A[r][c] -= f * A[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<Rational> v(ncols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -A[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// solve M X = B for square invertible M
inline QMatrix qmat_solve(QMatrix M, QMatrix B) {
    std::size_t n = M.size(), m = B.empty() ? 0 : B[0].size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("qmat_solve: singular");
        std::swap(M[p], M[c]);
        std::swap(B[p], B[c]);
        Rational inv = 1 / M[c][c];
        for (auto& x : M[c]) x *= inv;
        for (auto& x : B[c]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            Rational f = M[r][c];
            for (std::size_t k = 0; k < n; ++k) M[r][k] -= f * M[c][k];
            for (std::size_t k = 0; k < m; ++k) B[r][k] -= f * B[c][k];
        }
    }
    return B;
}

inline Integer ipow(long p, long e) {
    Integer r = 1;
    for (long i = 0; i < e; ++i) r *= p;
    return r;
}

}  // namespace detail

inline LocalRep rep_sum(const LocalRep& a, const LocalRep& b) {
    return {detail::block_diag(a.phi, b.phi), detail::block_diag(a.N, b.N), detail::block_diag(a.tau, b.tau)};
}

inline LocalRep rep_tensor(const LocalRep& a, const LocalRep& b) {
    using namespace detail;
    QMatrix N = qmat_add(kron(a.N, qmat_identity(b.dim())), kron(qmat_identity(a.dim()), b.N));
    return {kron(a.phi, b.phi), N, kron(a.tau, b.tau)};
}

inline LocalRep rep_sym2(const LocalRep& a) {
    return {sym2_matrix(a.phi), detail::sym2_derivation(a.N), sym2_matrix(a.tau)};
}

// det(1 - phi X) on ker N intersected with the tau-invariants
inline QPoly local_factor(const LocalRep& r) {
    std::size_t n = r.dim();
    if (n == 0) return {Rational(1)};
    QMatrix stack = r.N;
    for (std::size_t i = 0; i < n; ++i) {
        auto row = r.tau[i];
        row[i] -= 1;
        stack.push_back(row);
    }
    auto basis = detail::null_space(stack, n);
    std::size_t m = basis.size();
    if (m == 0) return {Rational(1)};
    // phi B = B R, solved through the normal equations
    QMatrix B(n, std::vector<Rational>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) B[i][j] = basis[j][i];
    QMatrix PB(n, std::vector<Rational>(m, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (r.phi[i][k] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) PB[i][j] += r.phi[i][k] * B[k][j];
        }
    QMatrix BtB = qmat_zero(m), BtPB(m, std::vector<Rational>(m, Rational(0)));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t i = 0; i < n; ++i) {
                BtB[a][b] += B[i][a] * B[i][b];
                BtPB[a][b] += B[i][a] * PB[i][b];
            }
    return reverse_charpoly(detail::qmat_solve(BtB, BtPB));
}

// ---------------------------------------------------------------- H^1 of the curve at a prime of F

inline long residue_norm(const PrimeKey& k) { return k.f == 1 ? k.p : k.p * k.p; }

// the rep of the decomposition group at P; additive reduction gives the zero rep
inline LocalRep curve_rep(const CurveData& c, const PrimeKey& k) {
    Rational q(residue_norm(k));
    for (const auto& b : c.bad_primes) {
        if (b.key != k) continue;
        if (b.a_P == 0) return {};
        QMatrix phi = qmat_zero(2), N = qmat_zero(2);
        phi[0][0] = b.a_P;
        phi[1][1] = Rational(b.a_P) * q;
        N[0][1] = 1;
        return {phi, N, detail::qmat_identity(2)};
    }
    auto it = c.ap.find(k);
    if (it == c.ap.end())
        throw MissingData(c.label + ": no a_P for (" + std::to_string(k.p) + "," + std::to_string(k.f) + "," +
                          std::to_string(k.index) + ")");
    QMatrix phi = qmat_zero(2);
    phi[0][1] = -q;
    phi[1][0] = 1;
    phi[1][1] = it->second;
    return {phi, qmat_zero(2), detail::qmat_identity(2)};
}

enum class Splitting { Split, Inert, Ramified };

inline Splitting splitting(const CurveData& c, long p) {
    if (c.ramified(p)) return Splitting::Ramified;
    auto ab = c.above(p);
    if (ab.size() == 1 && ab[0].first.f == 2) return Splitting::Inert;
    return Splitting::Split;
}

// primes of F above p, bad ones included
inline std::vector<PrimeKey> primes_above(const CurveData& c, long p) {
    std::vector<PrimeKey> ks;
    for (const auto& [k, a] : c.above(p)) ks.push_back(k);
    for (const auto& b : c.bad_primes)
        if (b.key.p == p && std::find(ks.begin(), ks.end(), b.key) == ks.end()) ks.push_back(b.key);
    std::sort(ks.begin(), ks.end());
    Splitting sp = splitting(c, p);
    std::size_t want = sp == Splitting::Split ? 2 : 1;
    if (ks.size() != want) throw MissingData(c.label + ": incomplete prime data above p=" + std::to_string(p));
    return ks;
}

// induction from the decomposition group at P to the one at p; W given per prime above p
inline LocalRep induce(const CurveData& c, long p, const std::vector<LocalRep>& W) {
    using namespace detail;
    switch (splitting(c, p)) {
        case Splitting::Split: return rep_sum(W.at(0), W.at(1));
        case Splitting::Inert: {
            const LocalRep& w = W.at(0);
            std::size_t m = w.dim();
            QMatrix phi = qmat_zero(2 * m);
            for (std::size_t i = 0; i < m; ++i) {
                phi[i][m + i] = 1;
                for (std::size_t j = 0; j < m; ++j) phi[m + i][j] = w.phi[i][j];
            }
            QMatrix N = block_diag(w.N, qmat_scale(w.N, Rational(1, p)));
            return {phi, N, qmat_identity(2 * m)};
        }
        case Splitting::Ramified: {
            const LocalRep& w = W.at(0);
            QMatrix tau = block_diag(qmat_identity(w.dim()), qmat_scale(qmat_identity(w.dim()), Rational(-1)));
            return {block_diag(w.phi, w.phi), block_diag(w.N, w.N), tau};
        }
    }
    throw std::logic_error("induce: unreachable");
}

// tensor induction: W (x) W with Frobenius x (x) y -> phi y (x) x (inert), or the swap as inertia (ramified)
inline LocalRep tensor_induce(const CurveData& c, long p, const std::vector<LocalRep>& W) {
    using namespace detail;
    switch (splitting(c, p)) {
        case Splitting::Split: return rep_tensor(W.at(0), W.at(1));
        case Splitting::Inert: {
            const LocalRep& w = W.at(0);
            std::size_t m = w.dim(), n = m * m;
            QMatrix phi = qmat_zero(n);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t k = 0; k < m; ++k) phi[k * m + i][i * m + j] += w.phi[k][j];
            // phi N phi^-1 = N / p forces the factor p on the second slot
            QMatrix N = qmat_add(kron(w.N, qmat_identity(m)), qmat_scale(kron(qmat_identity(m), w.N), Rational(p)));
            return {phi, N, qmat_identity(n)};
        }
        case Splitting::Ramified: {
            const LocalRep& w = W.at(0);
            std::size_t m = w.dim(), n = m * m;
            QMatrix tau = qmat_zero(n);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) tau[j * m + i][i * m + j] = 1;
            QMatrix N = qmat_add(kron(w.N, qmat_identity(m)), kron(qmat_identity(m), w.N));
            return {kron(w.phi, w.phi), N, tau};
        }
    }
    throw std::logic_error("tensor_induce: unreachable");
}

// ---------------------------------------------------------------- Euler factors

inline Kind curve_kind(Kind k) {
    if (k == Kind::Sym2) return Kind::ResSym2;
    if (k == Kind::ResH1) return Kind::Spin;
    return k;
}

inline const LocalFactorOverride* find_override(const CurveData& c, Kind k, long p) {
    for (const auto& o : c.local_factors)
        if (o.p == p && o.kind == kind_name(k)) return &o;
    return nullptr;
}

inline QPoly euler_factor(Kind kind, long p, const CurveData& c) {
    kind = curve_kind(kind);
    if (const auto* o = find_override(c, kind, p)) return o->coeffs;
    switch (kind) {
        case Kind::Adjoint: {
            QPoly f = euler_factor(Kind::ResSym2, p, c);
            Rational pk = 1;
            for (auto& x : f) {
                x /= pk;
                pk *= p;
            }
            return f;
        }
        default: break;
    }
    auto keys = primes_above(c, p);
    std::vector<LocalRep> V;
    for (const auto& k : keys) {
        V.push_back(curve_rep(c, k));
        if (V.back().dim() == 0 && kind != Kind::Spin)
            throw MissingData(c.label + ": additive reduction at p=" + std::to_string(p) + " needs a '" +
                              kind_name(kind) + "' local_factors entry");
    }
    switch (kind) {
        case Kind::Spin: return local_factor(induce(c, p, V));
        case Kind::Sym2Ind: return local_factor(rep_sym2(induce(c, p, V)));
        case Kind::Asai: return local_factor(tensor_induce(c, p, V));
        case Kind::ResSym2: {
            std::vector<LocalRep> S;
            for (const auto& v : V) S.push_back(rep_sym2(v));
            return local_factor(induce(c, p, S));
        }
        default: break;
    }
    throw std::invalid_argument("euler_factor: unsupported kind " + kind_name(kind));
}

// Frobenius eigenvalues at a good prime P, alpha + beta = a_P, alpha beta = Nm P
struct SatakeData {
    PrimeKey key;
    BigComplex alpha, beta;
};

inline SatakeData satake(const CurveData& c, const PrimeKey& k) {
    if (c.bad(k)) throw std::invalid_argument("satake: bad prime");
    auto it = c.ap.find(k);
    if (it == c.ap.end()) throw MissingData("satake: no a_P");
    Real a(it->second), q(residue_norm(k));
    Real disc = a * a - 4 * q;
    if (disc > 0) throw std::domain_error("satake: Hasse bound violated");
    Real im = sqrt(-disc) / 2;
    return {k, {a / 2, im}, {a / 2, -im}};
}

// ---------------------------------------------------------------- Dirichlet coefficients

namespace detail {

// s_j = alpha^j + beta^j, j = 0..n
inline std::vector<Integer> power_sums2(long a, const Integer& q, std::size_t n) {
    std::vector<Integer> s(n + 1);
    s[0] = 2;
    if (n >= 1) s[1] = a;
    for (std::size_t j = 2; j <= n; ++j) s[j] = a * s[j - 1] - q * s[j - 2];
    return s;
}

// power sums of the Frobenius on the kind's space at a good unramified p, j = 1..r
inline std::vector<Rational> good_power_sums(Kind kind, long p, const CurveData& c, std::size_t r) {
    auto keys = primes_above(c, p);
    bool inert = keys.size() == 1;
    std::vector<Rational> P(r + 1, Rational(0));
    auto spin = [&](std::size_t len) {
        std::vector<Integer> S(len + 1, Integer(0));
        for (const auto& k : keys) {
            Integer q = ipow(p, k.f);
            auto s = power_sums2(c.ap.at(k), q, len);
            for (std::size_t j = 1; j <= len; ++j)
                if (!inert)
                    S[j] += s[j];
                else if (j % 2 == 0)
                    S[j] += 2 * s[j / 2];
        }
        return S;
    };
    auto res_sym2 = [&]() {
        std::vector<Integer> T(r + 1, Integer(0));
        for (const auto& k : keys) {
            Integer q = ipow(p, k.f);
            auto s = power_sums2(c.ap.at(k), q, 2 * r);
            for (std::size_t j = 1; j <= r; ++j) {
                if (!inert) {
                    T[j] += (s[j] * s[j] + s[2 * j]) / 2;
                } else if (j % 2 == 0) {
                    std::size_t h = j / 2;
                    T[j] += s[h] * s[h] + s[2 * h];
                }
            }
        }
        return T;
    };
    switch (kind) {
        case Kind::Spin: {
            auto S = spin(r);
            for (std::size_t j = 1; j <= r; ++j) P[j] = S[j];
            break;
        }
        case Kind::Sym2Ind: {
            auto S = spin(2 * r);
            for (std::size_t j = 1; j <= r; ++j) P[j] = Rational((S[j] * S[j] + S[2 * j]) / 2);
            break;
        }
        case Kind::Asai: {
            // split: tr(phi1^j) tr(phi2^j); inert: Phi^2 = phi (x) phi and tr(Phi^{2h+1}) = tr(phi^{2h+1})
            std::vector<std::vector<Integer>> s;
            for (const auto& k : keys) s.push_back(power_sums2(c.ap.at(k), ipow(p, k.f), r));
            for (std::size_t j = 1; j <= r; ++j) {
                if (!inert)
                    P[j] = Rational(s[0][j] * s[1][j]);
                else if (j % 2 == 0)
                    P[j] = Rational(s[0][j / 2] * s[0][j / 2]);
                else
                    P[j] = Rational(s[0][j]);
            }
            break;
        }
        case Kind::ResSym2:
        case Kind::Adjoint: {
            auto T = res_sym2();
            Rational pj = 1;
            for (std::size_t j = 1; j <= r; ++j) {
                pj *= p;
                P[j] = kind == Kind::Adjoint ? Rational(T[j]) / pj : Rational(T[j]);
            }
            break;
        }
        default: throw std::invalid_argument("dirichlet_coefficients: unsupported kind " + kind_name(kind));
    }
    return P;
}

// coefficients of 1/Q(X) up to X^r
inline std::vector<Rational> series_inverse(const QPoly& Q, std::size_t r) {
    std::vector<Rational> h(r + 1, Rational(0));
    h[0] = 1 / Q.at(0);
    for (std::size_t k = 1; k <= r; ++k) {
        Rational s(0);
        for (std::size_t i = 1; i <= k && i < Q.size(); ++i) s += Q[i] * h[k - i];
        h[k] = -s * h[0];
    }
    return h;
}

// complete homogeneous sums from power sums: k h_k = sum_{i=1}^k P_i h_{k-i}
inline std::vector<Rational> homogeneous_from_power(const std::vector<Rational>& P, std::size_t r) {
    std::vector<Rational> h(r + 1, Rational(0));
    h[0] = 1;
    for (std::size_t k = 1; k <= r; ++k) {
        Rational s(0);
        for (std::size_t i = 1; i <= k; ++i) s += P[i] * h[k - i];
        h[k] = s / Rational(static_cast<long>(k));
    }
    return h;
}

inline std::vector<long> primes_upto(std::size_t n) {
    std::vector<char> comp(n + 1, 0);
    std::vector<long> ps;
    for (std::size_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        ps.push_back(static_cast<long>(i));
        for (std::size_t j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return ps;
}

}  // namespace detail

// a_1..a_M of the Euler product; result[0] is unused
inline std::vector<Rational> dirichlet_coefficients(Kind kind, const CurveData& c, std::size_t M) {
    kind = curve_kind(kind);
    if (M >= static_cast<std::size_t>(c.p_max) && c.p_max > 0)
        throw MissingData(c.label + ": " + std::to_string(M) + " terms need a_P beyond p_max=" + std::to_string(c.p_max));
    std::vector<Rational> a(M + 1, Rational(0));
    if (M == 0) return a;
    a[1] = 1;
    std::vector<long> spf(M + 1, 0);
    for (long p : detail::primes_upto(M)) {
        for (std::size_t j = p; j <= M; j += p)
            if (spf[j] == 0) spf[j] = p;
        std::size_t r = 0;
        for (Integer pk = p; pk <= M; pk *= p) ++r;
        std::vector<Rational> h;
        bool special = c.ramified(p) || c.bad_above(p) || p < 200;
        for (const auto& o : c.local_factors)
            if (o.p == p) special = true;
        if (special)
            h = detail::series_inverse(euler_factor(kind, p, c), r);
        else
            h = detail::homogeneous_from_power(detail::good_power_sums(kind, p, c, r), r);
        std::size_t pk = p;
        for (std::size_t k = 1; k <= r; ++k, pk *= p) a[pk] = h[k];
    }
    for (std::size_t n = 2; n <= M; ++n) {
        std::size_t p = spf[n], m = n, pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (m != 1) a[n] = a[pk] * a[m];
    }
    return a;
}

// ---------------------------------------------------------------- L-function data

// Lambda(s) = N^{s/2} L_inf(s) L(s) = sign * Lambda(w + 1 - s); real coefficients (self-dual)
struct LSpec {
    std::string name;
    GammaShifts gamma;
    long conductor = 1;
    int sign = 0;  // 0 while unknown
    int weight = 0;
    std::vector<Rational> coeffs;                         // coeffs[n], n >= 1
    std::vector<std::pair<BigComplex, BigComplex>> poles;  // Lambda ~ r / (s - rho)

    std::size_t degree() const { return gamma.degree(); }
    std::size_t terms() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

struct EvalOptions {
    unsigned bits = 0;        // 0: working precision
    double t = 1.0;           // splitting parameter of the approximate functional equation
    std::size_t max_terms = 0;  // 0: all available coefficients
};

struct EvalResult {
    BigComplex value;
    std::size_t terms_used = 0;
    bool truncated = false;  // coefficients ran out before the kernel decayed
    Real tail;
};

// terms needed so that the kernel at n / (t sqrt N) is below 2^-bits
inline std::size_t terms_needed(const LSpec& L, unsigned bits, double t = 1.25) {
    double d = static_cast<double>(std::max<std::size_t>(L.degree(), 1));
    double B = bits * 0.6931471805599453 + 10 + 2 * L.weight;
    double xmax = std::pow(B / (d * M_PI), d / 2) * 1.05 + 1;
    double n = xmax * t * std::sqrt(static_cast<double>(L.conductor));
    return static_cast<std::size_t>(std::min(n + 16, 1e7));
}

namespace detail {

inline long gamma_rightmost_pole(const GammaShifts& g) {
    long r = std::numeric_limits<long>::min();
    for (int a : g.gc) r = std::max<long>(r, -a);
    for (int b : g.gr) r = std::max<long>(r, -b);
    return r;
}

inline Real binom_real(int k, int m) {
    Real r(1);
    for (int i = 0; i < m; ++i) r = r * (k - i) / (i + 1);
    return r;
}

// sum_m C(k,m) (-log t)^{k-m} m! / v^{m+1}
inline BigComplex kernel_weight(const BigComplex& v, int k, const Real& logt) {
    BigComplex acc(0), inv = BigComplex(1) / v, vp = inv;
    Real fact(1);
    for (int m = 0; m <= k; ++m) {
        if (m > 0) {
            fact *= m;
            vp *= inv;
        }
        acc += vp * (binom_real(k, m) * pow(-logt, Real(k - m)) * fact);
    }
    return acc;
}

struct SideSum {
    BigComplex value;
    std::size_t terms = 0;
    bool complete = true;
    Real tail;
};

// d^k/ds^k of sum_n a_n (1/2 pi i) int_(sigma) L_inf(u) (t sqrt N / n)^u t^{-s} du / (u - s)
inline SideSum side_sum(const LSpec& L, const BigComplex& s, int order, const Real& t, unsigned bits,
                        std::size_t max_terms) {
    const double sre = s.re.convert_to<double>();
    double abscissa = L.weight / 2.0 + 1.0;
    long rp = gamma_rightmost_pole(L.gamma);
    double sigma_d = std::max({sre, abscissa, static_cast<double>(rp)}) + 3.0;
    double dist = std::min(sigma_d - sre, sigma_d - rp);
    double logT_d = std::log(t.convert_to<double>() * std::sqrt(static_cast<double>(L.conductor)));
    // the integrand on the line exceeds the kernel by about (t sqrt N)^(sigma - Re s)
    unsigned guard = 24 + static_cast<unsigned>(std::max(0.0, (sigma_d - sre) * logT_d / 0.693)) + 2 * order;
    unsigned wb = bits + guard;
    PrecisionScope ps(wb);

    Real pi = const_pi();
    Real sigma(sigma_d);
    Real h = 2 * pi * Real(0.9 * dist) / Real(wb * 0.6931471805599453 + 10);
    Real tt = at_working(t);
    Real logt = log(tt);
    Real logT = log(tt) + log(Real(L.conductor)) / 2;
    BigComplex sw(at_working(s.re), at_working(s.im));
    bool real_path = sw.im == 0;
    BigComplex tps = exp(BigComplex(-logt) * sw);  // t^{-s}

    auto weight = [&](long j) {
        BigComplex u(sigma, h * j);
        BigComplex g = exp(L.gamma.log_eval(u));
        return g * tps * kernel_weight(u - sw, order, logt) * (h / (2 * pi));
    };
    // nodes j = -J..J (only j >= 0 when s is real)
    std::vector<BigComplex> Wp{weight(0)}, Wm{Wp[0]};
    Real w0 = abs(Wp[0]);
    Real cut = ldexp(w0, -static_cast<int>(wb) - 8);
    int small = 0;
    for (long j = 1; j < 40000; ++j) {
        Wp.push_back(weight(j));
        if (!real_path) Wm.push_back(weight(-j));
        Real m = abs(Wp.back());
        if (!real_path) m = std::max(m, abs(Wm.back()));
        if (m < cut) {
            if (++small >= 4) break;
        } else {
            small = 0;
        }
    }
    std::size_t J = Wp.size() - 1;
    // coefficient array for Horner: real path P(z) = sum_{j>=1} W_j z^j; otherwise z^{-J} sum_{m=0}^{2J} W_{m-J} z^m
    std::vector<BigComplex> C;
    if (real_path) {
        C.assign(Wp.begin(), Wp.end());
    } else {
        for (std::size_t m = J; m >= 1; --m) C.push_back(Wm[m]);
        for (std::size_t m = 0; m <= J; ++m) C.push_back(Wp[m]);
    }

    mpfr_prec_t prec = wb;
    mpfr_t ar, ai, zr, zi, tr;
    mpfr_inits2(prec, ar, ai, zr, zi, tr, (mpfr_ptr)0);

    std::size_t avail = L.terms();
    if (max_terms) avail = std::min(avail, max_terms);
    SideSum out;
    BigComplex acc(0);
    Real coef_exp(L.weight / 2.0 + 1.0);
    Real eps = ldexp(Real(1), -static_cast<int>(bits) - 6);
    int quiet = 0;
    Real last_bound(0);
    std::size_t n = 1;
    for (; n <= avail; ++n) {
        Real ln = log(Real(static_cast<long>(n)));
        Real Ln = logT - ln;
        Real hl = h * Ln;
        Real cr = cos(hl), ci = sin(hl);
        mpfr_set(zr, cr.backend().data(), MPFR_RNDN);
        mpfr_set(zi, ci.backend().data(), MPFR_RNDN);
        std::size_t top = C.size() - 1;
        mpfr_set(ar, C[top].re.backend().data(), MPFR_RNDN);
        mpfr_set(ai, C[top].im.backend().data(), MPFR_RNDN);
        std::size_t stop = real_path ? 1 : 0;
        for (std::size_t m = top; m-- > stop;) {
            mpfr_fmms(tr, ar, zr, ai, zi, MPFR_RNDN);
            mpfr_fmma(ai, ar, zi, ai, zr, MPFR_RNDN);
            mpfr_add(ar, tr, C[m].re.backend().data(), MPFR_RNDN);
            mpfr_add(ai, ai, C[m].im.backend().data(), MPFR_RNDN);
        }
        BigComplex kern;
        if (real_path) {
            // W_0 + 2 Re(z * acc)
            mpfr_fmms(tr, ar, zr, ai, zi, MPFR_RNDN);
            Real rpart;
            mpfr_set(rpart.backend().data(), tr, MPFR_RNDN);
            kern = BigComplex(C[0].re + 2 * rpart);
        } else {
            Real re, im;
            mpfr_set(re.backend().data(), ar, MPFR_RNDN);
            mpfr_set(im.backend().data(), ai, MPFR_RNDN);
            kern = BigComplex(re, im) * exp(BigComplex(Real(0), -Real(static_cast<long>(J)) * hl));
        }
        kern *= exp(sigma * Ln);
        const Rational& an = L.coeffs[n];
        if (an != 0) acc += kern * to_real(an);
        // kernel size times a coefficient bound, once past the transition region
        last_bound = abs(kern) * exp(coef_exp * ln);
        if (Ln < 0 && last_bound < eps * std::max(abs(acc), Real(1e-300))) {
            if (++quiet >= 8) break;
        } else {
            quiet = 0;
        }
    }
    mpfr_clears(ar, ai, zr, zi, tr, (mpfr_ptr)0);
    out.terms = std::min(n, avail);
    out.complete = n <= avail;
    out.tail = last_bound;
    out.value = acc;
    return out;
}

struct LambdaParts {
    BigComplex direct, dual, polar;
    std::size_t terms = 0;
    bool complete = true;
    Real tail;
};

inline LambdaParts lambda_parts(const LSpec& L, const BigComplex& s, int order, const Real& t, unsigned bits,
                                std::size_t max_terms) {
    LambdaParts r;
    BigComplex sd = BigComplex(Real(L.weight + 1)) - s;
    auto A = side_sum(L, s, order, t, bits, max_terms);
    auto B = side_sum(L, sd, order, 1 / t, bits, max_terms);
    r.direct = A.value;
    r.dual = order % 2 ? -B.value : B.value;
    r.terms = std::max(A.terms, B.terms);
    r.complete = A.complete && B.complete;
    r.tail = std::max(A.tail, B.tail);
    Real logt = log(t);
    for (const auto& [rho, res] : L.poles) {
        BigComplex tp = exp(BigComplex(logt) * (rho - s));
        r.polar += res * tp * kernel_weight(rho - s, order, logt);
    }
    return r;
}

inline unsigned resolve_bits(const EvalOptions& o) { return o.bits ? o.bits : working_bits(); }

}  // namespace detail

// k-th derivative of Lambda at s
inline EvalResult evaluate_lambda(const LSpec& L, const BigComplex& s, int order = 0, const EvalOptions& o = {}) {
    if (L.sign == 0) throw std::logic_error(L.name + ": root number unknown; fit it first");
    if (L.coeffs.size() < 2) throw MissingData(L.name + ": no coefficients");
    unsigned bits = detail::resolve_bits(o);
    auto p = detail::lambda_parts(L, s, order, Real(o.t), bits, o.max_terms);
    EvalResult r;
    r.value = p.direct + p.dual * Real(L.sign) - p.polar;
    r.terms_used = p.terms;
    r.truncated = !p.complete;
    r.tail = p.tail;
    return r;
}

namespace detail {

// Taylor coefficients at s0 of 1 / (N^{s/2} L_inf(s)), by the trapezoid rule on a circle
inline std::vector<BigComplex> inverse_gamma_taylor(const LSpec& L, const BigComplex& s0, int order) {
    const int M = 96;
    Real r(0.25);
    Real pi = const_pi();
    Real halflogN = log(Real(L.conductor)) / 2;
    std::vector<BigComplex> c(order + 1);
    for (int m = 0; m < M; ++m) {
        Real th = 2 * pi * m / M;
        BigComplex e(cos(th), sin(th));
        BigComplex z = s0 + e * r;
        BigComplex g = exp(-(z * halflogN) - L.gamma.log_eval(z));
        BigComplex ek(1), einv = conj(e);
        for (int k = 0; k <= order; ++k) {
            c[k] += g * ek;
            ek *= einv;
        }
    }
    Real rk(1);
    for (int k = 0; k <= order; ++k) {
        c[k] /= Real(M);
        c[k] /= rk;
        rk *= r;
    }
    return c;
}

}  // namespace detail

// L^{(order)}(s) via Leibniz on Lambda and 1 / (N^{s/2} L_inf)
inline EvalResult evaluate_derivative(const LSpec& L, const BigComplex& s, int order, const EvalOptions& o = {}) {
    unsigned bits = detail::resolve_bits(o);
    EvalResult out;
    bool pole = false;
    for (long n = -200; n <= 200; ++n)
        if (s.im == 0 && s.re == n && L.gamma.has_pole_at(n)) pole = true;
    if (order == 0 && !pole) {
        out = evaluate_lambda(L, s, 0, o);
        PrecisionScope ps(bits + 32);
        BigComplex g = exp(-(s * (log(Real(L.conductor)) / 2)) - L.gamma.log_eval(s));
        out.value = out.value * g;
        return out;
    }
    std::vector<BigComplex> lam(order + 1);
    for (int j = 0; j <= order; ++j) {
        auto e = evaluate_lambda(L, s, j, o);
        lam[j] = e.value;
        out.terms_used = std::max(out.terms_used, e.terms_used);
        out.truncated = out.truncated || e.truncated;
        out.tail = std::max(out.tail, e.tail);
    }
    PrecisionScope ps(bits + 32);
    auto g = detail::inverse_gamma_taylor(L, s, order);
    // L^{(k)}/k! = sum_j (Lambda^{(j)}/j!) g_{k-j}
    BigComplex v(0);
    Real jf(1);
    for (int j = 0; j <= order; ++j) {
        if (j > 0) jf *= j;
        v += lam[j] / jf * g[order - j];
    }
    Real kf(1);
    for (int k = 2; k <= order; ++k) kf *= k;
    out.value = v * kf;
    return out;
}

inline EvalResult evaluate(const LSpec& L, const BigComplex& s, const EvalOptions& o = {}) {
    return evaluate_derivative(L, s, 0, o);
}

// ---------------------------------------------------------------- functional equation

struct FEDefect {
    Real defect;  // for the chosen sign
    int sign = 0;
    Real defect_plus, defect_minus;
    bool truncated = false;
};

// compares Lambda(s0) (split at t = 1) with Lambda(w+1-s0) (split at t2) for both signs
inline FEDefect functional_equation_defect(const LSpec& L, const Real& s0, unsigned bits, double t2 = 1.2,
                                           std::size_t max_terms = 0) {
    BigComplex s(s0), sd = BigComplex(Real(L.weight + 1) - s0);
    auto P1 = detail::lambda_parts(L, s, 0, Real(1), bits, max_terms);
    auto P2 = detail::lambda_parts(L, sd, 0, Real(t2), bits, max_terms);
    FEDefect d;
    d.truncated = !P1.complete || !P2.complete;
    for (int e : {1, -1}) {
        BigComplex l1 = P1.direct + P1.dual * Real(e) - P1.polar;
        BigComplex l2 = P2.direct + P2.dual * Real(e) - P2.polar;
        Real scale = std::max(abs(l1), abs(l2));
        Real def = scale == 0 ? Real(1) : abs(l1 - l2 * Real(e)) / scale;
        (e == 1 ? d.defect_plus : d.defect_minus) = def;
    }
    d.sign = d.defect_plus <= d.defect_minus ? 1 : -1;
    d.defect = std::min(d.defect_plus, d.defect_minus);
    return d;
}

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FitRow {
    long conductor;
    int sign;
    Real defect;
};

struct FitResult {
    long conductor = 0;
    int sign = 0;
    Real defect;
    std::vector<FitRow> table;
};

// scans (N, sign) over the candidates, scoring the worse of two test points
inline FitResult fit_conductor_sign(LSpec L, const std::vector<long>& candidates, unsigned bits,
                                    const Real& threshold = Real(-1)) {
    if (candidates.empty()) throw std::invalid_argument("fit_conductor_sign: empty candidate list");
    FitResult best;
    bool have = false;
    Real c = Real(L.weight + 1) / 2;
    std::vector<long> cand = candidates;
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (long N : cand) {
        L.conductor = N;
        FEDefect d1 = functional_equation_defect(L, c + Real(0.3), bits);
        FEDefect d2 = functional_equation_defect(L, c + Real(0.7), bits);
        for (int e : {1, -1}) {
            Real d = e == 1 ? std::max(d1.defect_plus, d2.defect_plus) : std::max(d1.defect_minus, d2.defect_minus);
            best.table.push_back({N, e, d});
            if (!have || d < best.defect) {
                best.conductor = N;
                best.sign = e;
                best.defect = d;
                have = true;
            }
        }
    }
    if (threshold >= 0 && best.defect > threshold)
        throw FitError(L.name + ": no candidate conductor satisfies the functional equation (best defect " +
                       to_string(best.defect, 5) + ")");
    return best;
}

// ---------------------------------------------------------------- twists and standard specs

inline int kronecker(long d, long n) {
    Integer z(n);
    return mpz_si_kronecker(d, z.backend().data());
}

inline long gcd_long(long a, long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// twist by the quadratic character (d/.), d a fundamental discriminant; the sign is left to fitting
inline LSpec twist(const LSpec& L, long d) {
    if (d == 1) return L;
    if (gcd_long(d, L.conductor) != 1) throw std::invalid_argument("twist: d not coprime to the conductor");
    LSpec r = L;
    r.name = L.name + "(x)(" + std::to_string(d) + "/.)";
    for (std::size_t n = 1; n < r.coeffs.size(); ++n) r.coeffs[n] *= kronecker(d, static_cast<long>(n));
    long ad = d < 0 ? -d : d;
    for (std::size_t i = 0; i < L.degree(); ++i) r.conductor *= ad;
    if (d < 0)
        for (int& b : r.gamma.gr) b = (b % 2 == 0) ? b + 1 : b - 1;
    r.sign = 0;
    r.poles.clear();
    return r;
}

inline LSpec zeta_spec(std::size_t terms) {
    LSpec L;
    L.name = "zeta";
    L.gamma.gr = {0};
    L.sign = 1;
    L.coeffs.assign(terms + 1, Rational(1));
    L.coeffs[0] = 0;
    L.poles = {{BigComplex(1), BigComplex(1)}, {BigComplex(0), BigComplex(-1)}};
    return L;
}

// L(s, (d/.)) for a fundamental discriminant d != 1
inline LSpec quadratic_character_spec(long d, std::size_t terms) {
    LSpec L;
    L.name = "chi_" + std::to_string(d);
    L.gamma.gr = {d < 0 ? 1 : 0};
    L.conductor = d < 0 ? -d : d;
    L.sign = 1;
    L.coeffs.assign(terms + 1, Rational(0));
    for (std::size_t n = 1; n <= terms; ++n) L.coeffs[n] = kronecker(d, static_cast<long>(n));
    return L;
}

// ---------------------------------------------------------------- specs attached to a curve

inline FieldSign field_sign(const CurveData& c) { return c.imaginary() ? FieldSign::Imaginary : FieldSign::Real; }

// |D|^e * prod over bad p not dividing D of p^(dim - deg of the local factor)
inline long expected_conductor(Kind kind, const CurveData& c) {
    kind = curve_kind(kind);
    int e = 0;
    std::size_t dim = 0;
    switch (kind) {
        case Kind::Spin: e = 2, dim = 4; break;
        case Kind::Asai: e = 1, dim = 4; break;
        case Kind::ResSym2:
        case Kind::Adjoint: e = 3, dim = 6; break;
        case Kind::Sym2Ind: e = 4, dim = 10; break;
        default: throw std::invalid_argument("expected_conductor: unsupported kind");
    }
    long N = 1;
    for (int i = 0; i < e; ++i) N *= c.abs_disc();
    std::vector<long> done;
    for (const auto& b : c.bad_primes) {
        long p = b.key.p;
        if (c.ramified(p) || std::find(done.begin(), done.end(), p) != done.end()) continue;
        done.push_back(p);
        QPoly f = euler_factor(kind, p, c);
        for (std::size_t i = 0; i + f.size() < dim + 1; ++i) N *= p;
    }
    return N;
}

inline GammaShifts curve_gamma(Kind kind, const CurveData& c) {
    kind = curve_kind(kind);
    if (kind == Kind::Adjoint) return gamma_factor(make_res_sym2(field_sign(c))).shifted(1);
    if (kind == Kind::Spin) return gamma_factor(make_spin(1, 0));
    return gamma_factor(make_descriptor(kind, field_sign(c)));
}

inline int curve_weight(Kind kind) {
    kind = curve_kind(kind);
    if (kind == Kind::Spin) return 1;
    if (kind == Kind::Adjoint) return 0;
    return 2;
}

// spec with the expected conductor; the sign is known only for the spin L-function with an oracle
inline LSpec curve_lspec(Kind kind, const CurveData& c, std::size_t terms) {
    kind = curve_kind(kind);
    LSpec L;
    L.name = c.label + ":" + kind_name(kind);
    L.gamma = curve_gamma(kind, c);
    L.weight = curve_weight(kind);
    L.conductor = expected_conductor(kind, c);
    if (kind == Kind::Spin && c.oracle && c.oracle->root_number != 0) L.sign = c.oracle->root_number;
    L.coeffs = dirichlet_coefficients(kind, c, terms);
    return L;
}

}  // namespace motivic
