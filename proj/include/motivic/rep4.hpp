#pragma once

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "motivic/exact.hpp"

namespace motivic {

// Weights are (n1, n2) in Z^2 for the compact torus of Sp4(R); K-types need n1 >= n2.

struct Weight2 {
    long a = 0, b = 0;
    friend bool operator==(const Weight2& x, const Weight2& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Weight2& x, const Weight2& y) { return !(x == y); }
    friend bool operator<(const Weight2& x, const Weight2& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; }
    friend Weight2 operator+(Weight2 x, const Weight2& y) { return {x.a + y.a, x.b + y.b}; }
    std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

inline nlohmann::json to_json(const Weight2& w) { return nlohmann::json::array({w.a, w.b}); }

inline bool parity_ok(long l1, long l2, long m) { return ((m - l1 - l2 - 1) % 2 + 2) % 2 == 0; }

struct HCParam {
    long l1 = 0, l2 = 0, m = 0;
    HCParam() = default;
    HCParam(long a, long b, long mm) : l1(a), l2(b), m(mm) {
        if (!parity_ok(a, b, mm))
            throw std::invalid_argument("central character " + std::to_string(mm) + " has wrong parity for (" +
                                        std::to_string(a) + "," + std::to_string(b) + ")");
    }
    Weight2 w() const { return {l1, l2}; }
};

struct KTypeWeight {
    long n1, n2;
    KTypeWeight(long a, long b) : n1(a), n2(b) {
        if (a < b) throw std::invalid_argument("K-type weight not dominant: " + Weight2{a, b}.str());
    }
    Weight2 w() const { return {n1, n2}; }
};

// ---------------------------------------------------------------- regions

enum class Region { I, II, III, IV, I_II, II_III, III_IV, Wall };

inline std::string region_name(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
        case Region::I_II: return "I/II";
        case Region::II_III: return "II/III";
        case Region::III_IV: return "III/IV";
        default: return "wall";
    }
}

inline bool is_limit(Region r) { return r == Region::I_II || r == Region::II_III || r == Region::III_IV; }

// Wall = anything else: the compact wall l1 = l2, the origin, or l1 < l2.
inline Region classify_region(long l1, long l2) {
    if (l1 <= l2) return Region::Wall;
    if (l2 > 0) return Region::I;
    if (l2 == 0) return l1 > 0 ? Region::I_II : Region::Wall;
    // l2 < 0 from here on
    if (l1 > 0) {
        if (l1 > -l2) return Region::II;
        if (l1 == -l2) return Region::II_III;
        return Region::III;
    }
    if (l1 == 0) return Region::III_IV;
    return Region::IV;
}

inline Weight2 region_delta(Region r) {
    switch (r) {
        case Region::I: return {1, 2};
        case Region::II: return {1, 0};
        case Region::III: return {0, -1};
        case Region::IV: return {-2, -1};
        default: throw std::invalid_argument("region_delta: no delta for " + region_name(r));
    }
}

// Blattner parameter.  A limit parameter may be paired with either adjacent open region.
inline Weight2 blattner(Weight2 lam, Region reg) {
    Region c = classify_region(lam.a, lam.b);
    bool ok = c == reg || (c == Region::I_II && (reg == Region::I || reg == Region::II)) ||
              (c == Region::II_III && (reg == Region::II || reg == Region::III)) ||
              (c == Region::III_IV && (reg == Region::III || reg == Region::IV));
    if (!ok || is_limit(reg) || reg == Region::Wall)
        throw std::invalid_argument("blattner: " + lam.str() + " lies in " + region_name(c) + ", not " + region_name(reg));
    return lam + region_delta(reg);
}

// lambda -> lambda' = (-l2, -l1): conjugation by diag(1,1,-1,-1)
inline Weight2 reflect(Weight2 w) { return {-w.b, -w.a}; }
inline Weight2 bar(Weight2 w) { return {w.a, -w.b}; }

// ---------------------------------------------------------------- L-packets

struct RepLabel {
    std::string family;  // "1", "2", "3", "4" or "x"
    Weight2 lambda;
    long m = 0;
    bool gsp4 = true;  // false for Sp4(R) constituents
    friend bool operator==(const RepLabel& x, const RepLabel& y) {
        return x.family == y.family && x.lambda == y.lambda && x.m == y.m && x.gsp4 == y.gsp4;
    }
    std::string str() const {
        return "X^" + family + "_{" + lambda.str() + (gsp4 ? ";" + std::to_string(m) : std::string()) + "}";
    }
};

inline std::vector<RepLabel> lpacket(Weight2 lam, long m) {
    if (!parity_ok(lam.a, lam.b, m)) throw std::invalid_argument("lpacket: central character parity");
    Region r = classify_region(lam.a, lam.b);
    if (r == Region::I || r == Region::I_II) return {{"1", lam, m}, {"2", bar(lam), m}};
    if (r == Region::II_III) return {{"x", lam, m}};
    throw std::invalid_argument("lpacket: " + lam.str() + " (" + region_name(r) + ") is outside the supported cones");
}

// GSp4 label -> Sp4 constituents
inline std::vector<RepLabel> restrict_to_sp4(const RepLabel& x) {
    if (!x.gsp4) throw std::invalid_argument("already an Sp4 label");
    if (x.family == "1") return {{"1", x.lambda, 0, false}, {"4", reflect(x.lambda), 0, false}};
    if (x.family == "2") return {{"2", x.lambda, 0, false}, {"3", reflect(x.lambda), 0, false}};
    if (x.family == "x") return {{"2", x.lambda, 0, false}, {"3", x.lambda, 0, false}};
    throw std::invalid_argument("restrict_to_sp4: unexpected family " + x.family);
}

// ---------------------------------------------------------------- automorphic sheaves

struct SheafWeights {
    std::array<Weight2, 4> E;                 // (k1,k2), (k1,4-k2), (k2-1,3-k1), (3-k2,3-k1)
    std::map<Weight2, std::set<int>> degrees;  // distinct weight -> cohomological degrees
    bool coincident() const { return degrees.size() < 4; }
};

inline Weight2 serre_dual(Weight2 w) { return {3 - w.b, 3 - w.a}; }

inline SheafWeights sheaf_weights(long k1, long k2, long m) {
    if (!(k1 >= k2 && k2 >= 2)) throw std::invalid_argument("sheaf_weights: need k1 >= k2 >= 2");
    if (((m - k1 - k2) % 2 + 2) % 2 != 0) throw std::invalid_argument("sheaf_weights: m and k1 + k2 differ in parity");
    SheafWeights s;
    s.E = {Weight2{k1, k2}, Weight2{k1, 4 - k2}, Weight2{k2 - 1, 3 - k1}, Weight2{3 - k2, 3 - k1}};
    for (int i = 0; i < 4; ++i) s.degrees[s.E[i]].insert(i);
    return s;
}

// ---------------------------------------------------------------- (P,K) Hom table

// highest weights of wedge^j p_-
inline Weight2 wedge_pminus(int j) {
    static const std::array<Weight2, 4> h = {Weight2{0, 0}, Weight2{0, -2}, Weight2{-1, -3}, Weight2{-3, -3}};
    return h.at(j);
}

// Support of the K-types of a GSp4 discrete series, membership only.
// Holomorphic: Lambda + cone{(1,0),(0,1)} inside the dominant chamber.  Generic: Lambda + cone{(1,1),(0,-1)}.
// Each comes with its reflection under lambda -> lambda'.  Parity of n1+n2 is that of Lambda.
struct KSupport {
    Weight2 min1, min2;  // minimal K-types of the two Sp4 constituents
    bool holomorphic;

    static bool same_parity(Weight2 x, Weight2 y) { return ((x.a + x.b - y.a - y.b) % 2 + 2) % 2 == 0; }
    bool in_main(Weight2 n) const {
        if (n.a < n.b || !same_parity(n, min1)) return false;
        if (holomorphic) return n.a >= min1.a && n.b >= min1.b;
        return n.a >= min1.a && (n.a - n.b) >= (min1.a - min1.b);
    }
    bool contains(Weight2 n) const { return in_main(n) || in_main(reflect(n)); }
    bool minimal(Weight2 n) const { return n == min1 || n == min2; }
};

inline KSupport holomorphic_support(Weight2 lam) {
    Weight2 L = blattner(lam, Region::I);
    Weight2 Lp = blattner(reflect(lam), Region::IV);
    if (Lp != reflect(L)) throw std::logic_error("holomorphic support: reflected Blattner parameter mismatch");
    return {L, Lp, true};
}

inline KSupport generic_support(Weight2 lambar) {
    Weight2 L = blattner(lambar, Region::II);
    Weight2 Lp = blattner(reflect(lambar), Region::III);
    if (Lp != reflect(L)) throw std::logic_error("generic support: reflected Blattner parameter mismatch");
    return {L, Lp, false};
}

struct PKTable {
    Weight2 lambda;
    std::array<std::array<int, 4>, 4> hol{};  // [i][j] for X^1_lambda
    std::array<std::array<int, 4>, 4> gen{};  // [i][j] for X^2_lambdabar
};

// 1 when the highest weight of wedge^j p_- (x) V_i^vee is a minimal K-type, 0 when it lies outside the support.
// A weight inside the support but not minimal is not decided by this argument and raises.
inline int hom_verdict(Weight2 top, const KSupport& S) {
    if (S.minimal(top)) return 1;
    if (!S.contains(top)) return 0;
    throw std::logic_error("pk_hom_dims: " + top.str() + " is a non-minimal K-type of the support");
}

inline PKTable pk_hom_dims(Weight2 lam, long m) {
    if (!(lam.b >= 0 && lam.a >= lam.b + 1))
        throw std::invalid_argument("pk_hom_dims: need l1 > l2 >= 0, got " + lam.str());
    if (!parity_ok(lam.a, lam.b, m)) throw std::invalid_argument("pk_hom_dims: central character parity");
    long k1 = lam.a + 1, k2 = lam.b + 2;
    auto sw = sheaf_weights(k1, k2, m);
    KSupport h = holomorphic_support(lam), g = generic_support(bar(lam));
    PKTable t;
    t.lambda = lam;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            // V_{r1,r2}^vee restricted to K has highest weight (r1, r2)
            Weight2 top = sw.E[i] + wedge_pminus(j);
            t.hol[i][j] = hom_verdict(top, h);
            t.gen[i][j] = hom_verdict(top, g);
        }
    return t;
}

inline nlohmann::json to_json(const PKTable& t) {
    return {{"lambda", to_json(t.lambda)}, {"X1", t.hol}, {"X2", t.gen}};
}

// ---------------------------------------------------------------- Hilbert-Siegel

// Count partitions J = (J0..J3) of {1..d} whose sheaf is E_{(k_j,2)_j}; with k_j2 = 2 the sheaves of J0 and J1
// (and of J2 and J3) agree, so this means J2 = J3 = {}.  Degree |J1| + 2|J2| + 3|J3|.
inline long hilbert_siegel_dims(int d, int i) {
    if (d < 0 || d > 20 || i < 0 || i > d) throw std::out_of_range("hilbert_siegel_dims: need 0 <= i <= d <= 20");
    long count = 0;
    long total = 1;
    for (int n = 0; n < d; ++n) total *= 4;
    for (long code = 0; code < total; ++code) {
        long c = code;
        int deg = 0;
        bool on_sheaf = true;
        for (int n = 0; n < d; ++n, c /= 4) {
            int part = static_cast<int>(c % 4);
            if (part >= 2) on_sheaf = false;
            deg += part;
        }
        if (on_sheaf && deg == i) ++count;
    }
    return count;
}

inline long binomial(int d, int i) {
    if (i < 0 || i > d) throw std::out_of_range("binomial");
    long r = 1;
    for (int n = 1; n <= i; ++n) r = r * (d - i + n) / n;
    return r;
}

// ---------------------------------------------------------------- Weyl element

using QMat4 = std::array<std::array<QI, 4>, 4>;

inline QMat4 qmat4_mul(const QMat4& x, const QMat4& y) {
    QMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) r[i][j] += x[i][k] * y[k][j];
    return r;
}

inline QMat4 qmat4_inverse(QMat4 a) {
    QMat4 inv;
    for (int i = 0; i < 4; ++i) inv[i][i] = QI(1);
    for (int c = 0; c < 4; ++c) {
        int p = c;
        while (p < 4 && a[p][c].is_zero()) ++p;
        if (p == 4) throw std::domain_error("qmat4_inverse: singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        QI s = a[c][c].inverse();
        for (int j = 0; j < 4; ++j) { a[c][j] *= s; inv[c][j] *= s; }
        for (int r = 0; r < 4; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            QI f = a[r][c];
            for (int j = 0; j < 4; ++j) { a[r][j] -= f * a[c][j]; inv[r][j] -= f * inv[c][j]; }
        }
    }
    return inv;
}

inline QMat4 qmat4_transpose(const QMat4& a) {
    QMat4 t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t[i][j] = a[j][i];
    return t;
}

inline QMat4 symplectic_J() {
    QMat4 J;
    J[0][2] = QI(1); J[1][3] = QI(1); J[2][0] = QI(-1); J[3][1] = QI(-1);
    return J;
}

inline bool is_real(const QMat4& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (x.im != 0) return false;
    return true;
}

// g^T J g = nu J for some scalar nu
inline bool is_symplectic_similitude(const QMat4& g) {
    QMat4 J = symplectic_J(), s = qmat4_mul(qmat4_mul(qmat4_transpose(g), J), g);
    QI nu = s[0][2];
    if (nu.is_zero()) return false;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (s[i][j] != nu * J[i][j]) return false;
    return true;
}

struct WeylLift {
    QMat4 g, g0, conj;  // conj = g g0 g^-1
    bool is_real = false;
};

inline WeylLift weyl_lift_obstruction() {
    WeylLift w;
    QI i = qi_i();
    // g = [[-i I, I], [I, I]] carries the Siegel Levi onto K_C
    w.g[0][0] = -i; w.g[1][1] = -i;
    w.g[0][2] = QI(1); w.g[1][3] = QI(1);
    w.g[2][0] = QI(1); w.g[3][1] = QI(1);
    w.g[2][2] = QI(1); w.g[3][3] = QI(1);
    // g0 in N_G(T)(R): (n1, n2) -> (n1, -n2)
    w.g0[0][0] = QI(1); w.g0[1][3] = QI(-1); w.g0[2][2] = QI(1); w.g0[3][1] = QI(1);
    w.conj = qmat4_mul(qmat4_mul(w.g, w.g0), qmat4_inverse(w.g));
    w.is_real = is_real(w.conj);
    return w;
}

inline std::string qi_str(const QI& x) {
    auto r = [](const Rational& q) { return q.str(); };
    if (x.im == 0) return r(x.re);
    std::string im = x.im == 1 ? "i" : x.im == -1 ? "-i" : r(x.im) + "i";
    if (x.re == 0) return im;
    return r(x.re) + (x.im > 0 ? "+" : "") + im;
}

inline nlohmann::json to_json(const QMat4& a) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : a) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& x : row) r.push_back(qi_str(x));
        j.push_back(r);
    }
    return j;
}

}  // namespace motivic
