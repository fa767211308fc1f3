#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "motivic/numerics.hpp"

namespace motivic {

enum class Kind { Spin, Sym2, Adjoint, Asai, ResSym2, ResH1, Sym2Ind };
enum class FieldSign { Real, Imaginary };

inline std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Spin: return "spin";
        case Kind::Sym2: return "sym2";
        case Kind::Adjoint: return "adjoint";
        case Kind::Asai: return "asai";
        case Kind::ResSym2: return "ressym2";
        case Kind::ResH1: return "resh1";
        case Kind::Sym2Ind: return "sym2ind";
    }
    return "?";
}
inline Kind kind_from_name(const std::string& s) {
    for (Kind k : {Kind::Spin, Kind::Sym2, Kind::Adjoint, Kind::Asai, Kind::ResSym2, Kind::ResH1, Kind::Sym2Ind})
        if (kind_name(k) == s) return k;
    throw std::invalid_argument("unknown kind '" + s + "'");
}

// One basis vector of H_B (x) C adapted to the Hodge decomposition. F_inf acts as a
// signed permutation: F_inf e_i = sign_i e_{target_i}.
struct HodgeVec {
    int p = 0, q = 0;
    std::size_t target = 0;
    int sign = 1;
};

struct HodgeEntry {
    int p, q, mult;
    bool operator==(const HodgeEntry& o) const { return p == o.p && q == o.q && mult == o.mult; }
};

class HodgeStructure {
public:
    HodgeStructure() = default;
    HodgeStructure(int weight, std::vector<HodgeVec> basis) : w_(weight), basis_(std::move(basis)) { validate(); }

    int weight() const { return w_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<HodgeVec>& basis() const { return basis_; }

    std::vector<HodgeEntry> entries() const {
        std::map<std::pair<int, int>, int> m;
        for (const auto& v : basis_) m[{v.p, v.q}]++;
        std::vector<HodgeEntry> out;
        for (auto& [k, c] : m) out.push_back({k.first, k.second, c});
        std::sort(out.begin(), out.end(), [](const HodgeEntry& a, const HodgeEntry& b) { return a.p > b.p; });
        return out;
    }

    // (#{+1}, #{-1}) eigenvalues of F_inf on H^{p,p}
    std::pair<int, int> finf_counts(int p) const {
        int plus = 0, minus = 0;
        std::vector<bool> seen(basis_.size(), false);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const auto& v = basis_[i];
            if (v.p != p || v.q != p || seen[i]) continue;
            seen[i] = true;
            if (v.target == i) {
                (v.sign > 0 ? plus : minus)++;
            } else {
                // a 2-cycle of an involution carries one +1 and one -1
                seen[v.target] = true;
                ++plus;
                ++minus;
            }
        }
        return {plus, minus};
    }

    HodgeStructure twist(int t) const {
        std::vector<HodgeVec> b = basis_;
        for (auto& v : b) {
            v.p -= t;
            v.q -= t;
            if (t % 2) v.sign = -v.sign;
        }
        return HodgeStructure(w_ - 2 * t, b);
    }

    HodgeStructure dual() const {
        std::vector<HodgeVec> b = basis_;
        for (auto& v : b) {
            v.p = -v.p;
            v.q = -v.q;
        }
        return HodgeStructure(-w_, b);
    }

    HodgeStructure sym2() const {
        std::size_t n = basis_.size();
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                index[{i, j}] = pairs.size();
                pairs.push_back({i, j});
            }
        std::vector<HodgeVec> b;
        for (auto [i, j] : pairs) {
            const auto &x = basis_[i], &y = basis_[j];
            std::size_t a = std::min(x.target, y.target), c = std::max(x.target, y.target);
            b.push_back({x.p + y.p, x.q + y.q, index.at({a, c}), x.sign * y.sign});
        }
        return HodgeStructure(2 * w_, b);
    }

    // Deligne: Gamma_C(s - p) per pair p < q; on H^{p,p} the eigenvalue (-1)^p gives
    // Gamma_R(s - p) and -(-1)^p gives Gamma_R(s - p + 1).
    GammaShifts gamma_shifts() const {
        GammaShifts g;
        for (const auto& v : basis_)
            if (v.p < v.q) g.gc.push_back(-v.p);
        std::set<int> diag;
        for (const auto& v : basis_)
            if (v.p == v.q) diag.insert(v.p);
        for (int p : diag) {
            auto [plus, minus] = finf_counts(p);
            int par = (p % 2 == 0) ? 1 : -1;
            int npar = par > 0 ? plus : minus;
            int nanti = par > 0 ? minus : plus;
            for (int i = 0; i < npar; ++i) g.gr.push_back(-p);
            for (int i = 0; i < nanti; ++i) g.gr.push_back(-p + 1);
        }
        std::sort(g.gc.begin(), g.gc.end());
        std::sort(g.gr.begin(), g.gr.end());
        return g;
    }

private:
    void validate() const {
        std::size_t n = basis_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& v = basis_[i];
            if (v.p + v.q != w_) throw std::invalid_argument("HodgeStructure: p + q != w");
            if (v.target >= n) throw std::invalid_argument("HodgeStructure: bad F_inf target");
            const auto& u = basis_[v.target];
            if (u.p != v.q || u.q != v.p) throw std::invalid_argument("HodgeStructure: F_inf must swap (p,q) and (q,p)");
            if (u.target != i || u.sign * v.sign != 1) throw std::invalid_argument("HodgeStructure: F_inf is not an involution");
        }
        std::map<std::pair<int, int>, int> m;
        for (const auto& v : basis_) m[{v.p, v.q}]++;
        for (auto& [k, c] : m) {
            auto it = m.find({k.second, k.first});
            if (it == m.end() || it->second != c) throw std::invalid_argument("HodgeStructure: Hodge symmetry fails");
        }
    }

    int w_ = 0;
    std::vector<HodgeVec> basis_;
};

struct MotiveDescriptor {
    Kind kind = Kind::Spin;
    int l1 = 0, l2 = 0;
    FieldSign field = FieldSign::Imaginary;
    HodgeStructure hodge;
    long conductor = 0;  // opaque here
    int twist = 0;

    MotiveDescriptor twisted(int t) const {
        MotiveDescriptor m = *this;
        m.hodge = hodge.twist(t);
        m.twist += t;
        return m;
    }
};

namespace detail {

// (w,0), (l1,l2), (l2,l1), (0,w) with F_inf swapping conjugate types
inline HodgeStructure spin_hodge(int l1, int l2) {
    int w = l1 + l2;
    return HodgeStructure(w, {{w, 0, 3, 1}, {l1, l2, 2, 1}, {l2, l1, 1, 1}, {0, w, 0, 1}});
}

}  // namespace detail

inline void check_lambda(int l1, int l2) {
    if (!(l1 >= l2 && l2 >= 0)) throw std::invalid_argument("lambda must satisfy l1 >= l2 >= 0");
}

inline MotiveDescriptor make_spin(int l1, int l2) {
    check_lambda(l1, l2);
    return {Kind::Spin, l1, l2, FieldSign::Imaginary, detail::spin_hodge(l1, l2)};
}

inline MotiveDescriptor make_sym2(int l1, int l2) {
    check_lambda(l1, l2);
    return {Kind::Sym2, l1, l2, FieldSign::Imaginary, detail::spin_hodge(l1, l2).sym2()};
}

// M(Ad) = Sym^2 M (w)
inline MotiveDescriptor make_adjoint(int l1, int l2) {
    MotiveDescriptor m = make_sym2(l1, l2).twisted(l1 + l2);
    m.kind = Kind::Adjoint;
    m.twist = 0;
    return m;
}

// Asai of a weight-2 form over a quadratic field; weight 2. The F_inf signs on the two
// (1,1) vectors: imaginary field both +1, real field one of each.
inline MotiveDescriptor make_asai(FieldSign f) {
    std::vector<HodgeVec> b;
    if (f == FieldSign::Imaginary)
        b = {{2, 0, 3, 1}, {1, 1, 1, 1}, {1, 1, 2, 1}, {0, 2, 0, 1}};
    else
        b = {{2, 0, 3, 1}, {1, 1, 2, 1}, {1, 1, 1, 1}, {0, 2, 0, 1}};
    return {Kind::Asai, 1, 0, f, HodgeStructure(2, b)};
}

// Res_{F/Q} Sym^2 H^1(E)
inline MotiveDescriptor make_res_sym2(FieldSign f) {
    std::vector<HodgeVec> b;
    if (f == FieldSign::Imaginary) {
        // copies sigma (0..2) and conj sigma (3..5); F_inf exchanges them
        b = {{2, 0, 5, 1}, {1, 1, 4, 1}, {0, 2, 3, 1}, {2, 0, 2, 1}, {1, 1, 1, 1}, {0, 2, 0, 1}};
    } else {
        // each real embedding carries its own F_inf; the (1,1) line is fixed
        b = {{2, 0, 2, 1}, {1, 1, 1, 1}, {0, 2, 0, 1}, {2, 0, 5, 1}, {1, 1, 4, 1}, {0, 2, 3, 1}};
    }
    return {Kind::ResSym2, 1, 0, f, HodgeStructure(2, b)};
}

inline MotiveDescriptor make_res_h1(FieldSign f) {
    std::vector<HodgeVec> b;
    if (f == FieldSign::Imaginary)
        b = {{1, 0, 3, 1}, {0, 1, 2, 1}, {1, 0, 1, 1}, {0, 1, 0, 1}};
    else
        b = {{1, 0, 1, 1}, {0, 1, 0, 1}, {1, 0, 3, 1}, {0, 1, 2, 1}};
    return {Kind::ResH1, 1, 0, f, HodgeStructure(1, b)};
}

// Sym^2 of the induced (spin, lambda = (1,0)) motive
inline MotiveDescriptor make_sym2_ind(FieldSign f) {
    MotiveDescriptor m = make_sym2(1, 0);
    m.kind = Kind::Sym2Ind;
    m.field = f;
    return m;
}

inline MotiveDescriptor make_descriptor(Kind k, FieldSign f, int l1 = 1, int l2 = 0) {
    switch (k) {
        case Kind::Spin: return make_spin(l1, l2);
        case Kind::Sym2: return make_sym2(l1, l2);
        case Kind::Adjoint: return make_adjoint(l1, l2);
        case Kind::Asai: return make_asai(f);
        case Kind::ResSym2: return make_res_sym2(f);
        case Kind::ResH1: return make_res_h1(f);
        case Kind::Sym2Ind: return make_sym2_ind(f);
    }
    throw std::invalid_argument("unsupported kind");
}

inline GammaShifts gamma_factor(const MotiveDescriptor& m) { return m.hodge.gamma_shifts(); }

// n is critical iff neither L_inf(M, s) nor L_inf(M^vee, 1 - s) has a pole at s = n
inline std::vector<long> critical_points(const MotiveDescriptor& m) {
    GammaShifts g = m.hodge.gamma_shifts();
    GammaShifts gd = m.hodge.dual().gamma_shifts();
    std::vector<long> out;
    long span = 4 * (std::abs(m.hodge.weight()) + 4) + 40;
    for (long n = -span; n <= span; ++n)
        if (!g.has_pole_at(n) && !gd.has_pole_at(1 - n)) out.push_back(n);
    return out;
}

inline bool is_critical(const MotiveDescriptor& m, long n) {
    auto c = critical_points(m);
    return std::find(c.begin(), c.end(), n) != c.end();
}

struct DichotomyRow {
    std::string lfunction;
    long point;
    bool critical;
};

// Ad(f0) at s = 1 is Res Sym^2 twisted by 1; Asai at s = 2
inline std::vector<DichotomyRow> dichotomy_table(FieldSign f) {
    MotiveDescriptor ad = make_res_sym2(f).twisted(1);
    ad.kind = Kind::Adjoint;
    MotiveDescriptor as = make_asai(f);
    return {{"Ad(f0)", 1, is_critical(ad, 1)}, {"Asai(f0)", 2, is_critical(as, 2)}};
}

}  // namespace motivic
