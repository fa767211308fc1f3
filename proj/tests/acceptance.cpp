// one PASS/FAIL line per acceptance criterion
//
// usage: acceptance [--expect-fail N]...
// exit status is 0 iff the set of failing criteria equals the expected set.

#include <cstring>
#include <iostream>
#include <set>
#include <sstream>

#include "motivic/verify.hpp"

using namespace motivic;

namespace {

struct Line {
    bool ok = true;
    std::ostringstream msg;
    void need(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            msg << " [" << what << "]";
        }
    }
};

const std::vector<CurveData>& curves() {
    static std::vector<CurveData> all = ingest(default_fixture_dir());
    return all;
}

long value_of(const CheckReport& r, const std::string& name) {
    auto v = r.find(name);
    return v ? v->value.re.convert_to<long>() : -1;
}

// 1
void euler(Line& L) {
    for (const auto& c : curves()) {
        detail::Stopwatch sw;
        auto r = check_euler_factorization(c, 200);
        double t = sw.seconds();
        L.need(r.passed(), c.label + " mismatches=" + std::to_string(value_of(r, "mismatches")));
        L.need(t < 10, c.label + " took " + std::to_string(t) + "s");
        L.msg << " " << c.label << ":" << value_of(r, "good_primes") << "/" << value_of(r, "primes_checked");
    }
}

// 2
void criticality(Line& L) {
    L.need(critical_points(make_spin(1, 0)) == std::vector<long>{1}, "spin (1,0)");
    for (int l1 = 1; l1 <= 12; ++l1) L.need(critical_points(make_sym2(l1, 0)).empty(), "sym2 l2=0");
    L.need(critical_points(make_sym2(2, 1)) == std::vector<long>{3, 4}, "sym2 (2,1)");
    for (int l1 = 1; l1 <= 12; ++l1)
        for (int l2 = 0; l2 < l1; ++l2) {
            std::vector<long> want;
            for (long n = l2 + 1; n <= l1; ++n) want.push_back(n);
            L.need(critical_points(make_spin(l1, l2)) == want, "spin closed form");
        }
    auto r = dichotomy_table(FieldSign::Real), i = dichotomy_table(FieldSign::Imaginary);
    L.need(r[0].critical && !r[1].critical, "dichotomy, real field");
    L.need(!i[0].critical && i[1].critical, "dichotomy, imaginary field");
    // sym2 closed form beyond 2 l2 <= l1 is cut by Gamma_C(s - 2 l2); reported, not asserted
    int diverge = 0;
    for (int l1 = 1; l1 <= 12; ++l1)
        for (int l2 = 1; l2 < l1; ++l2) {
            std::vector<long> cf;
            for (long n = l1 + 1; n <= l1 + l2; ++n)
                if (n % 2) cf.push_back(n);
            for (long n = l1 + l2 + 1; n <= l1 + 2 * l2; ++n)
                if (n % 2 == 0) cf.push_back(n);
            std::sort(cf.begin(), cf.end());
            bool same = critical_points(make_sym2(l1, l2)) == cf;
            if (2 * l2 <= l1) L.need(same, "sym2 closed form at " + std::to_string(l1) + "," + std::to_string(l2));
            else diverge += !same;
        }
    L.msg << " sym2 closed form differs from the gamma-pole set at " << diverge << " weights with 2*l2 > l1";
}

// 3
void frames(Line& L) {
    detail::Stopwatch sw;
    auto r = check_frame_identities();
    double t = sw.seconds();
    long n = value_of(r, "frames");
    L.msg << " frames=" << n;
    for (const char* k : {"delta_v123_zero", "c_equals_determinant", "delta_v4_equals_4"})
        L.need(value_of(r, k) == n, std::string(k) + "=" + std::to_string(value_of(r, k)));
    long m = value_of(r, "imaginary_frames");
    for (const char* k : {"P1v12_eta_zero", "P1v3_eta_closed_form"})
        L.need(value_of(r, k) == m, std::string(k) + "=" + std::to_string(value_of(r, k)));
    for (const auto& note : r.notes) L.msg << " " << note;
    L.need(t < 30, "took " + std::to_string(t) + "s");
}

// 4
void chains(Line& L) {
    detail::Stopwatch sw;
    auto r = check_proof_chains();
    double t = sw.seconds();
    L.need(r.passed(), "chain report failed");
    L.msg << " chains=" << value_of(r, "chains_closed") << "/" << value_of(r, "chains_run")
          << " removals breaking=" << value_of(r, "removals_breaking_chain") << "/" << value_of(r, "rule_removals");
    L.need(t < 1, "took " + std::to_string(t) + "s");
}

// 5
void lengine(Line& L) {
    {
        PrecisionScope ps(160);
        auto chi = quadratic_character_spec(-4, 400);
        Real e1 = abs(evaluate(chi, BigComplex(1)).value - BigComplex(const_pi() / 4));
        Real e2 = abs(evaluate(chi, BigComplex(2)).value - BigComplex(const_catalan()));
        L.need(e1 < Real("1e-30"), "L(chi,1) err " + to_string(e1, 3));
        L.need(e2 < Real("1e-25"), "L(chi,2) err " + to_string(e2, 3));
        L.msg << " chi: " << to_string(e1, 2) << " " << to_string(e2, 2);
    }
    const unsigned bits = 100;
    for (const auto& c : curves()) {
        detail::Stopwatch sw;
        PrecisionScope ps(bits);
        auto L0 = curve_lspec(Kind::Spin, c, 1);
        long N = c.abs_disc() * c.abs_disc() * c.conductor_norm;
        L0.conductor = 4 * N;  // size the sum for the largest candidate
        auto Ls = curve_lspec(Kind::Spin, c, terms_needed(L0, bits));
        Ls.conductor = N;
        auto fe = functional_equation_defect(Ls, Real(1.3), bits);
        auto fit = fit_conductor_sign(Ls, {c.abs_disc() * c.conductor_norm, N, 2 * N, 4 * N}, bits);
        double t = sw.seconds();
        L.need(fe.defect < Real("1e-20"), c.label + " defect " + to_string(fe.defect, 3));
        L.need(fit.conductor == N, c.label + " fit chose " + std::to_string(fit.conductor));
        L.need(t < 60, c.label + " took " + std::to_string(t) + "s");
        L.msg << " " << c.label << ":" << to_string(fe.defect, 2);
    }
}

// 6
void check_a(Line& L) {
    int recognized = 0;
    for (const auto& c : curves()) {
        if (!c.imaginary()) continue;
        auto r = check_asai_cw_ratio(c);
        bool vanishing = false;
        for (const auto& n : r.notes) vanishing |= n.find("vanishes") != std::string::npos;
        if (vanishing) {
            L.msg << " " << c.label << ":central value vanishes";
            continue;
        }
        L.need(r.passed(), c.label);
        if (r.passed()) {
            ++recognized;
            L.msg << " " << c.label << ":" << r.rational->p << "/" << r.rational->q;
        }
    }
    L.need(recognized >= 2, "fewer than two curves");
}

// 7
void reps(Line& L) {
    detail::Stopwatch sw;
    auto r = check_rep_suite(10000, 6);
    double t = sw.seconds();
    L.need(r.passed(), "suite");
    for (const auto& n : r.notes) L.msg << " " << n;
    L.msg << " blattner=" << value_of(r, "blattner_match") << " pk=" << value_of(r, "pk_match") << "/"
          << value_of(r, "pk_tables") << " (index-diagonal " << value_of(r, "pk_index_diagonal")
          << ", b=0 weights compared per sheaf) hs=" << value_of(r, "hs_match");
    L.need(t < 5, "took " + std::to_string(t) + "s");
}

// 8
void lattice(Line& L) {
    for (const auto& c : curves()) {
        auto r = check_period_lattice(c, 128);
        L.need(r.passed(), c.label);
    }
    L.msg << " " << curves().size() << " curves at 128 bits";
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc)
            expected.insert(std::atoi(argv[++i]));
        else {
            std::cerr << "usage: acceptance [--expect-fail N]...\n";
            return 2;
        }
    }

    struct Criterion {
        const char* name;
        void (*run)(Line&);
    };
    const Criterion all[] = {{"euler factorization", euler}, {"criticality", criticality},
                             {"frame identities", frames},   {"proof chains", chains},
                             {"L-engine calibration", lengine}, {"rationality check A", check_a},
                             {"representation suite", reps},  {"period lattice", lattice}};

    std::set<int> failed;
    int id = 0;
    for (const auto& c : all) {
        ++id;
        Line line;
        detail::Stopwatch sw;
        try {
            c.run(line);
        } catch (const std::exception& e) {
            line.need(false, std::string("exception: ") + e.what());
        }
        if (!line.ok) failed.insert(id);
        std::printf("%s %d %s (%.2fs)%s\n", line.ok ? "PASS" : "FAIL", id, c.name, sw.seconds(),
                    line.msg.str().c_str());
        std::fflush(stdout);
    }
    if (failed != expected) {
        std::printf("failing set differs from the expected set\n");
        return 1;
    }
    return 0;
}
