// One PASS/FAIL line per acceptance criterion.
// usage: acceptance [--known-unattainable N ...]
#include <omp.h>

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cgwk/core.hpp"
#include "cgwk/finset.hpp"
#include "cgwk/matroid.hpp"
#include "cgwk/presentation.hpp"
#include "cgwk/relations.hpp"

using namespace cgwk;

namespace {

// time limits in seconds
constexpr double kK0Limit = 60;
constexpr double kSignLimit = 300;
constexpr double kA2Limit = 300;
constexpr double kAmalgamLimit = 600;
constexpr double kPi1Limit = 1;

struct Line {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

Line c1() {
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    auto t = std::chrono::steady_clock::now();
    FinSet c;
    auto p = k0_presentation(c, 4, false);
    Group g(p);
    bool ok = g.free_rank() == 1 && g.invariant_factors().empty();
    // [n] - n[1] = 0 and [1] of infinite order: the map [n] -> n is an isomorphism onto Z
    for (int n = 0; n <= 4 && ok; ++n) {
        std::vector<std::pair<std::string, long>> terms{{object_label(c, range_obj(1)), -n}};
        if (n > 0) terms.push_back({object_label(c, range_obj(n)), 1});
        ok = g.is_zero(p.element(terms));
    }
    ok = ok && !g.is_zero(p.element({{object_label(c, range_obj(1)), 1}}));
    double s = seconds_since(t);
    omp_set_num_threads(saved);
    std::ostringstream d;
    d << "K0(FinSet) U=4: free rank " << g.free_rank() << ", " << g.invariant_factors().size()
      << " torsion factors, [n] -> n checked, " << s << " s single-threaded (limit " << kK0Limit << ")";
    return {ok && s < kK0Limit, d.str()};
}

Line c2() {
    auto t = std::chrono::steady_clock::now();
    FinSet c;
    bool ok = true;
    std::ostringstream d;
    for (int U = 2; U <= 4; ++U) {
        auto pb = k1_presentation_baseline(c, U);
        auto pn = k1_presentation_nenashev(c, U, harvest_3x3(c, U));
        auto ab = oracle_respects_relations(pb), an = oracle_respects_relations(pn);
        ok = ok && ab.ok && an.ok;
        d << "U=" << U << " baseline " << ab.rows << " rows " << (ab.ok ? "ok" : "VIOLATED") << ", nenashev "
          << an.rows << " rows " << (an.ok ? "ok" : "VIOLATED") << "; ";
    }
    double s = seconds_since(t);
    d << s << " s (limit " << kSignLimit << ")";
    return {ok && s < kSignLimit, d.str()};
}

Line c3() {
    FinSet c;
    bool ok = true;
    std::ostringstream d;
    auto tau = des_key(l_aut({1, 0}));
    ok = generator_sign(tau) == 1;
    for (int U = 2; U <= 4; ++U) {
        auto p = k1_presentation_baseline(c, U);
        Group g(p);
        bool nz = !g.is_zero(p.element({{tau, 1}}));
        bool z2 = g.is_zero(p.element({{tau, 2}}));
        ok = ok && nz && z2;
        d << "U=" << U << ": l(tau) " << (nz ? "nonzero" : "ZERO") << ", 2 l(tau) " << (z2 ? "zero" : "NONZERO")
          << "; ";
    }
    d << "sign(l(tau)) = " << generator_sign(tau);
    return {ok, d.str()};
}

Line c4() {
    auto t = std::chrono::steady_clock::now();
    FinSet c;
    auto sweep = a2_sign_sweep(c, 4);
    bool ok = sweep.ok();
    long odd = 0, even = 0;
    for (int n = 0; n <= 3; ++n)
        for (auto& a : all_permutations(n)) {
            int s = sign_class(key_example(c, a).lT);
            ok = ok && s == sign_of(a);
            (sign_of(a) ? odd : even)++;
        }
    // alpha acting on {1, 2}
    ok = ok && sign_class(key_example(c, {1, 0}).lT) == 1 && sign_class(key_example(c, {0, 1}).lT) == 0;
    double s = seconds_since(t);
    std::ostringstream d;
    d << sweep.passed << "/" << sweep.cases << " admissible triples at U=4 satisfy the sign law; key example checked on "
      << odd << " odd and " << even << " even alpha; " << s << " s (limit " << kA2Limit << ")";
    return {ok && s < kA2Limit, d.str()};
}

Line c5() {
    auto r = a1_law(FinSet{}, 3, 200, 0);
    std::ostringstream d;
    d << r.passed << "/" << r.cases << " random pairs at U=3 (seed 0), " << r.extra["diagrams"]
      << " direct-sum diagrams";
    return {r.ok() && r.cases == 200, d.str()};
}

Line c6() {
    auto r = corollary_identities(FinSet{}, 3);
    std::ostringstream d;
    d << r.passed << "/" << r.cases << " identities hold at size <= 3 (" << r.extra["held"].dump() << "), "
      << r.skipped << " outside the budget";
    return {r.ok() && r.skipped == 0, d.str()};
}

Line c7() {
    FinSet c;
    bool ok = true;
    std::ostringstream d;
    using Suite = std::function<SuiteResult(const FinSet&, const SuiteConfig&)>;
    std::vector<Suite> suites{quotient_filtration_suite, add_object_suite, direct_sum_squares_suite, build_3x3_suite,
                              permutation_homotopy_suite, simplicial_identities_suite};
    for (auto& f : suites) {
        auto ex = f(c, {3, true, 0, 0, true});
        auto rnd = f(c, {4, false, 500, 0, true});
        bool good = ex.ok() && rnd.ok() && rnd.cases >= 500;
        ok = ok && good;
        d << ex.name << " " << ex.passed << "/" << ex.cases << " + " << rnd.passed << "/" << rnd.cases
          << (good ? "" : " FAILED") << "; ";
    }
    return {ok, d.str()};
}

Line c8() {
    auto t = std::chrono::steady_clock::now();
    auto uniform = [](std::vector<std::string> els) {
        json g = els;
        g.insert(g.begin(), "*");
        json flats = json::array({json::array({"*"})});
        for (auto& e : els) flats.push_back({"*", e});
        flats.push_back(g);
        return named_from_json({{"ground", g}, {"basepoint", "*"}, {"flats", flats}});
    };
    auto n = uniform({"a", "b", "c"});
    auto epp = amalgam_search(uniform({"a", "b", "c", "d"}), uniform({"a", "b", "c", "e"}), n);
    auto triv = amalgam_search(n, n, n);
    json o{{"ground", {"*"}}, {"basepoint", "*"}, {"flats", {{"*"}}}};
    json fa{{"ground", {"*", "a"}}, {"basepoint", "*"}, {"flats", {{"*"}, {"*", "a"}}}};
    json fb{{"ground", {"*", "b"}}, {"basepoint", "*"}, {"flats", {{"*"}, {"*", "b"}}}};
    auto free = amalgam_search(named_from_json(fa), named_from_json(fb), named_from_json(o));
    double s = seconds_since(t);
    bool controls = triv.found && free.found;
    std::ostringstream d;
    d << "rank-2 span on 6 points: " << epp.candidates << " structures searched, " << epp.amalgams
      << " amalgams found (so 'no amalgam exists' is false), " << epp.initial_survivors
      << " initial amalgams; controls " << (controls ? "found" : "NOT found") << "; " << s << " s (limit "
      << kAmalgamLimit << ")";
    return {!epp.found && controls && s < kAmalgamLimit, d.str()};
}

Line c9() {
    CategoryBudget b;
    b.maxObjectSize = 3;
    int flagged = 0;
    auto cat = mutant_catalog();
    for (auto m : cat) flagged += verify_axioms(FinSet(m), b).any_fail();
    bool rejected = false;
    try {
        named_from_json({{"ground", {"*", "a", "b", "c"}},
                         {"basepoint", "*"},
                         {"flats", {{"*"}, {"*", "a", "b"}, {"*", "b", "c"}, {"*", "a", "b", "c"}}}});
    } catch (const InvalidMatroid&) {
        rejected = true;
    }
    std::ostringstream d;
    d << flagged << "/" << cat.size() << " FinSet mutants flagged; overlapping flats family "
      << (rejected ? "rejected" : "ACCEPTED");
    return {flagged == static_cast<int>(cat.size()) && cat.size() == 5 && rejected, d.str()};
}

Line c10() {
    auto t = std::chrono::steady_clock::now();
    SSet2 hollow{3, 0, {{0, 1}, {1, 2}, {0, 2}}, {}, {}};
    SSet2 filled = hollow;
    filled.triangles.push_back({1, 2, 0});
    SSet2 wedge{1, 0, {{0, 0}, {0, 0}}, {}, {}};
    auto h = pi1_abelianized(hollow), f = pi1_abelianized(filled), w = pi1_abelianized(wedge);
    double s = seconds_since(t);
    bool ok = h.free_rank == 1 && h.invariant_factors.empty() && f.free_rank == 0 && f.invariant_factors.empty() &&
              w.free_rank == 2 && w.invariant_factors.empty();
    std::ostringstream d;
    d << "hollow Z^" << h.free_rank << ", filled Z^" << f.free_rank << ", wedge Z^" << w.free_rank << "; " << s
      << " s (limit " << kPi1Limit << ")";
    return {ok && s < kPi1Limit, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    for (int i = 1; i + 1 < argc; ++i)
        if (!std::strcmp(argv[i], "--known-unattainable")) known.insert(std::atoi(argv[++i]));
    std::vector<std::function<Line()>> crit{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    int unexpected = 0;
    for (std::size_t i = 0; i < crit.size(); ++i) {
        int n = static_cast<int>(i) + 1;
        Line l;
        try {
            l = crit[i]();
        } catch (const std::exception& e) {
            l = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << n << ": " << (l.pass ? "PASS" : "FAIL") << " | " << l.detail;
        if (!l.pass && known.count(n)) std::cout << " [known unattainable, see README]";
        std::cout << "\n" << std::flush;
        if (!l.pass && !known.count(n)) ++unexpected;
    }
    // open question: do the two truncated presentations agree?
    FinSet c;
    for (int U = 2; U <= 4; ++U) {
        Group b(k1_presentation_baseline(c, U)), nn(k1_presentation_nenashev(c, U, harvest_3x3(c, U)));
        bool agree = b.free_rank() == nn.free_rank() && b.invariant_factors() == nn.invariant_factors();
        std::cout << "note: U=" << U << " baseline " << b.summary().dump() << " nenashev " << nn.summary().dump()
                  << (agree ? " agree" : " differ") << "\n";
    }
    return unexpected ? 1 : 0;
}
