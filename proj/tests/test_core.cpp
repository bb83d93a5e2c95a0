#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cgwk/core.hpp"
#include "cgwk/finset.hpp"
#include "cgwk/matroid.hpp"

using namespace cgwk;

namespace {

long falling(int b, int a) {
    long r = 1;
    for (int i = 0; i < a; ++i) r *= b - i;
    return r;
}

}  // namespace

TEST_CASE("table helpers against counting formulas") {
    for (int b = 0; b <= 5; ++b)
        for (int a = 0; a <= b; ++a) {
            auto inj = all_injections(a, b);
            CHECK(static_cast<long>(inj.size()) == falling(b, a));
            for (auto& t : inj) CHECK(is_injective(t, b));
        }
    CHECK(all_functions(2, 3).size() == 9);
    CHECK(all_permutations(4).size() == 24);
    for (auto& p : all_permutations(4)) {
        CHECK(compose_tables(p, inverse_table(p)) == identity_table(4));
        CHECK(is_bijective(p, 4));
    }
    Table s{2, 0}, t{0, 2};
    auto x = solve_post(s, t);
    REQUIRE(x);
    CHECK(compose_tables(s, *x) == t);
    CHECK_FALSE(solve_post(Table{0}, Table{1}));
}

TEST_CASE("verify_axioms passes on FinSet and skips pCGW axioms on matroids") {
    CategoryBudget b;
    b.maxObjectSize = 3;
    auto rep = verify_axioms(FinSet{}, b);
    CHECK_FALSE(rep.any_fail());
    CHECK_FALSE(rep.any_skipped());
    for (const char* k : {"Z", "I", "M", "K", "A", "PQ", "DS"}) CHECK(rep.axioms.count(k) == 1);

    auto mrep = verify_axioms(MatroidCat{}, b);
    CHECK_FALSE(mrep.any_fail());
    CHECK(mrep.any_skipped());
    CHECK(mrep.axioms.at("A").verdict == Verdict::Skipped);
}

TEST_CASE("every cataloged mutant is flagged with a witness") {
    CategoryBudget b;
    b.maxObjectSize = 3;
    auto cat = mutant_catalog();
    CHECK(cat.size() == 5);
    for (auto m : cat) {
        CAPTURE(mutant_name(m));
        auto rep = verify_axioms(FinSet(m), b);
        CHECK(rep.any_fail());
        bool witnessed = false;
        for (auto& [k, r] : rep.axioms)
            if (r.verdict == Verdict::Fail) witnessed |= !r.note.empty();
        CHECK(witnessed);
        CHECK(parse_mutant(mutant_name(m)) == m);
    }
    CHECK_FALSE(parse_mutant("no-such-mutant"));
}

TEST_CASE("quotient filtrations over FinSet") {
    FinSet c;
    auto A = range_obj(1), B = range_obj(2), C = range_obj(4);
    FMor f1{Kind::M, A, B, {1}}, g1{Kind::M, B, C, {3, 0}};
    auto d = quotient_filtration(c, f1, g1);
    CHECK(check_filtration(c, d));
    CHECK(d.P10.size() == 1);
    CHECK(d.P20.size() == 3);
    CHECK(d.P21.size() == 2);
    // f1 then an iso: the second quotient is empty
    FMor iso{Kind::M, B, B, {1, 0}};
    auto d2 = quotient_filtration(c, f1, iso);
    CHECK(check_filtration(c, d2));
    CHECK(d2.P21.size() == 0);
}

TEST_CASE("composition of exact squares") {
    FinSet c;
    auto O = c.zero();
    auto sq = c.cokernel(FMor{Kind::M, range_obj(1), range_obj(3), {2}});
    CHECK(c.is_distinguished(sq));
    CHECK(sq.tr.size() == 2);
    auto k = c.kernel(sq.right);
    CHECK(c.is_distinguished(k));
    CHECK(k.bl.size() == 1);
    CHECK(k.tl == O);
}
