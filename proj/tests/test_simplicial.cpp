#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cgwk/relations.hpp"
#include "cgwk/simplicial.hpp"

using namespace cgwk;

namespace {

long binom(int n, int k) {
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

long falling(int b, int a) {
    long r = 1;
    for (int i = 0; i < a; ++i) r *= b - i;
    return r;
}

void require_ok(const SuiteResult& r) {
    CAPTURE(r.to_json().dump());
    CHECK(r.cases > 0);
    CHECK(r.ok());
    CHECK(r.skipped == 0);
}

}  // namespace

TEST_CASE("flag simplex counts over all subsets") {
    FinSet c;
    for (int U = 0; U <= 3; ++U) {
        CHECK(enumerate_s_simplices(c, 0, U).size() == 1);
        CHECK(static_cast<long>(enumerate_s_simplices(c, 1, U).size()) == (1L << U));
        long two = 0;
        for (int a = 0; a <= U; ++a)
            for (int b = a; b <= U; ++b) two += binom(U, a) * binom(U, b) * falling(b, a);
        CHECK(static_cast<long>(enumerate_s_simplices(c, 2, U).size()) == two);
    }
    CHECK_THROWS_AS(enumerate_s_simplices(c, 4, 2), BudgetExhausted);
}

TEST_CASE("simplicial identities exhaustively at 3 and sampled at 4") {
    FinSet c;
    require_ok(simplicial_identities_suite(c, {3, true, 0, 0, true}));
    require_ok(simplicial_identities_suite(c, {4, false, 500, 0, true}));
}

TEST_CASE("two-simplex enumeration: parallel equals serial") {
    FinSet c;
    auto a = enumerate_g_two_simplices(c, 3);
    auto b = enumerate_g_two_simplices_serial(c, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].faces == b[i].faces);
    auto s1 = admissible_sweep(c, 3), s2 = admissible_sweep_serial(c, 3);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i].l2 == s2[i].l2);
}

TEST_CASE("key example: sign of l2 follows alpha") {
    FinSet c;
    CHECK(sign_class(key_example(c, {1, 0}).lT) == 1);
    CHECK(sign_class(key_example(c, {0, 1}).lT) == 0);
    require_ok(key_example_suite(c));
}

TEST_CASE("appendix constructions") {
    FinSet c;
    for (bool ex : {true, false}) {
        SuiteConfig cfg{ex ? 3 : 4, ex, 500, 0, true};
        CAPTURE(ex);
        require_ok(quotient_filtration_suite(c, cfg));
        require_ok(add_object_suite(c, cfg));
        require_ok(direct_sum_squares_suite(c, cfg));
        require_ok(build_3x3_suite(c, cfg));
        require_ok(permutation_homotopy_suite(c, cfg));
        require_ok(pushout_simplices_suite(c, cfg));
        require_ok(sherman_suite(c, cfg));
    }
}

TEST_CASE("construction errors") {
    FinSet c;
    auto e1 = des_to_edge(c, standard_edge(1));
    auto e2 = des_to_edge(c, standard_edge(2));
    CHECK_THROWS_AS(permutation_homotopy(c, e1, e2), QuotientMismatch);
    CHECK_THROWS_AS(pushout_two_simplices(c, e1, des_to_edge(c, l_aut({0}))), EdgeMismatch);
    ShermanTriple bad{{0}, {}, {}, {}, {0, 0}};
    CHECK_THROWS_AS(check_triple(c, bad), InvalidTheta);
}

TEST_CASE("broken instances are caught by the suites") {
    SuiteConfig cfg{3, true, 0, 0, true};
    FinSet strict(Mutant::NonClosed);
    CHECK_FALSE(quotient_filtration_suite(strict, cfg).ok());
    CHECK_FALSE(build_3x3_suite(strict, cfg).ok());
    CHECK_FALSE(simplicial_identities_suite(strict, cfg).ok());
    FinSet wrong(Mutant::WrongQuotient);
    CHECK_FALSE(add_object_suite(wrong, cfg).ok());
    CHECK_FALSE(permutation_homotopy_suite(wrong, cfg).ok());
    CHECK_FALSE(pushout_simplices_suite(wrong, cfg).ok());
}

TEST_CASE("3x3 diagrams of each kind validate") {
    FinSet c;
    auto d = build_3x3_direct_sum(l_aut({1, 0}), standard_edge(1));
    CHECK(validate_3x3(c, d).empty());
    auto k = build_3x3_composition(c, standard_edge(2), l_aut({1, 0}));
    CHECK(validate_3x3(c, k).empty());
    CHECK(validate_3x3(c, build_3x3_corollary({2, 0, 1})).empty());
}
