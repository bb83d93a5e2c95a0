#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <numeric>
#include <random>

#include "cgwk/matroid.hpp"
#include "cgwk/presentation.hpp"
#include "cgwk/relations.hpp"

using namespace cgwk;

namespace {

long laplace(const std::vector<std::vector<long>>& m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    long d = 0;
    for (int j = 0; j < n; ++j) {
        std::vector<std::vector<long>> sub;
        for (int i = 1; i < n; ++i) {
            std::vector<long> row;
            for (int k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(row);
        }
        d += (j % 2 ? -1 : 1) * m[0][j] * laplace(sub);
    }
    return d;
}

// gcd of all k x k minors
long determinantal_divisor(const std::vector<std::vector<long>>& m, int k) {
    int r = static_cast<int>(m.size()), c = static_cast<int>(m[0].size());
    long g = 0;
    std::vector<int> rs, cs;
    std::function<void(int)> pick_c;
    std::function<void(int)> pick_r = [&](int from) {
        if (static_cast<int>(rs.size()) == k) {
            pick_c(0);
            return;
        }
        for (int i = from; i < r; ++i) {
            rs.push_back(i);
            pick_r(i + 1);
            rs.pop_back();
        }
    };
    pick_c = [&](int from) {
        if (static_cast<int>(cs.size()) == k) {
            std::vector<std::vector<long>> sub;
            for (int i : rs) {
                std::vector<long> row;
                for (int j : cs) row.push_back(m[i][j]);
                sub.push_back(row);
            }
            g = std::gcd(g, std::abs(laplace(sub)));
            return;
        }
        for (int j = from; j < c; ++j) {
            cs.push_back(j);
            pick_c(j + 1);
            cs.pop_back();
        }
    };
    pick_r(0);
    return g;
}

bool is_unit(const BigInt& d) { return d == 1 || d == -1; }

}  // namespace

TEST_CASE("Smith normal form round trip on random matrices") {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<int> dim(1, 5), val(-6, 6);
    for (int t = 0; t < 1000; ++t) {
        int r = dim(rng), c = dim(rng);
        std::vector<std::vector<long>> m(r, std::vector<long>(c));
        for (auto& row : m)
            for (auto& x : row) x = rng() % 3 == 0 ? 0 : val(rng);
        auto s = smith_normal_form(to_big(m));
        CHECK(mat_mul(mat_mul(s.U, to_big(m)), s.V) == s.D);
        CHECK(is_unit(determinant(s.U)));
        CHECK(is_unit(determinant(s.V)));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (i != j) CHECK(s.D[i][j] == 0);
        for (std::size_t i = 1; i < s.diagonal.size(); ++i) CHECK(s.diagonal[i] % s.diagonal[i - 1] == 0);
        CHECK(s.free_rank == c - static_cast<int>(s.diagonal.size()));
        if (t % 10 == 0 && r <= 4 && c <= 4) {
            BigInt prod = 1;
            for (std::size_t k = 0; k < s.diagonal.size(); ++k) {
                prod *= abs(s.diagonal[k]);
                CHECK(prod == determinantal_divisor(m, static_cast<int>(k) + 1));
            }
        }
    }
}

TEST_CASE("known groups") {
    Presentation p;
    for (auto g : {"x", "y", "z"}) p.add_generator(g);
    p.add_relation({{"x", 2}}, "r");
    p.add_relation({{"y", 4}, {"x", 2}}, "r");
    Group g(p);
    CHECK(g.free_rank() == 1);
    REQUIRE(g.invariant_factors().size() == 2);
    CHECK(g.invariant_factors()[0] == 2);
    CHECK(g.invariant_factors()[1] == 4);
    CHECK(g.is_zero(p.element({{"y", 4}})));
    CHECK_FALSE(g.is_zero(p.element({{"y", 2}})));
    CHECK_THROWS_AS(p.element({{"w", 1}}), UnknownGenerator);
    CHECK_FALSE(p.add_relation({{"x", 2}}, "dup"));
    CHECK_FALSE(p.add_relation({{"x", 0}}, "zero"));
}

TEST_CASE("K0 of FinSet is Z via cardinality") {
    FinSet c;
    auto p = k0_presentation(c, 4);
    Group g(p);
    CHECK(g.free_rank() == 1);
    CHECK(g.invariant_factors().empty());
    for (int n = 2; n <= 4; ++n)
        CHECK(g.is_zero(p.element({{object_label(c, range_obj(n)), 1}, {object_label(c, range_obj(1)), -n}})));
    CHECK_FALSE(g.is_zero(p.element({{object_label(c, range_obj(1)), 1}})));
    auto serial = k0_presentation(c, 4, false);
    CHECK(serial.relations == p.relations);

    auto p0 = k0_presentation(c, 0);
    CHECK(p0.generators.empty());
    CHECK(Group(p0).free_rank() == 0);
}

TEST_CASE("K0 of matroids on small ground sets") {
    MatroidCat c;
    auto p = k0_presentation(c, 3);
    Group g(p);
    CHECK(p.generators.size() == 14);
    // sums split into their summands
    for (auto& x : matroid_classes(1))
        for (auto& y : matroid_classes(2)) {
            auto s = c.direct_sum(x, y).obj;
            CHECK(g.is_zero(p.element({{object_label(c, s), 1}, {object_label(c, x), -1}, {object_label(c, y), -1}})));
        }
}

TEST_CASE("K1 baseline: sign audit, l(tau) of order two, diagonals vanish") {
    FinSet c;
    for (int U = 2; U <= 4; ++U) {
        CAPTURE(U);
        auto p = k1_presentation_baseline(c, U);
        CHECK(oracle_respects_relations(p).ok);
        Group g(p);
        auto tau = des_key(l_aut({1, 0}));
        CHECK_FALSE(g.is_zero(p.element({{tau, 1}})));
        CHECK(g.is_zero(p.element({{tau, 2}})));
        CHECK(g.is_zero(p.element({{des_key(l_pair({1, 0}, {1, 0})), 1}})));
        // 3-cycle: 3 l(sigma) = 0 and its sign is even
        if (U >= 3) {
            auto sigma = des_key(l_aut({1, 2, 0}));
            CHECK(generator_sign(sigma) == 0);
            CHECK(g.is_zero(p.element({{sigma, 3}})));
        }
    }
    auto p0 = k1_presentation_baseline(c, 0);
    CHECK(Group(p0).free_rank() == 0);
    CHECK(Group(p0).invariant_factors().empty());
}

TEST_CASE("K1 Nenashev: harvested diagrams, sign audit and A1/A2 membership") {
    FinSet c;
    for (int U = 2; U <= 4; ++U) {
        CAPTURE(U);
        HarvestCounts hc;
        auto diagrams = harvest_3x3(c, U, &hc);
        auto p = k1_presentation_nenashev(c, U, diagrams);
        CHECK(oracle_respects_relations(p).ok);
        Group g(p);
        auto tau = des_key(l_aut({1, 0}));
        CHECK_FALSE(g.is_zero(p.element({{tau, 1}})));
        CHECK(g.is_zero(p.element({{tau, 2}})));
    }
    // no diagrams: free on the non-diagonal generators
    auto p = k1_presentation_nenashev(c, 2, {});
    long nondiag = 0;
    for (auto& k : p.generators) nondiag += !is_diagonal(des_from_key(k));
    CHECK(Group(p).free_rank() == nondiag);

    auto a1 = a1_law(c, 3, 200, 0);
    CHECK(a1.ok());
    auto bad = build_3x3_direct_sum(l_aut({1, 0}), standard_edge(1));
    bad.u[0] = {};
    CHECK_THROWS_AS(k1_presentation_nenashev(c, 3, {bad}), InvalidDiagram);
}

TEST_CASE("sign audit catches a relation that breaks parity") {
    FinSet c;
    auto p = k1_presentation_baseline(c, 2);
    p.add_relation({{des_key(l_aut({1, 0})), 1}}, "planted");
    auto a = oracle_respects_relations(p);
    CHECK_FALSE(a.ok);
    CHECK(a.to_json(p)["violation"]["tag"] == "planted");
}

TEST_CASE("corollary identities at 3") {
    FinSet c;
    auto r = corollary_identities(c, 3);
    CAPTURE(r.to_json().dump());
    CHECK(r.ok());
    CHECK(r.skipped == 0);
}

TEST_CASE("pi1 of small 2-truncated simplicial sets") {
    SSet2 hollow{3, 0, {{0, 1}, {1, 2}, {0, 2}}, {}, {}};
    auto h = pi1_abelianized(hollow);
    CHECK(h.free_rank == 1);
    CHECK(h.invariant_factors.empty());

    SSet2 filled = hollow;
    filled.triangles.push_back({1, 2, 0});  // d0 = 1->2, d1 = 0->2, d2 = 0->1
    auto f = pi1_abelianized(filled);
    CHECK(f.free_rank == 0);
    CHECK(f.invariant_factors.empty());

    SSet2 wedge{1, 0, {{0, 0}, {0, 0}}, {}, {}};
    CHECK(pi1_abelianized(wedge).free_rank == 2);

    SSet2 degenerate{1, 0, {{0, 0}}, {}, {0}};
    CHECK(pi1_abelianized(degenerate).free_rank == 0);

    // a loop whose square bounds: Z/2
    SSet2 rp2{1, 0, {{0, 0}, {0, 0}}, {{0, 1, 0}}, {1}};
    auto r = pi1_abelianized(rp2);
    CHECK(r.free_rank == 0);
    REQUIRE(r.invariant_factors.size() == 1);
    CHECK(r.invariant_factors[0] == 2);

    SSet2 split{2, 0, {}, {}, {}};
    CHECK_THROWS_AS(pi1_abelianized(split), Disconnected);
}
