#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "cgwk/finset.hpp"
#include "cgwk/relations.hpp"

using namespace cgwk;

namespace {

int inversion_parity(const Table& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    return inv & 1;
}

// B -> B sending f(a) to f'(a) and g(c) to g'(c)
Table transfer(const FDes& d) {
    Table s(d.B.size(), -1);
    for (std::size_t i = 0; i < d.f.size(); ++i) s[d.f[i]] = d.fp[i];
    for (std::size_t i = 0; i < d.g.size(); ++i) s[d.g[i]] = d.gp[i];
    return s;
}

// classes of (sigma, colouring) up to conjugation, counted by brute force
long brute_classes(int n) {
    std::set<std::pair<Table, std::vector<int>>> seen;
    auto perms = all_permutations(n);
    for (auto& s : perms)
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::pair<Table, std::vector<int>> best;
            bool first = true;
            for (auto& r : perms) {
                Table t(n);
                std::vector<int> col(n);
                for (int i = 0; i < n; ++i) {
                    t[r[i]] = r[s[i]];
                    col[r[i]] = (mask >> i) & 1;
                }
                std::pair<Table, std::vector<int>> cand{t, col};
                if (first || cand < best) best = cand;
                first = false;
            }
            seen.insert(best);
        }
    return static_cast<long>(seen.size());
}

}  // namespace

TEST_CASE("pushout reading agrees with pullback plus union on all spans") {
    FinSet c;
    auto objs = c.object_classes(3);
    long checked = 0;
    for (auto& A : objs)
        for (auto& B : objs)
            for (auto& C : objs)
                for (auto& D : objs)
                    for (auto& top : c.morphisms(Kind::M, A, C))
                        for (auto& bot : c.morphisms(Kind::M, B, D))
                            for (auto& l : c.morphisms(Kind::E, A, B))
                                for (auto& r : c.morphisms(Kind::E, C, D)) {
                                    FSquare s{A, C, B, D, {Kind::M, A, C, top}, {Kind::M, B, D, bot},
                                              {Kind::E, A, B, l}, {Kind::E, C, D, r}};
                                    CHECK(pushout_check(s) == pullback_union_check(s));
                                    ++checked;
                                }
    CHECK(checked > 1000);
}

TEST_CASE("restricted pushout has |B| + |C| - |A| elements") {
    FinSet c;
    auto objs = c.objects(3);
    for (auto& A : objs)
        for (auto& B : objs)
            for (auto& C : objs)
                for (auto& f : c.morphisms(Kind::M, A, B))
                    for (auto& g : c.morphisms(Kind::M, A, C)) {
                        auto po = c.restricted_pushout({Kind::M, A, C, g}, {Kind::M, A, B, f});
                        CHECK(po.obj.size() == B.size() + C.size() - A.size());
                        CHECK(compose_tables(po.inB.amb, f) == compose_tables(po.inC.amb, g));
                    }
}

TEST_CASE("sign class agrees with inversion parity of the transfer bijection") {
    std::mt19937_64 rng(7);
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k < 200; ++k) {
            auto d = random_des(rng, n);
            CHECK(sign_class(d) == inversion_parity(transfer(d)));
        }
    CHECK(sign_class(l_aut({1, 0})) == 1);
    CHECK(sign_class(l_aut({1, 2, 0})) == 0);
    CHECK(sign_class(standard_edge(3)) == 0);
}

TEST_CASE("double exact square classes match a brute-force orbit count") {
    auto keys = des_classes(4);
    long cumulative = 0;
    for (int n = 0; n <= 4; ++n) cumulative += brute_classes(n);
    CHECK(static_cast<long>(keys.size()) == cumulative);
    CHECK(des_classes(5).size() == 131);
    for (auto& k : keys) {
        auto d = des_from_key(k);
        CHECK(des_key(d) == k);
        CHECK(des_valid(FinSet{}, d));
    }
}

TEST_CASE("keys are invariant under relabeling") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 300; ++k) {
        int n = std::uniform_int_distribution<int>(0, 5)(rng);
        auto d = random_des(rng, n);
        auto r = random_permutation(rng, n);
        FDes e = d;
        e.f = compose_tables(r, d.f);
        e.g = compose_tables(r, d.g);
        e.fp = compose_tables(r, d.fp);
        e.gp = compose_tables(r, d.gp);
        CHECK(des_key(e) == des_key(d));
    }
}

TEST_CASE("diagonal squares and inverses") {
    auto d = l_pair({0, 1}, {0, 1});
    CHECK(is_diagonal(d));
    CHECK_FALSE(is_diagonal(l_aut({1, 0})));
    auto inv = dexsq_inverse(l_aut({1, 2, 0}));
    CHECK(des_key(inv) == des_key(l_aut({2, 0, 1})));
}

TEST_CASE("adding an object to an exact square") {
    FinSet c;
    auto phi = exact_square(c, 1, 3, {2}, {0, 1});
    auto r = add_object_to_square(c, phi, range_obj(2));
    CHECK(r.squares.size() == 4);
    for (auto& s : r.squares) CHECK(c.is_distinguished(s));
    for (auto& s : r.permuted) CHECK(c.is_distinguished(s));
    CHECK(r.quotient_iso.size() == 4);
}

TEST_CASE("direct sum of identity squares is the identity") {
    FinSet c;
    auto s = direct_sum_of_squares(c, exact_square(c, 2, 2, {0, 1}, {}), exact_square(c, 1, 1, {0}, {}));
    CHECK(s.bottom.amb == identity_table(3));
    CHECK(s.tr.size() == 0);
    CHECK(c.is_distinguished(s));
}
