#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cgwk/core.hpp"
#include "cgwk/finset.hpp"

namespace cgwk {

struct QuotientMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAdmissible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotComposable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidTheta : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- flag simplices of S.C ----
//
// Grid M[i][j], 0 <= i <= j <= n, M[i][i] = O.
// h[i][j]: M[i][j] -> M[i][j+1] (j < n), v[i][j]: M[i+1][j] -o M[i][j] (i+1 <= j).

template <class C>
struct FlagSimplex {
    using Obj = ObjOf<C>;
    using M = Mor<Obj>;
    int n = 0;
    std::vector<std::vector<Obj>> obj;
    std::vector<std::vector<M>> h, v;

    bool operator==(const FlagSimplex&) const = default;

    const Obj& at(int i, int j) const { return obj[i][j]; }

    // squares, for i+1 <= j <= n-1
    DistSquare<Obj> square(int i, int j) const {
        return {obj[i + 1][j], obj[i + 1][j + 1], obj[i][j], obj[i][j + 1], h[i + 1][j], h[i][j], v[i][j], v[i][j + 1]};
    }
};

template <class C>
FlagSimplex<C> flag_alloc(int n) {
    FlagSimplex<C> f;
    f.n = n;
    f.obj.assign(n + 1, std::vector<ObjOf<C>>(n + 1));
    f.h.assign(n + 1, std::vector<Mor<ObjOf<C>>>(n + 1));
    f.v.assign(n + 1, std::vector<Mor<ObjOf<C>>>(n + 1));
    return f;
}

// generic reindexing along a monotone map idx: [m] -> [n]
template <class C>
FlagSimplex<C> flag_reindex(const C& c, const FlagSimplex<C>& f, const std::vector<int>& idx) {
    int m = static_cast<int>(idx.size()) - 1;
    auto r = flag_alloc<C>(m);
    for (int a = 0; a <= m; ++a)
        for (int b = a; b <= m; ++b) r.obj[a][b] = f.obj[idx[a]][idx[b]];
    for (int a = 0; a <= m; ++a)
        for (int b = a; b < m; ++b) {
            int ia = idx[a];
            auto mor = identity(c, Kind::M, f.obj[ia][idx[b]]);
            for (int t = idx[b]; t < idx[b + 1]; ++t) mor = compose(c, f.h[ia][t], mor);
            r.h[a][b] = mor;
        }
    for (int a = 0; a + 1 <= m; ++a)
        for (int b = a + 1; b <= m; ++b) {
            int ib = idx[b];
            auto mor = identity(c, Kind::E, f.obj[idx[a + 1]][ib]);
            for (int t = idx[a + 1] - 1; t >= idx[a]; --t) mor = compose(c, f.v[t][ib], mor);
            r.v[a][b] = mor;
        }
    return r;
}

inline std::vector<int> face_index(int n, int k) {
    std::vector<int> idx;
    for (int i = 0; i <= n; ++i)
        if (i != k) idx.push_back(i);
    return idx;
}

inline std::vector<int> degeneracy_index(int n, int k) {
    std::vector<int> idx;
    for (int i = 0; i <= n; ++i) {
        idx.push_back(i);
        if (i == k) idx.push_back(i);
    }
    return idx;
}

template <class C>
FlagSimplex<C> flag_face(const C& c, const FlagSimplex<C>& f, int k) {
    return flag_reindex(c, f, face_index(f.n, k));
}

template <class C>
FlagSimplex<C> flag_degeneracy(const C& c, const FlagSimplex<C>& f, int k) {
    return flag_reindex(c, f, degeneracy_index(f.n, k));
}

template <class C>
bool flag_valid(const C& c, const FlagSimplex<C>& f) {
    auto O = c.zero();
    for (int i = 0; i <= f.n; ++i)
        if (!(f.obj[i][i] == O)) return false;
    for (int i = 0; i <= f.n; ++i)
        for (int j = i; j < f.n; ++j) {
            auto& m = f.h[i][j];
            if (m.kind != Kind::M || !(m.src == f.obj[i][j]) || !(m.dst == f.obj[i][j + 1]) ||
                !c.is_member(Kind::M, m.src, m.dst, m.amb))
                return false;
        }
    for (int i = 0; i + 1 <= f.n; ++i)
        for (int j = i + 1; j <= f.n; ++j) {
            auto& e = f.v[i][j];
            if (e.kind != Kind::E || !(e.src == f.obj[i + 1][j]) || !(e.dst == f.obj[i][j]) ||
                !c.is_member(Kind::E, e.src, e.dst, e.amb))
                return false;
        }
    for (int i = 0; i + 1 <= f.n; ++i)
        for (int j = i + 1; j < f.n; ++j)
            if (!c.is_distinguished(f.square(i, j))) return false;
    return true;
}

// the flag O -> M1 -> ... -> Mn with canonical quotients
template <class C>
FlagSimplex<C> make_flag(const C& c, const std::vector<ObjOf<C>>& objs, const std::vector<Mor<ObjOf<C>>>& maps) {
    int n = static_cast<int>(objs.size());
    auto f = flag_alloc<C>(n);
    auto O = c.zero();
    for (int i = 0; i <= n; ++i) f.obj[i][i] = O;
    for (int j = 1; j <= n; ++j) f.obj[0][j] = objs[j - 1];
    if (n >= 1) f.h[0][0] = zero_to(c, Kind::M, objs[0]);
    for (int j = 1; j < n; ++j) f.h[0][j] = maps[j - 1];
    for (int i = 0; i + 1 <= n; ++i) {
        // row i+1 = row i divided by M[i][i+1]
        auto comp = identity(c, Kind::M, f.obj[i][i + 1]);
        for (int j = i + 1; j <= n; ++j) {
            if (j > i + 1) comp = compose(c, f.h[i][j - 1], comp);
            auto q = formal_quotient(c, comp);
            f.obj[i + 1][j] = q.tr;
            f.v[i][j] = q.right;
        }
        f.obj[i + 1][i + 1] = O;
        if (i + 1 < n) f.h[i + 1][i + 1] = zero_to(c, Kind::M, f.obj[i + 1][i + 2]);
        for (int j = i + 2; j < n; ++j) {
            auto x = solve_m_side(c, f.v[i][j], f.v[i][j + 1], f.h[i][j]);
            if (!x) throw ContractViolation("make_flag: quotient map does not exist");
            f.h[i + 1][j] = *x;
        }
    }
    return f;
}

// ---- G-construction ----

template <class C>
struct GSimplex {
    using Obj = ObjOf<C>;
    using M = Mor<Obj>;
    struct Row {
        std::vector<Obj> P;  // P[0..n]
        std::vector<M> m;    // m[k]: P[k] -> P[k+1]
        std::vector<M> e;    // e[j]: quot.M[0][j] -o P[j]
        bool operator==(const Row&) const = default;
    };
    int n = 0;
    FlagSimplex<C> quot;
    std::array<Row, 2> rows;
    bool operator==(const GSimplex&) const = default;

    std::pair<Obj, Obj> vertex(int k) const { return {rows[0].P[k], rows[1].P[k]}; }
};

template <class C>
FlagSimplex<C> g_flag(const C& c, const GSimplex<C>& g, int r) {
    int n = g.n;
    auto f = flag_alloc<C>(n + 1);
    const auto& row = g.rows[r];
    f.obj[0][0] = c.zero();
    for (int j = 1; j <= n + 1; ++j) f.obj[0][j] = row.P[j - 1];
    for (int i = 1; i <= n + 1; ++i)
        for (int j = i; j <= n + 1; ++j) f.obj[i][j] = g.quot.obj[i - 1][j - 1];
    f.h[0][0] = zero_to(c, Kind::M, row.P[0]);
    for (int j = 1; j <= n; ++j) f.h[0][j] = row.m[j - 1];
    for (int i = 1; i <= n + 1; ++i)
        for (int j = i; j <= n; ++j) f.h[i][j] = g.quot.h[i - 1][j - 1];
    for (int j = 1; j <= n + 1; ++j) f.v[0][j] = row.e[j - 1];
    for (int i = 1; i + 1 <= n + 1; ++i)
        for (int j = i + 1; j <= n + 1; ++j) f.v[i][j] = g.quot.v[i - 1][j - 1];
    return f;
}

template <class C>
GSimplex<C> g_pack(const C& c, const FlagSimplex<C>& f0, const FlagSimplex<C>& f1) {
    auto q0 = flag_face(c, f0, 0);
    if (!(q0 == flag_face(c, f1, 0))) throw QuotientMismatch("flags do not share their quotient data");
    GSimplex<C> g;
    g.n = f0.n - 1;
    g.quot = q0;
    const FlagSimplex<C>* fs[2] = {&f0, &f1};
    for (int r = 0; r < 2; ++r) {
        auto& row = g.rows[r];
        for (int j = 1; j <= f0.n; ++j) {
            row.P.push_back(fs[r]->obj[0][j]);
            row.e.push_back(fs[r]->v[0][j]);
        }
        for (int j = 1; j < f0.n; ++j) row.m.push_back(fs[r]->h[0][j]);
    }
    return g;
}

template <class C>
GSimplex<C> g_face(const C& c, const GSimplex<C>& g, int k) {
    return g_pack(c, flag_face(c, g_flag(c, g, 0), k + 1), flag_face(c, g_flag(c, g, 1), k + 1));
}

template <class C>
GSimplex<C> g_degeneracy(const C& c, const GSimplex<C>& g, int k) {
    return g_pack(c, flag_degeneracy(c, g_flag(c, g, 0), k + 1), flag_degeneracy(c, g_flag(c, g, 1), k + 1));
}

template <class C>
bool g_valid(const C& c, const GSimplex<C>& g) {
    try {
        auto f0 = g_flag(c, g, 0), f1 = g_flag(c, g, 1);
        return flag_valid(c, f0) && flag_valid(c, f1) && flag_face(c, f0, 0) == g.quot &&
               flag_face(c, f1, 0) == g.quot;
    } catch (const std::exception&) {
        return false;
    }
}

template <class C>
GSimplex<C> g_vertex(const C& c, const ObjOf<C>& p, const ObjOf<C>& pp) {
    GSimplex<C> g;
    g.quot = flag_alloc<C>(0);
    g.quot.obj[0][0] = c.zero();
    g.rows[0] = {{p}, {}, {zero_to(c, Kind::E, p)}};
    g.rows[1] = {{pp}, {}, {zero_to(c, Kind::E, pp)}};
    return g;
}

// ---- the FinSet specializations used by K1 ----

using FFlag = FlagSimplex<FinSet>;
using FG = GSimplex<FinSet>;

// a double exact square as the edge (A,A) -> (B,B) with quotient C
FG des_to_edge(const FinSet& c, const FDes& d);
// the double exact square of an edge with equal endpoints in both rows
FDes edge_to_des(const FG& e);
bool edge_is_des(const FG& e);

// a general edge: row data (m, e) over a shared quotient object q
FG make_edge(const FinSet& c, const FinSetObj& q, const FMor& m0, const FMor& e0, const FMor& m1, const FMor& e1);

std::vector<FFlag> enumerate_s_simplices(const FinSet& c, int n, int max_size);
std::vector<FG> enumerate_g_edges(const FinSet& c, int max_size);

// normalized 2-simplices between diagonal vertices, one per isomorphism class
struct TwoSimplexRecord {
    FG simplex;
    std::array<std::string, 3> faces;  // keys of d0, d1, d2
};
std::vector<TwoSimplexRecord> enumerate_g_two_simplices(const FinSet& c, int max_size);
std::vector<TwoSimplexRecord> enumerate_g_two_simplices_serial(const FinSet& c, int max_size);

// componentwise sum of flags / G-simplices
FFlag flag_sum(const FinSet& c, const FFlag& x, const FFlag& y);
FG h_add(const FinSet& c, const FG& x, const FG& y);
FDes h_add_edges(const FDes& x, const FDes& y);

// distinguished square on quotients of two flag 2-simplices (direct sums part v)
FSquare flag_sum_square(const FinSet& c, const FFlag& x, const FFlag& y);

// ---- admissible triples ----

struct AdmissibleResult {
    FDes lT;
    std::array<FiltrationDiagram<FinSetObj>, 2> diagrams;
};

// staircase completion with prescribed quotient maps; j1 and j2 solved
FiltrationDiagram<FinSetObj> filtration_with(const FinSet& c, const FMor& f1, const FMor& g1, const FMor& f2,
                                             const FMor& g2, const FMor& h2);

AdmissibleResult admissible_triple(const FinSet& c, const FG& e0, const FG& e1, const FG& e2);

struct TripleRecord {
    FDes e0, e1, e2, l2;
};
std::vector<TripleRecord> admissible_sweep(const FinSet& c, int max_size);
std::vector<TripleRecord> admissible_sweep_serial(const FinSet& c, int max_size);

// the key example: A = {0}, B = A + {1,2}, second filtration twisted by alpha on {1,2}
AdmissibleResult key_example(const FinSet& c, const Table& alpha);

// ---- optimal 3x3 diagrams ----

struct Optimal3x3 {
    std::string kind;
    FinSetObj X[3][3];
    FinSetObj Z;
    // per version k in {0,1}
    Table f[2][3], g[2][3], h[2][3], j[2][3];
    Table u[2], v[2], w[2];

    FDes row(int i) const;
    FDes col(int i) const;
    std::vector<FiltrationDiagram<FinSetObj>> p_diagrams(const FinSet& c, int k) const;
};

Optimal3x3 build_3x3_direct_sum(const FDes& f, const FDes& g);
Optimal3x3 build_3x3_composition(const FinSet& c, const FDes& f, const FDes& g);
Optimal3x3 build_3x3_corollary(const Table& alpha);
// empty on success, otherwise the first failing check
std::string validate_3x3(const FinSet& c, const Optimal3x3& d);
// coefficients of l0 + l2 - l1 - l^0 - l^2 + l^1 by class key
std::vector<std::pair<std::string, int>> n2_terms(const Optimal3x3& d);

// ---- Sherman triples and loops ----

struct ShermanTriple {
    Table alpha;   // A -> B
    Table delta;   // C -o B, complementary to alpha
    Table beta;    // A' -> B'
    Table gamma;   // C' -o B'
    Table theta;   // A+C+B' -> A'+C'+B
    int a() const { return static_cast<int>(alpha.size()); }
    int c() const { return static_cast<int>(delta.size()); }
    int b() const { return a() + c(); }
    int ap() const { return static_cast<int>(beta.size()); }
    int cp() const { return static_cast<int>(gamma.size()); }
    int bp() const { return ap() + cp(); }
};

struct LoopWord {
    std::vector<std::pair<FG, int>> edges;  // orientation +1 / -1
};

void check_triple(const FinSet& c, const ShermanTriple& t);
LoopWord sherman_loop(const FinSet& c, const ShermanTriple& t);
bool loop_closed(const FinSet& c, const LoopWord& w);
FDes sherman_to_dexsq(const FinSet& c, const ShermanTriple& t);

// ---- permutation homotopy ----

struct HomotopyReport {
    long outputs = 0;
    long identities = 0;
    std::string failure;  // empty when everything checks
    FG start, end;        // h at beta = 1 and beta = 0 on the pair itself
};

// h((a1, a2), beta) for a pair sharing quotient data; i = last index with beta = 0
FG permutation_h(const FinSet& c, const FG& a1, const FG& a2, int i);
HomotopyReport permutation_homotopy(const FinSet& c, const FG& x1, const FG& x2);

// ---- pushouts create 2-simplices ----

struct PushoutSimplices {
    FG upper, lower;  // the two 2-simplices
};
// for a span of edges out of a common vertex
PushoutSimplices pushout_two_simplices(const FinSet& c, const FG& e1, const FG& e2);

}  // namespace cgwk
