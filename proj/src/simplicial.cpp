#include "cgwk/simplicial.hpp"

#include "cgwk/parallel.hpp"

namespace cgwk {

namespace {

FMor mm(const FinSetObj& a, const FinSetObj& b, Table t) { return {Kind::M, a, b, std::move(t)}; }
FMor me(const FinSetObj& a, const FinSetObj& b, Table t) { return {Kind::E, a, b, std::move(t)}; }

FinSetObj ro(int n) { return range_obj(n); }

Table concat(const Table& x, const Table& y) {
    Table r(x);
    r.insert(r.end(), y.begin(), y.end());
    return r;
}

}  // namespace

// ---- edges ----

FG make_edge(const FinSet& c, const FinSetObj& q, const FMor& m0, const FMor& e0, const FMor& m1, const FMor& e1) {
    FG g;
    g.n = 1;
    g.quot = make_flag(c, {q}, {});
    g.rows[0] = {{m0.src, m0.dst}, {m0}, {zero_to(c, Kind::E, m0.src), e0}};
    g.rows[1] = {{m1.src, m1.dst}, {m1}, {zero_to(c, Kind::E, m1.src), e1}};
    return g;
}

FG des_to_edge(const FinSet& c, const FDes& d) {
    return make_edge(c, d.C, mm(d.A, d.B, d.f), me(d.C, d.B, d.g), mm(d.A, d.B, d.fp), me(d.C, d.B, d.gp));
}

bool edge_is_des(const FG& e) {
    return e.n == 1 && e.rows[0].P == e.rows[1].P;
}

FDes edge_to_des(const FG& e) {
    if (!edge_is_des(e)) throw std::invalid_argument("edge endpoints differ between rows");
    return {FinSetObj{},         e.quot.obj[0][1],    e.rows[0].P[0],      e.rows[0].P[1],
            e.rows[0].m[0].amb,  e.rows[0].e[1].amb,  e.rows[1].m[0].amb,  e.rows[1].e[1].amb};
}

// ---- enumeration ----

std::vector<FFlag> enumerate_s_simplices(const FinSet& c, int n, int max_size) {
    if (n < 0 || n > 3) throw BudgetExhausted("dimension cap is 3");
    auto objs = c.objects(max_size);
    std::vector<FFlag> out;
    if (n == 0) {
        out.push_back(make_flag(c, {}, {}));
        return out;
    }
    std::vector<FinSetObj> chain;
    std::vector<FMor> maps;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(chain.size()) == n) {
            out.push_back(make_flag(c, chain, maps));
            return;
        }
        for (auto& x : objs) {
            if (chain.empty()) {
                chain.push_back(x);
                self(self);
                chain.pop_back();
                continue;
            }
            for (auto& t : c.morphisms(Kind::M, chain.back(), x)) {
                maps.push_back(mm(chain.back(), x, t));
                chain.push_back(x);
                self(self);
                chain.pop_back();
                maps.pop_back();
            }
        }
    };
    rec(rec);
    return out;
}

std::vector<FG> enumerate_g_edges(const FinSet& c, int max_size) {
    std::set<FDiagram> seen;
    std::vector<FG> out;
    for (int p1 = 0; p1 <= max_size; ++p1)
        for (int p0 = 0; p0 <= p1; ++p0)
            for (int p1p = p1 - p0; p1p <= max_size; ++p1p) {
                int q = p1 - p0, p0p = p1p - q;
                auto Q = ro(q);
                auto rows = [&](int a, int b) {
                    std::vector<std::pair<Table, Table>> r;
                    for (auto& m : all_injections(a, b)) {
                        std::vector<char> hit(b, 0);
                        for (int v : m) hit[v] = 1;
                        Table comp;
                        for (int i = 0; i < b; ++i)
                            if (!hit[i]) comp.push_back(i);
                        for (auto& p : all_permutations(q)) r.push_back({m, compose_tables(comp, p)});
                    }
                    return r;
                };
                auto r0 = rows(p0, p1), r1 = rows(p0p, p1p);
                for (auto& [m0, e0] : r0)
                    for (auto& [m1, e1] : r1) {
                        FDiagram d{{ro(p0), ro(p1), ro(p0p), ro(p1p), Q},
                                   {{0, 1, m0}, {4, 1, e0}, {2, 3, m1}, {4, 3, e1}}};
                        auto cf = canonical_form(d);
                        if (!seen.insert(cf).second) continue;
                        out.push_back(make_edge(c, Q, mm(ro(p0), ro(p1), cf.arrows[0].t),
                                                me(Q, ro(p1), cf.arrows[1].t), mm(ro(p0p), ro(p1p), cf.arrows[2].t),
                                                me(Q, ro(p1p), cf.arrows[3].t)));
                    }
            }
    return out;
}

namespace {

struct TwoItem {
    int a, b, d;
    std::size_t pb, pd;
};

std::vector<TwoItem> two_items(int max_size, std::vector<std::vector<Table>>& perms) {
    perms.clear();
    for (int n = 0; n <= max_size; ++n) perms.push_back(all_permutations(n));
    std::vector<TwoItem> items;
    for (int d = 0; d <= max_size; ++d)
        for (int b = 0; b <= d; ++b)
            for (int a = 0; a <= b; ++a)
                for (std::size_t pb = 0; pb < perms[b].size(); ++pb)
                    for (std::size_t pd = 0; pd < perms[d].size(); ++pd) items.push_back({a, b, d, pb, pd});
    return items;
}

TwoSimplexRecord two_simplex(const FinSet& c, const TwoItem& it, const Table& phiB, const Table& phiD) {
    int a = it.a, b = it.b, d = it.d;
    auto A = ro(a), B = ro(b), D = ro(d);
    auto m0 = mm(A, B, first_block(a));
    auto m1 = mm(B, D, first_block(b));
    auto q01 = c.cokernel(m0);
    auto q02 = c.cokernel(compose(c, m1, m0));
    auto X = q01.tr, W = q02.tr;
    auto hx = mm(X, W, first_block(b - a));
    FG g;
    g.n = 2;
    g.quot = make_flag(c, {X, W}, {hx});
    g.rows[0] = {{A, B, D}, {m0, m1}, {zero_to(c, Kind::E, A), q01.right, q02.right}};
    Table psi(d - a);
    for (int k = 0; k < d - a; ++k) psi[k] = k < b - a ? phiB[a + k] : a + k;
    Table phiDb(phiD.begin(), phiD.begin() + b);
    g.rows[1] = {{A, B, D},
                 {mm(A, B, Table(phiB.begin(), phiB.begin() + a)), mm(B, D, phiDb)},
                 {zero_to(c, Kind::E, A), me(X, B, compose_tables(phiB, q01.right.amb)),
                  me(W, D, compose_tables(phiD, psi))}};
    TwoSimplexRecord r;
    r.simplex = g;
    for (int k = 0; k < 3; ++k) r.faces[k] = des_key(edge_to_des(g_face(c, g, k)));
    return r;
}

std::vector<TwoSimplexRecord> two_simplices(const FinSet& c, int max_size, bool parallel) {
    std::vector<std::vector<Table>> perms;
    auto items = two_items(max_size, perms);
    return ordered_map<TwoSimplexRecord>(
        items.size(),
        [&](std::size_t i) {
            auto& it = items[i];
            return two_simplex(c, it, perms[it.b][it.pb], perms[it.d][it.pd]);
        },
        parallel);
}

}  // namespace

std::vector<TwoSimplexRecord> enumerate_g_two_simplices(const FinSet& c, int max_size) {
    return two_simplices(c, max_size, true);
}

std::vector<TwoSimplexRecord> enumerate_g_two_simplices_serial(const FinSet& c, int max_size) {
    return two_simplices(c, max_size, false);
}

// ---- sums ----

FFlag flag_sum(const FinSet&, const FFlag& x, const FFlag& y) {
    if (x.n != y.n) throw EdgeMismatch("flag_sum: dimensions differ");
    auto r = flag_alloc<FinSet>(x.n);
    for (int i = 0; i <= x.n; ++i)
        for (int j = i; j <= x.n; ++j) r.obj[i][j] = ro(x.obj[i][j].size() + y.obj[i][j].size());
    for (int i = 0; i <= x.n; ++i)
        for (int j = i; j < x.n; ++j)
            r.h[i][j] = mm(r.obj[i][j], r.obj[i][j + 1], sum_tables(x.h[i][j].amb, x.obj[i][j + 1].size(), y.h[i][j].amb));
    for (int i = 0; i + 1 <= x.n; ++i)
        for (int j = i + 1; j <= x.n; ++j)
            r.v[i][j] = me(r.obj[i + 1][j], r.obj[i][j], sum_tables(x.v[i][j].amb, x.obj[i][j].size(), y.v[i][j].amb));
    return r;
}

FG h_add(const FinSet& c, const FG& x, const FG& y) {
    if (x.n != y.n) throw EdgeMismatch("h_add: dimensions differ");
    FG r;
    r.n = x.n;
    r.quot = flag_sum(c, x.quot, y.quot);
    for (int k = 0; k < 2; ++k) {
        auto &rx = x.rows[k], &ry = y.rows[k];
        auto& out = r.rows[k];
        for (int j = 0; j <= x.n; ++j) out.P.push_back(ro(rx.P[j].size() + ry.P[j].size()));
        for (int j = 0; j < x.n; ++j)
            out.m.push_back(mm(out.P[j], out.P[j + 1], sum_tables(rx.m[j].amb, rx.P[j + 1].size(), ry.m[j].amb)));
        for (int j = 0; j <= x.n; ++j)
            out.e.push_back(me(r.quot.obj[0][j], out.P[j], sum_tables(rx.e[j].amb, rx.P[j].size(), ry.e[j].amb)));
    }
    return r;
}

FDes h_add_edges(const FDes& x, const FDes& y) { return des_sum(x, y); }

FSquare flag_sum_square(const FinSet& c, const FFlag& x, const FFlag& y) {
    if (x.n < 3) throw std::invalid_argument("flag_sum_square needs flags of dimension 3");
    return flag_sum(c, x, y).square(0, 2);
}

// ---- admissible triples ----

FiltrationDiagram<FinSetObj> filtration_with(const FinSet& c, const FMor& f1, const FMor& g1, const FMor& f2,
                                             const FMor& g2, const FMor& h2) {
    FiltrationDiagram<FinSetObj> d;
    d.P0 = f1.src;
    d.P1 = f1.dst;
    d.P2 = g1.dst;
    d.P10 = f2.src;
    d.P20 = g2.src;
    d.P21 = h2.src;
    d.f1 = f1;
    d.g1 = g1;
    d.f2 = f2;
    d.g2 = g2;
    d.h2 = h2;
    auto j1 = solve_m_side(c, f2, g2, g1);
    auto j2 = solve_post(g2.amb, h2.amb);
    if (!j1 || !j2) throw NotAdmissible("quotient maps do not factor");
    d.j1 = *j1;
    d.j2 = me(d.P21, d.P20, *j2);
    return d;
}

AdmissibleResult admissible_triple(const FinSet& c, const FG& e0, const FG& e1, const FG& e2) {
    if (e0.n != 1 || e1.n != 1 || e2.n != 1) throw NotAdmissible("triple entries must be edges");
    if (!(e0.vertex(1) == e1.vertex(0)) || !(e0.vertex(0) == e2.vertex(0)) || !(e1.vertex(1) == e2.vertex(1)))
        throw NotAdmissible("edges do not form a triangle");
    AdmissibleResult r;
    for (int k = 0; k < 2; ++k) {
        auto& a01 = e0.rows[k].m[0];
        auto& a12 = e1.rows[k].m[0];
        auto& a02 = e2.rows[k].m[0];
        if (!(compose(c, a12, a01) == a02)) throw NotAdmissible("M-morphisms do not compose on the nose");
        r.diagrams[k] = filtration_with(c, a01, a12, e0.rows[k].e[1], e2.rows[k].e[1], e1.rows[k].e[1]);
    }
    auto& d0 = r.diagrams[0];
    auto& d1 = r.diagrams[1];
    r.lT = {FinSetObj{}, d0.P21, d0.P10, d0.P20, d0.j1.amb, d0.j2.amb, d1.j1.amb, d1.j2.amb};
    return r;
}

namespace {

struct TripleItem {
    int a, b, d;
    std::size_t pb, pd, pw;
};

TripleRecord triple_record(const FinSet& c, const TripleItem& it, const Table& phiB, const Table& phiD,
                           const Table& psi) {
    int a = it.a, b = it.b, d = it.d;
    auto A = ro(a), B = ro(b), D = ro(d);
    auto m01 = first_block(a), m12 = first_block(b), m02 = first_block(a);
    auto q01 = second_block(b - a, a), q12 = second_block(d - b, b), q02 = second_block(d - a, a);
    Table m01p(phiB.begin(), phiB.begin() + a);
    Table q01p = compose_tables(phiB, q01);
    Table m12p(phiD.begin(), phiD.begin() + b);
    Table q12p = compose_tables(phiD, q12);
    Table m02p = compose_tables(m12p, m01p);
    std::vector<char> hit(d, 0);
    for (int v : m02p) hit[v] = 1;
    Table rest;
    for (int i = 0; i < d; ++i)
        if (!hit[i]) rest.push_back(i);
    Table q02p = compose_tables(rest, psi);
    FDes e0{FinSetObj{}, ro(b - a), A, B, m01, q01, m01p, q01p};
    FDes e1{FinSetObj{}, ro(d - b), B, D, m12, q12, m12p, q12p};
    FDes e2{FinSetObj{}, ro(d - a), A, D, m02, q02, m02p, q02p};
    auto res = admissible_triple(c, des_to_edge(c, e0), des_to_edge(c, e1), des_to_edge(c, e2));
    return {e0, e1, e2, res.lT};
}

std::vector<TripleRecord> sweep(const FinSet& c, int max_size, bool parallel) {
    std::vector<std::vector<Table>> perms;
    for (int n = 0; n <= max_size; ++n) perms.push_back(all_permutations(n));
    std::vector<TripleItem> items;
    for (int d = 0; d <= max_size; ++d)
        for (int b = 0; b <= d; ++b)
            for (int a = 0; a <= b; ++a)
                for (std::size_t pb = 0; pb < perms[b].size(); ++pb)
                    for (std::size_t pd = 0; pd < perms[d].size(); ++pd)
                        for (std::size_t pw = 0; pw < perms[d - a].size(); ++pw) items.push_back({a, b, d, pb, pd, pw});
    return ordered_map<TripleRecord>(
        items.size(),
        [&](std::size_t i) {
            auto& it = items[i];
            return triple_record(c, it, perms[it.b][it.pb], perms[it.d][it.pd], perms[it.d - it.a][it.pw]);
        },
        parallel);
}

}  // namespace

std::vector<TripleRecord> admissible_sweep(const FinSet& c, int max_size) { return sweep(c, max_size, true); }

std::vector<TripleRecord> admissible_sweep_serial(const FinSet& c, int max_size) {
    return sweep(c, max_size, false);
}

AdmissibleResult key_example(const FinSet& c, const Table& alpha) {
    int n = static_cast<int>(alpha.size());
    auto A = ro(1), B = ro(1 + n);
    auto m = mm(A, B, first_block(1));
    auto q = c.cokernel(m).right;
    Table twist{0};
    for (int v : alpha) twist.push_back(1 + v);
    auto id = mm(B, B, identity_table(1 + n));
    auto tw = mm(B, B, twist);
    auto z = zero_to(c, Kind::E, B);
    auto e0 = make_edge(c, q.src, m, q, m, q);
    auto e1 = make_edge(c, c.zero(), id, z, tw, z);
    auto e2 = make_edge(c, q.src, m, q, compose(c, tw, m), q);
    return admissible_triple(c, e0, e1, e2);
}

// ---- optimal 3x3 diagrams ----

FDes Optimal3x3::row(int i) const {
    return {FinSetObj{}, X[i][2], X[i][0], X[i][1], f[0][i], g[0][i], f[1][i], g[1][i]};
}

FDes Optimal3x3::col(int i) const {
    return {FinSetObj{}, X[2][i], X[0][i], X[1][i], h[0][i], j[0][i], h[1][i], j[1][i]};
}

std::vector<FiltrationDiagram<FinSetObj>> Optimal3x3::p_diagrams(const FinSet& c, int k) const {
    auto e1 = solve_post(v[k], compose_tables(j[k][1], f[k][2]));
    auto e2 = solve_post(v[k], compose_tables(g[k][1], h[k][2]));
    if (!e1 || !e2) throw ContractViolation("witness v does not factor the quotient maps");
    const auto& x = X;
    auto S = ro(x[0][2].size() + x[2][0].size());
    std::vector<FiltrationDiagram<FinSetObj>> out;
    auto fd = [&](FMor f1, FMor g1, FMor f2, FMor g2, FMor h2, FMor j1, FMor j2) {
        FiltrationDiagram<FinSetObj> d;
        d.P0 = f1.src;
        d.P1 = f1.dst;
        d.P2 = g1.dst;
        d.P10 = f2.src;
        d.P20 = g2.src;
        d.P21 = h2.src;
        d.f1 = f1;
        d.g1 = g1;
        d.f2 = f2;
        d.g2 = g2;
        d.h2 = h2;
        d.j1 = j1;
        d.j2 = j2;
        return d;
    };
    // (P1)
    out.push_back(fd(mm(x[0][1], Z, u[k]), mm(Z, x[1][1], v[k]), me(x[2][0], Z, *e1), me(x[2][1], x[1][1], j[k][1]),
                     me(x[2][2], x[1][1], compose_tables(j[k][1], g[k][2])), mm(x[2][0], x[2][1], f[k][2]),
                     me(x[2][2], x[2][1], g[k][2])));
    // (P2)
    out.push_back(fd(mm(x[1][0], Z, w[k]), mm(Z, x[1][1], v[k]), me(x[0][2], Z, *e2), me(x[1][2], x[1][1], g[k][1]),
                     me(x[2][2], x[1][1], compose_tables(g[k][1], j[k][2])), mm(x[0][2], x[1][2], h[k][2]),
                     me(x[2][2], x[1][2], j[k][2])));
    // (P3)
    out.push_back(fd(mm(x[0][0], x[0][1], f[k][0]), mm(x[0][1], Z, u[k]), me(x[0][2], x[0][1], g[k][0]),
                     me(S, Z, concat(compose_tables(u[k], g[k][0]), *e1)), me(x[2][0], Z, *e1),
                     mm(x[0][2], S, first_block(x[0][2].size())),
                     me(x[2][0], S, second_block(x[2][0].size(), x[0][2].size()))));
    // (P4)
    out.push_back(fd(mm(x[0][0], x[1][0], h[k][0]), mm(x[1][0], Z, w[k]), me(x[2][0], x[1][0], j[k][0]),
                     me(S, Z, concat(*e2, compose_tables(w[k], j[k][0]))), me(x[0][2], Z, *e2),
                     mm(x[2][0], S, second_block(x[2][0].size(), x[0][2].size())),
                     me(x[0][2], S, first_block(x[0][2].size()))));
    (void)c;
    return out;
}

Optimal3x3 build_3x3_direct_sum(const FDes& f, const FDes& g) {
    Optimal3x3 d;
    d.kind = "direct_sum";
    int a = f.A.size(), b = f.B.size(), x = f.C.size();
    int cc = g.A.size(), dd = g.B.size(), y = g.C.size();
    d.X[0][0] = ro(a);
    d.X[0][1] = ro(b);
    d.X[0][2] = ro(x);
    d.X[1][0] = ro(a + cc);
    d.X[1][1] = ro(b + dd);
    d.X[1][2] = ro(x + y);
    d.X[2][0] = ro(cc);
    d.X[2][1] = ro(dd);
    d.X[2][2] = ro(y);
    d.Z = ro(b + cc);
    auto s = des_sum(f, g);
    for (int k = 0; k < 2; ++k) {
        d.f[k][0] = k ? f.fp : f.f;
        d.g[k][0] = k ? f.gp : f.g;
        d.f[k][1] = k ? s.fp : s.f;
        d.g[k][1] = k ? s.gp : s.g;
        d.f[k][2] = k ? g.fp : g.f;
        d.g[k][2] = k ? g.gp : g.g;
        d.h[k][0] = first_block(a);
        d.j[k][0] = second_block(cc, a);
        d.h[k][1] = first_block(b);
        d.j[k][1] = second_block(dd, b);
        d.h[k][2] = first_block(x);
        d.j[k][2] = second_block(y, x);
        d.u[k] = first_block(b);
        d.w[k] = sum_tables(k ? f.fp : f.f, b, identity_table(cc));
        d.v[k] = sum_tables(identity_table(b), b, k ? g.fp : g.f);
    }
    return d;
}

Optimal3x3 build_3x3_composition(const FinSet& c, const FDes& f, const FDes& g) {
    if (f.B.size() != g.A.size()) throw NotComposable("the middle objects differ");
    Optimal3x3 d;
    d.kind = "composition";
    int a = f.A.size(), b = f.B.size(), x = f.C.size(), y = g.C.size(), dd = g.B.size();
    auto A = ro(a), B = ro(b), X = ro(x), Y = ro(y), D = ro(dd), DA = ro(dd - a);
    d.X[0][0] = A;
    d.X[0][1] = A;
    d.X[0][2] = ro(0);
    d.X[1][0] = B;
    d.X[1][1] = D;
    d.X[1][2] = Y;
    d.X[2][0] = X;
    d.X[2][1] = DA;
    d.X[2][2] = Y;
    d.Z = B;
    for (int k = 0; k < 2; ++k) {
        const Table& ff = k ? f.fp : f.f;
        const Table& fg = k ? f.gp : f.g;
        const Table& gf = k ? g.fp : g.f;
        const Table& gg = k ? g.gp : g.g;
        auto comp = compose_tables(gf, ff);
        std::vector<char> hit(dd, 0);
        for (int v : comp) hit[v] = 1;
        Table q;  // D/A -o D, order preserving onto the complement
        for (int i = 0; i < dd; ++i)
            if (!hit[i]) q.push_back(i);
        auto fil = filtration_with(c, mm(A, B, ff), mm(B, D, gf), me(X, B, fg), me(DA, D, q), me(Y, D, gg));
        d.f[k][0] = identity_table(a);
        d.g[k][0] = {};
        d.f[k][1] = gf;
        d.g[k][1] = gg;
        d.f[k][2] = fil.j1.amb;
        d.g[k][2] = fil.j2.amb;
        d.h[k][0] = ff;
        d.j[k][0] = fg;
        d.h[k][1] = comp;
        d.j[k][1] = q;
        d.h[k][2] = {};
        d.j[k][2] = identity_table(y);
        d.u[k] = ff;
        d.v[k] = gf;
        d.w[k] = identity_table(b);
    }
    return d;
}

Optimal3x3 build_3x3_corollary(const Table& alpha) {
    Optimal3x3 d;
    d.kind = "corollary";
    int n = static_cast<int>(alpha.size());
    auto A = ro(n), O = ro(0);
    for (int i = 0; i < 3; ++i) d.X[0][i] = O;
    d.X[1][0] = A;
    d.X[1][1] = A;
    d.X[1][2] = O;
    d.X[2][0] = A;
    d.X[2][1] = A;
    d.X[2][2] = O;
    d.Z = A;
    auto id = identity_table(n);
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 3; ++i) {
            d.g[k][i] = {};
            d.h[k][i] = {};
        }
        d.f[k][0] = {};
        d.f[k][1] = k ? alpha : id;
        d.f[k][2] = alpha;
        d.j[k][0] = id;
        d.j[k][1] = k ? id : inverse_table(alpha);
        d.j[k][2] = {};
        d.u[k] = {};
        d.v[k] = k ? alpha : id;
        d.w[k] = id;
    }
    return d;
}

std::string validate_3x3(const FinSet& c, const Optimal3x3& d) {
    for (int i = 0; i < 3; ++i) {
        try {
            if (!des_valid(c, d.row(i))) return "row " + std::to_string(i) + " is not a double exact square";
            if (!des_valid(c, d.col(i))) return "column " + std::to_string(i) + " is not a double exact square";
        } catch (const std::exception& e) {
            return std::string("row/column check failed: ") + e.what();
        }
    }
    for (int k = 0; k < 2; ++k) {
        if (compose_tables(d.g[k][1], d.j[k][2]) != compose_tables(d.j[k][1], d.g[k][2]))
            return "bottom right E-square does not commute";
        if (!is_injective(d.u[k], d.Z.size()) || d.u[k].size() != static_cast<std::size_t>(d.X[0][1].size()) ||
            !is_injective(d.w[k], d.Z.size()) || d.w[k].size() != static_cast<std::size_t>(d.X[1][0].size()) ||
            !is_injective(d.v[k], d.X[1][1].size()) || d.v[k].size() != static_cast<std::size_t>(d.Z.size()))
            return "witness is not an M-morphism";
        if (compose_tables(d.u[k], d.f[k][0]) != compose_tables(d.w[k], d.h[k][0])) return "u f0 != w h0";
        if (compose_tables(d.v[k], d.u[k]) != d.h[k][1]) return "v u != h1";
        if (compose_tables(d.v[k], d.w[k]) != d.f[k][1]) return "v w != f1";
        std::vector<FiltrationDiagram<FinSetObj>> ps;
        try {
            ps = d.p_diagrams(c, k);
        } catch (const std::exception& e) {
            return e.what();
        }
        for (std::size_t p = 0; p < ps.size(); ++p) {
            bool ok = false;
            try {
                ok = check_filtration(c, ps[p]);
            } catch (const std::exception&) {
                ok = false;
            }
            if (!ok) return "(P" + std::to_string(p + 1) + ") fails in version " + std::to_string(k);
        }
    }
    return {};
}

std::vector<std::pair<std::string, int>> n2_terms(const Optimal3x3& d) {
    return {{des_key(d.row(0)), 1}, {des_key(d.row(2)), 1},  {des_key(d.row(1)), -1},
            {des_key(d.col(0)), -1}, {des_key(d.col(2)), -1}, {des_key(d.col(1)), 1}};
}

// ---- Sherman ----

void check_triple(const FinSet&, const ShermanTriple& t) {
    auto partition = [](const Table& x, const Table& y, int n) {
        return static_cast<int>(x.size() + y.size()) == n && is_bijective(concat(x, y), n);
    };
    if (!partition(t.alpha, t.delta, t.b())) throw InvalidTheta("alpha and delta do not split B");
    if (!partition(t.beta, t.gamma, t.bp())) throw InvalidTheta("beta and gamma do not split B'");
    int p = t.a() + t.c() + t.bp(), q = t.ap() + t.cp() + t.b();
    if (p != q || !is_bijective(t.theta, q)) throw InvalidTheta("theta is not an isomorphism of the sums");
}

LoopWord sherman_loop(const FinSet& c, const ShermanTriple& t) {
    check_triple(c, t);
    int a = t.a(), cc = t.c(), b = t.b(), ap = t.ap(), cp = t.cp(), bp = t.bp();
    int p = a + cc + bp;
    auto A = ro(a), Ap = ro(ap), P = ro(p), BB = ro(b + bp);
    LoopWord w;
    w.edges.push_back({des_to_edge(c, standard_edge(a)), 1});
    auto Q2 = ro(cc + bp);
    w.edges.push_back({make_edge(c, Q2, mm(A, P, first_block(a)), me(Q2, P, second_block(cc + bp, a)),
                                 mm(A, BB, t.alpha), me(Q2, BB, sum_tables(t.delta, b, identity_table(bp)))),
                       1});
    Table swap(b + bp);
    for (int i = 0; i < b + bp; ++i) swap[i] = i < b ? bp + i : i - b;
    w.edges.push_back({make_edge(c, ro(0), mm(P, P, t.theta), zero_to(c, Kind::E, P), mm(BB, BB, swap),
                                 zero_to(c, Kind::E, BB)),
                       1});
    auto Q4 = ro(cp + b);
    w.edges.push_back({make_edge(c, Q4, mm(Ap, P, first_block(ap)), me(Q4, P, second_block(cp + b, ap)),
                                 mm(Ap, BB, t.beta), me(Q4, BB, sum_tables(t.gamma, bp, identity_table(b)))),
                       -1});
    w.edges.push_back({des_to_edge(c, standard_edge(ap)), -1});
    return w;
}

bool loop_closed(const FinSet& c, const LoopWord& w) {
    if (w.edges.empty()) return true;
    auto ends = [](const std::pair<FG, int>& e) {
        return e.second > 0 ? std::make_pair(e.first.vertex(0), e.first.vertex(1))
                            : std::make_pair(e.first.vertex(1), e.first.vertex(0));
    };
    for (std::size_t k = 0; k < w.edges.size(); ++k) {
        if (!g_valid(c, w.edges[k].first)) return false;
        auto cur = ends(w.edges[k]);
        auto nxt = ends(w.edges[(k + 1) % w.edges.size()]);
        if (!(cur.second == nxt.first)) return false;
    }
    return true;
}

FDes sherman_to_dexsq(const FinSet& c, const ShermanTriple& t) {
    check_triple(c, t);
    int a = t.a(), cc = t.c(), ap = t.ap(), cp = t.cp();
    Table f0, g0, f1, g1;
    for (int i = 0; i < a; ++i) f0.push_back(i);
    for (int i = 0; i < ap; ++i) f0.push_back(a + cc + t.beta[i]);
    for (int k = 0; k < cc; ++k) g0.push_back(a + k);
    for (int k = 0; k < cp; ++k) g0.push_back(a + cc + t.gamma[k]);
    for (int i = 0; i < a; ++i) f1.push_back(ap + cp + t.alpha[i]);
    for (int i = 0; i < ap; ++i) f1.push_back(i);
    for (int k = 0; k < cc; ++k) g1.push_back(ap + cp + t.delta[k]);
    for (int k = 0; k < cp; ++k) g1.push_back(ap + k);
    FDes d{FinSetObj{},
           ro(cc + cp),
           ro(a + ap),
           ro(t.theta.size()),
           compose_tables(t.theta, f0),
           compose_tables(t.theta, g0),
           f1,
           g1};
    if (!des_valid(c, d)) throw InvalidTheta("the induced squares are not exact");
    return d;
}

// ---- permutation homotopy ----

FG permutation_h(const FinSet& c, const FG& a1, const FG& a2, int i) {
    if (!(a1.quot == a2.quot)) throw QuotientMismatch("summands do not share quotient data");
    FG r;
    r.n = a1.n;
    r.quot = flag_sum(c, a1.quot, a2.quot);
    int n = a1.n;
    auto& t1 = a1.rows[0];
    auto& t2 = a2.rows[0];
    for (int j = 0; j <= n; ++j) r.rows[0].P.push_back(ro(t1.P[j].size() + t2.P[j].size()));
    for (int j = 0; j < n; ++j)
        r.rows[0].m.push_back(mm(r.rows[0].P[j], r.rows[0].P[j + 1],
                                 sum_tables(t1.m[j].amb, t1.P[j + 1].size(), t2.m[j].amb)));
    for (int j = 0; j <= n; ++j)
        r.rows[0].e.push_back(me(r.quot.obj[0][j], r.rows[0].P[j], sum_tables(t1.e[j].amb, t1.P[j].size(), t2.e[j].amb)));
    auto& b1 = a1.rows[1];
    auto& b2 = a2.rows[1];
    auto& out = r.rows[1];
    for (int j = 0; j <= n; ++j) out.P.push_back(ro(b1.P[j].size() + b2.P[j].size()));
    for (int j = 0; j < n; ++j) {
        Table t;
        if (j + 1 <= i) {
            t = sum_tables(b2.m[j].amb, b2.P[j + 1].size(), b1.m[j].amb);
        } else if (j == i) {
            int s1 = b1.P[j + 1].size();
            for (int x : b2.m[j].amb) t.push_back(s1 + x);
            for (int y : b1.m[j].amb) t.push_back(y);
        } else {
            t = sum_tables(b1.m[j].amb, b1.P[j + 1].size(), b2.m[j].amb);
        }
        out.m.push_back(mm(out.P[j], out.P[j + 1], t));
    }
    for (int j = 0; j <= n; ++j) {
        Table t;
        if (j <= i) {
            t = sum_tables(b2.e[j].amb, b2.P[j].size(), b1.e[j].amb);
        } else {
            int s1 = b1.P[j].size();
            for (int x : b2.e[j].amb) t.push_back(s1 + x);
            for (int y : b1.e[j].amb) t.push_back(y);
        }
        out.e.push_back(me(r.quot.obj[0][j], out.P[j], t));
    }
    return r;
}

HomotopyReport permutation_homotopy(const FinSet& c, const FG& x1, const FG& x2) {
    if (x1.n != 1 || x2.n != 1) throw std::invalid_argument("permutation_homotopy expects edges");
    if (!(x1.quot == x2.quot)) throw QuotientMismatch("edges do not share their quotient");
    HomotopyReport rep;
    using Pair = std::pair<FG, FG>;
    // the W-simplices generated by the pair, up to dimension 2
    std::vector<std::vector<Pair>> W(3);
    W[1].push_back({x1, x2});
    for (int k = 0; k < 2; ++k) W[0].push_back({g_face(c, x1, k), g_face(c, x2, k)});
    for (auto& p : W[0]) W[1].push_back({g_degeneracy(c, p.first, 0), g_degeneracy(c, p.second, 0)});
    for (auto& p : std::vector<Pair>(W[1]))
        for (int k = 0; k < 2; ++k) W[2].push_back({g_degeneracy(c, p.first, k), g_degeneracy(c, p.second, k)});
    auto fail = [&](std::string why) {
        if (rep.failure.empty()) rep.failure = std::move(why);
    };
    for (int n = 0; n <= 2; ++n)
        for (auto& p : W[n])
            for (int i = -1; i <= n; ++i) {
                FG hv;
                try {
                    hv = permutation_h(c, p.first, p.second, i);
                } catch (const std::exception& e) {
                    fail(e.what());
                    continue;
                }
                ++rep.outputs;
                if (!g_valid(c, hv)) fail("h output is not a simplex, dim " + std::to_string(n) + ", i " + std::to_string(i));
                for (int k = 0; k <= n && n > 0; ++k) {
                    ++rep.identities;
                    int ip = k <= i ? i - 1 : i;
                    auto lhs = g_face(c, hv, k);
                    auto rhs = permutation_h(c, g_face(c, p.first, k), g_face(c, p.second, k), ip);
                    if (!(lhs == rhs)) fail("d" + std::to_string(k) + " h != h d" + std::to_string(k));
                }
                for (int k = 0; k <= n && n < 2; ++k) {
                    ++rep.identities;
                    int ip = i >= k ? i + 1 : i;
                    auto lhs = g_degeneracy(c, hv, k);
                    auto rhs =
                        permutation_h(c, g_degeneracy(c, p.first, k), g_degeneracy(c, p.second, k), ip);
                    if (!(lhs == rhs)) fail("s" + std::to_string(k) + " h != h s" + std::to_string(k));
                }
            }
    rep.start = permutation_h(c, x1, x2, -1);
    rep.end = permutation_h(c, x1, x2, 1);
    return rep;
}

// ---- pushouts create 2-simplices ----

PushoutSimplices pushout_two_simplices(const FinSet& c, const FG& e1, const FG& e2) {
    if (e1.n != 1 || e2.n != 1 || !(e1.vertex(0) == e2.vertex(0)))
        throw EdgeMismatch("pushout_two_simplices: not a span of edges");
    auto Q1 = e1.quot.obj[0][1], Q2 = e2.quot.obj[0][1];
    int q1 = Q1.size(), q2 = Q2.size();
    auto S = ro(q1 + q2);
    PushoutSimplices r;
    r.upper.n = r.lower.n = 2;
    r.upper.quot = make_flag(c, {Q1, S}, {mm(Q1, S, first_block(q1))});
    r.lower.quot = make_flag(c, {Q2, S}, {mm(Q2, S, second_block(q2, q1))});
    for (int k = 0; k < 2; ++k) {
        auto& f = e1.rows[k].m[0];
        auto& g = e2.rows[k].m[0];
        auto po = c.restricted_pushout(g, f);
        Table eS;
        for (int v : e1.rows[k].e[1].amb) eS.push_back(po.inB.amb[v]);
        for (int v : e2.rows[k].e[1].amb) eS.push_back(po.inC.amb[v]);
        auto z = zero_to(c, Kind::E, f.src);
        r.upper.rows[k] = {{f.src, f.dst, po.obj}, {f, po.inB}, {z, e1.rows[k].e[1], me(S, po.obj, eS)}};
        r.lower.rows[k] = {{g.src, g.dst, po.obj}, {g, po.inC}, {z, e2.rows[k].e[1], me(S, po.obj, eS)}};
    }
    return r;
}

}  // namespace cgwk
