#include "cgwk/finset.hpp"

#include <numeric>
#include <sstream>

namespace cgwk {

FinSetObj range_obj(int n) { return {identity_table(n)}; }

std::optional<Mutant> parse_mutant(const std::string& s) {
    for (auto m : {Mutant::None, Mutant::DropUnion, Mutant::NonMonicE, Mutant::MissingInitiality,
                   Mutant::WrongQuotient, Mutant::NonClosed})
        if (mutant_name(m) == s) return m;
    return std::nullopt;
}

std::string mutant_name(Mutant m) {
    switch (m) {
        case Mutant::None: return "none";
        case Mutant::DropUnion: return "drop-union";
        case Mutant::NonMonicE: return "non-monic-e";
        case Mutant::MissingInitiality: return "missing-initiality";
        case Mutant::WrongQuotient: return "wrong-quotient";
        case Mutant::NonClosed: return "non-closed";
    }
    return "?";
}

std::vector<Mutant> mutant_catalog() {
    return {Mutant::DropUnion, Mutant::NonMonicE, Mutant::MissingInitiality, Mutant::WrongQuotient,
            Mutant::NonClosed};
}

namespace {

bool tables_fit(const FSquare& s) {
    auto fits = [](const FMor& m) {
        if (static_cast<int>(m.amb.size()) != m.src.size()) return false;
        for (int v : m.amb)
            if (v < 0 || v >= m.dst.size()) return false;
        return true;
    };
    return fits(s.top) && fits(s.bottom) && fits(s.left) && fits(s.right) && s.top.src == s.tl &&
           s.top.dst == s.tr && s.bottom.src == s.bl && s.bottom.dst == s.br && s.left.src == s.tl &&
           s.left.dst == s.bl && s.right.src == s.tr && s.right.dst == s.br;
}

bool square_commutes(const FSquare& s) {
    return compose_tables(s.right.amb, s.top.amb) == compose_tables(s.bottom.amb, s.left.amb);
}

int find_root(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

bool pullback_part(const FSquare& s) {
    std::set<int> ib(s.bottom.amb.begin(), s.bottom.amb.end());
    int common = 0;
    for (int v : s.right.amb) common += ib.count(v);
    return common == s.tl.size();
}

bool injective_all(const FSquare& s) {
    return is_injective(s.top.amb, s.tr.size()) && is_injective(s.bottom.amb, s.br.size()) &&
           is_injective(s.left.amb, s.bl.size()) && is_injective(s.right.amb, s.br.size());
}

bool monotone(const Table& t) { return std::is_sorted(t.begin(), t.end()); }

}  // namespace

bool pushout_check(const FSquare& s) {
    if (!tables_fit(s) || !square_commutes(s)) return false;
    int nt = s.tr.size(), nb = s.bl.size();
    std::vector<int> p(nt + nb);
    std::iota(p.begin(), p.end(), 0);
    for (int x = 0; x < s.tl.size(); ++x) {
        int a = find_root(p, s.top.amb[x]), b = find_root(p, nt + s.left.amb[x]);
        if (a != b) p[a] = b;
    }
    std::map<int, int> cls;  // class root -> image in br
    for (int i = 0; i < nt + nb; ++i) {
        int img = i < nt ? s.right.amb[i] : s.bottom.amb[i - nt];
        auto [it, fresh] = cls.emplace(find_root(p, i), img);
        if (!fresh && it->second != img) return false;
    }
    std::vector<int> imgs;
    for (auto& [r, v] : cls) imgs.push_back(v);
    return is_bijective(imgs, s.br.size());
}

bool pullback_union_check(const FSquare& s) {
    if (!tables_fit(s) || !injective_all(s) || !square_commutes(s)) return false;
    if (!pullback_part(s)) return false;
    std::vector<char> hit(s.br.size(), 0);
    for (int v : s.bottom.amb) hit[v] = 1;
    for (int v : s.right.amb) hit[v] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

FinSetObj FinSet::zero() const { return mut_ == Mutant::MissingInitiality ? FinSetObj{{0}} : FinSetObj{}; }

std::vector<FinSetObj> FinSet::objects(int max_size) const {
    std::vector<FinSetObj> out;
    int u = std::max(max_size, 0);
    for (int k = 0; k <= u; ++k) {
        std::vector<char> pick(u, 0);
        std::fill(pick.begin(), pick.begin() + k, 1);
        std::vector<FinSetObj> level;
        do {
            FinSetObj x;
            for (int i = 0; i < u; ++i)
                if (pick[i]) x.elems.push_back(i);
            level.push_back(x);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<FinSetObj> FinSet::object_classes(int max_size) const {
    std::vector<FinSetObj> out;
    for (int k = 0; k <= max_size; ++k) out.push_back(range_obj(k));
    return out;
}

std::vector<Table> FinSet::morphisms(Kind k, const Obj& a, const Obj& b) const {
    if (k == Kind::E && mut_ == Mutant::NonMonicE) return all_functions(a.size(), b.size());
    return all_injections(a.size(), b.size());
}

bool FinSet::is_member(Kind k, const Obj& a, const Obj& b, const Table& t) const {
    if (static_cast<int>(t.size()) != a.size()) return false;
    if (k == Kind::E && mut_ == Mutant::NonMonicE)
        return std::all_of(t.begin(), t.end(), [&](int v) { return v >= 0 && v < b.size(); });
    return is_injective(t, b.size());
}

std::vector<Table> FinSet::isos(const Obj& a, const Obj& b) const {
    if (a.size() != b.size()) return {};
    return all_permutations(a.size());
}

bool FinSet::is_distinguished(const FSquare& s) const {
    if (!tables_fit(s)) return false;
    if (mut_ == Mutant::DropUnion)
        return injective_all(s) && square_commutes(s) && pullback_part(s);
    if (!injective_all(s)) return pushout_check(s);
    bool po = pushout_check(s);
    bool pu = pullback_union_check(s);
    if (po != pu) throw std::logic_error("pushout and pullback-union readings disagree");
    if (mut_ == Mutant::NonClosed && po && s.tl.size() >= 2 && !monotone(s.top.amb)) return false;
    return po;
}

FSquare FinSet::cokernel(const FMor& f) const {
    auto O = zero();
    if (mut_ == Mutant::WrongQuotient)
        return {O, f.dst, f.src, f.dst, {Kind::M, O, f.dst, {}}, f, {Kind::E, O, f.src, {}},
                {Kind::E, f.dst, f.dst, identity_table(f.dst.size())}};
    std::vector<char> hit(f.dst.size(), 0);
    for (int v : f.amb) hit[v] = 1;
    FinSetObj q;
    Table g;
    for (int i = 0; i < f.dst.size(); ++i)
        if (!hit[i]) {
            q.elems.push_back(f.dst.elems[i]);
            g.push_back(i);
        }
    return {O, q, f.src, f.dst, {Kind::M, O, q, {}}, f, {Kind::E, O, f.src, {}}, {Kind::E, q, f.dst, g}};
}

FSquare FinSet::kernel(const FMor& g) const {
    auto O = zero();
    std::vector<char> hit(g.dst.size(), 0);
    for (int v : g.amb) hit[v] = 1;
    FinSetObj a;
    Table f;
    for (int i = 0; i < g.dst.size(); ++i)
        if (!hit[i]) {
            a.elems.push_back(g.dst.elems[i]);
            f.push_back(i);
        }
    return {O, g.src, a, g.dst, {Kind::M, O, g.src, {}}, {Kind::M, a, g.dst, f}, {Kind::E, O, a, {}}, g};
}

FinSet::Pushout FinSet::restricted_pushout(const FMor& g, const FMor& f) const {
    if (!(g.src == f.src)) throw EdgeMismatch("restricted_pushout: span legs differ in source");
    const auto& B = f.dst;
    const auto& C = g.dst;
    std::vector<char> in_image(B.size(), 0);
    for (int v : f.amb) in_image[v] = 1;
    std::set<int> clabels(C.elems.begin(), C.elems.end());
    std::vector<int> rest;  // positions of B outside f(A)
    for (int i = 0; i < B.size(); ++i)
        if (!in_image[i]) rest.push_back(i);
    bool clash = false;
    for (int i : rest) clash |= clabels.count(B.elems[i]) > 0;
    int next = 0;
    for (int v : B.elems) next = std::max(next, v + 1);
    for (int v : C.elems) next = std::max(next, v + 1);
    std::vector<int> restlab;
    for (int i : rest) restlab.push_back(clash ? next++ : B.elems[i]);
    FinSetObj P{C.elems};
    P.elems.insert(P.elems.end(), restlab.begin(), restlab.end());
    std::sort(P.elems.begin(), P.elems.end());
    auto pos = [&](int label) {
        return static_cast<int>(std::lower_bound(P.elems.begin(), P.elems.end(), label) - P.elems.begin());
    };
    Table inC(C.size());
    for (int i = 0; i < C.size(); ++i) inC[i] = pos(C.elems[i]);
    Table inB(B.size());
    std::map<int, int> pre;
    for (int a = 0; a < static_cast<int>(f.amb.size()); ++a) pre[f.amb[a]] = a;
    for (int i = 0, r = 0; i < B.size(); ++i) {
        if (in_image[i])
            inB[i] = inC[g.amb[pre[i]]];
        else
            inB[i] = pos(restlab[r++]);
    }
    return {P, {Kind::M, B, P, inB}, {Kind::M, C, P, inC}};
}

FinSet::Sum FinSet::direct_sum(const Obj& x, const Obj& y) const {
    auto s = range_obj(x.size() + y.size());
    Table px = first_block(x.size());
    Table py = second_block(y.size(), x.size());
    return {s, {Kind::M, x, s, px}, {Kind::M, y, s, py}, {Kind::E, x, s, px}, {Kind::E, y, s, py}};
}

Table sum_tables(const Table& f, int b, const Table& g) {
    Table r(f);
    for (int v : g) r.push_back(b + v);
    return r;
}

Table first_block(int n) { return identity_table(n); }

Table second_block(int n, int offset) {
    Table t(n);
    for (int i = 0; i < n; ++i) t[i] = offset + i;
    return t;
}

void FinSet::verify_pcgw(const CategoryBudget& b, AxiomReport& rep) const {
    auto& ra = rep.axioms["A"];
    auto& rpq = rep.axioms["PQ"];
    auto& rds = rep.axioms["DS"];
    auto objs = objects(b.maxObjectSize);
    auto O = zero();
    auto fail = [](AxiomResult& r, json w, std::string note) {
        if (r.verdict == Verdict::Fail) return;
        r.verdict = Verdict::Fail;
        r.witness = std::move(w);
        r.note = std::move(note);
    };
    // (A): both direct sum squares, with canonical quotients
    for (auto& x : objs)
        for (auto& y : objs) {
            ++ra.checked;
            auto s = direct_sum(x, y);
            FSquare s1{O, y, x, s.obj, zero_to(*this, Kind::M, y), s.pX, zero_to(*this, Kind::E, x), s.qY};
            FSquare s2{O, x, y, s.obj, zero_to(*this, Kind::M, x), s.pY, zero_to(*this, Kind::E, y), s.qX};
            if (!is_distinguished(s1) || !is_distinguished(s2)) {
                fail(ra, {{"x", x.elems}, {"y", y.elems}}, "direct sum square is not distinguished");
                return;
            }
            if (!find_e_iso(*this, cokernel(s.pX).right, s.qY)) {
                fail(ra, {{"x", x.elems}, {"y", y.elems}}, "direct sum quotient is not canonical");
                return;
            }
        }
    // restricted pushouts: commutation, size, initiality among optimal squares, and (PQ)
    int cap = std::min(b.maxObjectSize, 3);
    auto cls = object_classes(cap);
    for (auto& a : cls)
        for (auto& bo : cls)
            for (auto& ft : morphisms(Kind::M, a, bo))
                for (auto& co : cls)
                    for (auto& gt : morphisms(Kind::M, a, co)) {
                        FMor f{Kind::M, a, bo, ft}, g{Kind::M, a, co, gt};
                        auto po = restricted_pushout(g, f);
                        ++ra.checked;
                        if (compose_tables(po.inB.amb, ft) != compose_tables(po.inC.amb, gt) ||
                            po.obj.size() != bo.size() + co.size() - a.size()) {
                            fail(ra, {{"f", ft}, {"g", gt}}, "restricted pushout does not commute");
                            return;
                        }
                        for (auto& x : cls)
                            for (auto& u : morphisms(Kind::M, bo, x))
                                for (auto& v : morphisms(Kind::M, co, x)) {
                                    if (compose_tables(u, ft) != compose_tables(v, gt)) continue;
                                    std::set<int> iu(u.begin(), u.end());
                                    int common = 0;
                                    for (int w : v) common += iu.count(w);
                                    if (common != a.size()) continue;  // not optimal
                                    ++ra.checked;
                                    Table w(po.obj.size(), -1);
                                    bool ok = true;
                                    for (int i = 0; i < bo.size(); ++i) w[po.inB.amb[i]] = u[i];
                                    for (int i = 0; i < co.size(); ++i) {
                                        int& slot = w[po.inC.amb[i]];
                                        if (slot != -1 && slot != v[i]) ok = false;
                                        slot = v[i];
                                    }
                                    if (!ok || !is_injective(w, x.size())) {
                                        fail(ra, {{"f", ft}, {"g", gt}, {"u", u}, {"v", v}},
                                             "restricted pushout is not initial among optimal squares");
                                        return;
                                    }
                                }
                        ++rpq.checked;
                        auto qf = cokernel(f);
                        auto qc = cokernel(po.inC);
                        auto theta = solve_post(qc.right.amb, compose_tables(po.inB.amb, qf.right.amb));
                        if (!theta || !is_bijective(*theta, qc.tr.size())) {
                            fail(rpq, {{"f", ft}, {"g", gt}}, "pushout does not preserve the quotient");
                            return;
                        }
                    }
    // (DS): two distinguished squares sharing their left edge induce distinguished squares
    for (auto& a : cls)
        for (auto& ap : cls)
            for (auto& et : morphisms(Kind::E, a, ap))
                for (auto& bp : cls)
                    for (auto& fpt : morphisms(Kind::M, ap, bp))
                        for (auto& cp : cls)
                            for (auto& gpt : morphisms(Kind::M, ap, cp)) {
                                // complete each side to a distinguished square over e
                                auto side = [&](const FinSetObj& xp, const Table& mp) {
                                    std::vector<char> in(xp.size(), 0);
                                    for (int v : mp) in[v] = 1;
                                    Table r;
                                    for (int v : compose_tables(mp, et)) r.push_back(v);
                                    std::sort(r.begin(), r.end());
                                    for (int i = 0; i < xp.size(); ++i)
                                        if (!in[i]) r.push_back(i);
                                    std::sort(r.begin(), r.end());
                                    auto x = range_obj(static_cast<int>(r.size()));
                                    auto m = *solve_post(r, compose_tables(mp, et));
                                    return std::make_pair(FMor{Kind::M, a, x, m}, FMor{Kind::E, x, xp, r});
                                };
                                auto [f, rb] = side(bp, fpt);
                                auto [g, rc] = side(cp, gpt);
                                FMor e{Kind::E, a, ap, et};
                                FMor fp{Kind::M, ap, bp, fpt}, gp{Kind::M, ap, cp, gpt};
                                ++rds.checked;
                                FSquare left{a, g.dst, ap, cp, g, gp, e, rc};
                                FSquare right{a, f.dst, ap, bp, f, fp, e, rb};
                                if (!is_distinguished(left) || !is_distinguished(right)) {
                                    fail(rds, {{"e", et}, {"f'", fpt}, {"g'", gpt}},
                                         "completed side square is not distinguished");
                                    return;
                                }
                                auto P = restricted_pushout(g, f);
                                auto Pp = restricted_pushout(gp, fp);
                                Table u(P.obj.size(), -1);
                                bool ok = true;
                                for (int i = 0; i < f.dst.size(); ++i)
                                    u[P.inB.amb[i]] = Pp.inB.amb[rb.amb[i]];
                                for (int i = 0; i < g.dst.size(); ++i) {
                                    int& slot = u[P.inC.amb[i]];
                                    int val = Pp.inC.amb[rc.amb[i]];
                                    if (slot != -1 && slot != val) ok = false;
                                    slot = val;
                                }
                                FMor um{Kind::E, P.obj, Pp.obj, u};
                                FSquare sb{f.dst, P.obj, bp, Pp.obj, P.inB, Pp.inB, rb, um};
                                FSquare sc{g.dst, P.obj, cp, Pp.obj, P.inC, Pp.inC, rc, um};
                                if (!ok || !is_member(Kind::E, P.obj, Pp.obj, u) || !is_distinguished(sb) ||
                                    !is_distinguished(sc)) {
                                    fail(rds, {{"e", et}, {"f'", fpt}, {"g'", gpt}, {"u", u}},
                                         "induced pushout square is not distinguished");
                                    return;
                                }
                            }
}

// ---- canonical forms ----

namespace {

struct CanonSearch {
    const FDiagram& d;
    std::vector<std::vector<int>> fwd, inv;  // per node: old -> new, new -> old
    std::vector<int> seq, best;
    std::vector<std::vector<int>> best_fwd;
    bool have_best = false;

    explicit CanonSearch(const FDiagram& dd) : d(dd) {
        for (auto& n : d.nodes) {
            fwd.emplace_back(n.size(), -1);
            inv.emplace_back(n.size(), -1);
        }
    }

    void set(int node, int x, int l) {
        fwd[node][x] = l;
        inv[node][l] = x;
    }
    void unset(int node, int x) {
        inv[node][fwd[node][x]] = -1;
        fwd[node][x] = -1;
    }
    int smallest_free(int node) const {
        for (int l = 0; l < static_cast<int>(inv[node].size()); ++l)
            if (inv[node][l] == -1) return l;
        return -1;
    }

    void finish() {
        auto f = fwd;
        for (auto& row : f) {
            std::vector<char> used(row.size(), 0);
            for (int x : row)
                if (x != -1) used[x] = 1;
            int l = 0;
            for (auto& x : row)
                if (x == -1) {
                    while (used[l]) ++l;
                    x = l;
                    used[l] = 1;
                }
        }
        best = seq;
        best_fwd = f;
        have_best = true;
    }

    // place old element x at new source position j, then label its image; returns the entry value
    int place(int s, int t, int x, int j, const Table& tab, bool& set_src, bool& set_dst) {
        set_src = fwd[s][x] == -1;
        if (set_src) set(s, x, j);
        int y = tab[x];
        set_dst = fwd[t][y] == -1;
        if (set_dst) set(t, y, smallest_free(t));
        return fwd[t][y];
    }

    void run(std::size_t ai, std::size_t j) {
        while (ai < d.arrows.size() && j >= d.arrows[ai].t.size()) {
            ++ai;
            j = 0;
        }
        if (ai == d.arrows.size()) {
            if (!have_best || seq < best) finish();
            return;
        }
        const auto& ar = d.arrows[ai];
        int s = ar.src, t = ar.dst;
        std::vector<int> cands;
        if (inv[s][j] != -1)
            cands.push_back(inv[s][j]);
        else
            for (int x = 0; x < static_cast<int>(fwd[s].size()); ++x)
                if (fwd[s][x] == -1) cands.push_back(x);
        std::vector<int> vals;
        for (int x : cands) {
            bool ss, sd;
            vals.push_back(place(s, t, x, static_cast<int>(j), ar.t, ss, sd));
            if (sd) unset(t, ar.t[x]);
            if (ss) unset(s, x);
        }
        int vmin = *std::min_element(vals.begin(), vals.end());
        for (std::size_t ci = 0; ci < cands.size(); ++ci) {
            if (vals[ci] != vmin) continue;
            if (have_best) {
                std::size_t k = seq.size();
                seq.push_back(vmin);
                bool worse = std::lexicographical_compare(best.begin(), best.begin() + k + 1, seq.begin(), seq.end());
                seq.pop_back();
                if (worse) return;
            }
            bool ss, sd;
            int x = cands[ci];
            place(s, t, x, static_cast<int>(j), ar.t, ss, sd);
            seq.push_back(vmin);
            run(ai, j + 1);
            seq.pop_back();
            if (sd) unset(t, ar.t[x]);
            if (ss) unset(s, x);
        }
    }
};

}  // namespace

FDiagram canonical_form(const FDiagram& d) {
    CanonSearch cs(d);
    cs.run(0, 0);
    FDiagram out;
    for (auto& n : d.nodes) out.nodes.push_back(range_obj(n.size()));
    if (!cs.have_best) cs.finish();
    for (auto& a : d.arrows) {
        Table t(a.t.size());
        for (std::size_t i = 0; i < a.t.size(); ++i) t[cs.best_fwd[a.src][i]] = cs.best_fwd[a.dst][a.t[i]];
        out.arrows.push_back({a.src, a.dst, t});
    }
    return out;
}

FDiagram square_diagram(const FSquare& s) {
    return {{s.tl, s.tr, s.bl, s.br},
            {{0, 1, s.top.amb}, {2, 3, s.bottom.amb}, {0, 2, s.left.amb}, {1, 3, s.right.amb}}};
}

FDiagram des_diagram(const FDes& d) {
    return {{d.A, d.C, d.B}, {{0, 2, d.f}, {1, 2, d.g}, {0, 2, d.fp}, {1, 2, d.gp}}};
}

// ---- double exact squares ----

Table piecewise_bijection(const FDes& d) {
    int n = d.B.size();
    if (d.A.size() + d.C.size() != n) throw ImagesDoNotPartition("node sizes do not add up");
    Table s(n, -1);
    for (std::size_t i = 0; i < d.f.size(); ++i) s.at(d.f[i]) = d.fp[i];
    for (std::size_t k = 0; k < d.g.size(); ++k) {
        if (s.at(d.g[k]) != -1) throw ImagesDoNotPartition("images of f and g overlap");
        s[d.g[k]] = d.gp[k];
    }
    if (!is_bijective(s, n)) throw ImagesDoNotPartition("second component images do not partition B");
    return s;
}

int sign_of(const Table& perm) {
    std::vector<char> seen(perm.size(), 0);
    int parity = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = 1;
            ++len;
        }
        parity ^= (len - 1) & 1;
    }
    return parity;
}

int sign_class(const FDes& d) { return sign_of(piecewise_bijection(d)); }

namespace {

std::vector<char> colouring(const FDes& d) {
    std::vector<char> col(d.B.size(), 0);
    for (int v : d.f) col.at(v) = 'A';
    for (int v : d.g) {
        if (col.at(v)) throw ImagesDoNotPartition("images of f and g overlap");
        col[v] = 'C';
    }
    return col;
}

std::string min_rotation(const std::string& w) {
    std::string best = w;
    for (std::size_t r = 1; r < w.size(); ++r) best = std::min(best, w.substr(r) + w.substr(0, r));
    return best;
}

}  // namespace

std::string des_key(const FDes& d) {
    auto sigma = piecewise_bijection(d);
    auto col = colouring(d);
    std::vector<std::string> words;
    std::vector<char> seen(sigma.size(), 0);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (seen[i]) continue;
        std::string w;
        for (std::size_t j = i; !seen[j]; j = sigma[j]) {
            seen[j] = 1;
            w.push_back(col[j]);
        }
        words.push_back(min_rotation(w));
    }
    std::sort(words.begin(), words.end());
    std::string out = "des(";
    for (std::size_t i = 0; i < words.size(); ++i) out += (i ? "," : "") + words[i];
    return out + ")";
}

FDes des_from_colored(const std::vector<char>& colour, const Table& sigma) {
    FDes d;
    int n = static_cast<int>(colour.size());
    d.B = range_obj(n);
    for (int p = 0; p < n; ++p) {
        if (colour[p] == 'A')
            d.f.push_back(p);
        else
            d.g.push_back(p);
    }
    d.A = range_obj(static_cast<int>(d.f.size()));
    d.C = range_obj(static_cast<int>(d.g.size()));
    d.fp = compose_tables(sigma, d.f);
    d.gp = compose_tables(sigma, d.g);
    return d;
}

FDes des_from_key(const std::string& key) {
    if (key.rfind("des(", 0) != 0 || key.back() != ')') throw std::invalid_argument("bad class label: " + key);
    std::string body = key.substr(4, key.size() - 5);
    std::vector<char> colour;
    Table sigma;
    std::stringstream ss(body);
    std::string w;
    while (std::getline(ss, w, ',')) {
        if (w.empty()) continue;
        int start = static_cast<int>(colour.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] != 'A' && w[i] != 'C') throw std::invalid_argument("bad class label: " + key);
            colour.push_back(w[i]);
            sigma.push_back(start + static_cast<int>((i + 1) % w.size()));
        }
    }
    return des_from_colored(colour, sigma);
}

FDes dexsq_inverse(const FDes& d) { return {d.O, d.C, d.A, d.B, d.fp, d.gp, d.f, d.g}; }

bool is_diagonal(const FDes& d) { return d.f == d.fp && d.g == d.gp; }

FSquare des_component(const FDes& d, int which) {
    const Table& f = which == 0 ? d.f : d.fp;
    const Table& g = which == 0 ? d.g : d.gp;
    return {d.O, d.C, d.A, d.B, {Kind::M, d.O, d.C, {}}, {Kind::M, d.A, d.B, f}, {Kind::E, d.O, d.A, {}},
            {Kind::E, d.C, d.B, g}};
}

bool des_valid(const FinSet& c, const FDes& d) {
    return d.O == c.zero() && c.is_distinguished(des_component(d, 0)) && c.is_distinguished(des_component(d, 1));
}

std::vector<std::string> des_classes(int max_size) {
    std::set<std::pair<int, std::string>> keys;
    for (int n = 0; n <= max_size; ++n)
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<char> col(n);
            for (int p = 0; p < n; ++p) col[p] = (mask >> p) & 1 ? 'C' : 'A';
            for (auto& s : all_permutations(n)) keys.insert({n, des_key(des_from_colored(col, s))});
        }
    std::vector<std::string> out;
    for (auto& [n, k] : keys) out.push_back(k);
    return out;
}

FDes l_aut(const Table& alpha) {
    int n = static_cast<int>(alpha.size());
    return {FinSetObj{}, FinSetObj{}, range_obj(n), range_obj(n), identity_table(n), {}, alpha, {}};
}

FDes l_tilde(const Table& alpha) {
    int n = static_cast<int>(alpha.size());
    return {FinSetObj{}, range_obj(n), FinSetObj{}, range_obj(n), {}, alpha, {}, identity_table(n)};
}

FDes l_pair(const Table& alpha, const Table& beta) {
    int n = static_cast<int>(alpha.size());
    return {FinSetObj{}, FinSetObj{}, range_obj(n), range_obj(n), alpha, {}, beta, {}};
}

FDes standard_edge(int n) {
    return {FinSetObj{}, range_obj(n), FinSetObj{}, range_obj(n), {}, identity_table(n), {}, identity_table(n)};
}

// ---- pCGW constructions ----

AddObjectResult add_object_to_square(const FinSet& c, const FSquare& phi, const FinSetObj& d) {
    const auto &A = phi.bl, &B = phi.br, &C = phi.tr;
    auto O = c.zero();
    int a = A.size(), b = B.size(), cc = C.size(), n = d.size();
    auto BD = range_obj(b + n), CD = range_obj(cc + n), AD = range_obj(a + n);
    auto DB = BD, DC = CD, DA = AD;
    const Table& f = phi.bottom.amb;
    const Table& g = phi.right.amb;
    auto idD = identity_table(n);
    auto zm = [&](const FinSetObj& x) { return zero_to(c, Kind::M, x); };
    auto ze = [&](const FinSetObj& x) { return zero_to(c, Kind::E, x); };
    FMor fD{Kind::M, A, BD, f};                                  // f+D
    FMor g1{Kind::E, CD, BD, sum_tables(g, b, idD)};             // g+1
    FMor f1{Kind::M, AD, BD, sum_tables(f, b, idD)};             // f+1
    FMor gD{Kind::E, C, BD, g};                                  // g+D
    FMor c1D{Kind::M, C, CD, first_block(cc)};                   // 1+D on C
    FMor b1D{Kind::M, B, BD, first_block(b)};                    // 1+D on B
    FMor cC1{Kind::M, d, CD, second_block(n, cc)};               // C+1
    FMor qD{Kind::E, d, AD, second_block(n, a)};
    AddObjectResult r;
    r.squares.push_back({O, CD, A, BD, zm(CD), fD, ze(A), g1});
    r.squares.push_back({O, C, AD, BD, zm(C), f1, ze(AD), gD});
    r.squares.push_back({C, CD, B, BD, c1D, b1D, phi.right, g1});
    r.squares.push_back({d, CD, AD, BD, cC1, f1, qD, g1});
    FMor Df{Kind::M, A, DB, second_block(b, n).size() ? compose_tables(second_block(b, n), f) : Table{}};
    FMor oneg{Kind::E, DC, DB, sum_tables(idD, n, g)};
    FMor onef{Kind::M, DA, DB, sum_tables(idD, n, f)};
    FMor Dg{Kind::E, C, DB, compose_tables(second_block(b, n), g)};
    r.permuted.push_back({O, DC, A, DB, zm(DC), Df, ze(A), oneg});
    r.permuted.push_back({O, C, DA, DB, zm(C), onef, ze(DA), Dg});
    auto q = c.cokernel(fD);
    auto iso = find_e_iso(c, g1, q.right);
    if (!iso) throw ContractViolation("add_object_to_square: quotient is not isomorphic to C+D");
    r.quotient_iso = *iso;
    return r;
}

FSquare direct_sum_of_squares(const FinSet& c, const FSquare& p1, const FSquare& p2) {
    auto O = c.zero();
    int b = p1.br.size();
    auto AC = range_obj(p1.bl.size() + p2.bl.size());
    auto BD = range_obj(b + p2.br.size());
    auto V = range_obj(p1.tr.size() + p2.tr.size());
    FMor f{Kind::M, AC, BD, sum_tables(p1.bottom.amb, b, p2.bottom.amb)};
    FMor g{Kind::E, V, BD, sum_tables(p1.right.amb, b, p2.right.amb)};
    return {O, V, AC, BD, zero_to(c, Kind::M, V), f, zero_to(c, Kind::E, AC), g};
}

FDes des_sum(const FDes& x, const FDes& y) {
    int b = x.B.size();
    return {FinSetObj{},
            range_obj(x.C.size() + y.C.size()),
            range_obj(x.A.size() + y.A.size()),
            range_obj(b + y.B.size()),
            sum_tables(x.f, b, y.f),
            sum_tables(x.g, b, y.g),
            sum_tables(x.fp, b, y.fp),
            sum_tables(x.gp, b, y.gp)};
}

}  // namespace cgwk
