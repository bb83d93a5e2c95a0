#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace cgwk {

using json = nlohmann::json;

// A morphism payload: image of each source position, as positions of the target.
using Table = std::vector<int>;

enum class Kind { M, E };
enum class Orientation { Covariant, Contravariant };

inline const char* kind_name(Kind k) { return k == Kind::M ? "M" : "E"; }

struct EdgeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPCGW : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CategoryBudget {
    int maxObjectSize = 3;
    int maxFiltrationLength = 2;
    int sampleCount = 200;
    std::uint64_t rngSeed = 0;
};

inline json budget_json(const CategoryBudget& b) {
    return {{"maxObjectSize", b.maxObjectSize},
            {"maxFiltrationLength", b.maxFiltrationLength},
            {"sampleCount", b.sampleCount},
            {"rngSeed", b.rngSeed}};
}

// ---- tables ----

Table identity_table(int n);
Table compose_tables(const Table& g, const Table& f);  // g after f
bool is_injective(const Table& t, int codomain);
bool is_surjective(const Table& t, int codomain);
bool is_bijective(const Table& t, int codomain);
Table inverse_table(const Table& t);
// x with s∘x = t, for injective s
std::optional<Table> solve_post(const Table& s, const Table& t);
// x with x∘s = t, for surjective s onto {0..qsize-1}
std::optional<Table> solve_pre(const Table& s, int qsize, const Table& t);
std::vector<Table> all_injections(int a, int b);
std::vector<Table> all_functions(int a, int b);
std::vector<Table> all_permutations(int n);

// ---- morphisms and squares ----

template <class Obj>
struct Mor {
    Kind kind = Kind::M;
    Obj src, dst;
    Table amb;
    bool operator==(const Mor&) const = default;
};

template <class Obj>
struct DistSquare {
    Obj tl, tr, bl, br;
    Mor<Obj> top, bottom, left, right;  // top: tl->tr, bottom: bl->br, left: tl -o bl, right: tr -o br
    bool operator==(const DistSquare&) const = default;
};

// tl = O; A = bl, B = br, C = tr, f = bottom, g = right
template <class Obj>
using ExactSquare = DistSquare<Obj>;

template <class Obj>
struct DoubleExactSquare {
    Obj O, C, A, B;
    Table f, g, fp, gp;  // components (f, g) and (fp, gp)
    bool operator==(const DoubleExactSquare&) const = default;
};

template <class Obj>
struct FiltrationDiagram {
    Obj P0, P1, P2, P10, P20, P21;
    Mor<Obj> f1, g1;      // P0 -> P1 -> P2
    Mor<Obj> f2, g2, h2;  // P10 -o P1, P20 -o P2, P21 -o P2
    Mor<Obj> j1;          // P10 -> P20
    Mor<Obj> j2;          // P21 -o P20
};

enum class Dir { Horizontal, Vertical };

template <class C>
using ObjOf = typename C::Obj;

template <class C>
constexpr bool contravariant_e(Kind k) {
    return k == Kind::E && C::orientation == Orientation::Contravariant;
}

template <class C>
Mor<ObjOf<C>> compose(const C&, const Mor<ObjOf<C>>& g, const Mor<ObjOf<C>>& f) {
    if (g.kind != f.kind || !(f.dst == g.src))
        throw EdgeMismatch("compose: morphisms are not composable");
    Table t = contravariant_e<C>(f.kind) ? compose_tables(f.amb, g.amb) : compose_tables(g.amb, f.amb);
    return {f.kind, f.src, g.dst, std::move(t)};
}

template <class C>
Mor<ObjOf<C>> identity(const C& c, Kind k, const ObjOf<C>& x) {
    return {k, x, x, identity_table(c.size(x))};
}

template <class C>
std::optional<Mor<ObjOf<C>>> zero_mor(const C& c, Kind k, const ObjOf<C>& x) {
    auto ts = c.morphisms(k, c.zero(), x);
    if (ts.size() != 1) return std::nullopt;
    return Mor<ObjOf<C>>{k, c.zero(), x, ts[0]};
}

template <class C>
Mor<ObjOf<C>> zero_to(const C& c, Kind k, const ObjOf<C>& x) {
    auto m = zero_mor(c, k, x);
    if (!m) throw ContractViolation("no unique morphism out of the zero object");
    return *m;
}

template <class C>
bool well_typed(const C&, const DistSquare<ObjOf<C>>& s) {
    return s.top.kind == Kind::M && s.bottom.kind == Kind::M && s.left.kind == Kind::E &&
           s.right.kind == Kind::E && s.top.src == s.tl && s.top.dst == s.tr && s.bottom.src == s.bl &&
           s.bottom.dst == s.br && s.left.src == s.tl && s.left.dst == s.bl && s.right.src == s.tr &&
           s.right.dst == s.br;
}

template <class C>
bool commutes(const C& c, const DistSquare<ObjOf<C>>& s) {
    if (!well_typed(c, s)) return false;
    if constexpr (C::orientation == Orientation::Covariant)
        return compose_tables(s.right.amb, s.top.amb) == compose_tables(s.bottom.amb, s.left.amb);
    else
        return compose_tables(s.top.amb, s.left.amb) == compose_tables(s.right.amb, s.bottom.amb);
}

template <class C>
DistSquare<ObjOf<C>> compose_squares(const C& c, const DistSquare<ObjOf<C>>& s1,
                                     const DistSquare<ObjOf<C>>& s2, Dir dir) {
    if (dir == Dir::Horizontal) {
        if (!(s1.tr == s2.tl) || !(s1.br == s2.bl) || !(s1.right == s2.left))
            throw EdgeMismatch("horizontal paste: shared edge differs");
        return {s1.tl, s2.tr, s1.bl, s2.br, compose(c, s2.top, s1.top), compose(c, s2.bottom, s1.bottom),
                s1.left, s2.right};
    }
    if (!(s1.bl == s2.tl) || !(s1.br == s2.tr) || !(s1.bottom == s2.top))
        throw EdgeMismatch("vertical paste: shared edge differs");
    return {s1.tl, s1.tr, s2.bl, s2.br, s1.top, s2.bottom, compose(c, s2.left, s1.left),
            compose(c, s2.right, s1.right)};
}

template <class C>
ExactSquare<ObjOf<C>> formal_quotient(const C& c, const Mor<ObjOf<C>>& f) {
    auto sq = c.cokernel(f);
    if (!well_typed(c, sq) || !(sq.bottom == f) || !(sq.tl == c.zero()))
        throw ContractViolation("cokernel returned an ill-typed square");
    return sq;
}

// Solve an unknown M-morphism x: src -> dst from a commuting square whose other
// three sides are known; "e_src" is the E-side at x's source, "e_dst" at x's target,
// and "m" the parallel M-morphism between their other ends.
template <class C>
std::optional<Mor<ObjOf<C>>> solve_m_side(const C& c, const Mor<ObjOf<C>>& e_src, const Mor<ObjOf<C>>& e_dst,
                                          const Mor<ObjOf<C>>& m) {
    // covariant: e_dst∘x = m∘e_src ; contravariant: x∘e_src = e_dst∘m
    std::optional<Table> x;
    if constexpr (C::orientation == Orientation::Covariant)
        x = solve_post(e_dst.amb, compose_tables(m.amb, e_src.amb));
    else
        x = solve_pre(e_src.amb, c.size(e_src.src), compose_tables(e_dst.amb, m.amb));
    if (!x) return std::nullopt;
    return Mor<ObjOf<C>>{Kind::M, e_src.src, e_dst.src, *x};
}

template <class C>
FiltrationDiagram<ObjOf<C>> quotient_filtration(const C& c, const Mor<ObjOf<C>>& f1, const Mor<ObjOf<C>>& g1) {
    using Obj = ObjOf<C>;
    auto gf = compose(c, g1, f1);
    auto sf = formal_quotient(c, f1);
    auto sgf = formal_quotient(c, gf);
    auto sg = formal_quotient(c, g1);
    FiltrationDiagram<Obj> d;
    d.P0 = f1.src;
    d.P1 = f1.dst;
    d.P2 = g1.dst;
    d.P10 = sf.tr;
    d.P20 = sgf.tr;
    d.P21 = sg.tr;
    d.f1 = f1;
    d.g1 = g1;
    d.f2 = sf.right;
    d.g2 = sgf.right;
    d.h2 = sg.right;
    auto j1 = solve_m_side(c, d.f2, d.g2, g1);
    if (!j1) throw ContractViolation("quotient_filtration: j1 does not exist");
    d.j1 = *j1;
    std::optional<Table> j2;
    if constexpr (C::orientation == Orientation::Covariant)
        j2 = solve_post(d.g2.amb, d.h2.amb);
    else
        j2 = solve_pre(d.g2.amb, c.size(d.P20), d.h2.amb);
    if (!j2) throw ContractViolation("quotient_filtration: j2 does not exist");
    d.j2 = {Kind::E, d.P21, d.P20, *j2};
    return d;
}

// sq_f, sq_mid, sq_q, sq_gf, sq_g
template <class C>
std::array<DistSquare<ObjOf<C>>, 5> filtration_squares(const C& c, const FiltrationDiagram<ObjOf<C>>& d) {
    auto O = c.zero();
    auto zm = [&](const ObjOf<C>& x) { return zero_to(c, Kind::M, x); };
    auto ze = [&](const ObjOf<C>& x) { return zero_to(c, Kind::E, x); };
    DistSquare<ObjOf<C>> sq_f{O, d.P10, d.P0, d.P1, zm(d.P10), d.f1, ze(d.P0), d.f2};
    DistSquare<ObjOf<C>> sq_mid{d.P10, d.P20, d.P1, d.P2, d.j1, d.g1, d.f2, d.g2};
    DistSquare<ObjOf<C>> sq_q{O, d.P21, d.P10, d.P20, zm(d.P21), d.j1, ze(d.P10), d.j2};
    DistSquare<ObjOf<C>> sq_gf{O, d.P20, d.P0, d.P2, zm(d.P20), compose(c, d.g1, d.f1), ze(d.P0), d.g2};
    DistSquare<ObjOf<C>> sq_g{O, d.P21, d.P1, d.P2, zm(d.P21), d.g1, ze(d.P1), d.h2};
    return {sq_f, sq_mid, sq_q, sq_gf, sq_g};
}

template <class C>
bool check_filtration(const C& c, const FiltrationDiagram<ObjOf<C>>& d) {
    for (auto& s : filtration_squares(c, d))
        if (!c.is_distinguished(s)) return false;
    return compose(c, d.g2, d.j2) == d.h2;
}

// Isomorphism gamma: a -> b with target∘phi(gamma) = source-side E-morphism.
template <class C>
std::optional<Table> find_e_iso(const C& c, const Mor<ObjOf<C>>& g_canon, const Mor<ObjOf<C>>& g_other) {
    for (auto& t : c.isos(g_other.src, g_canon.src)) {
        auto e = c.phi({Kind::M, g_other.src, g_canon.src, t});
        if (compose(c, g_canon, e) == g_other) return t;
    }
    return std::nullopt;
}

template <class C>
std::optional<Table> find_m_iso(const C& c, const Mor<ObjOf<C>>& f_canon, const Mor<ObjOf<C>>& f_other) {
    for (auto& t : c.isos(f_other.src, f_canon.src)) {
        Mor<ObjOf<C>> m{Kind::M, f_other.src, f_canon.src, t};
        if (compose(c, f_canon, m) == f_other) return t;
    }
    return std::nullopt;
}

// ---- axiom report ----

enum class Verdict { Pass, Fail, Skipped };

struct AxiomResult {
    Verdict verdict = Verdict::Pass;
    long checked = 0;
    json witness;
    std::string note;
};

struct AxiomReport {
    std::map<std::string, AxiomResult> axioms;
    bool any_fail() const;
    bool any_skipped() const;
    json to_json() const;
};

template <class C>
json mor_json(const C& c, const Mor<ObjOf<C>>& m) {
    return {{"kind", kind_name(m.kind)}, {"src", c.to_json(m.src)}, {"dst", c.to_json(m.dst)}, {"table", m.amb}};
}

template <class C>
json square_json(const C& c, const DistSquare<ObjOf<C>>& s) {
    return {{"tl", c.to_json(s.tl)},       {"tr", c.to_json(s.tr)},         {"bl", c.to_json(s.bl)},
            {"br", c.to_json(s.br)},       {"top", s.top.amb},              {"bottom", s.bottom.amb},
            {"left", s.left.amb},          {"right", s.right.amb}};
}

namespace detail {

inline void fail(AxiomResult& r, json w, std::string note) {
    if (r.verdict == Verdict::Fail) return;
    r.verdict = Verdict::Fail;
    r.witness = std::move(w);
    r.note = std::move(note);
}

template <class C>
void check_zero(const C& c, const std::vector<ObjOf<C>>& objs, AxiomResult& r) {
    for (auto& x : objs) {
        for (Kind k : {Kind::M, Kind::E}) {
            ++r.checked;
            auto n = c.morphisms(k, c.zero(), x).size();
            if (n != 1) {
                fail(r, {{"object", c.to_json(x)}, {"kind", kind_name(k)}, {"count", n}},
                     "zero object is not initial");
                return;
            }
        }
    }
}

template <class C>
void check_isos(const C& c, const std::vector<ObjOf<C>>& objs, const CategoryBudget& b, AxiomResult& r) {
    using M = Mor<ObjOf<C>>;
    std::vector<M> isos;
    for (auto& x : objs)
        for (auto& y : objs) {
            if (c.size(x) != c.size(y)) continue;
            for (auto& t : c.isos(x, y)) {
                ++r.checked;
                M m{Kind::M, x, y, t};
                if (!c.is_member(Kind::M, x, y, t)) {
                    fail(r, mor_json(c, m), "ambient isomorphism is not an M-morphism");
                    return;
                }
                auto e = c.phi(m);
                if (!c.is_member(Kind::E, e.src, e.dst, e.amb)) {
                    fail(r, mor_json(c, m), "phi of an isomorphism is not an E-morphism");
                    return;
                }
                isos.push_back(m);
            }
        }
    for (auto& x : objs) {
        ++r.checked;
        if (!(c.phi(identity(c, Kind::M, x)) == identity(c, Kind::E, x))) {
            fail(r, c.to_json(x), "phi does not preserve identities");
            return;
        }
    }
    if (isos.empty()) return;
    std::mt19937_64 rng(b.rngSeed);
    std::uniform_int_distribution<std::size_t> pick(0, isos.size() - 1);
    for (int s = 0; s < b.sampleCount; ++s) {
        auto& f = isos[pick(rng)];
        // a second iso out of f.dst
        std::vector<const M*> nxt;
        for (auto& g : isos)
            if (g.src == f.dst) nxt.push_back(&g);
        if (nxt.empty()) continue;
        auto& g = *nxt[pick(rng) % nxt.size()];
        ++r.checked;
        if (!(c.phi(compose(c, g, f)) == compose(c, c.phi(g), c.phi(f)))) {
            fail(r, {{"f", mor_json(c, f)}, {"g", mor_json(c, g)}}, "phi is not functorial");
            return;
        }
    }
}

template <class C>
void check_monic(const C& c, const std::vector<ObjOf<C>>& objs, AxiomResult& r) {
    using M = Mor<ObjOf<C>>;
    for (Kind k : {Kind::M, Kind::E})
        for (auto& bo : objs)
            for (auto& co : objs)
                for (auto& ft : c.morphisms(k, bo, co)) {
                    M f{k, bo, co, ft};
                    for (auto& ao : objs) {
                        std::map<Table, Table> seen;
                        for (auto& gt : c.morphisms(k, ao, bo)) {
                            ++r.checked;
                            auto fg = compose(c, f, M{k, ao, bo, gt}).amb;
                            auto [it, fresh] = seen.emplace(fg, gt);
                            if (!fresh) {
                                fail(r,
                                     {{"f", mor_json(c, f)},
                                      {"g", mor_json(c, M{k, ao, bo, it->second})},
                                      {"h", mor_json(c, M{k, ao, bo, gt})}},
                                     std::string(kind_name(k)) + "-morphism is not monic");
                                return;
                            }
                        }
                    }
                }
}

template <class C>
void check_kernels(const C& c, const std::vector<ObjOf<C>>& objs, AxiomResult& r) {
    using M = Mor<ObjOf<C>>;
    using S = DistSquare<ObjOf<C>>;
    auto O = c.zero();
    for (auto& a : objs)
        for (auto& bo : objs)
            for (auto& ft : c.morphisms(Kind::M, a, bo)) {
                M f{Kind::M, a, bo, ft};
                ++r.checked;
                auto sq = c.cokernel(f);
                if (!well_typed(c, sq) || !(sq.bottom == f) || !(sq.tl == O))
                    throw ContractViolation("cokernel returned an ill-typed square");
                if (!c.is_distinguished(sq)) {
                    fail(r, square_json(c, sq), "canonical cokernel square is not distinguished");
                    return;
                }
                auto za = zero_mor(c, Kind::E, a);
                if (!za) continue;
                for (auto& cp : objs) {
                    auto zc = zero_mor(c, Kind::M, cp);
                    if (!zc) continue;
                    for (auto& gt : c.morphisms(Kind::E, cp, bo)) {
                        M g{Kind::E, cp, bo, gt};
                        S other{O, cp, a, bo, *zc, f, *za, g};
                        ++r.checked;
                        if (!c.is_distinguished(other)) continue;
                        if (!find_e_iso(c, sq.right, g)) {
                            fail(r, {{"canonical", square_json(c, sq)}, {"competitor", square_json(c, other)}},
                                 "formal cokernel is not unique up to isomorphism");
                            return;
                        }
                    }
                }
            }
    for (auto& cq : objs)
        for (auto& bo : objs)
            for (auto& gt : c.morphisms(Kind::E, cq, bo)) {
                M g{Kind::E, cq, bo, gt};
                ++r.checked;
                auto sq = c.kernel(g);
                if (!well_typed(c, sq) || !(sq.right == g) || !(sq.tl == O))
                    throw ContractViolation("kernel returned an ill-typed square");
                if (!c.is_distinguished(sq)) {
                    fail(r, square_json(c, sq), "canonical kernel square is not distinguished");
                    return;
                }
                auto zc = zero_mor(c, Kind::M, cq);
                if (!zc) continue;
                for (auto& ap : objs) {
                    auto za = zero_mor(c, Kind::E, ap);
                    if (!za) continue;
                    for (auto& ft : c.morphisms(Kind::M, ap, bo)) {
                        M f{Kind::M, ap, bo, ft};
                        S other{O, cq, ap, bo, *zc, f, *za, g};
                        ++r.checked;
                        if (!c.is_distinguished(other)) continue;
                        if (!find_m_iso(c, sq.bottom, f)) {
                            fail(r, {{"canonical", square_json(c, sq)}, {"competitor", square_json(c, other)}},
                                 "formal kernel is not unique up to isomorphism");
                            return;
                        }
                    }
                }
            }
}

template <class C>
void check_closure(const C& c, const std::vector<ObjOf<C>>& objs, const CategoryBudget& b, AxiomResult& r) {
    using M = Mor<ObjOf<C>>;
    using S = DistSquare<ObjOf<C>>;
    // composition, through the staircase of composable pairs
    for (auto& a : objs)
        for (auto& bo : objs)
            for (auto& ft : c.morphisms(Kind::M, a, bo))
                for (auto& co : objs)
                    for (auto& gt : c.morphisms(Kind::M, bo, co)) {
                        M f{Kind::M, a, bo, ft}, g{Kind::M, bo, co, gt};
                        ++r.checked;
                        FiltrationDiagram<ObjOf<C>> d;
                        try {
                            d = quotient_filtration(c, f, g);
                        } catch (const ContractViolation& e) {
                            fail(r, {{"f", mor_json(c, f)}, {"g", mor_json(c, g)}}, e.what());
                            return;
                        }
                        auto sq = filtration_squares(c, d);
                        for (int i = 0; i < 5; ++i)
                            if (!c.is_distinguished(sq[i])) {
                                fail(r, {{"square", i}, {"value", square_json(c, sq[i])}},
                                     "staircase square is not distinguished");
                                return;
                            }
                        auto hz = compose_squares(c, sq[0], sq[1], Dir::Horizontal);
                        auto vt = compose_squares(c, sq[2], sq[1], Dir::Vertical);
                        if (!c.is_distinguished(hz) || !c.is_distinguished(vt)) {
                            fail(r, {{"horizontal", square_json(c, hz)}, {"vertical", square_json(c, vt)}},
                                 "pasted square is not distinguished");
                            return;
                        }
                    }
    // isomorphism closure and goodness, on samples
    std::vector<M> emor, mmor;
    for (auto& x : objs)
        for (auto& y : objs) {
            for (auto& t : c.morphisms(Kind::E, x, y)) emor.push_back({Kind::E, x, y, t});
            for (auto& t : c.morphisms(Kind::M, x, y)) mmor.push_back({Kind::M, x, y, t});
        }
    auto iso_out = [&](const ObjOf<C>& x, std::mt19937_64& rng) -> std::optional<M> {
        std::vector<M> all;
        for (auto& y : objs)
            if (c.size(y) == c.size(x))
                for (auto& t : c.isos(x, y)) all.push_back({Kind::M, x, y, t});
        if (all.empty()) return std::nullopt;
        return all[rng() % all.size()];
    };
    std::mt19937_64 rng(b.rngSeed + 1);
    for (int s = 0; s < b.sampleCount && !emor.empty(); ++s) {
        auto l = emor[rng() % emor.size()];
        auto t = iso_out(l.src, rng);
        auto bt = iso_out(l.dst, rng);
        if (!t || !bt) continue;
        Table ra;
        if constexpr (C::orientation == Orientation::Covariant)
            ra = compose_tables(bt->amb, compose_tables(l.amb, inverse_table(t->amb)));
        else
            ra = compose_tables(t->amb, compose_tables(l.amb, inverse_table(bt->amb)));
        ++r.checked;
        if (!c.is_member(Kind::E, t->dst, bt->dst, ra)) {
            fail(r, {{"left", mor_json(c, l)}}, "transported E-morphism is not an E-morphism");
            return;
        }
        S sq{l.src, t->dst, l.dst, bt->dst, *t, *bt, l, M{Kind::E, t->dst, bt->dst, ra}};
        if (!commutes(c, sq) || !c.is_distinguished(sq)) {
            fail(r, square_json(c, sq), "square with isomorphic M-sides is not distinguished");
            return;
        }
    }
    for (int s = 0; s < b.sampleCount && !mmor.empty(); ++s) {
        auto m = mmor[rng() % mmor.size()];
        auto t = iso_out(m.src, rng);
        auto bt = iso_out(m.dst, rng);
        if (!t || !bt) continue;
        auto l = c.phi(*t);
        auto rr = c.phi(*bt);
        Table mb;
        if constexpr (C::orientation == Orientation::Covariant)
            mb = compose_tables(rr.amb, compose_tables(m.amb, inverse_table(l.amb)));
        else
            mb = compose_tables(inverse_table(rr.amb), compose_tables(m.amb, l.amb));
        ++r.checked;
        if (!c.is_member(Kind::M, l.dst, rr.dst, mb)) {
            fail(r, {{"top", mor_json(c, m)}}, "transported M-morphism is not an M-morphism");
            return;
        }
        S sq{m.src, m.dst, l.dst, rr.dst, m, M{Kind::M, l.dst, rr.dst, mb}, l, rr};
        if (!commutes(c, sq) || !c.is_distinguished(sq)) {
            fail(r, square_json(c, sq), "square with isomorphic E-sides is not distinguished");
            return;
        }
    }
}

}  // namespace detail

template <class C>
AxiomReport verify_axioms(const C& c, const CategoryBudget& b) {
    AxiomReport rep;
    auto objs = c.objects(b.maxObjectSize);
    auto guarded = [&](const char* key, auto&& fn) {
        try {
            fn(rep.axioms[key]);
        } catch (const std::exception& e) {
            detail::fail(rep.axioms[key], json::object(), std::string("instance contract violation: ") + e.what());
        }
    };
    guarded("Z", [&](AxiomResult& r) { detail::check_zero(c, objs, r); });
    guarded("I", [&](AxiomResult& r) { detail::check_isos(c, objs, b, r); });
    guarded("M", [&](AxiomResult& r) { detail::check_monic(c, objs, r); });
    guarded("K", [&](AxiomResult& r) { detail::check_kernels(c, objs, r); });
    guarded("closure", [&](AxiomResult& r) { detail::check_closure(c, objs, b, r); });
    if constexpr (C::pcgw) {
        try {
            c.verify_pcgw(b, rep);
        } catch (const std::exception& e) {
            detail::fail(rep.axioms["A"], json::object(), std::string("instance contract violation: ") + e.what());
        }
    } else {
        for (auto k : {"A", "PQ", "DS"}) {
            auto& r = rep.axioms[k];
            r.verdict = Verdict::Skipped;
            r.note = "instance provides no restricted pushout";
        }
    }
    return rep;
}

}  // namespace cgwk
