#include "cgwk/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "cgwk/parallel.hpp"

namespace cgwk {

namespace {

bool has(const Flats& f, Mask x) { return std::binary_search(f.begin(), f.end(), x); }

Flats normalized(Flats f) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

// bits of x inside keep, packed in increasing order
Mask compress(Mask x, Mask keep) {
    Mask r = 0;
    int j = 0;
    for (int i = 0; i < 32; ++i)
        if (keep >> i & 1) {
            if (x >> i & 1) r |= Mask(1) << j;
            ++j;
        }
    return r;
}

Mask preimage(const Table& t, Mask x) {
    Mask r = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (x >> t[i] & 1) r |= Mask(1) << i;
    return r;
}

Mask image(const Table& t, Mask x) {
    Mask r = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (x >> i & 1) r |= Mask(1) << t[i];
    return r;
}

std::vector<int> flat_ranks(const Flats& f) {
    std::vector<std::size_t> ord(f.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(),
                     [&](std::size_t a, std::size_t b) { return std::popcount(f[a]) < std::popcount(f[b]); });
    std::vector<int> r(f.size(), 0);
    for (std::size_t a = 0; a < ord.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) {
            Mask x = f[ord[b]], y = f[ord[a]];
            if (x != y && (x & y) == x) r[ord[a]] = std::max(r[ord[a]], r[ord[b]] + 1);
        }
    return r;
}

std::size_t flat_index(const Flats& f, Mask x) {
    return static_cast<std::size_t>(std::lower_bound(f.begin(), f.end(), x) - f.begin());
}

Mask closure_in(const Flats& f, Mask x, Mask ground) {
    Mask r = ground;
    for (Mask g : f)
        if ((g & x) == x) r &= g;
    return r;
}

using Cut = std::uint64_t;

std::vector<Cut> modular_cuts(const Matroid& m) {
    const auto& f = m.flats;
    if (f.size() > 64) throw SearchBudgetExceeded("too many flats for modular cut search");
    auto r = flat_ranks(f);
    std::size_t nf = f.size();
    auto close = [&](Cut c) {
        for (bool grew = true; grew;) {
            grew = false;
            for (std::size_t i = 0; i < nf; ++i)
                if (c >> i & 1)
                    for (std::size_t j = 0; j < nf; ++j)
                        if (!(c >> j & 1) && (f[i] & f[j]) == f[i]) {
                            c |= Cut(1) << j;
                            grew = true;
                        }
            for (std::size_t i = 0; i < nf; ++i)
                if (c >> i & 1)
                    for (std::size_t j = i + 1; j < nf; ++j)
                        if (c >> j & 1) {
                            auto meet = flat_index(f, f[i] & f[j]);
                            if (c >> meet & 1) continue;
                            auto join = flat_index(f, closure_in(f, f[i] | f[j], m.ground()));
                            if (r[i] + r[j] == r[meet] + r[join]) {
                                c |= Cut(1) << meet;
                                grew = true;
                            }
                        }
        }
        return c;
    };
    std::set<Cut> seen{0};
    std::vector<Cut> todo{0};
    while (!todo.empty()) {
        Cut c = todo.back();
        todo.pop_back();
        for (std::size_t i = 0; i < nf; ++i) {
            if (c >> i & 1) continue;
            Cut d = close(c | Cut(1) << i);
            if (seen.insert(d).second) todo.push_back(d);
        }
    }
    return {seen.begin(), seen.end()};
}

Matroid extend(const Matroid& m, Cut cut) {
    const auto& f = m.flats;
    Mask e = Mask(1) << m.n;
    Flats out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (cut >> i & 1) {
            out.push_back(f[i] | e);
            continue;
        }
        out.push_back(f[i]);
        bool covered_in_cut = false;
        for (std::size_t j = 0; j < f.size() && !covered_in_cut; ++j) {
            if (!(cut >> j & 1) || f[j] == f[i] || (f[i] & f[j]) != f[i]) continue;
            bool cover = true;
            for (std::size_t k = 0; k < f.size() && cover; ++k)
                if (f[k] != f[i] && f[k] != f[j] && (f[i] & f[k]) == f[i] && (f[k] & f[j]) == f[k]) cover = false;
            covered_in_cut = cover;
        }
        if (!covered_in_cut) out.push_back(f[i] | e);
    }
    return {m.n + 1, normalized(out)};
}

}  // namespace

bool is_matroid(const Flats& flats, Mask ground) {
    auto f = normalized(flats);
    if (!has(f, ground)) return false;
    for (Mask x : f)
        if ((x & ground) != x) return false;
    for (Mask x : f)
        for (Mask y : f)
            if (!has(f, x & y)) return false;
    for (Mask x : f) {
        // minimal flats strictly above x
        Mask seen = 0;
        for (Mask y : f) {
            if (y == x || (x & y) != x) continue;
            bool minimal = true;
            for (Mask z : f)
                if (z != x && z != y && (x & z) == x && (z & y) == z) minimal = false;
            if (!minimal) continue;
            Mask part = y & ~x;
            if (seen & part) return false;
            seen |= part;
        }
        if (seen != (ground & ~x)) return false;
    }
    return true;
}

Matroid make_matroid(int n, Flats flats) {
    if (n < 1 || n > 31) throw InvalidMatroid("ground size out of range");
    Matroid m{n, normalized(std::move(flats))};
    if (!is_matroid(m.flats, m.ground())) throw InvalidMatroid("flat axioms fail");
    for (Mask x : m.flats)
        if (!(x & 1)) throw InvalidMatroid("the basepoint must lie in every flat");
    return m;
}

Matroid basepoint_matroid() { return {1, {1}}; }

Matroid free_matroid(int k) {
    Flats f;
    for (Mask s = 0; s < (Mask(1) << k); ++s) f.push_back(s << 1 | 1);
    return {k + 1, normalized(f)};
}

Matroid uniform_matroid(int r, int k) {
    Flats f;
    Mask g = (Mask(1) << (k + 1)) - 1;
    for (Mask s = 0; s < (Mask(1) << k); ++s)
        if (std::popcount(s) < r) f.push_back(s << 1 | 1);
    f.push_back(g);
    return {k + 1, normalized(f)};
}

Mask closure(const Matroid& m, Mask x) { return closure_in(m.flats, x, m.ground()); }

int rank_of(const Matroid& m, Mask x) {
    auto r = flat_ranks(m.flats);
    return r[flat_index(m.flats, closure(m, x))];
}

int rank(const Matroid& m) { return rank_of(m, m.ground()); }

Matroid restriction(const Matroid& m, Mask s) {
    if ((s & ~m.ground()) || (s & 1)) throw InvalidSubset("restriction set must avoid the basepoint");
    Mask keep = s | 1;
    Flats f;
    for (Mask x : m.flats) f.push_back(compress(x & keep, keep));
    return {std::popcount(keep), normalized(f)};
}

Matroid contraction(const Matroid& m, Mask s) {
    if ((s & ~m.ground()) || (s & 1)) throw InvalidSubset("contraction set must avoid the basepoint");
    Mask keep = m.ground() & ~s;
    Flats f;
    for (Mask x : m.flats)
        if ((x & s) == s) f.push_back(compress(x, keep));
    return {std::popcount(keep), normalized(f)};
}

Matroid matroid_sum(const Matroid& a, const Matroid& b) {
    Flats f;
    for (Mask x : a.flats)
        for (Mask y : b.flats) f.push_back(x | (y >> 1) << a.n);
    return {a.n + b.n - 1, normalized(f)};
}

Matroid relabel(const Matroid& m, const Table& perm) {
    Flats f;
    for (Mask x : m.flats) f.push_back(image(perm, x));
    return {m.n, normalized(f)};
}

Matroid canonical_matroid(const Matroid& m) {
    Table perm = identity_table(m.n);
    Matroid best = m;
    do {
        auto r = relabel(m, perm);
        if (r.flats < best.flats) best = std::move(r);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return best;
}

bool is_strong_map(const Matroid& src, const Matroid& dst, const Table& t) {
    if (static_cast<int>(t.size()) != src.n || t.empty() || t[0] != 0) return false;
    for (int v : t)
        if (v < 0 || v >= dst.n) return false;
    for (Mask g : dst.flats)
        if (!has(src.flats, preimage(t, g))) return false;
    return true;
}

Classification classify_morphism(const Matroid& src, const Matroid& dst, const Table& t) {
    Classification c;
    c.strong = is_strong_map(src, dst, t);
    if (!c.strong) return c;
    MatroidCat cat;
    if (is_injective(t, dst.n) && cat.is_member(Kind::M, src, dst, t)) {
        c.is_m = true;
        c.m_witness = image(t, src.ground()) & ~Mask(1);
    }
    // as an ambient contraction src ->> src/S = dst
    if (cat.is_member(Kind::E, dst, src, t)) {
        c.is_e = true;
        c.e_witness = preimage(t, 1) & ~Mask(1);
    }
    return c;
}

const std::vector<Matroid>& labeled_matroids(int k) {
    static std::mutex mu;
    static std::vector<std::vector<Matroid>> cache{{basepoint_matroid()}};
    std::lock_guard<std::mutex> lock(mu);
    if (k < 0 || k > 7) throw SearchBudgetExceeded("labeled enumeration is capped at 7 elements");
    while (static_cast<int>(cache.size()) <= k) {
        std::vector<Matroid> next;
        for (auto& m : cache.back())
            for (Cut c : modular_cuts(m)) next.push_back(extend(m, c));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cache.push_back(std::move(next));
    }
    return cache[k];
}

const std::vector<Matroid>& matroid_classes(int k) {
    static std::mutex mu;
    static std::map<int, std::vector<Matroid>> cache;
    const auto& all = labeled_matroids(k);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::set<Matroid> reps;
    for (auto& m : all) reps.insert(canonical_matroid(m));
    return cache[k] = std::vector<Matroid>(reps.begin(), reps.end());
}

// ---- MatroidCat ----

std::vector<Matroid> MatroidCat::objects(int max_size) const {
    std::vector<Matroid> out;
    for (int k = 0; k <= max_size; ++k) {
        auto& c = matroid_classes(k);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

bool MatroidCat::is_member(Kind k, const Obj& a, const Obj& b, const Table& t) const {
    if (k == Kind::M) {
        if (static_cast<int>(t.size()) != a.n || t.empty() || t[0] != 0 || !is_injective(t, b.n)) return false;
        Flats f;
        for (Mask g : b.flats) f.push_back(preimage(t, g));
        return normalized(f) == a.flats;
    }
    // t: ground(b) ->> ground(a), collapsing S to the basepoint
    if (static_cast<int>(t.size()) != b.n || t.empty() || t[0] != 0) return false;
    std::vector<int> hits(a.n, 0);
    for (int v : t) {
        if (v < 0 || v >= a.n) return false;
        ++hits[v];
    }
    for (int i = 1; i < a.n; ++i)
        if (hits[i] != 1) return false;
    Mask s = preimage(t, 1);
    Flats f;
    for (Mask x : b.flats)
        if ((x & s) == s) f.push_back(image(t, x));
    return normalized(f) == a.flats;
}

std::vector<Table> MatroidCat::morphisms(Kind k, const Obj& a, const Obj& b) const {
    auto key = std::make_tuple(static_cast<int>(k), a, b);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    std::vector<Table> out;
    if (k == Kind::M) {
        if (a.n <= b.n)
            for (auto& inj : all_injections(a.n - 1, b.n - 1)) {
                Table t{0};
                for (int v : inj) t.push_back(v + 1);
                if (is_member(k, a, b, t)) out.push_back(t);
            }
    } else if (a.n <= b.n) {
        // choose the images in b of the non-basepoint elements of a
        for (auto& inj : all_injections(a.n - 1, b.n - 1)) {
            Table t(b.n, 0);
            for (std::size_t i = 0; i < inj.size(); ++i) t[inj[i] + 1] = static_cast<int>(i) + 1;
            if (is_member(k, a, b, t)) out.push_back(t);
        }
        std::sort(out.begin(), out.end());
    }
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, out);
    return out;
}

std::vector<Table> MatroidCat::isos(const Obj& a, const Obj& b) const {
    std::vector<Table> out;
    if (a.n != b.n) return out;
    Table perm = identity_table(a.n);
    do {
        if (is_member(Kind::M, a, b, perm)) out.push_back(perm);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return out;
}

bool MatroidCat::pushout_part(const DistSquare<Obj>& s) const {
    // span tl <- bl -> br, cocone into tr
    int nt = s.tl.n, nb = s.br.n;
    std::vector<int> parent(nt + nb);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int x = 0; x < s.bl.n; ++x) parent[find(s.left.amb[x])] = find(nt + s.bottom.amb[x]);
    std::map<int, int> cls;
    for (int x = 0; x < nt + nb; ++x) {
        int to = x < nt ? s.top.amb[x] : s.right.amb[x - nt];
        auto [it, fresh] = cls.emplace(find(x), to);
        if (!fresh && it->second != to) return false;
    }
    if (static_cast<int>(cls.size()) != s.tr.n) return false;
    std::vector<char> hit(s.tr.n, 0);
    for (auto& [k, v] : cls) {
        if (hit[v]) return false;
        hit[v] = 1;
    }
    Flats fin;
    for (Mask x = 0; x <= s.tr.ground(); ++x) {
        if (!(x & 1)) continue;
        if (has(s.tl.flats, preimage(s.top.amb, x)) && has(s.br.flats, preimage(s.right.amb, x))) fin.push_back(x);
    }
    return fin == s.tr.flats;
}

bool MatroidCat::pullback_part(const DistSquare<Obj>& s) const {
    // cospan tl -> tr <- br, cone from bl
    std::set<std::pair<int, int>> pairs;
    for (int x = 0; x < s.tl.n; ++x)
        for (int y = 0; y < s.br.n; ++y)
            if (s.top.amb[x] == s.right.amb[y]) pairs.insert({x, y});
    if (static_cast<int>(pairs.size()) != s.bl.n) return false;
    std::set<std::pair<int, int>> got;
    for (int x = 0; x < s.bl.n; ++x) got.insert({s.left.amb[x], s.bottom.amb[x]});
    if (got != pairs) return false;
    Flats gen;
    for (Mask f : s.tl.flats) gen.push_back(preimage(s.left.amb, f));
    for (Mask g : s.br.flats) gen.push_back(preimage(s.bottom.amb, g));
    gen = normalized(gen);
    if (s.bl.n - 1 > 6) throw BudgetExhausted("pullback test beyond 6 elements");
    Flats meet;
    bool first = true;
    for (auto& w : labeled_matroids(s.bl.n - 1)) {
        if (!std::includes(w.flats.begin(), w.flats.end(), gen.begin(), gen.end())) continue;
        if (first) {
            meet = w.flats;
            first = false;
        } else {
            Flats r;
            std::set_intersection(meet.begin(), meet.end(), w.flats.begin(), w.flats.end(), std::back_inserter(r));
            meet = std::move(r);
        }
    }
    return !first && meet == s.bl.flats;
}

bool MatroidCat::is_distinguished(const DistSquare<Obj>& s) const {
    if (!well_typed(*this, s)) return false;
    if (!is_member(Kind::M, s.tl, s.tr, s.top.amb) || !is_member(Kind::M, s.bl, s.br, s.bottom.amb) ||
        !is_member(Kind::E, s.tl, s.bl, s.left.amb) || !is_member(Kind::E, s.tr, s.br, s.right.amb))
        return false;
    if (!commutes(*this, s)) return false;
    return pushout_part(s) && pullback_part(s);
}

DistSquare<Matroid> MatroidCat::cokernel(const Mor<Obj>& f) const {
    Mask img = image(f.amb, f.src.ground());
    Mask s = img & ~Mask(1);
    auto q = contraction(f.dst, s);
    Table r(f.dst.n, 0);
    int j = 1;
    for (int i = 1; i < f.dst.n; ++i)
        if (!(img >> i & 1)) r[i] = j++;
    auto O = zero();
    return {O,
            q,
            f.src,
            f.dst,
            {Kind::M, O, q, {0}},
            f,
            {Kind::E, O, f.src, Table(f.src.n, 0)},
            {Kind::E, q, f.dst, r}};
}

DistSquare<Matroid> MatroidCat::kernel(const Mor<Obj>& g) const {
    Mask s = preimage(g.amb, 1) & ~Mask(1);
    auto k = restriction(g.dst, s);
    Table b{0};
    for (int i = 1; i < g.dst.n; ++i)
        if (s >> i & 1) b.push_back(i);
    auto O = zero();
    return {O, g.src, k, g.dst, {Kind::M, O, g.src, {0}}, {Kind::M, k, g.dst, b}, {Kind::E, O, k, Table(k.n, 0)}, g};
}

MatroidCat::Sum MatroidCat::direct_sum(const Obj& x, const Obj& y) const {
    auto s = matroid_sum(x, y);
    Table px = identity_table(x.n), py{0}, qx(s.n, 0), qy(s.n, 0);
    for (int i = 1; i < y.n; ++i) py.push_back(x.n - 1 + i);
    for (int i = 1; i < x.n; ++i) qx[i] = i;
    for (int i = 1; i < y.n; ++i) qy[x.n - 1 + i] = i;
    return {s, {Kind::M, x, s, px}, {Kind::M, y, s, py}, {Kind::E, x, s, qx}, {Kind::E, y, s, qy}};
}

json MatroidCat::to_json(const Obj& x) const {
    json fl = json::array();
    for (Mask f : x.flats) {
        json e = json::array();
        for (int i = 0; i < x.n; ++i)
            if (f >> i & 1) e.push_back(i);
        fl.push_back(e);
    }
    return {{"n", x.n}, {"flats", fl}};
}

// ---- named matroids ----

NamedMatroid named_from_json(const json& j) {
    NamedMatroid r;
    auto bp = j.at("basepoint").get<std::string>();
    r.names.push_back(bp);
    for (auto& g : j.at("ground")) {
        auto s = g.get<std::string>();
        if (s == bp) continue;
        if (std::find(r.names.begin(), r.names.end(), s) != r.names.end()) throw InvalidMatroid("repeated element " + s);
        r.names.push_back(s);
    }
    if (r.names.size() > 31) throw SearchBudgetExceeded("ground set too large");
    Flats f;
    for (auto& fl : j.at("flats")) {
        Mask x = 0;
        for (auto& e : fl) {
            auto it = std::find(r.names.begin(), r.names.end(), e.get<std::string>());
            if (it == r.names.end()) throw InvalidMatroid("flat mentions an unknown element");
            x |= Mask(1) << (it - r.names.begin());
        }
        f.push_back(x);
    }
    r.m = make_matroid(static_cast<int>(r.names.size()), f);
    return r;
}

json named_to_json(const NamedMatroid& x) {
    json fl = json::array();
    for (Mask f : x.m.flats) {
        json e = json::array();
        for (int i = 0; i < x.m.n; ++i)
            if (f >> i & 1) e.push_back(x.names[i]);
        fl.push_back(e);
    }
    return {{"ground", x.names}, {"basepoint", x.names[0]}, {"flats", fl}};
}

NamedMatroid named_restriction(const NamedMatroid& x, const std::vector<std::string>& s) {
    Mask keep = 0;
    for (auto& e : s) {
        auto it = std::find(x.names.begin(), x.names.end(), e);
        if (it == x.names.end()) throw InvalidSubset("unknown element " + e);
        keep |= Mask(1) << (it - x.names.begin());
    }
    keep &= ~Mask(1);
    NamedMatroid r;
    r.names.push_back(x.names[0]);
    for (int i = 1; i < x.m.n; ++i)
        if (keep >> i & 1) r.names.push_back(x.names[i]);
    r.m = restriction(x.m, keep);
    return r;
}

bool named_equal(const NamedMatroid& a, const NamedMatroid& b) {
    if (a.names.size() != b.names.size() || a.names[0] != b.names[0]) return false;
    Table perm(a.names.size());
    for (std::size_t i = 0; i < a.names.size(); ++i) {
        auto it = std::find(b.names.begin(), b.names.end(), a.names[i]);
        if (it == b.names.end()) return false;
        perm[i] = static_cast<int>(it - b.names.begin());
    }
    return relabel(a.m, perm) == b.m;
}

json AmalgamReport::to_json() const {
    json j{{"found", found},
           {"candidates", candidates},
           {"amalgams", amalgams},
           {"cocone_candidates", cocone_candidates},
           {"initial_survivors", initial_survivors},
           {"initial_found", initial_found}};
    if (found) j["amalgam"] = named_to_json(amalgam);
    if (initial_found) j["initial"] = named_to_json(initial);
    return j;
}

AmalgamReport amalgam_search(const NamedMatroid& m0, const NamedMatroid& m1, const NamedMatroid& n, int max_ground,
                             bool parallel) {
    if (m0.names[0] != m1.names[0] || m0.names[0] != n.names[0]) throw InvalidMatroid("basepoints differ");
    std::vector<std::string> shared;
    for (std::size_t i = 1; i < m0.names.size(); ++i)
        if (std::find(m1.names.begin(), m1.names.end(), m0.names[i]) != m1.names.end()) shared.push_back(m0.names[i]);
    if (!named_equal(named_restriction(m0, shared), n) || !named_equal(named_restriction(m1, shared), n))
        throw InvalidMatroid("the span does not restrict to N on the shared elements");
    std::vector<std::string> uni = m0.names;
    for (std::size_t i = 1; i < m1.names.size(); ++i)
        if (std::find(uni.begin(), uni.end(), m1.names[i]) == uni.end()) uni.push_back(m1.names[i]);
    if (static_cast<int>(uni.size()) > max_ground)
        throw SearchBudgetExceeded("ground set of size " + std::to_string(uni.size()) + " exceeds the bound " +
                                   std::to_string(max_ground));
    auto incl = [&](const NamedMatroid& x) {
        Table t;
        for (auto& s : x.names) t.push_back(static_cast<int>(std::find(uni.begin(), uni.end(), s) - uni.begin()));
        return t;
    };
    Table i0 = incl(m0), i1 = incl(m1);
    const auto& cands = labeled_matroids(static_cast<int>(uni.size()) - 1);
    AmalgamReport rep;
    rep.candidates = static_cast<long>(cands.size());
    struct Flags {
        char amalgam = 0, cocone = 0;
    };
    auto flags = ordered_map<Flags>(
        cands.size(),
        [&](std::size_t k) {
            NamedMatroid w{uni, cands[k]};
            Flags f;
            f.cocone = is_strong_map(m0.m, w.m, i0) && is_strong_map(m1.m, w.m, i1);
            f.amalgam = named_equal(named_restriction(w, {m0.names.begin() + 1, m0.names.end()}), m0) &&
                        named_equal(named_restriction(w, {m1.names.begin() + 1, m1.names.end()}), m1);
            return f;
        },
        parallel);
    std::vector<std::size_t> cocones;
    for (std::size_t k = 0; k < cands.size(); ++k) {
        if (flags[k].amalgam) ++rep.amalgams;
        if (flags[k].cocone) cocones.push_back(k);
    }
    rep.cocone_candidates = static_cast<long>(cocones.size());
    // fold cocones: all strong maps of one member into the other that fix the shared part
    auto folds = [&](const NamedMatroid& from, const NamedMatroid& into) {
        std::vector<Table> out;  // maps ground(uni) -> ground(into)
        std::vector<int> free_pos;
        Table base(uni.size(), -1);
        for (std::size_t u = 0; u < uni.size(); ++u) {
            auto it = std::find(into.names.begin(), into.names.end(), uni[u]);
            if (it != into.names.end()) base[u] = static_cast<int>(it - into.names.begin());
            else free_pos.push_back(static_cast<int>(u));
        }
        std::vector<int> choice(free_pos.size(), 0);
        for (;;) {
            Table t = base;
            for (std::size_t q = 0; q < free_pos.size(); ++q) t[free_pos[q]] = choice[q];
            if (is_strong_map(from.m, into.m, compose_tables(t, incl(from)))) out.push_back(t);
            std::size_t q = 0;
            while (q < choice.size() && ++choice[q] == into.m.n) choice[q++] = 0;
            if (q == choice.size()) break;
        }
        return out;
    };
    auto fold0 = folds(m1, m0), fold1 = folds(m0, m1);
    auto survive = ordered_map<char>(
        cocones.size(),
        [&](std::size_t q) {
            const auto& p = cands[cocones[q]];
            for (auto k : cocones) {
                const auto& w = cands[k];
                if (!std::includes(p.flats.begin(), p.flats.end(), w.flats.begin(), w.flats.end())) return char(0);
            }
            for (auto& t : fold0)
                if (!is_strong_map(p, m0.m, t)) return char(0);
            for (auto& t : fold1)
                if (!is_strong_map(p, m1.m, t)) return char(0);
            return char(1);
        },
        parallel);
    for (std::size_t q = 0; q < cocones.size(); ++q)
        if (survive[q]) {
            if (!rep.initial_found) {
                rep.initial_found = true;
                rep.initial = {uni, cands[cocones[q]]};
            }
            ++rep.initial_survivors;
        }
    // prefer the initial structure when it is itself an amalgam
    if (rep.initial_found) {
        auto idx = static_cast<std::size_t>(std::find(cands.begin(), cands.end(), rep.initial.m) - cands.begin());
        if (flags[idx].amalgam) {
            rep.found = true;
            rep.amalgam = rep.initial;
        }
    }
    for (std::size_t k = 0; k < cands.size() && !rep.found; ++k)
        if (flags[k].amalgam) {
            rep.found = true;
            rep.amalgam = {uni, cands[k]};
        }
    return rep;
}

}  // namespace cgwk
