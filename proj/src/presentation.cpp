#include "cgwk/presentation.hpp"

#include <queue>
#include <set>

namespace cgwk {

namespace {

json big_json(const BigInt& x) {
    if (abs(x) < (BigInt(1) << 62)) return static_cast<long long>(x);
    return x.str();
}

// s*a + t*b = g >= 0
void ext_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
    BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        BigInt s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        BigInt t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    g = r0;
    s = s0;
    t = t0;
}

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

}  // namespace

json SnfResult::to_json() const {
    json f = json::array(), d = json::array();
    for (auto& x : invariant_factors) f.push_back(big_json(x));
    for (auto& x : diagonal) d.push_back(big_json(x));
    return {{"invariant_factors", f}, {"free_rank", free_rank}, {"diagonal", d}};
}

IntMatrix to_big(const std::vector<std::vector<long>>& m) {
    IntMatrix r;
    for (auto& row : m) r.emplace_back(row.begin(), row.end());
    return r;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMatrix r(n, std::vector<BigInt>(m, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw DimensionMismatch("mat_mul: inner dimensions differ");
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    }
    return r;
}

BigInt determinant(IntMatrix m) {
    // fraction-free Bareiss elimination
    std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

SnfResult smith_normal_form(const IntMatrix& input) {
    std::size_t rows = input.size(), cols = rows ? input[0].size() : 0;
    for (auto& r : input)
        if (r.size() != cols) throw DimensionMismatch("ragged matrix");
    SnfResult res;
    IntMatrix A = input;
    IntMatrix& U = res.U;
    IntMatrix& V = res.V;
    U = identity_matrix(rows);
    V = identity_matrix(cols);
    auto row_add = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // row dst -= q * row src
        for (std::size_t j = 0; j < cols; ++j)
            if (A[src][j] != 0) A[dst][j] -= q * A[src][j];
        for (std::size_t j = 0; j < rows; ++j)
            if (U[src][j] != 0) U[dst][j] -= q * U[src][j];
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // col dst -= q * col src
        for (std::size_t i = 0; i < rows; ++i)
            if (A[i][src] != 0) A[i][dst] -= q * A[i][src];
        for (std::size_t i = 0; i < cols; ++i)
            if (V[i][src] != 0) V[i][dst] -= q * V[i][src];
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (auto& r : A) std::swap(r[a], r[b]);
        for (auto& r : V) std::swap(r[a], r[b]);
    };
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        bool any = false;
        for (;;) {
            // pivot of minimal absolute value
            std::size_t pi = 0, pj = 0;
            BigInt best = -1;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (A[i][j] != 0 && (best < 0 || abs(A[i][j]) < best)) {
                        best = abs(A[i][j]);
                        pi = i;
                        pj = j;
                        if (best == 1) goto found;
                    }
        found:
            if (best < 0) break;
            any = true;
            std::swap(A[t], A[pi]);
            std::swap(U[t], U[pi]);
            if (pj != t) swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (A[i][t] != 0) {
                    row_add(i, t, A[i][t] / A[t][t]);
                    if (A[i][t] != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (A[t][j] != 0) {
                    col_add(j, t, A[t][j] / A[t][t]);
                    if (A[t][j] != 0) clean = false;
                }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        row_add(t, i, -1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (!any) break;
        if (A[t][t] < 0) {
            for (auto& x : A[t]) x = -x;
            for (auto& x : U[t]) x = -x;
        }
    }
    res.D = A;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        if (A[i][i] != 0) {
            res.diagonal.push_back(A[i][i]);
            if (A[i][i] != 1) res.invariant_factors.push_back(A[i][i]);
        }
    res.free_rank = static_cast<int>(cols - res.diagonal.size());
    return res;
}

IntMatrix hermite_rows(const std::vector<std::vector<long>>& rows, int ncols) {
    std::map<int, std::vector<BigInt>> basis;  // pivot column -> row
    for (auto& r0 : rows) {
        if (static_cast<int>(r0.size()) != ncols) throw DimensionMismatch("relation row has the wrong length");
        std::vector<BigInt> r(r0.begin(), r0.end());
        for (;;) {
            int p = 0;
            while (p < ncols && r[p] == 0) ++p;
            if (p == ncols) break;
            auto it = basis.find(p);
            if (it == basis.end()) {
                if (r[p] < 0)
                    for (auto& x : r) x = -x;
                basis.emplace(p, std::move(r));
                break;
            }
            auto& b = it->second;
            if (r[p] % b[p] == 0) {
                BigInt q = r[p] / b[p];
                for (int j = p; j < ncols; ++j) r[j] -= q * b[j];
                continue;
            }
            BigInt g, s, t;
            ext_gcd(b[p], r[p], g, s, t);
            BigInt bq = b[p] / g, rq = r[p] / g;
            std::vector<BigInt> nb(ncols), nr(ncols);
            for (int j = 0; j < ncols; ++j) {
                nb[j] = s * b[j] + t * r[j];
                nr[j] = bq * r[j] - rq * b[j];
            }
            b = std::move(nb);
            r = std::move(nr);
        }
    }
    IntMatrix out;
    for (auto& [p, r] : basis) out.push_back(r);
    return out;
}

// ---- presentations ----

int Presentation::add_generator(const std::string& g) {
    auto it = index.find(g);
    if (it != index.end()) return it->second;
    int k = static_cast<int>(generators.size());
    generators.push_back(g);
    index.emplace(g, k);
    for (auto& r : relations) r.push_back(0);
    return k;
}

int Presentation::find(const std::string& g) const {
    auto it = index.find(g);
    return it == index.end() ? -1 : it->second;
}

GroupElt Presentation::element(const std::vector<std::pair<std::string, long>>& terms) const {
    GroupElt e(generators.size(), 0);
    for (auto& [k, v] : terms) {
        int i = find(k);
        if (i < 0) throw UnknownGenerator(k);
        e[i] += v;
    }
    return e;
}

bool Presentation::add_row(std::vector<long> row, const std::string& tag) {
    if (row.size() != generators.size()) throw DimensionMismatch("relation row has the wrong length");
    if (std::all_of(row.begin(), row.end(), [](long v) { return v == 0; })) return false;
    for (auto& r : relations)
        if (r == row) return false;
    relations.push_back(std::move(row));
    tags.push_back(tag);
    return true;
}

bool Presentation::add_relation(const std::vector<std::pair<std::string, long>>& terms, const std::string& tag) {
    return add_row(element(terms), tag);
}

Group::Group(const Presentation& p) : ncols_(static_cast<int>(p.generators.size())) {
    auto h = hermite_rows(p.relations, ncols_);
    if (h.empty()) {
        snf_.V = identity_matrix(ncols_);
        snf_.free_rank = ncols_;
        return;
    }
    snf_ = smith_normal_form(h);
}

bool Group::is_zero(const GroupElt& e) const {
    if (static_cast<int>(e.size()) != ncols_) throw DimensionMismatch("element length differs from generator count");
    std::size_t r = snf_.diagonal.size();
    for (int j = 0; j < ncols_; ++j) {
        BigInt y = 0;
        for (int i = 0; i < ncols_; ++i)
            if (e[i] != 0) y += e[i] * snf_.V[i][j];
        if (static_cast<std::size_t>(j) < r) {
            if (y % snf_.D[j][j] != 0) return false;
        } else if (y != 0) {
            return false;
        }
    }
    return true;
}

json Group::summary() const {
    json f = json::array();
    for (auto& x : snf_.invariant_factors) f.push_back(big_json(x));
    return {{"invariant_factors", f}, {"free_rank", snf_.free_rank}};
}

bool element_is_zero(const Presentation& p, const GroupElt& e) { return Group(p).is_zero(e); }

json presentation_json(const Presentation& p, const Group& g) {
    json j = g.summary();
    j["generators"] = p.generators;
    j["relations"] = p.relations;
    return j;
}

// ---- K1 ----

Presentation k1_generators(int max_size) {
    Presentation p;
    for (auto& k : des_classes(max_size)) p.add_generator(k);
    return p;
}

Presentation k1_presentation_baseline(const FinSet& c, int max_size, bool parallel) {
    auto p = k1_generators(max_size);
    for (int n = 0; n <= max_size; ++n) {
        p.add_relation({{des_key(standard_edge(n)), 1}}, "B1");
        p.add_relation({{des_key(l_aut(identity_table(n))), 1}}, "B2");
    }
    auto simplices = parallel ? enumerate_g_two_simplices(c, max_size) : enumerate_g_two_simplices_serial(c, max_size);
    for (auto& s : simplices) p.add_relation({{s.faces[2], 1}, {s.faces[0], 1}, {s.faces[1], -1}}, "B3");
    return p;
}

json HarvestCounts::to_json() const {
    return {{"direct_sum", direct_sum}, {"composition", composition}, {"corollary", corollary}};
}

std::vector<Optimal3x3> harvest_3x3(const FinSet& c, int max_size, HarvestCounts* counts) {
    std::vector<FDes> reps;
    for (auto& k : des_classes(max_size)) reps.push_back(des_from_key(k));
    std::vector<Optimal3x3> out;
    HarvestCounts hc;
    for (auto& x : reps)
        for (auto& y : reps)
            if (x.B.size() + y.B.size() <= max_size) {
                out.push_back(build_3x3_direct_sum(x, y));
                ++hc.direct_sum;
            }
    for (auto& f : reps)
        for (auto& g : reps)
            if (f.B.size() == g.A.size()) {
                out.push_back(build_3x3_composition(c, f, g));
                ++hc.composition;
            }
    for (int n = 0; n <= max_size; ++n)
        for (auto& a : all_permutations(n)) {
            out.push_back(build_3x3_corollary(a));
            ++hc.corollary;
        }
    if (counts) *counts = hc;
    return out;
}

Presentation k1_presentation_nenashev(const FinSet& c, int max_size, const std::vector<Optimal3x3>& diagrams,
                                      bool parallel) {
    auto p = k1_generators(max_size);
    for (auto& k : p.generators)
        if (is_diagonal(des_from_key(k))) p.add_relation({{k, 1}}, "N1");
    auto errors = ordered_map<std::string>(
        diagrams.size(), [&](std::size_t i) { return validate_3x3(c, diagrams[i]); }, parallel);
    for (std::size_t i = 0; i < diagrams.size(); ++i)
        if (!errors[i].empty())
            throw InvalidDiagram(diagrams[i].kind + " diagram " + std::to_string(i) + ": " + errors[i]);
    for (auto& d : diagrams) {
        std::vector<std::pair<std::string, long>> terms;
        for (auto& [k, v] : n2_terms(d)) terms.push_back({k, v});
        p.add_relation(terms, "N2:" + d.kind);
    }
    return p;
}

int generator_sign(const std::string& key) { return sign_class(des_from_key(key)); }

OracleAudit oracle_respects_relations(const Presentation& p) {
    OracleAudit a;
    std::vector<int> s;
    for (auto& g : p.generators) s.push_back(generator_sign(g));
    for (std::size_t r = 0; r < p.relations.size(); ++r) {
        ++a.rows;
        long acc = 0;
        for (std::size_t i = 0; i < s.size(); ++i) acc += p.relations[r][i] * s[i];
        if (acc % 2 != 0) {
            a.ok = false;
            a.first_violation = static_cast<int>(r);
            break;
        }
    }
    return a;
}

json OracleAudit::to_json(const Presentation& p) const {
    json j{{"ok", ok}, {"rows", rows}};
    if (!ok) {
        json terms = json::object();
        auto& row = p.relations[first_violation];
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i]) terms[p.generators[i]] = row[i];
        j["violation"] = {{"row", first_violation}, {"tag", p.tags[first_violation]}, {"terms", terms}};
    }
    return j;
}

// ---- pi1 ----

SnfResult pi1_abelianized(const SSet2& x) {
    int ne = static_cast<int>(x.edges.size());
    std::vector<std::vector<std::pair<int, int>>> adj(x.vertices);
    for (int e = 0; e < ne; ++e) {
        auto [s, t] = x.edges[e];
        if (s < 0 || t < 0 || s >= x.vertices || t >= x.vertices) throw DimensionMismatch("edge endpoint out of range");
        adj[s].push_back({t, e});
        adj[t].push_back({s, e});
    }
    std::vector<char> seen(x.vertices, 0), tree(ne, 0);
    std::queue<int> q;
    if (x.vertices == 0) throw Disconnected("no basepoint");
    seen[x.basepoint] = 1;
    q.push(x.basepoint);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, e] : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                tree[e] = 1;
                q.push(w);
            }
    }
    for (int v = 0; v < x.vertices; ++v)
        if (!seen[v]) throw Disconnected("vertex " + std::to_string(v) + " is not reachable");
    std::vector<int> col(ne, -1);
    int ng = 0;
    for (int e = 0; e < ne; ++e)
        if (!tree[e]) col[e] = ng++;
    std::vector<std::vector<long>> rows;
    auto add = [&](std::vector<std::pair<int, long>> terms) {
        std::vector<long> r(ng, 0);
        for (auto [e, v] : terms)
            if (col[e] >= 0) r[col[e]] += v;
        rows.push_back(r);
    };
    for (int e : x.degenerate) add({{e, 1}});
    for (auto& t : x.triangles) add({{t[2], 1}, {t[0], 1}, {t[1], -1}});
    if (rows.empty()) {
        SnfResult r;
        r.V = identity_matrix(ng);
        r.free_rank = ng;
        return r;
    }
    return smith_normal_form(to_big(rows));
}

}  // namespace cgwk
