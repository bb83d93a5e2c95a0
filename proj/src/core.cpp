#include "cgwk/core.hpp"

#include <numeric>

namespace cgwk {

Table identity_table(int n) {
    Table t(n);
    std::iota(t.begin(), t.end(), 0);
    return t;
}

Table compose_tables(const Table& g, const Table& f) {
    Table r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = g.at(f[i]);
    return r;
}

bool is_injective(const Table& t, int codomain) {
    std::vector<char> hit(codomain, 0);
    for (int v : t) {
        if (v < 0 || v >= codomain || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

bool is_surjective(const Table& t, int codomain) {
    std::vector<char> hit(codomain, 0);
    for (int v : t) {
        if (v < 0 || v >= codomain) return false;
        hit[v] = 1;
    }
    return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

bool is_bijective(const Table& t, int codomain) {
    return static_cast<int>(t.size()) == codomain && is_injective(t, codomain);
}

Table inverse_table(const Table& t) {
    Table r(t.size(), -1);
    for (std::size_t i = 0; i < t.size(); ++i) r.at(t[i]) = static_cast<int>(i);
    return r;
}

std::optional<Table> solve_post(const Table& s, const Table& t) {
    std::map<int, int> pre;
    for (std::size_t i = 0; i < s.size(); ++i) pre[s[i]] = static_cast<int>(i);
    Table x(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto it = pre.find(t[i]);
        if (it == pre.end()) return std::nullopt;
        x[i] = it->second;
    }
    return x;
}

std::optional<Table> solve_pre(const Table& s, int qsize, const Table& t) {
    Table x(qsize, -1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        int& slot = x.at(s[i]);
        if (slot == -1)
            slot = t[i];
        else if (slot != t[i])
            return std::nullopt;
    }
    for (int v : x)
        if (v == -1) return std::nullopt;
    return x;
}

std::vector<Table> all_injections(int a, int b) {
    std::vector<Table> out;
    if (a > b) return out;
    Table cur(a);
    std::vector<char> used(b, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == a) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v < b; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            cur[i] = v;
            self(self, i + 1);
            used[v] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<Table> all_functions(int a, int b) {
    std::vector<Table> out;
    if (b == 0 && a > 0) return out;
    Table cur(a, 0);
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < a && ++cur[i] == b) cur[i++] = 0;
        if (i == a) break;
    }
    return out;
}

std::vector<Table> all_permutations(int n) {
    std::vector<Table> out;
    Table p = identity_table(n);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

bool AxiomReport::any_fail() const {
    for (auto& [k, r] : axioms)
        if (r.verdict == Verdict::Fail) return true;
    return false;
}

bool AxiomReport::any_skipped() const {
    for (auto& [k, r] : axioms)
        if (r.verdict == Verdict::Skipped) return true;
    return false;
}

json AxiomReport::to_json() const {
    json j = json::object();
    for (auto& [k, r] : axioms) {
        const char* v = r.verdict == Verdict::Pass ? "pass" : r.verdict == Verdict::Fail ? "fail" : "skipped";
        json e = {{"verdict", v}, {"checked", r.checked}};
        if (!r.note.empty()) e["note"] = r.note;
        if (r.verdict == Verdict::Fail) e["witness"] = r.witness;
        j[k] = e;
    }
    return j;
}

}  // namespace cgwk
