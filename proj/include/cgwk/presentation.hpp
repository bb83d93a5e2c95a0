#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cgwk/core.hpp"
#include "cgwk/finset.hpp"
#include "cgwk/parallel.hpp"
#include "cgwk/simplicial.hpp"

namespace cgwk {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidDiagram : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Disconnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownGenerator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SnfResult {
    IntMatrix D, U, V;  // U * M * V = D
    std::vector<BigInt> diagonal;           // nonzero diagonal entries
    std::vector<BigInt> invariant_factors;  // those different from 1
    int free_rank = 0;
    json to_json() const;
};

IntMatrix to_big(const std::vector<std::vector<long>>& m);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
BigInt determinant(IntMatrix m);
SnfResult smith_normal_form(const IntMatrix& m);
// rows spanning the same lattice, in echelon form
IntMatrix hermite_rows(const std::vector<std::vector<long>>& rows, int ncols);

using GroupElt = std::vector<long>;

struct Presentation {
    std::vector<std::string> generators;
    std::map<std::string, int> index;
    std::vector<std::vector<long>> relations;
    std::vector<std::string> tags;  // origin of each relation row

    int add_generator(const std::string& g);
    int find(const std::string& g) const;  // -1 when absent
    // skips zero rows and duplicates; returns whether a row was added
    bool add_relation(const std::vector<std::pair<std::string, long>>& terms, const std::string& tag);
    bool add_row(std::vector<long> row, const std::string& tag);
    // throws UnknownGenerator when a key is outside the generator list
    GroupElt element(const std::vector<std::pair<std::string, long>>& terms) const;
};

// the finitely presented abelian group Z^gens / rows
class Group {
public:
    explicit Group(const Presentation& p);
    const SnfResult& snf() const { return snf_; }
    std::vector<BigInt> invariant_factors() const { return snf_.invariant_factors; }
    int free_rank() const { return snf_.free_rank; }
    bool is_zero(const GroupElt& e) const;
    json summary() const;

private:
    int ncols_ = 0;
    SnfResult snf_;
};

bool element_is_zero(const Presentation& p, const GroupElt& e);
json presentation_json(const Presentation& p, const Group& g);

// ---- K0 ----

template <class C>
std::string object_label(const C& c, const ObjOf<C>& x) {
    return c.to_json(c.canonical(x)).dump();
}

// one relation [bl] + [tr] - [tl] - [br] per distinguished square between class representatives
template <class C>
Presentation k0_presentation(const C& c, int max_size, bool parallel = true) {
    using Obj = ObjOf<C>;
    Presentation p;
    auto objs = c.object_classes(max_size);
    auto O = c.zero();
    for (auto& x : objs)
        if (!(x == O)) p.add_generator(object_label(c, x));
    struct Job {
        std::size_t bl, br;
        Table bottom;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < objs.size(); ++i)
        for (std::size_t j = 0; j < objs.size(); ++j)
            for (auto& t : c.morphisms(Kind::M, objs[i], objs[j])) jobs.push_back({i, j, t});
    auto rows = ordered_map<std::vector<std::array<std::size_t, 4>>>(
        jobs.size(),
        [&](std::size_t q) {
            std::vector<std::array<std::size_t, 4>> out;
            const Obj& bl = objs[jobs[q].bl];
            const Obj& br = objs[jobs[q].br];
            Mor<Obj> bottom{Kind::M, bl, br, jobs[q].bottom};
            for (std::size_t tr = 0; tr < objs.size(); ++tr)
                for (auto& rt : c.morphisms(Kind::E, objs[tr], br))
                    for (std::size_t tl = 0; tl < objs.size(); ++tl)
                        for (auto& lt : c.morphisms(Kind::E, objs[tl], bl))
                            for (auto& tt : c.morphisms(Kind::M, objs[tl], objs[tr])) {
                                DistSquare<Obj> s{objs[tl],
                                                  objs[tr],
                                                  bl,
                                                  br,
                                                  {Kind::M, objs[tl], objs[tr], tt},
                                                  bottom,
                                                  {Kind::E, objs[tl], bl, lt},
                                                  {Kind::E, objs[tr], br, rt}};
                                if (!commutes(c, s)) continue;
                                bool ok = false;
                                try {
                                    ok = c.is_distinguished(s);
                                } catch (const std::exception&) {
                                    ok = false;
                                }
                                if (ok) out.push_back({jobs[q].bl, tr, tl, jobs[q].br});
                            }
            return out;
        },
        parallel);
    for (auto& group : rows)
        for (auto& r : group) {
            std::vector<std::pair<std::string, long>> terms;
            const long sgn[4] = {1, 1, -1, -1};
            for (int k = 0; k < 4; ++k)
                if (!(objs[r[k]] == O)) terms.push_back({object_label(c, objs[r[k]]), sgn[k]});
            p.add_relation(terms, "square");
        }
    return p;
}

// ---- K1 over FinSet ----

Presentation k1_generators(int max_size);
Presentation k1_presentation_baseline(const FinSet& c, int max_size, bool parallel = true);

struct HarvestCounts {
    long direct_sum = 0, composition = 0, corollary = 0;
    json to_json() const;
};
std::vector<Optimal3x3> harvest_3x3(const FinSet& c, int max_size, HarvestCounts* counts = nullptr);
// validates every diagram; throws InvalidDiagram on the first failure
Presentation k1_presentation_nenashev(const FinSet& c, int max_size, const std::vector<Optimal3x3>& diagrams,
                                      bool parallel = true);

struct OracleAudit {
    bool ok = true;
    long rows = 0;
    int first_violation = -1;
    json to_json(const Presentation& p) const;
};
int generator_sign(const std::string& key);
OracleAudit oracle_respects_relations(const Presentation& p);

// ---- pi1 of a 2-truncated simplicial set ----

struct SSet2 {
    int vertices = 0;
    int basepoint = 0;
    std::vector<std::pair<int, int>> edges;   // (d1, d0) = (source, target)
    std::vector<std::array<int, 3>> triangles;  // edge indices of d0, d1, d2
    std::vector<int> degenerate;                // edge indices
};

SnfResult pi1_abelianized(const SSet2& x);

}  // namespace cgwk
