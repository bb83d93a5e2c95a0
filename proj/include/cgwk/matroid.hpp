#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "cgwk/core.hpp"

namespace cgwk {

using Mask = std::uint32_t;
using Flats = std::vector<Mask>;

// Pointed matroid on {0..n-1}; 0 is the basepoint and lies in every flat.
struct Matroid {
    int n = 1;
    Flats flats{1};  // sorted
    int size() const { return n; }
    Mask ground() const { return n >= 32 ? ~Mask(0) : (Mask(1) << n) - 1; }
    auto operator<=>(const Matroid&) const = default;
};

struct InvalidSubset : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidMatroid : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SearchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_matroid(const Flats& flats, Mask ground);
Matroid make_matroid(int n, Flats flats);  // sorts, dedupes, throws InvalidMatroid
Matroid basepoint_matroid();
Matroid free_matroid(int k);
Matroid uniform_matroid(int r, int k);

Mask closure(const Matroid& m, Mask x);
int rank_of(const Matroid& m, Mask x);
int rank(const Matroid& m);

// S is a set of non-basepoint elements; results are relabeled in increasing order with 0 first
Matroid restriction(const Matroid& m, Mask s);
Matroid contraction(const Matroid& m, Mask s);
Matroid matroid_sum(const Matroid& a, const Matroid& b);
// perm[i] = new label of element i; perm[0] = 0
Matroid relabel(const Matroid& m, const Table& perm);
Matroid canonical_matroid(const Matroid& m);

bool is_strong_map(const Matroid& src, const Matroid& dst, const Table& t);

struct Classification {
    bool strong = false;
    bool is_m = false, is_e = false;
    Mask m_witness = 0, e_witness = 0;  // S in dst (M) or in src (E)
};
// t: ground(src) -> ground(dst)
Classification classify_morphism(const Matroid& src, const Matroid& dst, const Table& t);

// all matroids on k labeled non-basepoint elements
const std::vector<Matroid>& labeled_matroids(int k);
const std::vector<Matroid>& matroid_classes(int k);

// ---- the CGW instance ----

class MatroidCat {
public:
    using Obj = Matroid;
    static constexpr Orientation orientation = Orientation::Contravariant;
    static constexpr bool pcgw = false;

    Obj zero() const { return basepoint_matroid(); }
    int size(const Obj& x) const { return x.n; }
    // budgets count non-basepoint elements
    std::vector<Obj> objects(int max_size) const;
    std::vector<Obj> object_classes(int max_size) const { return objects(max_size); }
    Obj canonical(const Obj& x) const { return canonical_matroid(x); }
    std::vector<Table> morphisms(Kind k, const Obj& a, const Obj& b) const;
    bool is_member(Kind k, const Obj& a, const Obj& b, const Table& t) const;
    std::vector<Table> isos(const Obj& a, const Obj& b) const;
    Mor<Obj> phi(const Mor<Obj>& iso) const { return {Kind::E, iso.src, iso.dst, inverse_table(iso.amb)}; }
    bool is_distinguished(const DistSquare<Obj>& s) const;
    bool pushout_part(const DistSquare<Obj>& s) const;
    bool pullback_part(const DistSquare<Obj>& s) const;
    DistSquare<Obj> cokernel(const Mor<Obj>& f) const;
    DistSquare<Obj> kernel(const Mor<Obj>& g) const;

    struct Sum {
        Obj obj;
        Mor<Obj> pX, pY, qX, qY;
    };
    Sum direct_sum(const Obj& x, const Obj& y) const;

    json to_json(const Obj& x) const;

private:
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, Obj, Obj>, std::vector<Table>> cache_;
};

// ---- named matroids and files ----

struct NamedMatroid {
    std::vector<std::string> names;  // names[0] is the basepoint
    Matroid m;
};

NamedMatroid named_from_json(const json& j);
json named_to_json(const NamedMatroid& x);
// restriction to the named elements of s (basepoint implied)
NamedMatroid named_restriction(const NamedMatroid& x, const std::vector<std::string>& s);
bool named_equal(const NamedMatroid& a, const NamedMatroid& b);

struct AmalgamReport {
    bool found = false;
    NamedMatroid amalgam;
    long candidates = 0;
    long amalgams = 0;       // literal amalgams among candidates
    long cocone_candidates = 0;  // structures receiving both strong inclusions
    long initial_survivors = 0;  // not refuted as a pushout
    bool initial_found = false;
    NamedMatroid initial;
    json to_json() const;
};

AmalgamReport amalgam_search(const NamedMatroid& m0, const NamedMatroid& m1, const NamedMatroid& n,
                             int max_ground = 7, bool parallel = true);

}  // namespace cgwk
