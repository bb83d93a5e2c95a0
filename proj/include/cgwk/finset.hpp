#pragma once

#include <compare>
#include <string>
#include <vector>

#include "cgwk/core.hpp"

namespace cgwk {

struct FinSetObj {
    std::vector<int> elems;  // strictly increasing
    int size() const { return static_cast<int>(elems.size()); }
    auto operator<=>(const FinSetObj&) const = default;
};

FinSetObj range_obj(int n);

using FMor = Mor<FinSetObj>;
using FSquare = DistSquare<FinSetObj>;
using FDes = DoubleExactSquare<FinSetObj>;

enum class Mutant { None, DropUnion, NonMonicE, MissingInitiality, WrongQuotient, NonClosed };

std::optional<Mutant> parse_mutant(const std::string& s);
std::string mutant_name(Mutant m);
std::vector<Mutant> mutant_catalog();

// The two readings of a FinSet distinguished square.
bool pushout_check(const FSquare& s);
bool pullback_union_check(const FSquare& s);

class FinSet {
public:
    using Obj = FinSetObj;
    static constexpr Orientation orientation = Orientation::Covariant;
    static constexpr bool pcgw = true;

    explicit FinSet(Mutant m = Mutant::None) : mut_(m) {}
    Mutant mutant() const { return mut_; }

    Obj zero() const;
    int size(const Obj& x) const { return x.size(); }
    std::vector<Obj> objects(int max_size) const;
    std::vector<Obj> object_classes(int max_size) const;
    Obj canonical(const Obj& x) const { return range_obj(x.size()); }
    std::vector<Table> morphisms(Kind k, const Obj& a, const Obj& b) const;
    bool is_member(Kind k, const Obj& a, const Obj& b, const Table& t) const;
    std::vector<Table> isos(const Obj& a, const Obj& b) const;
    FMor phi(const FMor& iso) const { return {Kind::E, iso.src, iso.dst, iso.amb}; }
    bool is_distinguished(const FSquare& s) const;
    FSquare cokernel(const FMor& f) const;
    FSquare kernel(const FMor& g) const;

    struct Pushout {
        Obj obj;
        FMor inB, inC;
    };
    // B *_A C for the span C <-g- A -f-> B
    Pushout restricted_pushout(const FMor& g, const FMor& f) const;

    struct Sum {
        Obj obj;
        FMor pX, pY, qX, qY;
    };
    Sum direct_sum(const Obj& x, const Obj& y) const;

    void verify_pcgw(const CategoryBudget& b, AxiomReport& rep) const;
    json to_json(const Obj& x) const { return x.elems; }

private:
    Mutant mut_;
};

// block sum of position tables: f: a -> b, g: c -> d gives a+c -> b+d
Table sum_tables(const Table& f, int b, const Table& g);
// first / second block inclusion of n elements into n+m / m+n
Table first_block(int n);
Table second_block(int n, int offset);

// ---- canonical forms ----

struct FArrow {
    int src = 0, dst = 0;
    Table t;
    auto operator<=>(const FArrow&) const = default;
};

struct FDiagram {
    std::vector<FinSetObj> nodes;
    std::vector<FArrow> arrows;
    auto operator<=>(const FDiagram&) const = default;
};

FDiagram canonical_form(const FDiagram& d);
FDiagram square_diagram(const FSquare& s);
FDiagram des_diagram(const FDes& d);

// ---- double exact squares over FinSet ----

struct ImagesDoNotPartition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Table piecewise_bijection(const FDes& d);
int sign_of(const Table& perm);
int sign_class(const FDes& d);
std::string des_key(const FDes& d);
FDes des_from_key(const std::string& key);
FDes des_from_colored(const std::vector<char>& colour, const Table& sigma);
FDes dexsq_inverse(const FDes& d);
bool is_diagonal(const FDes& d);
FSquare des_component(const FDes& d, int which);
bool des_valid(const FinSet& c, const FDes& d);
std::vector<std::string> des_classes(int max_size);

// l(alpha) for an automorphism of range_obj(n): components (id, alpha) with C = O
FDes l_aut(const Table& alpha);
// quotient-side version: A = O, C = {n}, components (id, alpha)
FDes l_tilde(const Table& alpha);
// l(alpha, beta) = ((alpha, O), (beta, O))
FDes l_pair(const Table& alpha, const Table& beta);
// standard edge e(A): the diagonal square with C = A, A = O
FDes standard_edge(int n);

// ---- pCGW constructions ----

struct AddObjectResult {
    std::vector<FSquare> squares;   // f+D/g+1, f+1/g+D, and the two mixed squares
    std::vector<FSquare> permuted;  // D+f/1+g, 1+f/D+g
    Table quotient_iso;             // (B+D)/A -> C+D
};

AddObjectResult add_object_to_square(const FinSet& c, const FSquare& phi, const FinSetObj& d);
FSquare direct_sum_of_squares(const FinSet& c, const FSquare& p1, const FSquare& p2);
FDes des_sum(const FDes& x, const FDes& y);

}  // namespace cgwk
