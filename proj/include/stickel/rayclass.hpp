#ifndef ZETASTICK_RAYCLASS_HPP
#define ZETASTICK_RAYCLASS_HPP

#include <map>

#include "stickel/abelian.hpp"
#include "stickel/quadfield.hpp"

namespace stk {

// class group invariants at trivial modulus
Int class_number(const QuadField& f);
Int narrow_class_number(const QuadField& f);

// |(O/m)^*| for an integral ideal m, by direct residue counting
Int phi_ideal(const QuadField& f, const Ideal& m);

// multiplicative order of x (integral, coprime to m) in (O/m)^*
Int residue_order(const QuadField& f, const Ideal& m, const QuadElem& x);

// generator of the rank-1 group E_{m,+} of totally positive units = 1 mod m
QuadElem ray_unit(const QuadField& f, const Ideal& m);

// reduce omega-coordinates of an integral element modulo the lattice of m
QuadElem reduce_mod_ideal(const QuadField& f, const Ideal& m, const QuadElem& x);

// narrow ray class group Cl+_m: ideals coprime to m modulo principal ideals
// with a totally positive generator = 1 mod m; modulus always carries both
// real places
struct RayClassGroup {
    QuadField field;
    Ideal mod;               // integral finite part
    std::vector<Ideal> gens; // prime ideals coprime to mod, increasing norm
    AbGroup grp;             // Z^gens / harvested relations
    Int order;               // certified by the index formula

    // memoized classes of prime ideals, keyed by their HNF entries
    mutable std::map<std::vector<Int>, std::vector<Int>> prime_cache;
};

RayClassGroup ray_class_group(const QuadField& f, const Ideal& m);

// exponent vector (in gens coordinates) of the class of a, coprime to mod
std::vector<Int> ray_dlog(const RayClassGroup& rg, const Ideal& a);

// an integral ideal coprime to mod in the class with the given label,
// of smallest norm (ties: lexicographically smallest HNF)
Ideal class_representative(const RayClassGroup& rg, const std::vector<Int>& label);

// abelian extension K/F presented as the fixed field of a subgroup H of a
// narrow ray class group; G = Gal(K/F) = Cl+_m / H
struct ExtensionSpec {
    RayClassGroup rcg;
    std::vector<std::vector<Int>> kernel_gens;  // exponent vectors generating H
    AbGroup G;                                  // quotient on the same generators
};

ExtensionSpec make_extension(RayClassGroup rcg, std::vector<std::vector<Int>> kernel_gens);

// label in G of the Artin symbol of an ideal coprime to mod
std::vector<Int> galois_label(const ExtensionSpec& ext, const Ideal& a);

struct Place {
    bool infinite = false;
    int inf_index = 0;  // 0 or 1 (first embedding / conjugate) when infinite
    Ideal prime;        // prime ideal when finite
    Int norm = 1;
};

Place finite_place(const Ideal& prime_ideal);
Place infinite_place(int index);

struct PlaceData {
    Place place;
    std::vector<std::vector<Int>> inertia_gens;  // exponent vectors generating I_v in G
    AbGroup G_mod_Iv;                            // G / I_v (same generator coordinates)
    std::vector<Int> frobenius;                  // exponent vector, meaningful in G / I_v
    Int inertia_order = 1;
};

PlaceData decomposition_data(const ExtensionSpec& ext, const Place& v);

}  // namespace stk

#endif
