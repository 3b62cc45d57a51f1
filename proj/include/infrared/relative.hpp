#pragma once

#include "infrared/linfty.hpp"

#include <map>
#include <string>
#include <vector>

namespace ir {

// A configuration with a point at infinity, realized by a concrete far point. The far
// point sits at scale * direction; the scale is doubled until the orientation of every
// simplex through it matches the symbolic one and the coarse subdivisions of every
// infinite marking agree at scale and 2 * scale.
struct InfinityConfig {
    PointConfig base;                // finite points and the symbolic direction
    PointConfig concrete;            // the same points, then "inf" at index base.size()
    Rational scale;
    std::vector<int> slope_order;    // finite indices, left to right
    std::vector<int> position;       // finite index -> place in slope_order
    std::vector<Rational> projected; // coordinate of each finite point across the direction

    int inf_index() const { return static_cast<int>(base.size()); }
    Mask inf() const { return bit(inf_index()); }
    bool infinite(Mask m) const { return (m & inf()) != 0; }
    // d = 2, infinite markings: finite hull vertices from the left ray to the right ray.
    std::vector<int> lower_chain(Mask m) const;
    int left(Mask m) const;  // slope position of the left ray's finite vertex
    int right(Mask m) const;
};

// Throws std::invalid_argument naming the offending labels when two finite points lie on
// a line parallel to the direction, or when no safe scale is found.
InfinityConfig attach_infinity(const PointConfig& c, unsigned jobs = 1);

struct SplitReport {
    std::vector<Mask> finite_generators;
    std::vector<Mask> infinite_generators;
    std::size_t finite_entries = 0;   // all inputs finite
    std::size_t infinite_entries = 0; // all inputs infinite
    std::size_t mixed_entries = 0;
    bool subalgebra = true;           // all inputs finite => output finite
    bool ideal = true;                // some input infinite => output infinite
};
SplitReport split_g(const InfinityConfig& ic, const StructureTables& t);

// Blocks R_ij (i < j): basis elements with their product table.
struct TriangularAlgebra {
    struct Element {
        Mask marking = 0;
        int left = 0, right = 0; // slope positions (d = 2) or coordinate ranks (d = 1)
        int degree = 0;
    };
    std::size_t points = 0;
    std::vector<Element> basis; // sorted by (left, right, marking)
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> product;
    std::size_t higher_operations = 0; // generated operations of arity >= 3
    bool differential_squares_to_zero = true;

    std::optional<std::size_t> find(Mask marking) const;
    std::size_t dim() const { return basis.size(); }
    // Nonzero products only for R_ij * R_jk -> R_ik, i < j < k.
    bool strictly_upper_triangular() const;
    // mu(mu(a, b), c) = mu(a, mu(b, c)) over all basis triples; the first failure is described.
    bool associative(std::string* witness = nullptr) const;
};

// d = 1: intervals [i, j] of consecutive points, e_ij * e_jk = e_ik. The tensor algebra
// differential is rebuilt from the orientation calculus and checked to square to zero.
TriangularAlgebra build_R_1d(const PointConfig& c);

struct MixedTerm {
    std::vector<Mask> finite;   // canonical order
    std::vector<Mask> infinite; // left to right
    int coefficient = 0;
};

// The differential on S(V) (x) T(V_inf) of the geometric variant, trivial coefficients.
struct MixedDifferential {
    StructureTables tables;
    std::map<Mask, std::vector<MixedTerm>> image;
    DerivationEngine engine;
    std::map<Mask, std::uint32_t> id;

    int degree(Mask g) const { return -tables.sigma_dim.at(g); }
};
MixedDifferential mixed_differential(const InfinityConfig& ic, unsigned jobs = 1);
DSquaredReport verify_mixed_d_squared(const InfinityConfig& ic, const MixedDifferential& md, unsigned jobs = 1);

TriangularAlgebra build_R_infty(const InfinityConfig& ic, const MixedDifferential& md);

// Coarse subdivisions of an infinite marking with exactly one finite cell, built from the
// finite cell Q': the cells above the upper edges of Q', with the left and right handles
// attached to the outermost ones.
std::vector<Subdivision> one_finite_subdivisions(const InfinityConfig& ic, Mask p);

struct PsiEntry {
    Mask finite = 0;
    Mask target = 0;
    std::vector<Mask> word;
    int coefficient = 0;
};
struct PsiReport {
    std::map<std::size_t, std::size_t> components; // number of finite cells -> number of terms
    std::vector<PsiEntry> linear;                   // one finite cell
    bool higher_empty() const;
};
PsiReport extract_psi(const MixedDifferential& md);

struct HochschildElement {
    Mask target = 0;
    std::vector<Mask> word;
    bool operator<(const HochschildElement& o) const;
    bool operator==(const HochschildElement& o) const { return target == o.target && word == o.word; }
};

// Directed Hochschild complex over strict chains, in the derivation picture: an element
// sends x_target to the word and delta X = [D_inf, X].
struct DirectedHochschild {
    ChainComplexQ complex;
    std::map<int, std::vector<HochschildElement>> basis;
    std::map<HochschildElement, std::pair<int, std::size_t>> index;
    std::map<HochschildElement, int> handle_length;
};
DirectedHochschild directed_hochschild(const InfinityConfig& ic, const MixedDifferential& md,
                                       const TriangularAlgebra& r);

struct UniversalityReport {
    std::map<int, std::size_t> g_dims;
    std::map<int, std::size_t> hochschild_betti;
    std::map<std::size_t, std::size_t> psi_components;
    bool d_squared = false;
    bool one_finite_matches = false; // constructive enumeration equals the filtered coarse list
    bool directed = false;           // Psi_1 lands in the strict-chain complex
    bool degree_preserving = false;
    bool chain_map = false;
    bool quasi_iso = false;
    std::map<int, bool> iso_in_degree;
    // Every degree except 0 is matched. Degree 0 carries extra classes: the rescalings of
    // R_inf that weight each polygon by a function of the edges of its negative boundary.
    bool iso_away_from_zero = false;
    std::size_t edge_rescalings = 0; // classes in degree 0 spanned by the edge rescalings
    bool degree0_is_rescalings = false;
    bool filtration = false;         // delta never lowers handle length
    bool gr0_image = false;          // handle-free image summands are the convex closed paths
    std::string failure;
};
UniversalityReport verify_universality(const PointConfig& c, unsigned jobs = 1);

} // namespace ir
