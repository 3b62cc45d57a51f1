#pragma once

#include "infrared/linfty.hpp"

#include <map>
#include <vector>

namespace ir {

// Values on d-simplices (multiplicative model) or exponents (additive model).
using McElement = std::map<Mask, Rational>;

// One equation per circuit: the product over `plus` equals the product over `minus`.
// plus = {Z - z : z in Z-}, minus = {Z - z : z in Z+}, each canonically sorted.
struct BinomialEquation {
    Mask support = 0;
    std::vector<Mask> plus;
    std::vector<Mask> minus;
};

std::vector<BinomialEquation> circuit_equations(const PointConfig& c);

// Basis of degree one: all d-simplices (marked) or the empty ones (geometric).
std::vector<Mask> simplex_basis(const PointConfig& c, Variant v);

struct McReport {
    bool direct = false;   // sum of (1/n!) lambda_n(gamma, ..., gamma) vanishes
    bool binomial = false; // the binomial system (restricted to the variant) holds
    bool agree() const { return direct == binomial; }
    std::map<Mask, Rational> residual; // nonzero components of the direct evaluation
};

// Tables must have trivial coefficients. Missing simplices count as zero in the direct
// evaluation; the binomial check needs every basis simplex to carry a nonzero value.
McReport is_mc(const PointConfig& c, const StructureTables& t, const McElement& gamma);

struct CocycleLattice {
    std::vector<Mask> simplices;                  // column order
    std::vector<Mask> circuits;                   // row order
    std::vector<std::vector<Integer>> matrix;     // +1 on plus cells, -1 on minus cells
    std::size_t matrix_rank = 0;
    std::vector<std::vector<Integer>> basis;      // Z-basis of the kernel
    std::size_t rank() const { return basis.size(); }
};
CocycleLattice cocycle_lattice(const PointConfig& c);

// Additive cocycle: the sums over both sides of every circuit agree.
bool is_additive_cocycle(const PointConfig& c, const McElement& beta);
// Point of the semigroup: an integral nonnegative cocycle.
bool in_semigroup(const CocycleLattice& l, const std::vector<Integer>& beta);

McElement area_cocycle(const PointConfig& c);

// Product (or sum, additive) of the values over a regular triangulation of the marking,
// checked to be the same for every regular triangulation. Throws std::invalid_argument
// when the triangulations disagree or a value is missing.
Rational polytope_weight(const PointConfig& c, const McElement& gamma, Mask marking, bool additive = false);

// A multiplicative MC element built from the cocycle lattice, optionally perturbed on one
// simplex so that it is (most likely) not MC.
McElement random_mc_element(const PointConfig& c, const CocycleLattice& l, std::uint64_t seed, bool perturb);

} // namespace ir
