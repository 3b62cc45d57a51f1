#pragma once

#include "infrared/coeff.hpp"
#include "infrared/complex.hpp"
#include "infrared/derivation.hpp"
#include "infrared/secondary.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ir {

// Ordered basis of the linear span of Sigma(marking) inside R^marking (coordinates in
// index order of the marked points): the reduced echelon basis of the orthogonal
// complement of the affine functions.
struct OrientationClass {
    Mask owner = 0;
    std::vector<VecQ> basis;
};
OrientationClass orientation_class(const PointConfig& c, Mask marking);

// Dimension of the face of Sigma(parent) attached to s: the sum of dim Sigma(cell).
int face_dim(const PointConfig& c, const Subdivision& s);

// Boundary orientation comparison between a face and one of its facets, both oriented by
// the product of their cells' classes in cell order. `fine` needs a certificate.
int incidence_sign(const PointConfig& c, const Subdivision& fine, const Subdivision& coarse);

// The same configuration seen through a reflection of R^d.
PointConfig reflected(const PointConfig& c);

enum class Variant { marked, geometric };

struct TableEntry {
    std::vector<Mask> inputs; // cells, canonical order
    Mask output = 0;
    int sign = 1;             // incidence sign of the facet in Sigma(output)
    // Rows: basis of the output block; columns: basis of the input blocks tensored in
    // input order. 1 x 1 with trivial coefficients.
    MatrixQ coefficient;
    std::size_t arity() const { return inputs.size(); }
};

struct TableOptions {
    Variant variant = Variant::geometric;
    const CoefficientSystem* coefficients = nullptr;
    bool flip_orientation = false;
    unsigned jobs = 1;
    std::uint64_t seed = 1;
};

struct StructureTables {
    Variant variant = Variant::geometric;
    bool flipped = false;
    bool trivial_coefficients = true;
    std::vector<Mask> generators;         // canonical order
    std::map<Mask, int> sigma_dim;        // dim Sigma(marking)
    std::map<Mask, TensorBlock> blocks;   // coefficient block per generator
    std::vector<TableEntry> entries;      // sorted by (arity, inputs, output)

    int degree(Mask g) const { return 1 + sigma_dim.at(g); }
    std::vector<const TableEntry*> of_arity(std::size_t n) const;
    std::size_t max_arity() const;
};

StructureTables build_structure_tables(const PointConfig& c, const TableOptions& opt = {});

// The derivation of S(V) encoded by the tables: one generator per (marking, block basis
// vector), in degree -dim Sigma minus the block degree.
struct SymmetricModel {
    DerivationEngine engine;
    std::vector<std::pair<Mask, std::size_t>> generator; // id -> (marking, basis index)
    std::map<std::pair<Mask, std::size_t>, std::uint32_t> id;
};
SymmetricModel symmetric_model(const StructureTables& t);

struct DSquaredReport {
    bool ok = true;
    std::size_t generators = 0;
    std::size_t image_terms = 0;
    std::string offending_generator;
    std::string offending_monomial;
};
DSquaredReport verify_d_squared(const PointConfig& c, const StructureTables& t, unsigned jobs = 1);

struct NilpotencyReport {
    std::size_t r0 = 0;
    bool below_size = true; // r0 < |A|
};
// Largest number of leaves of a tree of composable table entries.
NilpotencyReport nilpotency_bound(const PointConfig& c, const StructureTables& t);

struct ColumnReport {
    ChainComplexQ complex;
    CohomologyReport cohomology;
    bool exact = false;
};
// The subcomplex of the marked variant spanned by the markings with hull vertices `vertices`.
ColumnReport marked_column_cohomology(const PointConfig& c, const StructureTables& marked, Mask vertices);

std::string cell_name(const PointConfig& c, Mask m);

} // namespace ir
