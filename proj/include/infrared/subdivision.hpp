#pragma once

#include "infrared/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ir {

// A polyhedral subdivision of the marked polytope (Conv(parent), parent). Each cell is
// its marking; cells are kept in canonical order. The certificate, when present, is a
// lifting function indexed by point index (entries outside the parent are ignored).
struct Subdivision {
    Mask parent = 0;
    std::vector<Mask> cells;
    std::optional<VecQ> certificate;

    void canonicalize();
    bool is_triangulation(const PointConfig& c) const;
    Mask used() const;
    bool operator==(const Subdivision& o) const { return parent == o.parent && cells == o.cells; }
};

bool subdivision_less(const Subdivision& a, const Subdivision& b);

Subdivision lower_hull_subdivision(const PointConfig& c, Mask parent, const VecQ& psi);

// Throws std::invalid_argument if the cells do not tile the parent with compatible markings.
void validate_subdivision(const PointConfig& c, const Subdivision& s);

struct RegularityResult {
    bool regular = false;
    VecQ certificate;
};
RegularityResult is_regular(const PointConfig& c, const Subdivision& s);

// Dimension of the space of liftings inducing s (piecewise-affine functions on the used
// points, plus a free value at each unused point). The reduced dimension subtracts d+1.
std::size_t pw_affine_dim(const PointConfig& c, const Subdivision& s);
long reduced_dim(const PointConfig& c, const Subdivision& s);

bool is_coarse(const PointConfig& c, const Subdivision& s);
bool refines(const Subdivision& fine, const Subdivision& coarse);

struct EnumerationOptions {
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

// Regular triangulations of (Conv(parent), parent) by flip breadth-first search,
// canonically sorted, each with a regularity certificate.
std::vector<Subdivision> enumerate_regular_triangulations(const PointConfig& c, Mask parent,
                                                          const EnumerationOptions& opt = {});

// Flip across a circuit, if the triangulation contains one side of it.
std::optional<Subdivision> flip(const Subdivision& t, const Circuit& z);

} // namespace ir
