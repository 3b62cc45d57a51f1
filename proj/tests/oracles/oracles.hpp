#pragma once

// Independent reference implementations used only by the test suite.

#include "infrared/lp.hpp"
#include "infrared/matrix.hpp"

#include <vector>

namespace oracle {

using ir::Rational;
using ir::VecQ;

// Plain dense Gaussian elimination over Q, with no sparsity or integer tricks.
std::size_t dense_rank(std::vector<VecQ> rows);

// Decides feasibility of {eq: a.x = b} and {strict: a.x > b} by Fourier-Motzkin elimination.
bool fourier_motzkin_feasible(std::size_t nvars, const std::vector<ir::LinearConstraint>& eq,
                              const std::vector<ir::LinearConstraint>& strict);

// Cofactor expansion determinant (small matrices only).
Rational cofactor_det(const std::vector<VecQ>& m);

} // namespace oracle

#include "infrared/geometry.hpp"
#include "infrared/subdivision.hpp"

namespace oracle {

using ir::Mask;
using ir::PointConfig;

// Interiors of Conv(a) and Conv(b) meet. d = 2 uses separating edges computed from raw
// coordinates; other dimensions decide strict feasibility by Fourier-Motzkin.
bool interiors_meet(const PointConfig& c, Mask a, Mask b);

// Every triangulation (possibly skipping points) of Conv(parent) with vertices in parent.
std::vector<std::vector<Mask>> all_triangulations(const PointConfig& c, Mask parent);

// Regularity through the global system: every point outside a cell's marking lies
// strictly above that cell's affine piece.
bool regular_global(const PointConfig& c, Mask parent, const std::vector<Mask>& cells);

// Every polyhedral subdivision of (Conv(parent), parent), d = 2 only.
std::vector<std::vector<Mask>> all_subdivisions(const PointConfig& c, Mask parent);

} // namespace oracle
