#pragma once

#include "infrared/geometry.hpp"
#include "infrared/matrix.hpp"
#include "infrared/subdivision.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace ir {

// Graded space on a wall in its canonical orientation (vertices in index order). The
// opposite orientation carries the dual space: same basis size, negated degrees.
// pairing(k, l) = <e_k, e^l>, nonzero only between equal degrees.
struct WallSpace {
    std::vector<int> degrees;
    MatrixQ pairing;
};

// Walls not listed carry the trivial space k in degree 0.
class CoefficientSystem {
public:
    bool trivial() const { return walls_.empty(); }
    // Throws std::invalid_argument if the pairing is singular or mixes degrees.
    void set(Mask wall, WallSpace space);
    const std::map<Mask, WallSpace>& walls() const { return walls_; }

    std::size_t dim(Mask wall) const;
    // Basis degrees for the wall with the given orientation (+1 canonical, -1 dual).
    std::vector<int> degrees(Mask wall, int orientation) const;
    Rational pairing(Mask wall, std::size_t k, std::size_t l) const;
    // Coefficients q(k, l) of the copairing sum_{k,l} q(k, l) e_k (x) e^l, inverse transpose of the pairing.
    const MatrixQ& copairing(Mask wall) const;

private:
    std::map<Mask, WallSpace> walls_;
    std::map<Mask, MatrixQ> copairing_;
};

// Random system on all (d-1)-simplices of finite points: total dimension 1 or 2 per wall,
// degrees in {-1, 0, 1}, pairings invertible within each degree.
CoefficientSystem random_coefficients(const PointConfig& c, std::uint64_t seed, int max_dim = 2);

struct OrientedWall {
    Mask wall = 0;
    int orientation = 1;
    bool operator==(const OrientedWall& o) const { return wall == o.wall && orientation == o.orientation; }
};

// One graded letter of a pure tensor: basis vector `index` of the space on an oriented wall.
struct Letter {
    Mask wall = 0;
    int orientation = 1;
    std::size_t index = 0;
    int degree = 0;
};

// Sign of reordering graded letters: order[t] is the source position of target letter t.
int koszul_sign(const std::vector<int>& degrees, const std::vector<std::size_t>& order);

// Ordered tensor product over a list of oriented walls; basis is mixed radix with the
// first wall most significant.
struct TensorBlock {
    std::vector<OrientedWall> walls;
    std::vector<std::vector<int>> degrees; // per wall, per basis vector

    std::size_t dim() const;
    std::vector<std::size_t> digits(std::size_t index) const;
    std::size_t index(const std::vector<std::size_t>& digits) const;
    int degree(std::size_t index) const;
    std::vector<Letter> letters(std::size_t index) const;
};

TensorBlock make_block(const std::vector<OrientedWall>& walls, const CoefficientSystem& cs);

// Codimension-one faces of Conv(marking), canonically ordered, each with the orientation
// induced from the ambient orientation: +1 when orient(sorted face, interior) > 0.
std::vector<OrientedWall> boundary_walls(const PointConfig& c, Mask marking);

TensorBlock boundary_tensor(const PointConfig& c, Mask marking, const CoefficientSystem& cs);

// Block of a subdivision: tensor of its cell blocks in cell order.
TensorBlock subdivision_tensor(const PointConfig& c, const Subdivision& s, const CoefficientSystem& cs);

// Trace contraction over the walls of `fine` that are interior to cells of `coarse`, as a
// (dim coarse block) x (dim fine block) matrix. Throws if fine does not refine coarse.
MatrixQ generalization_map(const PointConfig& c, const Subdivision& fine, const Subdivision& coarse,
                           const CoefficientSystem& cs);

// d = 2: ordered tensor over the finite boundary edges of an infinite polygon, from the
// left ray to the right one. Throws for finite polygons.
TensorBlock linear_tensor(const PointConfig& c, Mask marking, const CoefficientSystem& cs);

// d = 2 closed oriented edge paths; edge (a, b) is the wall {a, b}, canonical when a < b.
struct EdgePath {
    std::vector<int> vertices; // edges (v0, v1), ..., (v_{m-1}, v0)
};
TensorBlock path_tensor(const EdgePath& p, const CoefficientSystem& cs);
// Glue p1 (containing edge i -> j) and p2 (containing j -> i) along that edge.
EdgePath concatenate_paths(const EdgePath& p1, const EdgePath& p2, int i, int j);
// The concatenation map N_p1 (x) N_p2 -> N_(p1 * p2), pairing the two copies of the edge.
MatrixQ concatenate(const EdgePath& p1, const EdgePath& p2, int i, int j, const CoefficientSystem& cs);
// Map N_p -> N_p' for the same closed path started at vertex position `shift`.
EdgePath rotate_path(const EdgePath& p, std::size_t shift);
MatrixQ rotation_map(const EdgePath& p, std::size_t shift, const CoefficientSystem& cs);

} // namespace ir
