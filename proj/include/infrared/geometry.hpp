#pragma once

#include "infrared/mask.hpp"
#include "infrared/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ir {

struct Point {
    std::string label;
    VecQ coords;
};

inline const std::string kInfinityLabel = "inf";

// Points are stored sorted by label, so internal indices follow label order. When an
// infinity direction is present, index size() stands for the symbolic point at infinity.
class PointConfig {
public:
    PointConfig() = default;
    PointConfig(std::size_t d, std::vector<Point> points, std::optional<VecQ> infinity = std::nullopt,
                bool sort_by_label = true);

    std::size_t dim() const { return d_; }
    std::size_t size() const { return points_.size(); }
    const Point& point(std::size_t i) const { return points_.at(i); }
    const std::vector<Point>& points() const { return points_; }
    const VecQ& coords(std::size_t i) const { return points_.at(i).coords; }
    std::string label(std::size_t i) const;
    std::optional<std::size_t> index_of(const std::string& label) const;

    bool has_infinity() const { return infinity_.has_value(); }
    const VecQ& infinity_direction() const { return *infinity_; }
    std::size_t infinity_index() const { return points_.size(); }
    bool is_infinity(std::size_t i) const { return has_infinity() && i == points_.size(); }
    // Finite points, plus infinity if present.
    std::size_t extended_size() const { return points_.size() + (has_infinity() ? 1 : 0); }
    Mask all() const { return points_.empty() ? 0 : Mask((std::uint64_t(1) << points_.size()) - 1); }
    Mask extended_all() const { return Mask((std::uint64_t(1) << extended_size()) - 1); }

    std::vector<std::string> labels(Mask m) const;
    Mask mask_of_labels(const std::vector<std::string>& labels) const;

    // Sign of the affine orientation determinant; arguments are indices, where
    // infinity_index() is the symbolic far point.
    int orient(const std::vector<int>& refs) const;

private:
    int orient_uncached(const std::vector<int>& refs) const;

    std::size_t d_ = 0;
    std::vector<Point> points_;
    std::optional<VecQ> infinity_;
    std::vector<signed char> chirotope_; // over sorted tuples, when small enough
    std::size_t base_ = 0;
};

// The (d+1) x (d+1) affine determinant with rows (1, p_i); an infinity row is (0, u).
Rational affine_determinant(const PointConfig& c, const std::vector<int>& refs);

struct GeneralPositionReport {
    bool pass = true;
    std::vector<std::vector<std::string>> violations;
};
GeneralPositionReport check_general_position(const PointConfig& c);

// Strict containment of q in the open simplex spanned by the d+1 points of s.
bool in_open_simplex(const PointConfig& c, const std::vector<int>& s, int q);
// q in Conv(s) for q not in s (general position makes the boundary case impossible).
bool in_hull(const PointConfig& c, Mask s, int q);

struct Hull {
    Mask vertices = 0;
    std::vector<int> boundary;              // d = 2: counter-clockwise cycle
    std::vector<std::vector<int>> facets;   // each sorted by index
    std::vector<int> facet_orientation;     // sign of orient(facet, interior point)
};
// Throws std::invalid_argument for a subset that does not span dimension d.
Hull convex_hull(const PointConfig& c, Mask s);

struct Circuit {
    Mask support = 0;
    Mask plus = 0;
    Mask minus = 0;
    std::vector<Integer> dependency; // coefficient per point of support, in index order
};
std::vector<Circuit> enumerate_circuits(const PointConfig& c, Mask within);
std::vector<Circuit> enumerate_circuits(const PointConfig& c);
// The circuit supported on a (d+2)-subset.
Circuit circuit_of(const PointConfig& c, Mask support);

struct MarkedPolytope {
    Mask marking = 0;
    Mask vertices = 0;
    bool geometric = false;
    bool infinite = false;
};

// Marking is geometric iff no other point (finite or infinity) lies in its hull.
bool is_geometric(const PointConfig& c, Mask marking);
Mask hull_vertices(const PointConfig& c, Mask marking);

// Geometric full-dimensional marked subpolytopes, canonically sorted. With
// include_infinity, infinite ones (containing infinity) are included as well.
std::vector<MarkedPolytope> enumerate_subpolytopes(const PointConfig& c, bool include_infinity = false);
// All subsets of size at least d+1, geometric or not.
std::vector<MarkedPolytope> enumerate_marked_subpolytopes(const PointConfig& c, bool include_infinity = false);

// Lebesgue volume of a simplex on d+1 finite points.
Rational simplex_volume(const PointConfig& c, Mask simplex);

} // namespace ir

namespace ir {

// Integer points in [0, range)^d drawn from a seeded generator until the configuration
// is in general position (and generic with respect to the infinity direction, if given).
PointConfig random_config(std::size_t d, std::size_t n, std::uint64_t seed, int range = 24,
                          std::optional<VecQ> infinity = std::nullopt);

} // namespace ir

namespace ir {

// Lebesgue volume of Conv(s) for finite points, as a fan of facets from one vertex.
Rational polytope_volume(const PointConfig& c, Mask s);

// Barycentric coordinates of q with respect to the d+1 affinely independent points b.
VecQ barycentric(const PointConfig& c, const std::vector<int>& b, int q);

} // namespace ir
