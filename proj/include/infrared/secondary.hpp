#pragma once

#include "infrared/bits.hpp"
#include "infrared/subdivision.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ir {

// phi_T(w): total Lebesgue volume of the simplices of t having w as a vertex.
VecQ gkz_vector(const PointConfig& c, const Subdivision& t);

struct Facet {
    VecQ normal;     // inner normal, extended by zero to all point indices
    Rational offset; // normal . phi >= offset on the polytope
    Bits vertices;
};

struct Face {
    int dim = 0;
    Bits vertices; // indices into SecondaryPolytope::triangulations
    std::vector<std::size_t> children;
    std::vector<std::size_t> parents;
    std::vector<std::size_t> facets; // facets of the polytope containing this face
    Subdivision subdivision;
    bool geometric = false;
};

struct SecondaryOptions {
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    bool full_lattice = true; // otherwise only the top face, facets and vertices
};

struct SecondaryPolytope {
    Mask parent = 0;
    int dim = 0;
    std::vector<Subdivision> triangulations;
    std::vector<VecQ> gkz;
    std::vector<Facet> facets;
    std::vector<Face> faces; // sorted by dimension, then by subdivision
    std::size_t top = 0;

    std::vector<std::size_t> faces_of_dim(int k) const;
    // Face whose subdivision has exactly these cells, if any.
    std::optional<std::size_t> find(const std::vector<Mask>& cells) const;
};

SecondaryPolytope build_secondary(const PointConfig& c, Mask parent, const SecondaryOptions& opt = {});

// The subdivision attached to a face, recomputed from the facet normals containing it.
Subdivision face_to_subdivision(const PointConfig& c, const SecondaryPolytope& sp, std::size_t face);

// The face of all triangulations refining s.
Bits subdivision_to_face(const SecondaryPolytope& sp, const Subdivision& s);

// A subdivision is geometric when every cell marks all parent points inside it.
bool is_geometric_subdivision(const PointConfig& c, const Subdivision& s);

// Coarse subdivisions of the parent: subdivisions attached to the facets of its
// secondary polytope, canonically sorted, with certificates.
std::vector<Subdivision> coarse_subdivisions_of(const PointConfig& c, Mask parent, const SecondaryOptions& opt = {});

// Memo of secondary polytopes keyed by marking.
class SecondaryCache {
public:
    SecondaryCache(const PointConfig& c, SecondaryOptions opt) : c_(c), opt_(opt) {}
    const SecondaryPolytope& get(Mask parent);

private:
    const PointConfig& c_;
    SecondaryOptions opt_;
    std::map<Mask, std::unique_ptr<SecondaryPolytope>> memo_;
};

struct FactorizationReport {
    bool ok = false;
    std::vector<int> factor_dims;
    std::size_t interval_size = 0;
    std::string message;
};
// Checks that the faces below `face` form a lattice isomorphic to the product of the
// face lattices of the secondary polytopes of its cells.
FactorizationReport verify_factorization(const PointConfig& c, const SecondaryPolytope& sp, std::size_t face,
                                         SecondaryCache& cache);

struct WebVertex {
    Mask cell = 0;
    VecQ position; // 90-degree rotation of the slope of the lifting on the cell
};
struct WebEdge {
    std::size_t from = 0, to = 0; // vertex indices
    int wall_i = 0, wall_j = 0;   // point indices of the shared wall
};
struct WebRay {
    std::size_t from = 0;
    int wall_i = 0, wall_j = 0;
    VecQ direction;
};
struct DualWeb {
    std::vector<WebVertex> vertices;
    std::vector<WebEdge> edges;
    std::vector<WebRay> rays;
};
DualWeb dual_web(const PointConfig& c, const Subdivision& s);
// Every internal edge is perpendicular to its wall and has positive length in the
// direction of the convex break.
bool web_condition_holds(const PointConfig& c, const Subdivision& s, const DualWeb& w);

} // namespace ir
