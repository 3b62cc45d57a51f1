#pragma once

#include "infrared/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ir {

// Cochain complex: differential[k] maps degree k to degree k+1 and is stored as a
// (dim C^{k+1}) x (dim C^k) matrix acting on column vectors.
struct ChainComplexQ {
    std::map<int, std::vector<std::string>> basis;
    std::map<int, MatrixQ> differential;

    std::size_t dim(int k) const;
    // Differential out of degree k, or a zero matrix of the right shape.
    MatrixQ d(int k) const;
    std::vector<int> degrees() const;
    // Throws std::invalid_argument on shape errors or d o d != 0.
    void validate() const;
};

struct CohomologyReport {
    std::map<int, std::size_t> betti;
    std::map<int, std::vector<VecQ>> representatives; // only if requested
};

CohomologyReport cohomology(const ChainComplexQ& c, bool with_representatives = true);

struct QuasiIsoReport {
    bool chain_map = true;
    std::optional<int> first_violation;
    std::map<int, std::size_t> betti_source;
    std::map<int, std::size_t> betti_target;
    std::map<int, bool> iso_in_degree;
    bool quasi_iso = false;
};

// f[k] : source^k -> target^k as a (dim target^k) x (dim source^k) matrix.
QuasiIsoReport is_quasi_iso(const std::map<int, MatrixQ>& f, const ChainComplexQ& source,
                            const ChainComplexQ& target);

// Euler characteristic of the graded dimensions.
long euler_characteristic(const std::map<int, std::size_t>& dims);

} // namespace ir
