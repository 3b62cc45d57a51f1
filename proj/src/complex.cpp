#include "infrared/complex.hpp"

#include <set>
#include <stdexcept>

namespace ir {

std::size_t ChainComplexQ::dim(int k) const
{
    auto it = basis.find(k);
    return it == basis.end() ? 0 : it->second.size();
}

MatrixQ ChainComplexQ::d(int k) const
{
    auto it = differential.find(k);
    if (it != differential.end())
        return it->second;
    return MatrixQ(dim(k + 1), dim(k));
}

std::vector<int> ChainComplexQ::degrees() const
{
    std::set<int> ks;
    for (const auto& [k, b] : basis)
        ks.insert(k);
    for (const auto& [k, m] : differential) {
        ks.insert(k);
        ks.insert(k + 1);
    }
    return {ks.begin(), ks.end()};
}

void ChainComplexQ::validate() const
{
    for (const auto& [k, m] : differential) {
        if (m.rows() != dim(k + 1) || m.cols() != dim(k))
            throw std::invalid_argument("complex: differential shape mismatch in degree " + std::to_string(k));
        auto next = differential.find(k + 1);
        if (next != differential.end() && !(next->second * m).is_zero())
            throw std::invalid_argument("complex: d o d != 0 at degree " + std::to_string(k));
    }
}


CohomologyReport cohomology(const ChainComplexQ& c, bool with_representatives)
{
    c.validate();
    CohomologyReport rep;
    std::map<int, std::size_t> ranks;
    for (int k : c.degrees())
        ranks[k] = rank(c.d(k));
    for (int k : c.degrees()) {
        const std::size_t dk = c.dim(k);
        const std::size_t ker = dk - ranks[k];
        const std::size_t im = ranks.count(k - 1) ? ranks[k - 1] : 0;
        rep.betti[k] = ker - im;
        if (!with_representatives)
            continue;
        auto& reps = rep.representatives[k];
        if (rep.betti[k] == 0)
            continue;
        // Complement of the image inside the kernel.
        EchelonBasis span(dk);
        MatrixQ prev = c.d(k - 1);
        MatrixQ prev_t = prev.transpose();
        for (std::size_t j = 0; j < prev_t.rows(); ++j) {
            VecQ col(dk);
            for (const auto& e : prev_t.row(j))
                col[e.col] = e.value;
            span.insert(col);
        }
        for (const auto& v : kernel_basis(c.d(k)))
            if (span.insert(v))
                reps.push_back(v);
    }
    return rep;
}

QuasiIsoReport is_quasi_iso(const std::map<int, MatrixQ>& f, const ChainComplexQ& source,
                            const ChainComplexQ& target)
{
    source.validate();
    target.validate();
    QuasiIsoReport rep;
    std::set<int> ks;
    for (int k : source.degrees())
        ks.insert(k);
    for (int k : target.degrees())
        ks.insert(k);
    auto fk = [&](int k) {
        auto it = f.find(k);
        if (it != f.end()) {
            if (it->second.rows() != target.dim(k) || it->second.cols() != source.dim(k))
                throw std::invalid_argument("is_quasi_iso: map shape mismatch in degree " + std::to_string(k));
            return it->second;
        }
        return MatrixQ(target.dim(k), source.dim(k));
    };
    for (int k : ks) {
        MatrixQ lhs = fk(k + 1) * source.d(k);
        MatrixQ rhs = target.d(k) * fk(k);
        if (!(lhs == rhs)) {
            rep.chain_map = false;
            rep.first_violation = k;
            return rep;
        }
    }
    auto hs = cohomology(source, true);
    auto ht = cohomology(target, false);
    rep.betti_source = hs.betti;
    rep.betti_target = ht.betti;
    rep.quasi_iso = true;
    for (int k : ks) {
        const std::size_t bs = hs.betti.count(k) ? hs.betti[k] : 0;
        const std::size_t bt = ht.betti.count(k) ? ht.betti[k] : 0;
        bool iso = bs == bt;
        if (iso && bs > 0) {
            // Images of source representatives must stay independent modulo the target image.
            MatrixQ prev_t = target.d(k - 1).transpose();
            MatrixQ stacked = prev_t;
            const std::size_t base = rank(prev_t);
            MatrixQ fm = fk(k);
            for (const auto& v : hs.representatives[k]) {
                VecQ w = fm.apply(v);
                SparseRow r;
                for (std::size_t i = 0; i < w.size(); ++i)
                    if (sgn(w[i]))
                        r.push_back({i, w[i]});
                stacked.append_row(std::move(r));
            }
            iso = rank(stacked) == base + bs;
        }
        rep.iso_in_degree[k] = iso;
        rep.quasi_iso = rep.quasi_iso && iso;
    }
    return rep;
}

long euler_characteristic(const std::map<int, std::size_t>& dims)
{
    long chi = 0;
    for (const auto& [k, n] : dims)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(n);
    return chi;
}

} // namespace ir
