#include "infrared/lp.hpp"

#include <optional>
#include <stdexcept>

namespace ir {

namespace {

// Dense tableau for: maximize c.z subject to A z = b, z >= 0, with b >= 0.
class Tableau {
public:
    Tableau(std::vector<VecQ> a, VecQ b) : a_(std::move(a)), b_(std::move(b))
    {
        rows_ = a_.size();
        cols_ = rows_ ? a_[0].size() : 0;
    }

    // Phase one introduces one artificial per row; returns false if A z = b has no
    // nonnegative solution.
    bool phase_one()
    {
        const std::size_t n = cols_;
        for (auto& row : a_)
            row.resize(n + rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            a_[i][n + i] = 1;
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            basis_[i] = n + i;
        total_ = n + rows_;
        VecQ c(total_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[n + i] = -1;
        optimize(c, total_);
        Rational sum = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] >= n)
                sum += b_[i];
        if (sgn(sum))
            return false;
        // Drive artificials out of the basis, or drop their (redundant) rows.
        for (std::size_t i = 0; i < rows_;) {
            if (basis_[i] < n) {
                ++i;
                continue;
            }
            std::size_t j = 0;
            while (j < n && !sgn(a_[i][j]))
                ++j;
            if (j < n) {
                pivot(i, j);
                ++i;
            } else {
                a_.erase(a_.begin() + i);
                b_.erase(b_.begin() + i);
                basis_.erase(basis_.begin() + i);
                --rows_;
            }
        }
        for (auto& row : a_)
            row.resize(n);
        total_ = n;
        return true;
    }

    // Returns false if unbounded.
    bool optimize(const VecQ& c, std::size_t ncols)
    {
        for (;;) {
            // Reduced costs r_j = c_j - c_B . column_j ; enter the smallest j with r_j > 0.
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < ncols && !enter; ++j) {
                Rational r = c[j];
                for (std::size_t i = 0; i < rows_; ++i)
                    if (sgn(a_[i][j]) && sgn(c[basis_[i]]))
                        r -= c[basis_[i]] * a_[i][j];
                if (sgn(r) > 0)
                    enter = j;
            }
            if (!enter)
                return true;
            const std::size_t j = *enter;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (sgn(a_[i][j]) <= 0)
                    continue;
                Rational ratio = b_[i] / a_[i][j];
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave)
                return false;
            pivot(*leave, j);
        }
    }

    VecQ solution() const
    {
        VecQ z(total_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < total_)
                z[basis_[i]] = b_[i];
        return z;
    }

private:
    void pivot(std::size_t r, std::size_t c)
    {
        const Rational p = a_[r][c];
        for (auto& x : a_[r])
            if (sgn(x))
                x /= p;
        b_[r] /= p;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || !sgn(a_[i][c]))
                continue;
            const Rational f = a_[i][c];
            for (std::size_t j = 0; j < a_[i].size(); ++j)
                if (sgn(a_[r][j]))
                    a_[i][j] -= f * a_[r][j];
            b_[i] -= f * b_[r];
        }
        basis_[r] = c;
    }

    std::vector<VecQ> a_;
    VecQ b_;
    std::vector<std::size_t> basis_;
    std::size_t rows_ = 0, cols_ = 0, total_ = 0;
};

} // namespace

LpResult lp_strict_feasible(std::size_t nvars, const std::vector<LinearConstraint>& equalities,
                            const std::vector<LinearConstraint>& strict_inequalities)
{
    for (const auto& c : equalities)
        if (c.coeffs.size() != nvars)
            throw std::invalid_argument("lp_strict_feasible: equality arity");
    for (const auto& c : strict_inequalities)
        if (c.coeffs.size() != nvars)
            throw std::invalid_argument("lp_strict_feasible: inequality arity");

    // Columns: x+ (n), x- (n), t+, t-, u (t + u = 1), one surplus per strict inequality.
    const std::size_t n = nvars;
    const std::size_t tp = 2 * n, tm = 2 * n + 1, u = 2 * n + 2, s0 = 2 * n + 3;
    const std::size_t ncols = s0 + strict_inequalities.size();
    std::vector<VecQ> a;
    VecQ b;
    auto add_row = [&](VecQ row, Rational rhs) {
        if (sgn(rhs) < 0) {
            for (auto& x : row)
                x = -x;
            rhs = -rhs;
        }
        a.push_back(std::move(row));
        b.push_back(std::move(rhs));
    };
    for (const auto& c : equalities) {
        VecQ row(ncols);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = c.coeffs[i];
            row[n + i] = -c.coeffs[i];
        }
        add_row(std::move(row), c.rhs);
    }
    for (std::size_t k = 0; k < strict_inequalities.size(); ++k) {
        const auto& c = strict_inequalities[k];
        VecQ row(ncols);
        for (std::size_t i = 0; i < n; ++i) {
            row[i] = c.coeffs[i];
            row[n + i] = -c.coeffs[i];
        }
        row[tp] = -1;
        row[tm] = 1;
        row[s0 + k] = -1;
        add_row(std::move(row), c.rhs);
    }
    {
        VecQ row(ncols);
        row[tp] = 1;
        row[tm] = -1;
        row[u] = 1;
        add_row(std::move(row), Rational(1));
    }

    Tableau tab(std::move(a), std::move(b));
    LpResult res;
    if (!tab.phase_one())
        return res;
    VecQ c(ncols);
    c[tp] = 1;
    c[tm] = -1;
    if (!tab.optimize(c, ncols))
        throw std::logic_error("lp_strict_feasible: slack unbounded despite cap");
    VecQ z = tab.solution();
    res.slack = z[tp] - z[tm];
    if (sgn(res.slack) <= 0)
        return res;
    res.feasible = true;
    res.witness.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        res.witness[i] = z[i] - z[n + i];
    for (const auto& e : equalities)
        if (dot(e.coeffs, res.witness) != e.rhs)
            throw std::logic_error("lp_strict_feasible: witness violates an equality");
    for (const auto& s : strict_inequalities)
        if (dot(s.coeffs, res.witness) <= s.rhs)
            throw std::logic_error("lp_strict_feasible: witness violates a strict inequality");
    return res;
}

} // namespace ir
