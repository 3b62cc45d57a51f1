#include "infrared/matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace ir {

MatrixQ::MatrixQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

MatrixQ MatrixQ::identity(std::size_t n)
{
    MatrixQ m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.rows_[i].push_back({i, Rational(1)});
    return m;
}

MatrixQ MatrixQ::from_dense(const std::vector<VecQ>& rows, std::size_t cols)
{
    if (!rows.empty())
        cols = rows.front().size();
    MatrixQ m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("from_dense: ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(rows[r][c]))
                m.rows_[r].push_back({c, rows[r][c]});
    }
    return m;
}

std::size_t MatrixQ::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : rows_)
        n += r.size();
    return n;
}

Rational MatrixQ::get(std::size_t r, std::size_t c) const
{
    const auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    if (it != row.end() && it->col == c)
        return it->value;
    return 0;
}

void MatrixQ::set(std::size_t r, std::size_t c, const Rational& v)
{
    if (c >= cols_)
        throw std::out_of_range("MatrixQ::set column");
    auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    if (it != row.end() && it->col == c) {
        if (sgn(v))
            it->value = v;
        else
            row.erase(it);
    } else if (sgn(v)) {
        row.insert(it, {c, v});
    }
}

void MatrixQ::add(std::size_t r, std::size_t c, const Rational& v)
{
    if (!sgn(v))
        return;
    set(r, c, get(r, c) + v);
}

void MatrixQ::set_row(std::size_t r, SparseRow row)
{
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    SparseRow clean;
    for (auto& e : row) {
        if (e.col >= cols_)
            throw std::out_of_range("MatrixQ::set_row column");
        if (!clean.empty() && clean.back().col == e.col)
            clean.back().value += e.value;
        else
            clean.push_back(e);
    }
    std::erase_if(clean, [](const Entry& e) { return sgn(e.value) == 0; });
    rows_.at(r) = std::move(clean);
}

void MatrixQ::append_row(SparseRow row)
{
    rows_.emplace_back();
    set_row(rows_.size() - 1, std::move(row));
}

MatrixQ MatrixQ::transpose() const
{
    MatrixQ t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& e : rows_[r])
            t.rows_[e.col].push_back({r, e.value});
    return t;
}

VecQ MatrixQ::apply(const VecQ& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("MatrixQ::apply size mismatch");
    VecQ y(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& e : rows_[r])
            if (sgn(x[e.col]))
                y[r] += e.value * x[e.col];
    return y;
}

std::vector<VecQ> MatrixQ::to_dense() const
{
    std::vector<VecQ> d(rows_.size(), VecQ(cols_));
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& e : rows_[r])
            d[r][e.col] = e.value;
    return d;
}

MatrixQ operator*(const MatrixQ& a, const MatrixQ& b)
{
    if (a.cols_ != b.rows())
        throw std::invalid_argument("MatrixQ product: shape mismatch");
    MatrixQ c(a.rows(), b.cols_);
    std::map<std::size_t, Rational> acc;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        acc.clear();
        for (const auto& e : a.rows_[r])
            for (const auto& f : b.rows_[e.col])
                acc[f.col] += e.value * f.value;
        for (auto& [col, v] : acc)
            if (sgn(v))
                c.rows_[r].push_back({col, v});
    }
    return c;
}

static MatrixQ combine(const MatrixQ& a, const MatrixQ& b, int s)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("MatrixQ sum: shape mismatch");
    MatrixQ c(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        SparseRow row = a.row(r);
        for (const auto& e : b.row(r))
            row.push_back({e.col, s > 0 ? e.value : Rational(-e.value)});
        c.set_row(r, std::move(row));
    }
    return c;
}

MatrixQ operator+(const MatrixQ& a, const MatrixQ& b) { return combine(a, b, 1); }
MatrixQ operator-(const MatrixQ& a, const MatrixQ& b) { return combine(a, b, -1); }

bool operator==(const MatrixQ& a, const MatrixQ& b)
{
    if (a.rows() != b.rows() || a.cols_ != b.cols_)
        return false;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto& x = a.rows_[r];
        const auto& y = b.rows_[r];
        if (x.size() != y.size())
            return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].col != y[i].col || x[i].value != y[i].value)
                return false;
    }
    return true;
}

namespace {

struct IEntry {
    std::size_t col;
    Integer value;
};
using IRow = std::vector<IEntry>;

IRow integer_row(const SparseRow& row)
{
    Integer l = 1;
    for (const auto& e : row)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.value.get_den_mpz_t());
    IRow out;
    out.reserve(row.size());
    for (const auto& e : row) {
        Rational q = e.value * l;
        out.push_back({e.col, q.get_num()});
    }
    return out;
}

void normalize(IRow& r)
{
    if (r.empty())
        return;
    Integer g = 0;
    for (const auto& e : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
        if (g == 1)
            break;
    }
    if (sgn(r.front().value) < 0)
        g = -g;
    if (g != 1)
        for (auto& e : r)
            mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
}

// Returns (p0/g) r - (r0/g) p, which cancels the common leading column.
IRow eliminate(const IRow& r, const IRow& p)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.front().value.get_mpz_t(), p.front().value.get_mpz_t());
    Integer a = p.front().value / g;
    Integer b = r.front().value / g;
    IRow out;
    out.reserve(r.size() + p.size());
    std::size_t i = 1, j = 1;
    Integer v;
    while (i < r.size() || j < p.size()) {
        if (j >= p.size() || (i < r.size() && r[i].col < p[j].col)) {
            out.push_back({r[i].col, a * r[i].value});
            ++i;
        } else if (i >= r.size() || p[j].col < r[i].col) {
            out.push_back({p[j].col, -b * p[j].value});
            ++j;
        } else {
            v = a * r[i].value - b * p[j].value;
            if (sgn(v))
                out.push_back({r[i].col, v});
            ++i;
            ++j;
        }
    }
    normalize(out);
    return out;
}

} // namespace

std::size_t rank(const MatrixQ& m)
{
    std::vector<IRow> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty()) {
            rows.push_back(integer_row(m.row(r)));
            normalize(rows.back());
        }
    std::stable_sort(rows.begin(), rows.end(), [](const IRow& a, const IRow& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a.front().col < b.front().col;
    });
    std::unordered_map<std::size_t, IRow> pivots;
    for (auto& row : rows) {
        IRow r = std::move(row);
        while (!r.empty()) {
            auto it = pivots.find(r.front().col);
            if (it == pivots.end()) {
                std::size_t c = r.front().col;
                pivots.emplace(c, std::move(r));
                break;
            }
            if (r.size() < it->second.size())
                std::swap(r, it->second);
            r = eliminate(r, it->second);
        }
    }
    return pivots.size();
}

std::size_t rank_of_rows(const std::vector<VecQ>& rows)
{
    if (rows.empty())
        return 0;
    return rank(MatrixQ::from_dense(rows));
}

namespace {

// Sparse rational row reduction to fully reduced echelon form.
std::map<std::size_t, SparseRow> reduced_pivot_rows(const MatrixQ& m)
{
    std::map<std::size_t, SparseRow> piv;
    auto axpy = [](const SparseRow& x, const Rational& f, const SparseRow& y) {
        // x - f*y
        SparseRow out;
        out.reserve(x.size() + y.size());
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j >= y.size() || (i < x.size() && x[i].col < y[j].col))
                out.push_back(x[i++]);
            else if (i >= x.size() || y[j].col < x[i].col) {
                out.push_back({y[j].col, -f * y[j].value});
                ++j;
            } else {
                Rational v = x[i].value - f * y[j].value;
                if (sgn(v))
                    out.push_back({x[i].col, v});
                ++i;
                ++j;
            }
        }
        return out;
    };
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRow row = m.row(r);
        while (!row.empty()) {
            auto it = piv.find(row.front().col);
            if (it == piv.end())
                break;
            Rational f = row.front().value;
            row = axpy(row, f, it->second);
        }
        if (row.empty())
            continue;
        Rational lead = row.front().value;
        for (auto& e : row)
            e.value /= lead;
        std::size_t c = row.front().col;
        piv.emplace(c, std::move(row));
    }
    // Back substitution, last pivot first.
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
        for (auto jt = piv.begin(); jt->first != it->first; ++jt) {
            SparseRow& row = jt->second;
            auto pos = std::lower_bound(row.begin(), row.end(), it->first,
                                        [](const Entry& e, std::size_t k) { return e.col < k; });
            if (pos == row.end() || pos->col != it->first)
                continue;
            Rational f = pos->value;
            row = axpy(row, f, it->second);
        }
    }
    return piv;
}

} // namespace

std::vector<VecQ> kernel_basis(const MatrixQ& m)
{
    auto piv = reduced_pivot_rows(m);
    std::vector<VecQ> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (piv.count(f))
            continue;
        VecQ v(m.cols());
        v[f] = 1;
        for (const auto& [p, row] : piv) {
            if (p > f)
                break;
            auto pos = std::lower_bound(row.begin(), row.end(), f,
                                        [](const Entry& e, std::size_t k) { return e.col < k; });
            if (pos != row.end() && pos->col == f)
                v[p] = -pos->value;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::pair<std::vector<VecQ>, std::vector<std::size_t>> rref(const std::vector<VecQ>& rows, std::size_t cols)
{
    MatrixQ m(0, cols);
    for (const auto& r : rows) {
        SparseRow sr;
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(r.at(c)))
                sr.push_back({c, r[c]});
        m.append_row(std::move(sr));
    }
    auto piv = reduced_pivot_rows(m);
    std::vector<VecQ> out;
    std::vector<std::size_t> pc;
    for (const auto& [p, row] : piv) {
        VecQ v(cols);
        for (const auto& e : row)
            v[e.col] = e.value;
        out.push_back(std::move(v));
        pc.push_back(p);
    }
    return {out, pc};
}

Rational determinant(std::vector<VecQ> m)
{
    const std::size_t n = m.size();
    for (const auto& r : m)
        if (r.size() != n)
            throw std::invalid_argument("determinant: not square");
    if (n == 0)
        return 1;
    // Clear denominators row by row, then Bareiss on integers.
    Rational scale = 1;
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = common_denominator(m[i]);
        scale *= l;
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = Rational(m[i][j] * l).get_num();
    }
    int s = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(a[k], a[p]);
            s = -s;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    Rational det(a[n - 1][n - 1] * s);
    return det / scale;
}

std::vector<std::vector<Integer>> integer_kernel_basis(const std::vector<std::vector<Integer>>& m0, std::size_t cols)
{
    auto m = m0;
    const std::size_t rows = m.size();
    std::vector<std::vector<Integer>> u(cols, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < cols; ++i)
        u[i][i] = 1;
    auto colop = [&](std::size_t r, std::size_t j, const Integer& s, const Integer& t, const Integer& x,
                     const Integer& y) {
        // col_r <- s col_r + t col_j ; col_j <- x col_r + y col_j (old values)
        for (std::size_t i = 0; i < rows; ++i) {
            Integer cr = m[i][r], cj = m[i][j];
            m[i][r] = s * cr + t * cj;
            m[i][j] = x * cr + y * cj;
        }
        for (std::size_t i = 0; i < cols; ++i) {
            Integer cr = u[i][r], cj = u[i][j];
            u[i][r] = s * cr + t * cj;
            u[i][j] = x * cr + y * cj;
        }
    };
    std::size_t r = 0;
    for (std::size_t i = 0; i < rows && r < cols; ++i) {
        for (std::size_t j = r + 1; j < cols; ++j) {
            if (m[i][j] == 0)
                continue;
            if (m[i][r] == 0) {
                colop(r, j, 0, 1, 1, 0);
                continue;
            }
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m[i][r].get_mpz_t(), m[i][j].get_mpz_t());
            Integer x = -(m[i][j] / g), y = m[i][r] / g;
            colop(r, j, s, t, x, y);
        }
        if (m[i][r] != 0)
            ++r;
    }
    std::vector<std::vector<Integer>> basis;
    for (std::size_t j = r; j < cols; ++j) {
        std::vector<Integer> v(cols);
        for (std::size_t i = 0; i < cols; ++i)
            v[i] = u[i][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

VecQ EchelonBasis::reduce(VecQ v) const
{
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Rational f = v[pivots_[k]];
        if (!sgn(f))
            continue;
        for (std::size_t c = 0; c < dim_; ++c)
            if (sgn(rows_[k][c]))
                v[c] -= f * rows_[k][c];
    }
    return v;
}

bool EchelonBasis::insert(const VecQ& v)
{
    if (v.size() != dim_)
        throw std::invalid_argument("EchelonBasis: dimension mismatch");
    VecQ w = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && !sgn(w[p]))
        ++p;
    if (p == dim_)
        return false;
    Rational lead = w[p];
    for (auto& x : w)
        x /= lead;
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
}

bool EchelonBasis::contains(const VecQ& v) const
{
    VecQ w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](const Rational& q) { return sgn(q) == 0; });
}

} // namespace ir
