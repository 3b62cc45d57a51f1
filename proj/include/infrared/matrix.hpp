#pragma once

#include "infrared/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace ir {

struct Entry {
    std::size_t col;
    Rational value;
};
using SparseRow = std::vector<Entry>; // sorted by col, no zero values

class MatrixQ {
public:
    MatrixQ() = default;
    MatrixQ(std::size_t rows, std::size_t cols);

    static MatrixQ identity(std::size_t n);
    static MatrixQ from_dense(const std::vector<VecQ>& rows, std::size_t cols = 0);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }

    Rational get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& v);
    void add(std::size_t r, std::size_t c, const Rational& v);
    const SparseRow& row(std::size_t r) const { return rows_.at(r); }
    void set_row(std::size_t r, SparseRow row);
    void append_row(SparseRow row);

    MatrixQ transpose() const;
    VecQ apply(const VecQ& x) const;
    std::vector<VecQ> to_dense() const;

    friend MatrixQ operator*(const MatrixQ& a, const MatrixQ& b);
    friend MatrixQ operator+(const MatrixQ& a, const MatrixQ& b);
    friend MatrixQ operator-(const MatrixQ& a, const MatrixQ& b);
    friend bool operator==(const MatrixQ& a, const MatrixQ& b);

private:
    std::vector<SparseRow> rows_;
    std::size_t cols_ = 0;
};

std::size_t rank(const MatrixQ& m);

// Rank of the matrix whose rows are the given vectors.
std::size_t rank_of_rows(const std::vector<VecQ>& rows);

// Basis of the right kernel, read off the reduced row echelon form: one vector per
// free column, with a 1 in that column.
std::vector<VecQ> kernel_basis(const MatrixQ& m);

// Reduced row echelon form (nonzero rows only) together with pivot columns.
std::pair<std::vector<VecQ>, std::vector<std::size_t>> rref(const std::vector<VecQ>& rows, std::size_t cols);

// Fraction-free determinant of a square dense matrix.
Rational determinant(std::vector<VecQ> m);

// Integer (Z-module) kernel basis of an integer matrix, via unimodular column operations.
std::vector<std::vector<Integer>> integer_kernel_basis(const std::vector<std::vector<Integer>>& m, std::size_t cols);

// Incremental independence test against a growing set of vectors (used to pick
// cohomology representatives and to test spans).
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim) : dim_(dim) {}
    // Returns true and stores v if v is independent of the stored vectors.
    bool insert(const VecQ& v);
    bool contains(const VecQ& v) const;
    std::size_t size() const { return rows_.size(); }

private:
    VecQ reduce(VecQ v) const;
    std::size_t dim_;
    std::vector<VecQ> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace ir
