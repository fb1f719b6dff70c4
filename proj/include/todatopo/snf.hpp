#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace todatopo {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Column-major sparse integer matrix; row indices sorted within a column.
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, long long>>> col_entries;

    static SparseIntMatrix zero(int rows, int cols) {
        SparseIntMatrix m;
        m.rows = rows;
        m.cols = cols;
        m.col_entries.resize(cols);
        return m;
    }
    long long at(int r, int c) const {
        for (auto& [row, v] : col_entries[c])
            if (row == r) return v;
        return 0;
    }
    std::size_t nnz() const {
        std::size_t n = 0;
        for (auto& col : col_entries) n += col.size();
        return n;
    }
};

struct SnfResult {
    /// Invariant factors d_1 | d_2 | ..., all positive; rank = factors.size().
    std::vector<BigInt> factors;
    int rank = 0;
};

/// Exact Smith normal form.  Unit pivots are eliminated sparsely; whatever
/// remains goes through a dense arbitrary-precision reduction.
SnfResult smith_normal_form(const SparseIntMatrix& m);
SnfResult smith_normal_form(std::vector<std::vector<BigInt>> dense);

/// Exact rational matrix utilities (row-major dense).
using RatMatrix = std::vector<std::vector<BigRat>>;

RatMatrix rat_from_sparse(const SparseIntMatrix& m);
/// Basis of the null space (as columns-of-coefficients vectors of length cols).
std::vector<std::vector<BigRat>> rat_nullspace(const RatMatrix& m);
/// Indices of a maximal independent subset of the columns.
std::vector<int> rat_column_basis(const RatMatrix& m);
int rat_rank(RatMatrix m);

/// Solves A x = b for consistent systems; throws if inconsistent.
std::vector<BigRat> rat_solve(const RatMatrix& a, const std::vector<BigRat>& b);

}  // namespace todatopo
