#include "todatopo/snf.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

namespace todatopo {

namespace {

struct Int64Overflow {};

// Arithmetic shims so the same elimination code runs on checked 64-bit
// integers (fast path) and on cpp_int (fallback).
inline long long mul_ck(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
}
inline long long sub_mul_ck(long long acc, long long f, long long v) {
    long long r;
    if (__builtin_sub_overflow(acc, mul_ck(f, v), &r)) throw Int64Overflow{};
    return r;
}
inline long long add_ck(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
}
inline long long abs_val(long long v) { return v < 0 ? -v : v; }
inline BigInt mul_ck(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt sub_mul_ck(const BigInt& acc, const BigInt& f, const BigInt& v) {
    return acc - f * v;
}
inline BigInt add_ck(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt abs_val(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// Kannan-Bachem style dense SNF with minimal-entry pivoting.  Used for the
// residual left after the sparse unit-pivot phase.
template <typename I>
void dense_snf(std::vector<std::vector<I>>& a, std::vector<I>& factors) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    int top = 0;
    while (top < rows && top < cols) {
        int pr = -1, pc = -1;
        I best{};
        for (int r = top; r < rows; ++r) {
            for (int c = top; c < cols; ++c) {
                if (a[r][c] == 0) continue;
                I v = abs_val(a[r][c]);
                if (pr < 0 || v < best) {
                    best = v;
                    pr = r;
                    pc = c;
                    if (best == 1) break;
                }
            }
            if (pr >= 0 && best == 1) break;
        }
        if (pr < 0) break;  // submatrix is zero
        std::swap(a[top], a[pr]);
        for (int r = 0; r < rows; ++r) std::swap(a[r][top], a[r][pc]);

        bool clean = true;
        for (int r = top + 1; r < rows; ++r) {
            if (a[r][top] == 0) continue;
            I q = a[r][top] / a[top][top];
            if (q != 0)
                for (int c = top; c < cols; ++c) a[r][c] = sub_mul_ck(a[r][c], q, a[top][c]);
            if (a[r][top] != 0) clean = false;
        }
        for (int c = top + 1; c < cols; ++c) {
            if (a[top][c] == 0) continue;
            I q = a[top][c] / a[top][top];
            if (q != 0)
                for (int r = top; r < rows; ++r) a[r][c] = sub_mul_ck(a[r][c], q, a[r][top]);
            if (a[top][c] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; re-pivot

        // The pivot must divide everything that remains; if not, fold the
        // offending row into the pivot row and redo this position.
        bool divides = true;
        for (int r = top + 1; r < rows && divides; ++r)
            for (int c = top + 1; c < cols && divides; ++c)
                if (a[r][c] % a[top][top] != 0) {
                    for (int cc = top; cc < cols; ++cc)
                        a[top][cc] = add_ck(a[top][cc], a[r][cc]);
                    divides = false;
                }
        if (!divides) continue;
        if (a[top][top] < 0)
            for (int c = top; c < cols; ++c) a[top][c] = -a[top][c];
        factors.push_back(a[top][top]);
        ++top;
    }
}

template <typename I>
std::vector<I> snf_factors(const SparseIntMatrix& m) {
    std::vector<std::map<int, I>> rows(m.rows);
    std::vector<std::set<int>> col_rows(m.cols);
    for (int c = 0; c < m.cols; ++c) {
        for (auto& [r, v] : m.col_entries[c]) {
            if (v == 0) continue;
            rows[r][c] = I(v);
            col_rows[c].insert(r);
        }
    }
    std::vector<char> row_live(m.rows, 1);
    int unit_pivots = 0;

    auto eliminate = [&](int pr, int pc) {
        // |pivot| = 1: clear the column with row operations, then drop the
        // pivot row and column.
        I pivot = rows[pr][pc];
        std::vector<int> targets(col_rows[pc].begin(), col_rows[pc].end());
        for (int r : targets) {
            if (r == pr) continue;
            I factor = rows[r][pc] / pivot;
            for (auto& [c, v] : rows[pr]) {
                auto it = rows[r].find(c);
                if (it == rows[r].end()) {
                    I nv = sub_mul_ck(I(0), factor, v);
                    if (nv != 0) {
                        rows[r][c] = nv;
                        col_rows[c].insert(r);
                    }
                } else {
                    it->second = sub_mul_ck(it->second, factor, v);
                    if (it->second == 0) {
                        rows[r].erase(it);
                        col_rows[c].erase(r);
                    }
                }
            }
        }
        for (auto& [c, v] : rows[pr]) col_rows[c].erase(pr);
        rows[pr].clear();
        row_live[pr] = 0;
        ++unit_pivots;
    };

    // Markowitz-flavored greedy on unit entries, sparsest rows first.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> order;
        for (int r = 0; r < m.rows; ++r)
            if (row_live[r] && !rows[r].empty()) order.push_back(r);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return rows[a].size() < rows[b].size(); });
        for (int r : order) {
            if (!row_live[r] || rows[r].empty()) continue;
            int best_c = -1;
            std::size_t best_fill = 0;
            for (auto& [c, v] : rows[r]) {
                if (abs_val(v) != 1) continue;
                std::size_t fill = (rows[r].size() - 1) * (col_rows[c].size() - 1);
                if (best_c < 0 || fill < best_fill) {
                    best_c = c;
                    best_fill = fill;
                }
            }
            if (best_c >= 0) {
                eliminate(r, best_c);
                changed = true;
            }
        }
    }

    // Dense finish on whatever survived (no unit entries remain).
    std::vector<int> live_r;
    std::set<int> used_cols;
    for (int r = 0; r < m.rows; ++r)
        if (row_live[r] && !rows[r].empty()) {
            live_r.push_back(r);
            for (auto& [c, v] : rows[r]) used_cols.insert(c);
        }

    std::vector<I> factors(unit_pivots, I(1));
    if (!live_r.empty()) {
        std::map<int, int> col_pos;
        int k = 0;
        for (int c : used_cols) col_pos[c] = k++;
        std::vector<std::vector<I>> dense(live_r.size(), std::vector<I>(used_cols.size(), I(0)));
        for (std::size_t rr = 0; rr < live_r.size(); ++rr)
            for (auto& [c, v] : rows[live_r[rr]]) dense[rr][col_pos[c]] = v;
        std::vector<I> tail;
        dense_snf(dense, tail);
        // Unit pivots divide everything, so appending keeps the chain.
        for (auto& f : tail) factors.push_back(f);
    }
    return factors;
}

}  // namespace

SnfResult smith_normal_form(std::vector<std::vector<BigInt>> dense) {
    SnfResult res;
    dense_snf(dense, res.factors);
    res.rank = static_cast<int>(res.factors.size());
    return res;
}

SnfResult smith_normal_form(const SparseIntMatrix& m) {
    SnfResult res;
    try {
        for (auto f : snf_factors<long long>(m)) res.factors.push_back(BigInt(f));
    } catch (const Int64Overflow&) {
        res.factors = snf_factors<BigInt>(m);
    }
    res.rank = static_cast<int>(res.factors.size());
    return res;
}

RatMatrix rat_from_sparse(const SparseIntMatrix& m) {
    RatMatrix a(m.rows, std::vector<BigRat>(m.cols, BigRat(0)));
    for (int c = 0; c < m.cols; ++c)
        for (auto& [r, v] : m.col_entries[c]) a[r][c] = BigRat(v);
    return a;
}

namespace {

// Reduced row echelon form; returns the pivot column of each pivot row.
std::vector<int> rref(RatMatrix& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int pr = 0;
    for (int c = 0; c < cols && pr < rows; ++c) {
        int sel = -1;
        for (int r = pr; r < rows; ++r)
            if (a[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[pr], a[sel]);
        BigRat inv = a[pr][c];
        for (int cc = c; cc < cols; ++cc) a[pr][cc] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == pr || a[r][c] == 0) continue;
            BigRat f = a[r][c];
            for (int cc = c; cc < cols; ++cc) a[r][cc] -= f * a[pr][cc];
        }
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

}  // namespace

std::vector<std::vector<BigRat>> rat_nullspace(const RatMatrix& m) {
    if (m.empty()) return {};
    RatMatrix a = m;
    const int cols = static_cast<int>(a[0].size());
    auto pivots = rref(a);
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<BigRat>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<BigRat> v(cols, BigRat(0));
        v[c] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -a[pr][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<int> rat_column_basis(const RatMatrix& m) {
    RatMatrix a = m;
    return rref(a);
}

int rat_rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

std::vector<BigRat> rat_solve(const RatMatrix& a, const std::vector<BigRat>& b) {
    if (a.empty()) {
        for (auto& v : b)
            if (v != 0) throw std::runtime_error("inconsistent linear system");
        return {};
    }
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    RatMatrix aug(rows, std::vector<BigRat>(cols + 1, BigRat(0)));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) aug[r][c] = a[r][c];
        aug[r][cols] = b[r];
    }
    auto pivots = rref(aug);
    std::vector<BigRat> x(cols, BigRat(0));
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
        if (pivots[pr] == cols) throw std::runtime_error("inconsistent linear system");
        x[pivots[pr]] = aug[pr][cols];
    }
    return x;
}

}  // namespace todatopo
