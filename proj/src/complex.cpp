#include "todatopo/complex.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <future>
#include <thread>

namespace todatopo {

namespace {

ColoredDiagram diagram_from_mask(int rank, std::uint32_t subset_mask, std::uint32_t color_mask) {
    auto D = ColoredDiagram::all_uncolored(rank);
    int k = 0;
    for (int i = 0; i < rank; ++i) {
        if (!(subset_mask >> i & 1u)) continue;
        D = D.with_color(i, (color_mask >> k & 1u) ? VertexState::B : VertexState::R);
        ++k;
    }
    return D;
}

// Masks with popcount k in lexicographic order of the sorted vertex lists
// ({0,1} < {0,2} < {0,3} < {1,2} < ...), so bases are reproducible.
std::vector<std::uint32_t> subsets_of_size(int rank, int k) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << rank); ++m)
        if (std::popcount(m) == k) out.push_back(m);
    auto vertex_list = [rank](std::uint32_t m) {
        std::vector<int> v;
        for (int i = 0; i < rank; ++i)
            if (m >> i & 1u) v.push_back(i);
        return v;
    };
    std::sort(out.begin(), out.end(), [&](std::uint32_t a, std::uint32_t b) {
        return vertex_list(a) < vertex_list(b);
    });
    return out;
}

}  // namespace

int thread_cap() {
    if (const char* env = std::getenv("TODA_TOPO_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

ChainComplex ChainComplex::build(const RootSystem& rs, const WeylGroup& W) {
    ChainComplex cc;
    cc.rs_ = &rs;
    cc.W_ = &W;
    const int l = rs.rank();
    cc.cells_.resize(l + 1);
    cc.block_offset_.resize(l + 1);

    for (int k = 0; k <= l; ++k) {
        int degree = l - k;
        auto& cells = cc.cells_[degree];
        for (std::uint32_t mask : subsets_of_size(l, k)) {
            cc.block_offset_[degree][mask] = static_cast<int>(cells.size());
            const auto& cos = W.cosets(mask);
            for (int rep : cos.minimal_reps())
                for (std::uint32_t cm = 0; cm < (1u << k); ++cm)
                    cells.push_back(Cell{diagram_from_mask(l, mask, cm), rep});
        }
    }

    cc.boundaries_.resize(l + 1);
    cc.boundaries_[0] = SparseIntMatrix::zero(0, static_cast<int>(cc.cells_[0].size()));
    for (int degree = 1; degree <= l; ++degree) {
        auto& mat = cc.boundaries_[degree];
        mat = SparseIntMatrix::zero(static_cast<int>(cc.cells_[degree - 1].size()),
                                    static_cast<int>(cc.cells_[degree].size()));
        for (int idx = 0; idx < mat.cols; ++idx) {
            Chain b = cc.boundary_of_cell(degree, idx);
            auto& col = mat.col_entries[idx];
            col.assign(b.coeffs.begin(), b.coeffs.end());
        }
    }
    if (!verify_d_squared(cc)) throw ComplexInconsistent("boundary maps do not compose to zero");
    return cc;
}

Chain ChainComplex::boundary_of_cell(int degree, int index) const {
    const Cell& cell = cells_[degree][index];
    Chain out;
    out.degree = degree - 1;
    for (const auto& piece : boundary_pieces(cell.diagram)) {
        std::uint32_t bigger = piece.diagram.colored_set();
        auto dec = W_->cosets(bigger).decompose(cell.coset_rep);
        OrientedDiagram od{piece.diagram, 1};
        for (int i : dec.sub_word) od = oriented_action(*rs_, i, od);
        int target = cell_index(degree - 1, bigger, dec.min_rep, od.diagram.color_mask());
        out.add(target, static_cast<long long>(piece.sign) * od.orientation);
    }
    return out;
}

int ChainComplex::cell_index(int degree, std::uint32_t subset_mask, int coset_rep,
                             std::uint32_t color_mask) const {
    int offset = block_offset_[degree].at(subset_mask);
    const auto& cos = W_->cosets(subset_mask);
    int k = std::popcount(subset_mask);
    return offset + cos.coset_index(coset_rep) * (1 << k) + static_cast<int>(color_mask);
}

int ChainComplex::cell_index(int degree, const Cell& cell) const {
    return cell_index(degree, cell.diagram.colored_set(), cell.coset_rep,
                      cell.diagram.color_mask());
}

std::vector<long long> ChainComplex::f_vector() const {
    std::vector<long long> f;
    for (int d = 0; d <= top_degree(); ++d) f.push_back(dim(d));
    return f;
}

long long ChainComplex::euler_characteristic() const {
    long long chi = 0;
    for (int d = 0; d <= top_degree(); ++d) chi += (d % 2 == 0 ? 1 : -1) * dim(d);
    return chi;
}

bool verify_d_squared(const ChainComplex& cc) {
    for (int degree = 2; degree <= cc.top_degree(); ++degree) {
        const auto& outer = cc.boundary(degree - 1);
        const auto& inner = cc.boundary(degree);
        for (int c = 0; c < inner.cols; ++c) {
            std::map<int, long long> acc;
            for (auto& [mid, v] : inner.col_entries[c])
                for (auto& [r, w] : outer.col_entries[mid]) acc[r] += v * w;
            for (auto& [r, v] : acc)
                if (v != 0) return false;
        }
    }
    return true;
}

std::vector<HomologyGroup> homology(const ChainComplex& cc) {
    if (!verify_d_squared(cc)) throw ComplexInconsistent("boundary maps do not compose to zero");
    const int l = cc.top_degree();

    // SNF of every boundary map; degrees are independent.
    std::vector<SnfResult> snf(l + 2);
    snf[0] = SnfResult{};      // d_0 = 0
    snf[l + 1] = SnfResult{};  // d_{l+1} = 0
    int budget = thread_cap();
    if (budget > 1 && l >= 2) {
        std::vector<std::future<SnfResult>> jobs(l + 1);
        for (int d = 1; d <= l; ++d)
            jobs[d] = std::async(std::launch::async,
                                 [&cc, d]() { return smith_normal_form(cc.boundary(d)); });
        for (int d = 1; d <= l; ++d) snf[d] = jobs[d].get();
    } else {
        for (int d = 1; d <= l; ++d) snf[d] = smith_normal_form(cc.boundary(d));
    }

    std::vector<HomologyGroup> out;
    for (int d = 0; d <= l; ++d) {
        HomologyGroup h;
        h.degree = d;
        h.betti = cc.dim(d) - snf[d].rank - snf[d + 1].rank;
        for (const auto& f : snf[d + 1].factors)
            if (f > 1) h.torsion.push_back(f);
        out.push_back(std::move(h));
    }
    return out;
}

namespace {

Chain apply_generator(const ChainComplex& cc, int i, const Chain& chain) {
    const WeylGroup& W = cc.weyl();
    const RootSystem& rs = cc.root_system();
    Chain out;
    out.degree = chain.degree;
    for (auto& [idx, coeff] : chain.coeffs) {
        const Cell& cell = cc.basis(chain.degree)[idx];
        std::uint32_t mask = cell.diagram.colored_set();
        int moved = W.multiply(W.generator(i), cell.coset_rep);
        auto dec = W.cosets(mask).decompose(moved);
        OrientedDiagram od{cell.diagram, 1};
        for (int g : dec.sub_word) od = oriented_action(rs, g, od);
        int target = cc.cell_index(chain.degree, mask, dec.min_rep, od.diagram.color_mask());
        out.add(target, coeff * od.orientation);
    }
    return out;
}

}  // namespace

Chain weyl_action_on_chain(const ChainComplex& cc, int w, const Chain& chain) {
    auto word = cc.weyl().reduced_word(w);
    Chain cur = chain;
    // w = s_{word[0]} ... s_{word[k-1]}, so the rightmost letter acts first.
    for (auto it = word.rbegin(); it != word.rend(); ++it) cur = apply_generator(cc, *it, cur);
    return cur;
}

bool verify_equivariance(const ChainComplex& cc) {
    for (int degree = 1; degree <= cc.top_degree(); ++degree) {
        for (int idx = 0; idx < static_cast<int>(cc.basis(degree).size()); ++idx) {
            Chain x;
            x.degree = degree;
            x.add(idx, 1);
            Chain dx = cc.boundary_of_cell(degree, idx);
            for (int i = 0; i < cc.root_system().rank(); ++i) {
                Chain lhs = apply_generator(cc, i, x);
                Chain sum;
                sum.degree = degree - 1;
                for (auto& [j, v] : lhs.coeffs) {
                    Chain d = cc.boundary_of_cell(degree, j);
                    for (auto& [t, u] : d.coeffs) sum.add(t, v * u);
                }
                Chain rhs = apply_generator(cc, i, dx);
                if (!(sum == rhs)) return false;
            }
        }
    }
    return true;
}

std::pair<Chain, Chain> top_cycle(const ChainComplex& cc) {
    const int l = cc.top_degree();
    Chain c;
    c.degree = l;
    for (int idx = 0; idx < static_cast<int>(cc.basis(l).size()); ++idx) {
        const Cell& cell = cc.basis(l)[idx];
        c.add(idx, cc.weyl().length(cell.coset_rep) % 2 == 0 ? 1 : -1);
    }
    Chain dc;
    dc.degree = l - 1;
    if (l >= 1) {
        for (auto& [idx, v] : c.coeffs) {
            Chain d = cc.boundary_of_cell(l, idx);
            for (auto& [t, u] : d.coeffs) dc.add(t, v * u);
        }
    }
    return {c, dc};
}

RationalCharacter rational_character(const ChainComplex& cc, int k) {
    const int l = cc.top_degree();
    if (k < 0 || k > l)
        throw Error("character degree " + std::to_string(k) + " outside [0, " +
                    std::to_string(l) + "]");
    const int n = static_cast<int>(cc.dim(k));

    // Kernel of d_k.
    std::vector<std::vector<BigRat>> kernel;
    if (k == 0) {
        kernel.resize(n, std::vector<BigRat>(n, BigRat(0)));
        for (int i = 0; i < n; ++i) kernel[i][i] = 1;
    } else {
        kernel = rat_nullspace(rat_from_sparse(cc.boundary(k)));
    }

    // Column basis of the image of d_{k+1}.
    std::vector<std::vector<BigRat>> image;
    if (k < l) {
        const auto& bnd = cc.boundary(k + 1);
        RatMatrix m = rat_from_sparse(bnd);
        for (int c : rat_column_basis(m)) {
            std::vector<BigRat> col(n, BigRat(0));
            for (auto& [r, v] : bnd.col_entries[c]) col[r] = BigRat(v);
            image.push_back(std::move(col));
        }
    }

    // Extend the image basis to a basis of the kernel; the added kernel
    // vectors represent a basis of H_k(Q).
    RatMatrix span(n, std::vector<BigRat>(image.size() + kernel.size(), BigRat(0)));
    for (std::size_t c = 0; c < image.size(); ++c)
        for (int r = 0; r < n; ++r) span[r][c] = image[c][r];
    for (std::size_t c = 0; c < kernel.size(); ++c)
        for (int r = 0; r < n; ++r) span[r][image.size() + c] = kernel[c][r];
    std::vector<std::vector<BigRat>> quotient;
    for (int c : rat_column_basis(span))
        if (c >= static_cast<int>(image.size()))
            quotient.push_back(kernel[c - image.size()]);

    RationalCharacter out;
    out.degree = k;
    out.dimension = static_cast<long long>(quotient.size());
    out.classes = conjugacy_class_info(cc.weyl());

    // Coordinates solve [image | quotient] x = w.q exactly.
    RatMatrix solve_mat(n, std::vector<BigRat>(image.size() + quotient.size(), BigRat(0)));
    for (std::size_t c = 0; c < image.size(); ++c)
        for (int r = 0; r < n; ++r) solve_mat[r][c] = image[c][r];
    for (std::size_t c = 0; c < quotient.size(); ++c)
        for (int r = 0; r < n; ++r) solve_mat[r][image.size() + c] = quotient[c][r];

    for (const auto& cls : out.classes) {
        auto word = cc.weyl().reduced_word(cls.representative);
        BigRat trace(0);
        for (std::size_t qi = 0; qi < quotient.size(); ++qi) {
            // Push the quotient vector through the signed permutation action.
            std::vector<BigRat> cur = quotient[qi];
            for (auto it = word.rbegin(); it != word.rend(); ++it) {
                std::vector<BigRat> next(n, BigRat(0));
                for (int idx = 0; idx < n; ++idx) {
                    if (cur[idx] == 0) continue;
                    Chain unit;
                    unit.degree = k;
                    unit.add(idx, 1);
                    Chain moved = apply_generator(cc, *it, unit);
                    for (auto& [t, v] : moved.coeffs) next[t] += cur[idx] * v;
                }
                cur = std::move(next);
            }
            auto coords = rat_solve(solve_mat, cur);
            trace += coords[image.size() + qi];
        }
        out.traces.push_back(trace);
    }
    return out;
}

}  // namespace todatopo
