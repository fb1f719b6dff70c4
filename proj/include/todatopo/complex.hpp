#pragma once

#include <map>
#include <string>
#include <vector>

#include "todatopo/diagram.hpp"
#include "todatopo/rootsys.hpp"
#include "todatopo/snf.hpp"

namespace todatopo {

/// Basis cell (D, [w]) of the chain complex: a colored diagram together with
/// the minimal-length representative of a coset in W/W_S.  Geometric
/// dimension is rank - |S|.
struct Cell {
    ColoredDiagram diagram;
    int coset_rep = 0;
    bool operator==(const Cell&) const = default;
};

/// Sparse integer chain in a fixed degree; keys are basis-cell indices.
struct Chain {
    int degree = 0;
    std::map<int, long long> coeffs;

    void add(int cell, long long v) {
        if (v == 0) return;
        auto [it, fresh] = coeffs.emplace(cell, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) coeffs.erase(it);
        }
    }
    bool operator==(const Chain&) const = default;
};

struct HomologyGroup {
    int degree = 0;
    long long betti = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next
};

struct RationalCharacter {
    int degree = 0;
    long long dimension = 0;
    std::vector<ConjugacyClassInfo> classes;
    std::vector<BigRat> traces;  // one per class, same order
};

/// The cellular chain complex over the (D, [w]) basis.  Basis order within a
/// degree is (S ascending as bitmask, coset representative ascending, color
/// mask ascending); matrices are reproducible across runs.
///
/// Holds references to the root system and Weyl group; both must outlive
/// the complex.
class ChainComplex {
  public:
    static ChainComplex build(const RootSystem& rs, const WeylGroup& W);

    const RootSystem& root_system() const { return *rs_; }
    const WeylGroup& weyl() const { return *W_; }
    int top_degree() const { return rs_->rank(); }

    const std::vector<Cell>& basis(int degree) const { return cells_[degree]; }
    long long dim(int degree) const { return static_cast<long long>(cells_[degree].size()); }
    /// Boundary matrix M_degree -> M_{degree-1}; degree 0 gives the empty map.
    const SparseIntMatrix& boundary(int degree) const { return boundaries_[degree]; }

    int cell_index(int degree, std::uint32_t subset_mask, int coset_rep,
                   std::uint32_t color_mask) const;
    int cell_index(int degree, const Cell& cell) const;

    std::vector<long long> f_vector() const;
    long long euler_characteristic() const;

    /// Boundary of a single basis cell, as a chain in degree-1.
    Chain boundary_of_cell(int degree, int index) const;

  private:
    const RootSystem* rs_ = nullptr;
    const WeylGroup* W_ = nullptr;
    std::vector<std::vector<Cell>> cells_;          // [degree]
    std::vector<SparseIntMatrix> boundaries_;       // [degree]
    // offset of each subset-mask block within its degree's basis
    std::vector<std::map<std::uint32_t, int>> block_offset_;
};

bool verify_d_squared(const ChainComplex& cc);

/// Homology groups H_0 .. H_l via Smith normal form, exact.
std::vector<HomologyGroup> homology(const ChainComplex& cc);

/// Left action of w on a chain, composed along a reduced word of w.
Chain weyl_action_on_chain(const ChainComplex& cc, int w, const Chain& chain);

/// d(s.x) == s.d(x) for every generator s and basis cell x.
bool verify_equivariance(const ChainComplex& cc);

/// c_l = sum_w (-1)^(l(w)) (uncolored, w) and its boundary.
std::pair<Chain, Chain> top_cycle(const ChainComplex& cc);

/// Character of the W-action on H_k(Q), computed with exact rationals.
RationalCharacter rational_character(const ChainComplex& cc, int k);

/// Thread budget for per-degree work, from TODA_TOPO_THREADS.
int thread_cap();

}  // namespace todatopo
