#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "todatopo/rootsys.hpp"

namespace todatopo {

/// Per-vertex label.  Colored diagrams use {Uncolored, R, B}; signed-colored
/// diagrams use {R, B, Plus, Minus, Zero}.  Text encoding is one character
/// per vertex: u R B + - 0.
enum class VertexState : char {
    Uncolored = 'u',
    R = 'R',
    B = 'B',
    Plus = '+',
    Minus = '-',
    Zero = '0',
};

/// Dynkin diagram with the vertices in S colored red (sign -1) or blue
/// (sign +1).  Value type, totally ordered.
class ColoredDiagram {
  public:
    ColoredDiagram() = default;
    explicit ColoredDiagram(std::vector<VertexState> states);
    static ColoredDiagram all_uncolored(int rank);
    static ColoredDiagram from_text(std::string_view text);

    int rank() const { return static_cast<int>(states_.size()); }
    VertexState state(int i) const { return states_[i]; }
    bool colored(int i) const { return states_[i] == VertexState::R || states_[i] == VertexState::B; }
    /// -1 for R, +1 for B; throws VertexNotColored otherwise.
    int color_sign(int i) const;

    /// Bitmask of the colored set S.
    std::uint32_t colored_set() const;
    int num_colored() const;
    /// Sorted indices of the uncolored vertices i_1 < ... < i_m.
    std::vector<int> uncolored_vertices() const;

    /// Bit k set iff the k-th colored vertex (ascending) is blue; used as
    /// the within-S part of the canonical basis order.
    std::uint32_t color_mask() const;

    ColoredDiagram with_color(int i, VertexState c) const;

    std::string text() const;
    auto operator<=>(const ColoredDiagram&) const = default;

  private:
    std::vector<VertexState> states_;
};

struct OrientedDiagram {
    ColoredDiagram diagram;
    int orientation = 1;
    bool operator==(const OrientedDiagram&) const = default;
};

/// Colored diagram whose uncolored vertices carry +, - or 0.  The 0-labeled
/// set A picks out a Levi factor.
class SignedColoredDiagram {
  public:
    SignedColoredDiagram() = default;
    explicit SignedColoredDiagram(std::vector<VertexState> states);
    static SignedColoredDiagram from_text(std::string_view text);

    int rank() const { return static_cast<int>(states_.size()); }
    VertexState state(int i) const { return states_[i]; }
    bool colored(int i) const { return states_[i] == VertexState::R || states_[i] == VertexState::B; }
    std::uint32_t colored_set() const;
    std::uint32_t zero_set() const;

    /// Numeric label: R,- -> -1; B,+ -> +1; 0 -> 0.
    int label_sign(int i) const;

    /// Forget +,-,0 down to uncolored.
    ColoredDiagram forget_signs() const;

    std::string text() const;
    auto operator<=>(const SignedColoredDiagram&) const = default;

  private:
    std::vector<VertexState> states_;
};

/// One term of the boundary of a colored diagram: color the j-th uncolored
/// vertex (1-based within the sorted uncolored list) with R (c=1) or B (c=2);
/// sign = (-1)^(j+c+1).
struct BoundaryPiece {
    int j;
    int c;
    int sign;
    ColoredDiagram diagram;
};

std::vector<BoundaryPiece> boundary_pieces(const ColoredDiagram& D);

/// s_i on a colored diagram: colored vertices pick up eps_j *= eps_i^(C_ji);
/// requires alpha_i colored.
ColoredDiagram color_action(const RootSystem& rs, int i, const ColoredDiagram& D);

/// s_i on an oriented colored diagram: the diagram moves as above and the
/// orientation picks up (eps_i)^(r_i) with r_i = #{uncolored j : C_ji odd}.
OrientedDiagram oriented_action(const RootSystem& rs, int i, const OrientedDiagram& Do);

/// s_i on a signed-colored diagram: - acts like R, + like B, 0 is frozen;
/// requires the acted vertex not labeled 0.
SignedColoredDiagram signed_action(const RootSystem& rs, int i, const SignedColoredDiagram& D);

struct CoxeterReport {
    bool ok = true;
    long long relations_checked = 0;
    std::string failure;  // empty when ok
};

/// Machine check that the oriented W_S action satisfies the Coxeter
/// relations on every oriented diagram with colored set S.
CoxeterReport verify_coxeter(const RootSystem& rs, std::uint32_t subset_mask);

}  // namespace todatopo
