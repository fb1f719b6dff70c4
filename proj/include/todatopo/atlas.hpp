#pragma once

#include <string>
#include <utility>
#include <vector>

#include "todatopo/diagram.hpp"
#include "todatopo/rootsys.hpp"

namespace todatopo {

/// A point of the chart phi_w: a chamber element and coordinates in
/// [-1,1]^l (simple-root character values, 0 on the Levi strata).
struct ChartPoint {
    int chamber = 0;
    std::vector<double> coords;
};

/// One coordinate factor of a cell's chart image.
enum class BoxFactor : char {
    PointNeg = 'R',   // { -1 }
    PointPos = 'B',   // { +1 }
    PointZero = '0',  // {  0 }
    OpenPos = '+',    // (0, 1)
    OpenNeg = '-',    // (-1, 0)
    OpenFull = 'u',   // (-1, 1)
};

std::string box_factor_text(BoxFactor f);
bool box_factor_contains(BoxFactor f, double t);

/// Canonically labeled cell: a signed-colored diagram plus the minimal
/// representative of its chamber coset in W/W_S (S = colored vertices).
struct CellDescriptor {
    SignedColoredDiagram diagram;
    int chamber = 0;
    bool operator==(const CellDescriptor&) const = default;
};

/// Strata classification of a chart point:
///   t = -1 -> R,  t = +1 -> B,  t = 0 -> 0,  t in (0,1) -> +,  t in (-1,0) -> -.
/// Boundary values are matched exactly; throws OutOfChart when |t_i| > 1.
SignedColoredDiagram classify_point(const ChartPoint& p);

std::vector<BoxFactor> chart_image(const SignedColoredDiagram& D);
/// Colored diagrams leave each uncolored coordinate as the full interval.
std::vector<BoxFactor> chart_image(const ColoredDiagram& D);
std::vector<BoxFactor> chart_image(const CellDescriptor& cell);

/// Canonical form of a labeled cell under the W_S gluing: decompose
/// w = w_min * w_sub over W_S and push w_sub into the diagram.  Idempotent.
CellDescriptor canonicalize_cell(const WeylGroup& W, int w, const SignedColoredDiagram& D);
std::pair<ColoredDiagram, int> canonicalize_cell(const WeylGroup& W, int w,
                                                 const ColoredDiagram& D);

/// Number of canonical cells per dimension 0..l, by exhaustive
/// canonicalization of every (chamber, coloring) pair.
std::vector<long long> count_cells(const RootSystem& rs, const WeylGroup& W);

/// Component transition after a blow-up in coordinate i:
/// eps'_j = eps_j * eps_i^(-C_ji).  An involution in i.
std::vector<int> blowup_transition(const RootSystem& rs, const std::vector<int>& eps, int i);

}  // namespace todatopo
