#include "todatopo/atlas.hpp"

#include <cmath>
#include <set>

namespace todatopo {

std::string box_factor_text(BoxFactor f) {
    switch (f) {
        case BoxFactor::PointNeg: return "{-1}";
        case BoxFactor::PointPos: return "{1}";
        case BoxFactor::PointZero: return "{0}";
        case BoxFactor::OpenPos: return "(0,1)";
        case BoxFactor::OpenNeg: return "(-1,0)";
        case BoxFactor::OpenFull: return "(-1,1)";
    }
    return "?";
}

bool box_factor_contains(BoxFactor f, double t) {
    switch (f) {
        case BoxFactor::PointNeg: return t == -1.0;
        case BoxFactor::PointPos: return t == 1.0;
        case BoxFactor::PointZero: return t == 0.0;
        case BoxFactor::OpenPos: return t > 0.0 && t < 1.0;
        case BoxFactor::OpenNeg: return t > -1.0 && t < 0.0;
        case BoxFactor::OpenFull: return t > -1.0 && t < 1.0;
    }
    return false;
}

SignedColoredDiagram classify_point(const ChartPoint& p) {
    std::vector<VertexState> st;
    st.reserve(p.coords.size());
    for (double t : p.coords) {
        if (std::fabs(t) > 1.0 || std::isnan(t))
            throw OutOfChart("coordinate " + std::to_string(t) + " outside [-1,1]");
        if (t == -1.0)
            st.push_back(VertexState::R);
        else if (t == 1.0)
            st.push_back(VertexState::B);
        else if (t == 0.0)
            st.push_back(VertexState::Zero);
        else
            st.push_back(t > 0 ? VertexState::Plus : VertexState::Minus);
    }
    return SignedColoredDiagram(std::move(st));
}

std::vector<BoxFactor> chart_image(const SignedColoredDiagram& D) {
    std::vector<BoxFactor> box;
    for (int i = 0; i < D.rank(); ++i) {
        switch (D.state(i)) {
            case VertexState::R: box.push_back(BoxFactor::PointNeg); break;
            case VertexState::B: box.push_back(BoxFactor::PointPos); break;
            case VertexState::Zero: box.push_back(BoxFactor::PointZero); break;
            case VertexState::Plus: box.push_back(BoxFactor::OpenPos); break;
            case VertexState::Minus: box.push_back(BoxFactor::OpenNeg); break;
            default: break;
        }
    }
    return box;
}

std::vector<BoxFactor> chart_image(const ColoredDiagram& D) {
    std::vector<BoxFactor> box;
    for (int i = 0; i < D.rank(); ++i) {
        switch (D.state(i)) {
            case VertexState::R: box.push_back(BoxFactor::PointNeg); break;
            case VertexState::B: box.push_back(BoxFactor::PointPos); break;
            default: box.push_back(BoxFactor::OpenFull); break;
        }
    }
    return box;
}

std::vector<BoxFactor> chart_image(const CellDescriptor& cell) { return chart_image(cell.diagram); }

CellDescriptor canonicalize_cell(const WeylGroup& W, int w, const SignedColoredDiagram& D) {
    auto dec = W.cosets(D.colored_set()).decompose(w);
    SignedColoredDiagram moved = D;
    for (int i : dec.sub_word) moved = signed_action(W.root_system(), i, moved);
    return CellDescriptor{std::move(moved), dec.min_rep};
}

std::pair<ColoredDiagram, int> canonicalize_cell(const WeylGroup& W, int w,
                                                 const ColoredDiagram& D) {
    auto dec = W.cosets(D.colored_set()).decompose(w);
    ColoredDiagram moved = D;
    for (int i : dec.sub_word) moved = color_action(W.root_system(), i, moved);
    return {std::move(moved), dec.min_rep};
}

std::vector<long long> count_cells(const RootSystem& rs, const WeylGroup& W) {
    const int l = rs.rank();
    std::vector<long long> counts(l + 1, 0);
    for (std::uint32_t mask = 0; mask < (1u << l); ++mask) {
        std::vector<int> S;
        for (int i = 0; i < l; ++i)
            if (mask >> i & 1u) S.push_back(i);
        int k = static_cast<int>(S.size());
        std::set<std::pair<std::string, int>> canonical;
        for (std::uint32_t cm = 0; cm < (1u << k); ++cm) {
            auto D = ColoredDiagram::all_uncolored(l);
            for (int t = 0; t < k; ++t)
                D = D.with_color(S[t], (cm >> t & 1u) ? VertexState::B : VertexState::R);
            for (int w = 0; w < static_cast<int>(W.order()); ++w) {
                auto [cd, rep] = canonicalize_cell(W, w, D);
                canonical.emplace(cd.text(), rep);
            }
        }
        counts[l - k] += static_cast<long long>(canonical.size());
    }
    return counts;
}

std::vector<int> blowup_transition(const RootSystem& rs, const std::vector<int>& eps, int i) {
    std::vector<int> out = eps;
    if (eps[i] == 1) return out;
    for (int j = 0; j < rs.rank(); ++j)
        if (rs.cartan(j, i) % 2 != 0) out[j] = -out[j];
    return out;
}

}  // namespace todatopo
