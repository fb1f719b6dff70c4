#include "todatopo/diagram.hpp"

#include <algorithm>

namespace todatopo {

namespace {

VertexState state_from_char(char c) {
    switch (c) {
        case 'u': return VertexState::Uncolored;
        case 'R': return VertexState::R;
        case 'B': return VertexState::B;
        case '+': return VertexState::Plus;
        case '-': return VertexState::Minus;
        case '0': return VertexState::Zero;
        default: throw Error(std::string("bad vertex state '") + c + "'");
    }
}

}  // namespace

ColoredDiagram::ColoredDiagram(std::vector<VertexState> states) : states_(std::move(states)) {
    for (VertexState s : states_)
        if (s != VertexState::Uncolored && s != VertexState::R && s != VertexState::B)
            throw Error("colored diagram vertex must be u, R or B");
}

ColoredDiagram ColoredDiagram::all_uncolored(int rank) {
    return ColoredDiagram(std::vector<VertexState>(rank, VertexState::Uncolored));
}

ColoredDiagram ColoredDiagram::from_text(std::string_view text) {
    std::vector<VertexState> st;
    st.reserve(text.size());
    for (char c : text) st.push_back(state_from_char(c));
    return ColoredDiagram(std::move(st));
}

int ColoredDiagram::color_sign(int i) const {
    if (states_[i] == VertexState::R) return -1;
    if (states_[i] == VertexState::B) return 1;
    throw VertexNotColored("vertex " + std::to_string(i + 1) + " is not colored");
}

std::uint32_t ColoredDiagram::colored_set() const {
    std::uint32_t m = 0;
    for (int i = 0; i < rank(); ++i)
        if (colored(i)) m |= 1u << i;
    return m;
}

int ColoredDiagram::num_colored() const {
    int n = 0;
    for (int i = 0; i < rank(); ++i) n += colored(i);
    return n;
}

std::vector<int> ColoredDiagram::uncolored_vertices() const {
    std::vector<int> out;
    for (int i = 0; i < rank(); ++i)
        if (!colored(i)) out.push_back(i);
    return out;
}

std::uint32_t ColoredDiagram::color_mask() const {
    std::uint32_t m = 0;
    int k = 0;
    for (int i = 0; i < rank(); ++i) {
        if (!colored(i)) continue;
        if (states_[i] == VertexState::B) m |= 1u << k;
        ++k;
    }
    return m;
}

ColoredDiagram ColoredDiagram::with_color(int i, VertexState c) const {
    auto st = states_;
    st[i] = c;
    return ColoredDiagram(std::move(st));
}

std::string ColoredDiagram::text() const {
    std::string s;
    for (VertexState v : states_) s += static_cast<char>(v);
    return s;
}

SignedColoredDiagram::SignedColoredDiagram(std::vector<VertexState> states)
    : states_(std::move(states)) {
    for (VertexState s : states_)
        if (s == VertexState::Uncolored)
            throw Error("signed-colored diagram vertices must be R, B, +, - or 0");
}

SignedColoredDiagram SignedColoredDiagram::from_text(std::string_view text) {
    std::vector<VertexState> st;
    st.reserve(text.size());
    for (char c : text) st.push_back(state_from_char(c));
    return SignedColoredDiagram(std::move(st));
}

std::uint32_t SignedColoredDiagram::colored_set() const {
    std::uint32_t m = 0;
    for (int i = 0; i < rank(); ++i)
        if (colored(i)) m |= 1u << i;
    return m;
}

std::uint32_t SignedColoredDiagram::zero_set() const {
    std::uint32_t m = 0;
    for (int i = 0; i < rank(); ++i)
        if (states_[i] == VertexState::Zero) m |= 1u << i;
    return m;
}

int SignedColoredDiagram::label_sign(int i) const {
    switch (states_[i]) {
        case VertexState::R:
        case VertexState::Minus: return -1;
        case VertexState::B:
        case VertexState::Plus: return 1;
        default: return 0;
    }
}

ColoredDiagram SignedColoredDiagram::forget_signs() const {
    std::vector<VertexState> st(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i)
        st[i] = colored(static_cast<int>(i)) ? states_[i] : VertexState::Uncolored;
    return ColoredDiagram(std::move(st));
}

std::string SignedColoredDiagram::text() const {
    std::string s;
    for (VertexState v : states_) s += static_cast<char>(v);
    return s;
}

std::vector<BoundaryPiece> boundary_pieces(const ColoredDiagram& D) {
    auto uncolored = D.uncolored_vertices();
    if (uncolored.empty()) throw NoUncoloredVertices("diagram '" + D.text() + "' is fully colored");
    std::vector<BoundaryPiece> out;
    out.reserve(2 * uncolored.size());
    for (std::size_t k = 0; k < uncolored.size(); ++k) {
        int j = static_cast<int>(k) + 1;
        for (int c = 1; c <= 2; ++c) {
            BoundaryPiece p;
            p.j = j;
            p.c = c;
            p.sign = ((j + c + 1) % 2 == 0) ? 1 : -1;
            p.diagram = D.with_color(uncolored[k], c == 1 ? VertexState::R : VertexState::B);
            out.push_back(std::move(p));
        }
    }
    return out;
}

ColoredDiagram color_action(const RootSystem& rs, int i, const ColoredDiagram& D) {
    if (!D.colored(i))
        throw VertexNotColored("acted vertex " + std::to_string(i + 1) + " is not colored");
    if (D.color_sign(i) == 1) return D;  // blue acts trivially
    ColoredDiagram out = D;
    for (int j = 0; j < D.rank(); ++j) {
        if (!D.colored(j)) continue;
        if (rs.cartan(j, i) % 2 == 0) continue;  // eps_i^(-C_ji) = 1
        out = out.with_color(j, D.color_sign(j) == 1 ? VertexState::R : VertexState::B);
    }
    return out;
}

OrientedDiagram oriented_action(const RootSystem& rs, int i, const OrientedDiagram& Do) {
    int eps_i = Do.diagram.color_sign(i);  // throws if uncolored
    int r = 0;
    for (int j = 0; j < Do.diagram.rank(); ++j)
        if (!Do.diagram.colored(j) && rs.cartan(j, i) % 2 != 0) ++r;
    OrientedDiagram out;
    out.diagram = color_action(rs, i, Do.diagram);
    out.orientation = (eps_i == -1 && r % 2 == 1) ? -Do.orientation : Do.orientation;
    return out;
}

SignedColoredDiagram signed_action(const RootSystem& rs, int i, const SignedColoredDiagram& D) {
    int eps_i = D.label_sign(i);
    if (eps_i == 0)
        throw ZeroVertexAction("acted vertex " + std::to_string(i + 1) + " is labeled 0");
    if (eps_i == 1) return D;
    std::vector<VertexState> st;
    st.reserve(D.rank());
    for (int j = 0; j < D.rank(); ++j) {
        VertexState s = D.state(j);
        if (D.label_sign(j) != 0 && rs.cartan(j, i) % 2 != 0) {
            switch (s) {
                case VertexState::R: s = VertexState::B; break;
                case VertexState::B: s = VertexState::R; break;
                case VertexState::Plus: s = VertexState::Minus; break;
                case VertexState::Minus: s = VertexState::Plus; break;
                default: break;
            }
        }
        st.push_back(s);
    }
    return SignedColoredDiagram(std::move(st));
}

CoxeterReport verify_coxeter(const RootSystem& rs, std::uint32_t subset_mask) {
    CoxeterReport report;
    const int l = rs.rank();
    std::vector<int> S;
    for (int i = 0; i < l; ++i)
        if (subset_mask >> i & 1u) S.push_back(i);
    if (S.empty()) throw Error("verify_coxeter requires a nonempty subset");

    // All oriented diagrams with colored set exactly S.
    std::vector<OrientedDiagram> all;
    for (std::uint32_t m = 0; m < (1u << S.size()); ++m) {
        auto D = ColoredDiagram::all_uncolored(l);
        for (std::size_t k = 0; k < S.size(); ++k)
            D = D.with_color(S[k], (m >> k & 1u) ? VertexState::B : VertexState::R);
        all.push_back({D, 1});
        all.push_back({D, -1});
    }

    auto fail = [&](const OrientedDiagram& x, const std::string& what) {
        report.ok = false;
        report.failure = what + " fails on (" + x.diagram.text() + ", " +
                         (x.orientation > 0 ? "+1" : "-1") + ")";
    };

    for (const auto& x : all) {
        for (int i : S) {
            auto y = oriented_action(rs, i, oriented_action(rs, i, x));
            ++report.relations_checked;
            if (!(y == x)) {
                fail(x, "s" + std::to_string(i + 1) + "^2 = e");
                return report;
            }
        }
        for (std::size_t p = 0; p < S.size(); ++p) {
            for (std::size_t q = p + 1; q < S.size(); ++q) {
                int i = S[p], j = S[q];
                int m = rs.coxeter_order(i, j);
                auto y = x;
                for (int rep = 0; rep < m; ++rep)
                    y = oriented_action(rs, i, oriented_action(rs, j, y));
                ++report.relations_checked;
                if (!(y == x)) {
                    fail(x, "(s" + std::to_string(i + 1) + "*s" + std::to_string(j + 1) + ")^" +
                                std::to_string(m) + " = e");
                    return report;
                }
            }
        }
    }
    return report;
}

}  // namespace todatopo
