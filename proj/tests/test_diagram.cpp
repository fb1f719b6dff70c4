#include "doctest.h"
#include "todatopo/diagram.hpp"

using namespace todatopo;

TEST_CASE("text round trip") {
    auto D = ColoredDiagram::from_text("RuB");
    CHECK(D.text() == "RuB");
    CHECK(D.colored_set() == 0b101);
    CHECK(D.color_sign(0) == -1);
    CHECK(D.color_sign(2) == 1);
    CHECK_THROWS_AS(D.color_sign(1), VertexNotColored);
    CHECK(D.uncolored_vertices() == std::vector<int>{1});

    auto S = SignedColoredDiagram::from_text("R+0-B");
    CHECK(S.text() == "R+0-B");
    CHECK(S.colored_set() == 0b10001);
    CHECK(S.zero_set() == 0b00100);
    CHECK(S.forget_signs().text() == "RuuuB");
}

TEST_CASE("boundary pieces of the A2 open cell") {
    auto pieces = boundary_pieces(ColoredDiagram::from_text("uu"));
    REQUIRE(pieces.size() == 4);
    CHECK(pieces[0].j == 1);
    CHECK(pieces[0].c == 1);
    CHECK(pieces[0].sign == -1);
    CHECK(pieces[0].diagram.text() == "Ru");
    CHECK(pieces[1].sign == 1);
    CHECK(pieces[1].diagram.text() == "Bu");
    CHECK(pieces[2].j == 2);
    CHECK(pieces[2].sign == 1);
    CHECK(pieces[2].diagram.text() == "uR");
    CHECK(pieces[3].sign == -1);
    CHECK(pieces[3].diagram.text() == "uB");
}

TEST_CASE("boundary pieces of A1 and of a partially colored diagram") {
    auto a1 = boundary_pieces(ColoredDiagram::from_text("u"));
    REQUIRE(a1.size() == 2);
    CHECK(a1[0].diagram.text() == "R");
    CHECK(a1[0].sign == -1);
    CHECK(a1[1].diagram.text() == "B");
    CHECK(a1[1].sign == 1);

    auto part = boundary_pieces(ColoredDiagram::from_text("Ru"));
    REQUIRE(part.size() == 2);
    CHECK(part[0].j == 1);  // the single uncolored vertex is j = 1
    CHECK(part[0].diagram.text() == "RR");
    CHECK(part[1].diagram.text() == "RB");

    CHECK_THROWS_AS(boundary_pieces(ColoredDiagram::from_text("RB")),
                    NoUncoloredVertices);
}

TEST_CASE("color action on A2 diagrams") {
    auto rs = RootSystem::parse("A2");
    CHECK(color_action(rs, 0, ColoredDiagram::from_text("RB")).text() == "RR");
    CHECK(color_action(rs, 0, ColoredDiagram::from_text("BR")).text() == "BR");
    CHECK(color_action(rs, 1, ColoredDiagram::from_text("BB")).text() == "BB");
    CHECK_THROWS_AS(color_action(rs, 1, ColoredDiagram::from_text("Ru")), VertexNotColored);
}

TEST_CASE("orientation twist of the oriented action") {
    auto a2 = RootSystem::parse("A2");
    auto moved = oriented_action(a2, 0, {ColoredDiagram::from_text("Ru"), 1});
    CHECK(moved.diagram.text() == "Ru");
    CHECK(moved.orientation == -1);  // r = 1 uncolored odd neighbor

    auto a1 = RootSystem::parse("A1");
    auto fixed = oriented_action(a1, 0, {ColoredDiagram::from_text("R"), 1});
    CHECK(fixed.diagram.text() == "R");
    CHECK(fixed.orientation == 1);  // no uncolored vertices left

    auto blue = oriented_action(a2, 1, {ColoredDiagram::from_text("uB"), 1});
    CHECK(blue.diagram.text() == "uB");
    CHECK(blue.orientation == 1);
}

TEST_CASE("signed action treats - as R and + as B") {
    auto rs = RootSystem::parse("A2");
    CHECK(signed_action(rs, 0, SignedColoredDiagram::from_text("-+")).text() == "--");
    CHECK(signed_action(rs, 0, SignedColoredDiagram::from_text("R+")).text() == "R-");
    CHECK(signed_action(rs, 1, SignedColoredDiagram::from_text("+B")).text() == "+B");
    CHECK_THROWS_AS(signed_action(rs, 0, SignedColoredDiagram::from_text("0+")),
                    ZeroVertexAction);

    // restricted to {R,B} labels it coincides with the color action
    for (const char* t : {"RR", "RB", "BR", "BB"}) {
        for (int i = 0; i < 2; ++i) {
            auto via_signed = signed_action(rs, i, SignedColoredDiagram::from_text(t));
            auto via_color = color_action(rs, i, ColoredDiagram::from_text(t));
            CHECK(via_signed.text() == via_color.text());
        }
    }
}

TEST_CASE("coloring in either order anticommutes in sign") {
    for (const char* name : {"A3", "B3", "G2"}) {
        auto rs = RootSystem::parse(name);
        const int l = rs.rank();
        for (std::uint32_t mask = 0; mask < (1u << l); ++mask) {
            std::vector<VertexState> st(l, VertexState::Uncolored);
            for (int i = 0; i < l; ++i)
                if (mask >> i & 1u) st[i] = VertexState::B;
            ColoredDiagram D(st);
            if (static_cast<int>(D.uncolored_vertices().size()) < 2) continue;
            auto pieces = boundary_pieces(D);
            for (const auto& p : pieces) {
                for (const auto& q : pieces) {
                    if (p.j == q.j) continue;
                    // color p's vertex, then find q's vertex among the
                    // remaining uncolored ones
                    auto after_p = boundary_pieces(p.diagram);
                    auto after_q = boundary_pieces(q.diagram);
                    int qv = D.uncolored_vertices()[q.j - 1];
                    int pv = D.uncolored_vertices()[p.j - 1];
                    const BoundaryPiece* pq = nullptr;
                    const BoundaryPiece* qp = nullptr;
                    for (const auto& x : after_p) {
                        int v = p.diagram.uncolored_vertices()[x.j - 1];
                        if (v == qv && x.c == q.c) pq = &x;
                    }
                    for (const auto& x : after_q) {
                        int v = q.diagram.uncolored_vertices()[x.j - 1];
                        if (v == pv && x.c == p.c) qp = &x;
                    }
                    REQUIRE(pq != nullptr);
                    REQUIRE(qp != nullptr);
                    CHECK(pq->diagram == qp->diagram);
                    CHECK(p.sign * pq->sign * q.sign * qp->sign == -1);
                }
            }
        }
    }
}

TEST_CASE("coxeter relations hold for the oriented action") {
    // the two non-endpoint vertices of D5 (the worked configuration)
    auto d5 = RootSystem::parse("D5");
    auto rep = verify_coxeter(d5, 0b00110);
    CHECK(rep.ok);

    // single colored vertex: involution only
    for (const char* name : {"A2", "G2", "F4"}) {
        auto rs = RootSystem::parse(name);
        for (int i = 0; i < rs.rank(); ++i) CHECK(verify_coxeter(rs, 1u << i).ok);
    }

    // exhaustive over F4 subsets, including all 11 with |S| >= 2
    auto f4 = RootSystem::parse("F4");
    for (std::uint32_t mask = 1; mask < 16; ++mask) {
        auto r = verify_coxeter(f4, mask);
        CHECK_MESSAGE(r.ok, r.failure);
    }
}

TEST_CASE("coxeter relations for every supported type of rank <= 6") {
    for (const char* name :
         {"A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "C2", "C3", "C4",
          "C5", "C6", "D3", "D4", "D5", "D6", "E6", "F4", "G2"}) {
        auto rs = RootSystem::parse(name);
        for (std::uint32_t mask = 1; mask < (1u << rs.rank()); ++mask) {
            auto r = verify_coxeter(rs, mask);
            std::string why = std::string(name) + ": " + r.failure;
            CHECK_MESSAGE(r.ok, why);
        }
    }
}
