#include <memory>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "todatopo/complex.hpp"

using namespace todatopo;

namespace {

// heap-allocated so the complex's references stay valid after the return
struct Built {
    std::unique_ptr<RootSystem> rs;
    std::unique_ptr<WeylGroup> W;
    std::unique_ptr<ChainComplex> cc;
};

Built build(const char* name) {
    auto rs = std::make_unique<RootSystem>(RootSystem::parse(name));
    auto W = std::make_unique<WeylGroup>(WeylGroup::enumerate(*rs));
    auto cc = std::make_unique<ChainComplex>(ChainComplex::build(*rs, *W));
    return {std::move(rs), std::move(W), std::move(cc)};
}

long long dims_formula(const WeylGroup& W, int k) {
    long long total = 0;
    for (std::uint32_t mask = 0; mask < (1u << W.rank()); ++mask) {
        int pc = 0;
        for (int i = 0; i < W.rank(); ++i) pc += (mask >> i) & 1;
        if (pc != k) continue;
        total += (1LL << k) * static_cast<long long>(W.cosets(mask).num_cosets());
    }
    return total;
}

}  // namespace

TEST_CASE("basis sizes for A2, A1 and A3") {
    auto a2 = build("A2");
    CHECK(a2.cc->f_vector() == std::vector<long long>{4, 12, 6});

    auto a1 = build("A1");
    CHECK(a1.cc->f_vector() == std::vector<long long>{2, 2});

    // brute-force count of (S, coset, coloring) triples
    auto a3 = build("A3");
    std::vector<long long> counted;
    for (int k = 0; k <= 3; ++k) {
        long long total = 0;
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
            std::vector<int> S;
            for (int i = 0; i < 3; ++i)
                if (mask >> i & 1u) S.push_back(i);
            if (static_cast<int>(S.size()) != k) continue;
            total += static_cast<long long>(oracles::brute_force_cosets(*a3.W, S).cosets.size())
                     << k;
        }
        counted.push_back(total);
    }
    // counted[k] = dim M_{l-k}
    CHECK(a3.cc->f_vector() == std::vector<long long>{counted[3], counted[2], counted[1],
                                                     counted[0]});
    CHECK(a3.cc->f_vector() == std::vector<long long>{8, 56, 72, 24});
}

TEST_CASE("dimension formula per subset") {
    for (const char* name : {"A2", "A3", "B2", "G2"}) {
        auto b = build(name);
        for (int k = 0; k <= b.rs->rank(); ++k)
            CHECK(b.cc->dim(b.rs->rank() - k) == dims_formula(*b.W, k));
    }
}

TEST_CASE("boundary composes to zero") {
    for (const char* name : {"A1", "A2", "B3"}) {
        auto b = build(name);
        CHECK(verify_d_squared(*b.cc));
    }
}

TEST_CASE("A2 golden homology") {
    auto b = build("A2");
    auto H = homology(*b.cc);
    REQUIRE(H.size() == 3);
    CHECK(H[0].betti == 1);
    CHECK(H[0].torsion.empty());
    CHECK(H[1].betti == 3);
    CHECK(H[1].torsion == std::vector<BigInt>{2});
    CHECK(H[2].betti == 0);
    CHECK(H[2].torsion.empty());
    CHECK(b.cc->euler_characteristic() == -2);
}

TEST_CASE("A1 is a circle") {
    auto b = build("A1");
    auto H = homology(*b.cc);
    CHECK(H[0].betti == 1);
    CHECK(H[1].betti == 1);
    CHECK(H[0].torsion.empty());
    CHECK(H[1].torsion.empty());
    CHECK(b.cc->euler_characteristic() == 0);
}

TEST_CASE("B2 euler characteristic equals the betti alternating sum") {
    auto b = build("B2");
    CHECK(b.cc->f_vector() == std::vector<long long>{4, 16, 8});
    CHECK(b.cc->euler_characteristic() == -4);
    auto H = homology(*b.cc);
    long long alt = 0;
    for (const auto& g : H) alt += (g.degree % 2 == 0 ? 1 : -1) * g.betti;
    CHECK(alt == b.cc->euler_characteristic());
}

TEST_CASE("regression snapshots cross-validated by the naive SNF oracle") {
    // not stated anywhere authoritative; pinned after cross-validation
    struct Pin {
        const char* name;
        std::vector<long long> betti;
        std::vector<int> two_torsion_count;
    };
    for (const auto& pin : {Pin{"A3", {1, 6, 5, 0}, {0, 5, 1, 0}},
                            Pin{"B3", {1, 12, 11, 0}, {0, 11, 1, 0}},
                            Pin{"C3", {1, 13, 12, 0}, {0, 10, 1, 0}},
                            Pin{"G2", {1, 9, 0}, {0, 1, 0}}}) {
        auto b = build(pin.name);
        auto H = homology(*b.cc);
        REQUIRE(H.size() == pin.betti.size());
        for (std::size_t d = 0; d < H.size(); ++d) {
            CHECK_MESSAGE(H[d].betti == pin.betti[d], pin.name);
            CHECK(static_cast<int>(H[d].torsion.size()) == pin.two_torsion_count[d]);
            for (const auto& f : H[d].torsion) CHECK(f == 2);
        }
        // independent naive SNF on the same boundary matrices
        for (int d = 1; d <= b.cc->top_degree(); ++d) {
            auto naive = oracles::naive_snf(oracles::dense_from_sparse(b.cc->boundary(d)));
            auto mine = smith_normal_form(b.cc->boundary(d));
            CHECK(mine.factors == naive);
        }
    }
}

TEST_CASE("weyl action on basis cells") {
    auto b = build("A2");
    int s1 = b.W->generator(0);

    // free module in the top degree: s1 . (uu, e) = (uu, s1)
    Chain top;
    top.degree = 2;
    top.add(b.cc->cell_index(2, Cell{ColoredDiagram::from_text("uu"), b.W->identity()}), 1);
    Chain moved = weyl_action_on_chain(*b.cc, s1, top);
    REQUIRE(moved.coeffs.size() == 1);
    CHECK(moved.coeffs.begin()->first ==
          b.cc->cell_index(2, Cell{ColoredDiagram::from_text("uu"), s1}));
    CHECK(moved.coeffs.begin()->second == 1);

    // degree 1: s1 . (Ru, [e]) = -(Ru, [e]) via the orientation twist
    Chain edge;
    edge.degree = 1;
    int idx = b.cc->cell_index(1, Cell{ColoredDiagram::from_text("Ru"), b.W->identity()});
    edge.add(idx, 1);
    Chain inverted = weyl_action_on_chain(*b.cc, s1, edge);
    REQUIRE(inverted.coeffs.size() == 1);
    CHECK(inverted.coeffs.begin()->first == idx);
    CHECK(inverted.coeffs.begin()->second == -1);

    // A1: the blue point is fixed
    auto a1 = build("A1");
    Chain pt;
    pt.degree = 0;
    int bidx = a1.cc->cell_index(0, Cell{ColoredDiagram::from_text("B"), a1.W->identity()});
    pt.add(bidx, 1);
    Chain fixed = weyl_action_on_chain(*a1.cc, a1.W->generator(0), pt);
    REQUIRE(fixed.coeffs.size() == 1);
    CHECK(fixed.coeffs.begin()->first == bidx);
    CHECK(fixed.coeffs.begin()->second == 1);
}

TEST_CASE("boundary is W-equivariant") {
    for (const char* name : {"A1", "A2", "B2"}) {
        auto b = build(name);
        CHECK(verify_equivariance(*b.cc));
    }
}

TEST_CASE("top cycle of A1 is a cycle") {
    auto b = build("A1");
    auto [c, dc] = top_cycle(*b.cc);
    CHECK(c.coeffs.size() == 2);
    CHECK(dc.coeffs.empty());
}

TEST_CASE("top cycle of A2 halves to the torsion representative") {
    auto b = build("A2");
    auto [c2, dc2] = top_cycle(*b.cc);
    CHECK(c2.coeffs.size() == 6);
    for (auto& [idx, v] : dc2.coeffs) CHECK(v % 2 == 0);
    CHECK(!dc2.coeffs.empty());

    // c_1 = sum over W/W_{a2} (-1)^l (uR, [w]) - sum over W/W_{a1} (-1)^l (Ru, [w])
    Chain c1;
    c1.degree = 1;
    for (int rep : b.W->cosets(0b01).minimal_reps()) {
        int sign = b.W->length(rep) % 2 == 0 ? 1 : -1;
        c1.add(b.cc->cell_index(1, Cell{ColoredDiagram::from_text("Ru"), rep}), -sign);
    }
    for (int rep : b.W->cosets(0b10).minimal_reps()) {
        int sign = b.W->length(rep) % 2 == 0 ? 1 : -1;
        c1.add(b.cc->cell_index(1, Cell{ColoredDiagram::from_text("uR"), rep}), sign);
    }
    Chain halved;
    halved.degree = 1;
    for (auto& [idx, v] : dc2.coeffs) halved.add(idx, v / 2);
    CHECK(halved == c1);

    // supported on R-colored cells only, and itself a cycle
    for (auto& [idx, v] : c1.coeffs) {
        const auto& cell = b.cc->basis(1)[idx];
        bool has_red = false;
        for (int i = 0; i < 2; ++i) has_red = has_red || cell.diagram.state(i) == VertexState::R;
        CHECK(has_red);
    }
    Chain boundary_c1;
    boundary_c1.degree = 0;
    for (auto& [idx, v] : c1.coeffs) {
        Chain d = b.cc->boundary_of_cell(1, idx);
        for (auto& [t, u] : d.coeffs) boundary_c1.add(t, v * u);
    }
    CHECK(boundary_c1.coeffs.empty());
}

TEST_CASE("top cycle of G2 is even and nonzero") {
    auto b = build("G2");
    auto [c, dc] = top_cycle(*b.cc);
    CHECK(!dc.coeffs.empty());
    for (auto& [idx, v] : dc.coeffs) CHECK(v % 2 == 0);
}

TEST_CASE("rational characters of A2") {
    auto b = build("A2");

    auto h1 = rational_character(*b.cc, 1);
    CHECK(h1.dimension == 3);
    REQUIRE(h1.classes.size() == 3);
    // sign + reflection: traces 3, -1, 0 on the classes of orders 1, 2, 3
    for (std::size_t k = 0; k < h1.classes.size(); ++k) {
        switch (h1.classes[k].element_order) {
            case 1: CHECK(h1.traces[k] == 3); break;
            case 2: CHECK(h1.traces[k] == -1); break;
            case 3: CHECK(h1.traces[k] == 0); break;
            default: FAIL("unexpected class order");
        }
    }

    auto h0 = rational_character(*b.cc, 0);
    CHECK(h0.dimension == 1);
    for (const auto& t : h0.traces) CHECK(t == 1);
}

TEST_CASE("rational character of the A1 circle in degree one") {
    auto b = build("A1");
    auto h1 = rational_character(*b.cc, 1);
    CHECK(h1.dimension == 1);
    REQUIRE(h1.classes.size() == 2);
    for (std::size_t k = 0; k < h1.classes.size(); ++k) {
        if (h1.classes[k].element_order == 1)
            CHECK(h1.traces[k] == 1);
        else
            CHECK(h1.traces[k] == -1);  // s swaps the two arcs
    }
}
