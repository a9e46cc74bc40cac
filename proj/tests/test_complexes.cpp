#include "doctest.h"

#include "gcx/basis.hpp"
#include "gcx/complexes.hpp"
#include "helpers.hpp"

using namespace gcx;
using gcx::test::make;

TEST_CASE("family registry round trip") {
    CHECK(all_families().size() == 34);
    for (Family f : all_families()) {
        const auto back = family_from_tag(family_tag(f));
        REQUIRE(back.has_value());
        CHECK(*back == f);
        for (int d : {2, 3}) CHECK(parse_complex_id(to_string({f, d})) == ComplexId{f, d});
    }
    CHECK(parse_complex_id("GC:d=2") == ComplexId{Family::GC, 2});
    CHECK(parse_complex_id("dGC").family == Family::dGC);
    CHECK_FALSE(family_from_tag("nope").has_value());
    CHECK_THROWS(parse_complex_id("nope:d=2"));
    CHECK_THROWS(check_id({Family::GC, 0}));
}

TEST_CASE("degrees") {
    CHECK(degree({Family::GC, 2}, test::tetrahedron()) == 0);
    CHECK(degree({Family::GC, 3}, test::tetrahedron()) == -3);
    // the class written with the shift K[d-j] sits in cohomological degree j - d
    for (int d : {2, 3})
        for (int j = 2; j <= 9; ++j) CHECK(degree({Family::GC_geq2, d}, test::polygon(j)) == j - d);
    // 4 trivalent vertices, 3 dotted and 3 solid edges
    LabeledGraph o = make(4, {{0, 1}, {0, 2}, {0, 3}}, EdgeKind::solid);
    o.add_edge(1, 2, EdgeKind::dotted);
    o.add_edge(1, 3, EdgeKind::dotted);
    o.add_edge(2, 3, EdgeKind::dotted);
    CHECK(degree({Family::oGC3, 3}, o) == 3 * 3 + (1 - 2) * 3 - 2 * 3);
    CHECK(degree({Family::oGC3, 3}, o) == 0);
    CHECK_THROWS(degree({Family::GC, 2}, make(2, {{0, 1}}, EdgeKind::solid)));
}

TEST_CASE("degree is affine in the counts") {
    // -d(g) + #E relation for GC: |G| = d(V-1) + (1-d)E = -d g + E
    for (int d : {2, 3, 4}) {
        const LabeledGraph t = test::tetrahedron();
        CHECK(degree({Family::GC, d}, t) == -d * loop_number(t) + t.num_edges());
    }
    LabeledGraph w;
    w.add_vertex(VertexColor::white);
    w.add_vertex();
    w.add_edge(1, 0, EdgeKind::solid);
    // black D, white D - 1, solid 1 - D, minus D
    CHECK(degree({Family::GC_lambda_t, 3}, w) == 3 + 2 - 2 - 3);
}

TEST_CASE("generator predicates") {
    CHECK(is_generator({Family::GC, 2}, test::tetrahedron()));
    CHECK_FALSE(is_generator({Family::GC, 2}, test::polygon(4)));
    CHECK(is_generator({Family::GC_2valent, 2}, test::polygon(4)));
    CHECK_FALSE(is_generator({Family::GC, 2}, make(4, {{0, 1}, {2, 3}})));
    // four vertices with a directed 3-cycle
    const LabeledGraph cyc = make(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}}, EdgeKind::solid);
    CHECK_FALSE(is_generator({Family::OGC, 3}, cyc));
    CHECK(is_generator({Family::dGC, 3}, cyc));
    // passing vertices are excluded from dGC
    const LabeledGraph pass = make(3, {{0, 1}, {1, 2}, {0, 2}, {0, 2}, {2, 0}}, EdgeKind::solid);
    CHECK_FALSE(is_generator({Family::dGC, 3}, pass));
    // a white vertex with only incoming edges is fine in the two-colour families
    LabeledGraph lam;
    const int wv = lam.add_vertex(VertexColor::white);
    const int b0 = lam.add_vertex(), b1 = lam.add_vertex();
    lam.add_edge(b0, wv, EdgeKind::solid);
    lam.add_edge(b1, wv, EdgeKind::solid);
    lam.add_edge(b0, b1, EdgeKind::solid);
    lam.add_edge(b0, b1, EdgeKind::dotted);
    lam.add_edge(b1, wv, EdgeKind::solid);
    CHECK(is_generator({Family::GC_lambda_t, 3}, lam));
    LabeledGraph lam_out = lam;
    std::swap(lam_out.edges[0].tail, lam_out.edges[0].head);
    CHECK_FALSE(is_generator({Family::GC_lambda_t, 3}, lam_out));
}

TEST_CASE("count vectors") {
    const auto p = count_vectors({Family::GC, 2}, 3, 0);
    REQUIRE(p.size() == 1);
    CHECK(p[0].black == 4);
    CHECK(p[0].total_edges() == 6);
    CHECK(p[0].edges[static_cast<int>(EdgeKind::dotted)] == 6);
    CHECK(count_vectors({Family::GC, 2}, 3, 5).empty());
    const auto o = count_vectors({Family::oGC3, 3}, 3, 0);
    REQUIRE(o.size() == 1);
    CHECK(o[0].black == 4);
    CHECK(o[0].edges[static_cast<int>(EdgeKind::dotted)] == 3);
    CHECK(o[0].edges[static_cast<int>(EdgeKind::solid)] == 3);
    CHECK(max_vertices({Family::GC, 2}, 3) == 4);
    CHECK_FALSE(max_vertices({Family::GC_2valent, 2}, 1).has_value());
}

TEST_CASE("wheeled degree -1 generator") {
    Workspace ws;
    const ComplexId w{Family::GC_wheeled, 2};
    const auto b = ws.basis(w, 3, -1);
    REQUIRE(b->size() == 1);
    const LabeledGraph& g = b->graphs[0];
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 5);
    CHECK(is_generator(w, g));
    for (const VertexValence& v : valence_profile(g)) {
        CHECK(v.solid_in() >= 1);
        CHECK(v.solid_out() >= 1);
    }
}
