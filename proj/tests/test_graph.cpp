#include "doctest.h"

#include "gcx/graph.hpp"
#include "helpers.hpp"

using namespace gcx;
using gcx::test::make;

TEST_CASE("loop number") {
    CHECK(loop_number(test::theta()) == 2);
    CHECK(loop_number(test::tetrahedron()) == 3);
    LabeledGraph single;
    single.add_vertex();
    CHECK(loop_number(single) == 0);
    CHECK_THROWS_AS(loop_number(make(4, {{0, 1}, {2, 3}})), GraphError);
}

TEST_CASE("valence profile") {
    const auto star = valence_profile(make(4, {{0, 1}, {0, 2}, {0, 3}}, EdgeKind::solid));
    CHECK(star[0].total_out() == 3);
    CHECK(star[0].total_in() == 0);
    CHECK(star[0].source());
    CHECK_FALSE(star[0].target());
    CHECK(star[1].target());

    const auto path = valence_profile(make(3, {{0, 1}, {1, 2}}, EdgeKind::solid));
    CHECK(path[1].passing());
    CHECK_FALSE(path[0].passing());

    LabeledGraph w;
    const int c = w.add_vertex(VertexColor::white);
    for (int i = 0; i < 3; ++i) w.add_edge(w.add_vertex(), c, EdgeKind::solid);
    const auto wp = valence_profile(w);
    CHECK(wp[c].target());
    CHECK(wp[c].solid_in() == 3);
}

TEST_CASE("dotted edges do not count as solid in/out") {
    const auto p = valence_profile(make(3, {{0, 1}, {1, 2}}, EdgeKind::dotted));
    CHECK_FALSE(p[1].passing());
    CHECK(p[1].source());
    CHECK(p[1].target());
}

TEST_CASE("encode/decode round trip") {
    const LabeledGraph t = test::tetrahedron();
    CHECK(decode(encode(t)) == t);
    LabeledGraph all;
    all.add_vertex();
    all.add_vertex(VertexColor::white);
    all.add_vertex();
    all.add_edge(0, 1, EdgeKind::solid);
    all.add_edge(1, 2, EdgeKind::dotted);
    all.add_edge(2, 0, EdgeKind::s_dotted);
    all.add_edge(0, 1, EdgeKind::t_dotted);
    all.add_edge(2, 1, EdgeKind::wavy);
    const LabeledGraph back = decode(encode(all));
    CHECK(back == all);
    for (int e = 0; e < 5; ++e) CHECK(back.edges[e].kind == static_cast<EdgeKind>(e));
}

TEST_CASE("decode errors") {
    try {
        decode("n=2;colors=bb;edges=1-1:d");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("tadpole") != std::string::npos);
    }
    CHECK_THROWS_AS(decode("n=2;colors=bb;edges=0-5:d"), GraphError);
    CHECK_THROWS_AS(decode("n=2;colors=bq;edges=0-1:d"), ParseError);
    CHECK_THROWS_AS(decode("garbage"), ParseError);
}

TEST_CASE("validate rejects tadpoles and bad endpoints") {
    LabeledGraph g = make(2, {{0, 1}});
    CHECK_NOTHROW(g.validate());
    g.add_edge(1, 1, EdgeKind::dotted);
    CHECK_THROWS_AS(g.validate(), GraphError);
    LabeledGraph h = make(2, {{0, 3}});
    CHECK_THROWS_AS(h.validate(), GraphError);
}

TEST_CASE("connectivity and solid cycles") {
    CHECK(is_connected(test::tetrahedron()));
    CHECK_FALSE(is_connected(make(4, {{0, 1}, {2, 3}})));
    CHECK(has_solid_cycle(make(3, {{0, 1}, {1, 2}, {2, 0}}, EdgeKind::solid)));
    CHECK_FALSE(has_solid_cycle(make(3, {{0, 1}, {1, 2}, {0, 2}}, EdgeKind::solid)));
    CHECK_FALSE(has_solid_cycle(make(3, {{0, 1}, {1, 2}, {2, 0}}, EdgeKind::dotted)));
}
