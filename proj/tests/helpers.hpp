#pragma once

#include <initializer_list>
#include <utility>

#include "gcx/graph.hpp"

namespace gcx::test {

inline LabeledGraph make(int n, std::initializer_list<std::pair<int, int>> edges, EdgeKind kind = EdgeKind::dotted,
                         VertexColor color = VertexColor::black) {
    LabeledGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(color);
    for (auto [a, b] : edges) g.add_edge(a, b, kind);
    return g;
}

inline LabeledGraph tetrahedron(EdgeKind kind = EdgeKind::dotted) {
    return make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, kind);
}

inline LabeledGraph polygon(int j, EdgeKind kind = EdgeKind::dotted) {
    LabeledGraph g;
    for (int i = 0; i < j; ++i) g.add_vertex();
    for (int i = 0; i < j; ++i) g.add_edge(i, (i + 1) % j, kind);
    return g;
}

inline LabeledGraph theta(EdgeKind kind = EdgeKind::dotted) { return make(2, {{0, 1}, {0, 1}, {0, 1}}, kind); }

}  // namespace gcx::test
