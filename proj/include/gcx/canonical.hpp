#pragma once

#include <array>
#include <string>
#include <vector>

#include "gcx/graph.hpp"

namespace gcx {

// Which tokens of the orientation word [vertices..., edges...] are odd, and
// how edge reversal acts. Only odd tokens contribute permutation parity.
struct OrientationRecipe {
    std::array<bool, kNumColors> odd_color{};
    std::array<bool, kNumKinds> odd_kind{};
    std::array<bool, kNumKinds> flip_signed{};
    bool d_odd = false;  // flip-signed reversal multiplies by (-1)^d

    int flip_sign() const { return d_odd ? -1 : 1; }
    bool odd_vertex(VertexColor c) const { return odd_color[static_cast<int>(c)]; }
    bool odd_edge(EdgeKind k) const { return odd_kind[static_cast<int>(k)]; }
    bool flips(EdgeKind k) const { return flip_signed[static_cast<int>(k)]; }
};

struct CanonicalForm {
    std::string encoding;
    int sign = 1;
    bool is_zero = false;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalResult {
    CanonicalForm form;
    LabeledGraph graph;                // the canonical representative
    std::vector<int> vertex_position;  // old vertex -> canonical index
};

// g == sign * canonical representative; is_zero when an automorphism acts by -1.
CanonicalForm canonicalize(const LabeledGraph& g, const OrientationRecipe& recipe);
CanonicalResult canonicalize_full(const LabeledGraph& g, const OrientationRecipe& recipe);

// Relabels old vertex v -> perm[v], normalizes flip-signed edges to
// tail < head and stable-sorts the edges; g == sign * graph.
struct Relabeled {
    LabeledGraph graph;
    int sign = 1;
};
Relabeled relabel(const LabeledGraph& g, const std::vector<int>& perm, const OrientationRecipe& recipe);

// Sign of the word `word` (token ids: vertex v -> v, edge e -> n + e) against
// the standard word of a graph with n vertices; only odd tokens are counted.
int word_sign(const std::vector<int>& word, const std::vector<bool>& token_odd);

}  // namespace gcx
