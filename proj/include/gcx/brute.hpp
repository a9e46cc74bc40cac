#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gcx/basis.hpp"
#include "gcx/canonical.hpp"
#include "gcx/complexes.hpp"

// Slow reference implementations used to cross-check the fast paths. Nothing
// here calls the refinement-based canonical labeling or the orderly generator.
namespace gcx::brute {

inline constexpr int kMaxVertices = 6;

struct Form {
    std::string key;  // minimum over all vertex relabelings
    int sign = 1;     // g == sign * (graph with that key)
    bool is_zero = false;
};

// Tries all n! vertex permutations.
Form canonicalize(const LabeledGraph& g, const OrientationRecipe& recipe);

// g relabeled by vertex permutation perm (old -> new), edges reordered by
// edge_perm (old -> new) and the edges listed in `flip` reversed; returns h
// and the sign s with g == s * h.
struct Relabeling {
    LabeledGraph graph;
    int sign = 1;
};
Relabeling relabel(const LabeledGraph& g, const OrientationRecipe& recipe, const std::vector<int>& perm,
                   const std::vector<int>& edge_perm, const std::vector<bool>& flip);
Relabeling random_relabel(const LabeledGraph& g, const OrientationRecipe& recipe, std::mt19937_64& rng);

// Random connected loopless graph on n vertices with m edges using the
// colors and kinds allowed by c.
LabeledGraph random_graph(const ComplexId& c, int n, int m, std::mt19937_64& rng);

struct Class {
    LabeledGraph representative;
    std::string key;
    bool is_zero = false;
};

// Every isomorphism class of generators of c at (g, k) with at most
// max_vertices vertices, found by labeled enumeration.
std::vector<Class> classes(const ComplexId& c, int g, int k, int max_vertices);

// Degrees at loop order g whose generators all have <= kMaxVertices vertices
// and which lie in the workspace's complete window.
std::vector<int> checkable_degrees(Workspace& ws, const ComplexId& c, int g);

struct BasisComparison {
    ComplexId complex;
    int g = 0;
    int k = 0;
    int oracle = 0;  // nonzero classes
    int basis = 0;
    bool agree = false;
    std::string detail;
};
BasisComparison compare_basis(Workspace& ws, const ComplexId& c, int g, int k);

struct FuzzReport {
    long long cases = 0;
    long long failures = 0;
    std::string first_failure;
    bool ok() const { return failures == 0; }
};

// Random graphs with <= max_vertices vertices over several families: the fast
// canonical form must agree with the permutation oracle on zero detection,
// on the sign under random relabelings, and on isomorphism.
FuzzReport fuzz_canonicalize(long long cases, std::uint64_t seed, int max_vertices = kMaxVertices);

}  // namespace gcx::brute
