#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gcx/canonical.hpp"
#include "gcx/graph.hpp"

namespace gcx {

enum class Family {
    GC,
    GC_simple,
    GC_geq2,
    GC_2valent,
    GC_leq4,
    dGC,
    dGC_geq2,
    OGC,
    OGC_geq2,
    hatOGC,
    barGC2edge,
    barTGC,
    barSGC,
    rdGC4edge,
    dGC_wedge_tilde,
    TGC,
    SGC,
    STGC,
    SoTGC,
    GC_wedge,
    GC_vee,
    GC_wedge_vee,
    GC_vee_plus_wedge,
    GC_st_geq3,
    GC_s_plus_t_geq3,
    GC_t_geq3,
    GC_lambda_t,
    GC_lambda_or,
    GC_lambda_tilde_t,
    GC_lambda_tilde_or,
    GC_t_dotted,
    X_st,
    GC_wheeled,
    oGC3,
};

// `d` is the subscript of the complex as written for that family, so the
// directed families are dGC_d, OGC_d, TGC_d, ... and GC^lambda uses its
// larger index (the one its black vertices carry).
struct ComplexId {
    Family family = Family::GC;
    int d = 2;

    friend bool operator==(const ComplexId&, const ComplexId&) = default;
    friend auto operator<=>(const ComplexId&, const ComplexId&) = default;
};

std::string family_tag(Family f);
std::optional<Family> family_from_tag(const std::string& tag);
const std::vector<Family>& all_families();

std::string to_string(const ComplexId& c);          // "GC:d=2"
ComplexId parse_complex_id(const std::string& s);  // accepts "GC:d=2" or "GC"

enum class Quotient { none, ihx, leq4 };

struct ComplexSpec {
    Family family;
    std::string tag;
    std::array<bool, kNumColors> colors{};
    std::array<bool, kNumKinds> kinds{};
    int min_valence = 3;
    int max_valence = -1;  // -1 = unbounded
    bool exact_trivalent = false;
    bool vertex_split = true;
    bool edge_retype = false;
    bool white_parts = false;
    Quotient quotient = Quotient::none;
    // Degree of undirected-type data: dotted edges have degree 1 - du and
    // flip with (-1)^du; black vertices have degree d, white d - 1.
    bool gc_type = false;
};

const ComplexSpec& spec_of(Family f);

void check_id(const ComplexId& c);

int vertex_degree(const ComplexId& c, VertexColor col);
int edge_degree(const ComplexId& c, EdgeKind k);
OrientationRecipe recipe_of(const ComplexId& c);

int degree(const ComplexId& c, const LabeledGraph& g);
bool is_generator(const ComplexId& c, const LabeledGraph& g);
// is_generator without the connectivity test; used on local rewrites.
bool satisfies_predicate(const ComplexId& c, const LabeledGraph& g, const ValenceProfile& p);

struct CountProfile {
    int black = 0;
    int white = 0;
    std::array<int, kNumKinds> edges{};

    int vertices() const { return black + white; }
    int total_edges() const;
    friend bool operator==(const CountProfile&, const CountProfile&) = default;
    friend auto operator<=>(const CountProfile&, const CountProfile&) = default;
};

// Largest vertex count possible at loop order g, or nullopt when bivalent
// vertices make the family infinite in that direction.
std::optional<int> max_vertices(const ComplexId& c, int g);
int min_vertices(const ComplexId& c, int g);

std::vector<CountProfile> count_vectors(const ComplexId& c, int g, int k);

// Degrees that have at least one count profile with #V <= vcap.
std::vector<int> candidate_degrees(const ComplexId& c, int g, int vcap);

// Default vertex cap for families with bivalent vertices.
int default_vertex_cap(int g);

}  // namespace gcx
