#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gcx {

enum class VertexColor : std::uint8_t { black = 0, white = 1 };

enum class EdgeKind : std::uint8_t { solid = 0, dotted = 1, s_dotted = 2, t_dotted = 3, wavy = 4 };

inline constexpr int kNumColors = 2;
inline constexpr int kNumKinds = 5;

struct Edge {
    int tail = 0;
    int head = 0;
    EdgeKind kind = EdgeKind::solid;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
public:
    ParseError(const std::string& what, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// A directed multigraph whose stored vertex order, edge order and edge
// directions are the orientation data.
struct LabeledGraph {
    std::vector<VertexColor> vertices;
    std::vector<Edge> edges;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    int add_vertex(VertexColor c = VertexColor::black);
    int add_edge(int tail, int head, EdgeKind kind);

    // Throws GraphError on tadpoles or out-of-range endpoints.
    void validate() const;

    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
};

char color_char(VertexColor c);
std::string_view kind_token(EdgeKind k);

std::string encode(const LabeledGraph& g);
LabeledGraph decode(std::string_view text);

bool is_connected(const LabeledGraph& g);

// #E - #V + 1; throws GraphError for disconnected input.
int loop_number(const LabeledGraph& g);

struct VertexValence {
    std::array<int, kNumKinds> in{};
    std::array<int, kNumKinds> out{};

    int total() const;
    int total_in() const;
    int total_out() const;
    int solid_in() const { return in[0]; }
    int solid_out() const { return out[0]; }
    bool passing() const { return total() == 2 && solid_in() == 1 && solid_out() == 1; }
    bool target() const { return solid_out() == 0; }
    bool source() const { return solid_in() == 0; }
};

using ValenceProfile = std::vector<VertexValence>;

ValenceProfile valence_profile(const LabeledGraph& g);

// True iff the solid edges contain a directed cycle.
bool has_solid_cycle(const LabeledGraph& g);

}  // namespace gcx
