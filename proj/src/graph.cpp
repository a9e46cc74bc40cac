#include "gcx/graph.hpp"

#include <charconv>
#include <numeric>

namespace gcx {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : GraphError("parse error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

int LabeledGraph::add_vertex(VertexColor c) {
    vertices.push_back(c);
    return num_vertices() - 1;
}

int LabeledGraph::add_edge(int tail, int head, EdgeKind kind) {
    edges.push_back({tail, head, kind});
    return num_edges() - 1;
}

void LabeledGraph::validate() const {
    const int n = num_vertices();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n)
            throw GraphError("edge " + std::to_string(i) + " has an endpoint out of range");
        if (e.tail == e.head) throw GraphError("edge " + std::to_string(i) + " is a tadpole");
    }
}

char color_char(VertexColor c) { return c == VertexColor::black ? 'b' : 'w'; }

std::string_view kind_token(EdgeKind k) {
    switch (k) {
        case EdgeKind::solid: return "s";
        case EdgeKind::dotted: return "d";
        case EdgeKind::s_dotted: return "sd";
        case EdgeKind::t_dotted: return "td";
        case EdgeKind::wavy: return "w";
    }
    return "?";
}

std::string encode(const LabeledGraph& g) {
    std::string out = "n=" + std::to_string(g.num_vertices()) + ";colors=";
    for (VertexColor c : g.vertices) out += color_char(c);
    out += ";edges=";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (i) out += ',';
        const Edge& e = g.edges[i];
        out += std::to_string(e.tail);
        out += '-';
        out += std::to_string(e.head);
        out += ':';
        out += kind_token(e.kind);
    }
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    void expect(std::string_view lit) {
        if (s_.substr(pos_, lit.size()) != lit) fail("expected '" + std::string(lit) + "'");
        pos_ += lit.size();
    }

    int integer() {
        int v = 0;
        auto [p, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc() || p == s_.data() + pos_) fail("expected integer");
        pos_ = static_cast<std::size_t>(p - s_.data());
        return v;
    }

    EdgeKind kind() {
        auto rest = s_.substr(pos_);
        // Longest match first: "sd" before "s".
        static constexpr std::pair<std::string_view, EdgeKind> table[] = {
            {"sd", EdgeKind::s_dotted}, {"td", EdgeKind::t_dotted}, {"s", EdgeKind::solid},
            {"d", EdgeKind::dotted},    {"w", EdgeKind::wavy}};
        for (auto [tok, k] : table) {
            if (rest.substr(0, tok.size()) == tok) {
                pos_ += tok.size();
                return k;
            }
        }
        fail("unknown edge kind");
    }

    bool at_end() const { return pos_ == s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    void advance() { ++pos_; }
    std::size_t pos() const { return pos_; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

LabeledGraph decode(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    Parser p(text);
    LabeledGraph g;
    p.expect("n=");
    const int n = p.integer();
    if (n < 0) p.fail("negative vertex count");
    p.expect(";colors=");
    for (int i = 0; i < n; ++i) {
        char c = p.peek();
        if (c == 'b') g.vertices.push_back(VertexColor::black);
        else if (c == 'w') g.vertices.push_back(VertexColor::white);
        else p.fail("expected vertex color 'b' or 'w'");
        p.advance();
    }
    p.expect(";edges=");
    while (!p.at_end()) {
        const std::size_t start = p.pos();
        Edge e;
        e.tail = p.integer();
        p.expect("-");
        e.head = p.integer();
        p.expect(":");
        e.kind = p.kind();
        if (e.tail >= n || e.head >= n) throw ParseError("edge endpoint out of range", start);
        if (e.tail == e.head) throw ParseError("tadpole", start);
        g.edges.push_back(e);
        if (p.at_end()) break;
        p.expect(",");
    }
    return g;
}

bool is_connected(const LabeledGraph& g) {
    const int n = g.num_vertices();
    if (n <= 1) return true;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = n;
    for (const Edge& e : g.edges) {
        int a = find(e.tail), b = find(e.head);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

int loop_number(const LabeledGraph& g) {
    if (!is_connected(g)) throw GraphError("loop_number: graph is disconnected");
    if (g.num_vertices() == 0) return 0;
    return g.num_edges() - g.num_vertices() + 1;
}

int VertexValence::total() const { return total_in() + total_out(); }
int VertexValence::total_in() const { return std::accumulate(in.begin(), in.end(), 0); }
int VertexValence::total_out() const { return std::accumulate(out.begin(), out.end(), 0); }

ValenceProfile valence_profile(const LabeledGraph& g) {
    ValenceProfile p(g.vertices.size());
    for (const Edge& e : g.edges) {
        const int k = static_cast<int>(e.kind);
        ++p[e.tail].out[k];
        ++p[e.head].in[k];
    }
    return p;
}

bool has_solid_cycle(const LabeledGraph& g) {
    // Kahn's algorithm on the solid subgraph.
    const int n = g.num_vertices();
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const Edge& e : g.edges) {
        if (e.kind != EdgeKind::solid) continue;
        out[e.tail].push_back(e.head);
        ++indeg[e.head];
    }
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : out[v])
            if (--indeg[w] == 0) stack.push_back(w);
    }
    return seen != n;
}

}  // namespace gcx
