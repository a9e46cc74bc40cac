#include "gcx/basis.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "gcx/cache.hpp"
#include "gcx/parallel.hpp"

namespace gcx {

int Basis::find(const std::string& enc) const {
    auto it = index.find(enc);
    return it == index.end() ? -1 : it->second;
}

namespace {

OrientationRecipe trivial_recipe() {
    OrientationRecipe r;
    r.flip_signed.fill(true);
    return r;
}

// Core multigraph with loops: mult[i][j] for i <= j, loops on the diagonal.
struct Core {
    int n;
    std::vector<std::vector<int>> mult;
};

// Loops at v are encoded as white bivalent vertices doubly attached to v so
// the ordinary canonicalizer can deduplicate cores.
LabeledGraph core_to_graph(const Core& c) {
    LabeledGraph g;
    for (int i = 0; i < c.n; ++i) g.add_vertex(VertexColor::black);
    for (int i = 0; i < c.n; ++i)
        for (int j = i; j < c.n; ++j)
            for (int m = 0; m < c.mult[i][j]; ++m) {
                if (i == j) {
                    int w = g.add_vertex(VertexColor::white);
                    g.add_edge(i, w, EdgeKind::dotted);
                    g.add_edge(i, w, EdgeKind::dotted);
                } else {
                    g.add_edge(i, j, EdgeKind::dotted);
                }
            }
    return g;
}

bool core_connected(const Core& c) {
    std::vector<int> seen(c.n, 0), stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < c.n; ++w) {
            int m = v < w ? c.mult[v][w] : c.mult[w][v];
            if (m > 0 && !seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == c.n;
}

// All cores on n vertices with e edges, min degree 3, max degree maxdeg (or
// unbounded), loops allowed iff allow_loops. One per isomorphism class.
std::vector<Core> enumerate_cores(int n, int e, int maxdeg, bool allow_loops) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (i != j || allow_loops) pairs.emplace_back(i, j);
    // row i is complete after its last pair (i, n-1)
    Core cur{n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0))};
    std::vector<int> deg(n, 0);
    std::set<std::string> seen;
    std::vector<Core> out;
    const OrientationRecipe rec = trivial_recipe();
    const int cap = maxdeg < 0 ? 2 * e : maxdeg;

    std::function<void(std::size_t, int)> rec_fn = [&](std::size_t idx, int left) {
        if (idx == pairs.size()) {
            if (left != 0) return;
            for (int v = 0; v < n; ++v)
                if (deg[v] < 3 || (v > 0 && deg[v] > deg[v - 1])) return;
            if (!core_connected(cur)) return;
            auto cf = canonicalize(core_to_graph(cur), rec);
            if (seen.insert(cf.encoding).second) out.push_back(cur);
            return;
        }
        auto [i, j] = pairs[idx];
        const int w = i == j ? 2 : 1;
        for (int m = 0; m * 1 <= left; ++m) {
            if (deg[i] + w * m > cap || (i != j && deg[j] + m > cap)) break;
            cur.mult[i][j] = m;
            deg[i] += w * m;
            if (i != j) deg[j] += m;
            bool ok = true;
            if (j == n - 1) {
                // row i complete: its degree is final
                if (deg[i] < 3) ok = false;
                if (i > 0 && deg[i] > deg[i - 1]) ok = false;
            }
            if (ok) rec_fn(idx + 1, left - m);
            deg[i] -= w * m;
            if (i != j) deg[j] -= m;
            cur.mult[i][j] = 0;
        }
    };
    if (n == 1) {
        if (!allow_loops) return out;
        // single vertex, e loops
        cur.mult[0][0] = e;
        if (2 * e >= 3 && (maxdeg < 0 || 2 * e <= maxdeg)) out.push_back(cur);
        return out;
    }
    rec_fn(0, e);
    return out;
}

LabeledGraph cycle_graph(int n) {
    LabeledGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, EdgeKind::dotted);
    return g;
}

void add_unique(std::vector<LabeledGraph>& out, std::set<std::string>& seen, const LabeledGraph& g) {
    static const OrientationRecipe rec = trivial_recipe();
    auto cr = canonicalize_full(g, rec);
    if (seen.insert(cr.form.encoding).second) out.push_back(g);
}

}  // namespace

std::vector<LabeledGraph> enumerate_skeletons(const SkeletonKey& key) {
    const int V = key.vertices, E = key.edges;
    std::vector<LabeledGraph> out;
    std::set<std::string> seen;
    if (V <= 0 || E < V - 1) return out;
    const int g = E - V + 1;
    if (g < 1) return out;
    if (key.min_valence >= 3) {
        for (const Core& c : enumerate_cores(V, E, key.max_valence, false)) add_unique(out, seen, core_to_graph(c));
        return out;
    }
    if (g == 1) {
        if (V >= 2 && (key.max_valence < 0 || key.max_valence >= 2)) out.push_back(cycle_graph(V));
        return out;
    }
    if (key.max_valence == 2) return out;
    for (int vc = 1; vc <= std::min(V, 2 * g - 2); ++vc) {
        const int ec = vc + g - 1;
        const int extra = V - vc;
        for (const Core& c : enumerate_cores(vc, ec, key.max_valence, true)) {
            std::vector<std::pair<int, int>> cedges;
            for (int i = 0; i < vc; ++i)
                for (int j = i; j < vc; ++j)
                    for (int m = 0; m < c.mult[i][j]; ++m) cedges.emplace_back(i, j);
            std::vector<int> sub(cedges.size(), 0);
            std::function<void(std::size_t, int)> dist = [&](std::size_t idx, int left) {
                if (idx == cedges.size()) {
                    if (left != 0) return;
                    LabeledGraph gr;
                    for (int i = 0; i < vc; ++i) gr.add_vertex();
                    for (std::size_t t = 0; t < cedges.size(); ++t) {
                        int prev = cedges[t].first;
                        for (int s = 0; s < sub[t]; ++s) {
                            int x = gr.add_vertex();
                            gr.add_edge(prev, x, EdgeKind::dotted);
                            prev = x;
                        }
                        gr.add_edge(prev, cedges[t].second, EdgeKind::dotted);
                    }
                    add_unique(out, seen, gr);
                    return;
                }
                const int lo = cedges[idx].first == cedges[idx].second ? 1 : 0;
                for (int s = lo; s <= left; ++s) {
                    sub[idx] = s;
                    dist(idx + 1, left - s);
                }
                sub[idx] = 0;
            };
            dist(0, extra);
        }
    }
    return out;
}

namespace {

struct EdgeOption {
    EdgeKind kind;
    bool reverse;
};

std::vector<EdgeOption> edge_options(const ComplexSpec& s) {
    std::vector<EdgeOption> opts;
    for (int k = 0; k < kNumKinds; ++k) {
        if (!s.kinds[k]) continue;
        EdgeKind kind = static_cast<EdgeKind>(k);
        opts.push_back({kind, false});
        if (kind == EdgeKind::solid) opts.push_back({kind, true});
    }
    return opts;
}

bool forbids_passing(Family f) {
    switch (f) {
        case Family::dGC:
        case Family::dGC_geq2:
        case Family::OGC:
        case Family::OGC_geq2:
        case Family::TGC:
        case Family::SGC:
        case Family::STGC:
        case Family::SoTGC:
        case Family::GC_wedge:
        case Family::GC_vee:
        case Family::GC_wedge_vee:
        case Family::GC_vee_plus_wedge:
        case Family::X_st: return true;
        default: return false;
    }
}

class Decorator {
public:
    Decorator(const ComplexId& c, int k, const std::set<CountProfile>& profiles, long long& budget_left)
        : c_(c), spec_(spec_of(c.family)), k_(k), profiles_(profiles), budget_left_(budget_left),
          recipe_(recipe_of(c)), opts_(edge_options(spec_)) {
        for (const auto& p : profiles) {
            whites_.insert(p.white);
        }
        passing_ = forbids_passing(c.family);
    }

    void run(const LabeledGraph& skel, std::map<std::string, LabeledGraph>& out) {
        g_ = skel;
        out_ = &out;
        const int n = g_.num_vertices();
        pending_.assign(n, 0);
        prof_.assign(n, VertexValence{});
        for (const Edge& e : g_.edges) {
            ++pending_[e.tail];
            ++pending_[e.head];
        }
        colour(0, 0);
    }

private:
    void colour(int v, int whites) {
        const int n = g_.num_vertices();
        if (v == n) {
            if (!whites_.count(whites)) return;
            edge(0);
            return;
        }
        g_.vertices[v] = VertexColor::black;
        colour(v + 1, whites);
        if (spec_.colors[1]) {
            g_.vertices[v] = VertexColor::white;
            colour(v + 1, whites + 1);
            g_.vertices[v] = VertexColor::black;
        }
    }

    bool vertex_ok(int v) const {
        const VertexValence& x = prof_[v];
        if (passing_ && x.passing()) return false;
        if (g_.vertices[v] == VertexColor::white && x.solid_out() > 0) return false;
        if (c_.family == Family::GC_wheeled && (x.solid_in() == 0 || x.solid_out() == 0)) return false;
        return true;
    }

    void edge(std::size_t i) {
        if (i == g_.edges.size()) {
            leaf();
            return;
        }
        Edge& e = g_.edges[i];
        const Edge orig = e;
        for (const EdgeOption& o : opts_) {
            e.kind = o.kind;
            if (o.reverse) std::swap(e.tail, e.head);
            const int k = static_cast<int>(e.kind);
            ++prof_[e.tail].out[k];
            ++prof_[e.head].in[k];
            --pending_[e.tail];
            --pending_[e.head];
            bool ok = true;
            if (pending_[e.tail] == 0 && !vertex_ok(e.tail)) ok = false;
            if (ok && pending_[e.head] == 0 && !vertex_ok(e.head)) ok = false;
            if (ok) edge(i + 1);
            ++pending_[e.tail];
            ++pending_[e.head];
            --prof_[e.tail].out[k];
            --prof_[e.head].in[k];
            e = orig;
        }
    }

    void leaf() {
        if (--budget_left_ < 0) throw ResourceError("generator budget exceeded");
        CountProfile p;
        for (VertexColor col : g_.vertices) (col == VertexColor::black ? p.black : p.white)++;
        for (const Edge& e : g_.edges) ++p.edges[static_cast<int>(e.kind)];
        if (!profiles_.count(p)) return;
        if (!satisfies_predicate(c_, g_, prof_)) return;
        auto cr = canonicalize_full(g_, recipe_);
        if (cr.form.is_zero) return;
        out_->emplace(cr.form.encoding, std::move(cr.graph));
    }

    ComplexId c_;
    const ComplexSpec& spec_;
    int k_;
    const std::set<CountProfile>& profiles_;
    long long& budget_left_;
    OrientationRecipe recipe_;
    std::vector<EdgeOption> opts_;
    std::set<int> whites_;
    bool passing_ = false;

    LabeledGraph g_;
    std::vector<int> pending_;
    ValenceProfile prof_;
    std::map<std::string, LabeledGraph>* out_ = nullptr;
};

}  // namespace

Basis generate_basis(Workspace& ws, const ComplexId& c, int g, int k) {
    check_id(c);
    const ComplexSpec& s = spec_of(c.family);
    auto profiles = count_vectors(c, g, k);
    std::set<CountProfile> pset(profiles.begin(), profiles.end());
    std::set<std::pair<int, int>> shapes;
    for (const auto& p : profiles) shapes.emplace(p.vertices(), p.total_edges());

    Basis b;
    b.id = c;
    b.g = g;
    b.k = k;
    std::map<std::string, LabeledGraph> found;
    long long budget_left = ws.settings().budget;
    for (auto [V, E] : shapes) {
        SkeletonKey key{V, E, s.min_valence >= 3 ? 3 : 2, s.max_valence};
        auto skels = ws.skeletons(key);
        const int threads = std::max(1, ws.settings().threads);
        std::vector<std::map<std::string, LabeledGraph>> parts(threads);
        std::vector<long long> budgets(threads, budget_left / threads);
        parallel_for(static_cast<int>(skels->size()), threads, [&](int i, int t) {
            Decorator dec(c, k, pset, budgets[t]);
            dec.run((*skels)[i], parts[t]);
        });
        long long used = 0;
        for (int t = 0; t < threads; ++t) {
            used += budget_left / threads - budgets[t];
            found.merge(parts[t]);
        }
        budget_left -= used;
    }
    for (auto& [enc, gr] : found) {
        b.index.emplace(enc, b.size());
        b.encodings.push_back(enc);
        b.graphs.push_back(std::move(gr));
    }
    return b;
}

Basis generate_basis(const ComplexId& c, int g, int k) {
    Workspace ws;
    return generate_basis(ws, c, g, k);
}

Workspace::Workspace(Settings s) : settings_(std::move(s)) {}

int Workspace::vertex_cap(const ComplexId& c, int g) const {
    auto vmax = max_vertices(c, g);
    if (vmax) return *vmax;
    return settings_.vertex_cap ? *settings_.vertex_cap : default_vertex_cap(g);
}

std::shared_ptr<const std::vector<LabeledGraph>> Workspace::skeletons(const SkeletonKey& key) {
    {
        std::lock_guard lk(mu_);
        auto it = skeletons_.find(key);
        if (it != skeletons_.end()) return it->second;
    }
    auto v = std::make_shared<const std::vector<LabeledGraph>>(enumerate_skeletons(key));
    std::lock_guard lk(mu_);
    return skeletons_.emplace(key, v).first->second;
}

std::shared_ptr<const Basis> Workspace::basis(const ComplexId& c, int g, int k) {
    auto key = std::make_tuple(c, g, k);
    {
        std::lock_guard lk(mu_);
        auto it = bases_.find(key);
        if (it != bases_.end()) return it->second;
    }
    std::shared_ptr<const Basis> b;
    CacheKey ckey{CacheKind::basis, c, g, k, "", ""};
    if (settings_.cache) {
        if (auto payload = settings_.cache->load(ckey)) b = std::make_shared<const Basis>(parse_basis(*payload));
    }
    if (!b) {
        b = std::make_shared<const Basis>(generate_basis(*this, c, g, k));
        if (settings_.cache) settings_.cache->store(ckey, serialize_basis(*b));
    }
    std::lock_guard lk(mu_);
    return bases_.emplace(key, b).first->second;
}

std::vector<int> Workspace::degrees(const ComplexId& c, int g) { return candidate_degrees(c, g, vertex_cap(c, g)); }

std::vector<int> Workspace::exact_degrees(const ComplexId& c, int g) {
    if (max_vertices(c, g)) return degrees(c, g);
    return candidate_degrees(c, g, vertex_cap(c, g) - 1);
}

std::string serialize_basis(const Basis& b) {
    std::ostringstream os;
    os << "#complex=" << family_tag(b.id.family) << ";d=" << b.id.d << ";g=" << b.g << ";deg=" << b.k
       << ";count=" << b.size() << "\n";
    for (const auto& e : b.encodings) os << e << "\n";
    return os.str();
}

Basis parse_basis(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header) || header.rfind("#complex=", 0) != 0) throw std::runtime_error("bad basis header");
    Basis b;
    std::string tag;
    int count = -1;
    {
        std::istringstream hs(header.substr(1));
        std::string field;
        while (std::getline(hs, field, ';')) {
            auto eq = field.find('=');
            if (eq == std::string::npos) throw std::runtime_error("bad basis header field: " + field);
            std::string name = field.substr(0, eq), val = field.substr(eq + 1);
            if (name == "complex") tag = val;
            else if (name == "d") b.id.d = std::stoi(val);
            else if (name == "g") b.g = std::stoi(val);
            else if (name == "deg") b.k = std::stoi(val);
            else if (name == "count") count = std::stoi(val);
            else throw std::runtime_error("unknown basis header field: " + name);
        }
    }
    auto f = family_from_tag(tag);
    if (!f) throw std::runtime_error("unknown complex in basis file: " + tag);
    b.id.family = *f;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        b.index.emplace(line, b.size());
        b.encodings.push_back(line);
        b.graphs.push_back(decode(line));
    }
    if (count != b.size()) throw std::runtime_error("basis file count mismatch");
    return b;
}

}  // namespace gcx
