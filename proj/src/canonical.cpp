#include "gcx/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace gcx {

namespace {

int inversion_sign(const std::vector<int>& seq) {
    int s = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) s = -s;
    return s;
}

// Edge roles for refinement: 0 = outgoing frozen, 1 = incoming frozen, 2 = flip-signed.
struct Incidence {
    int other;
    int code;  // kind * 3 + role
};

struct Leaf {
    std::vector<int> key;
    std::vector<int> perm;
    int sign;
};

class Canonicalizer {
public:
    Canonicalizer(const LabeledGraph& g, const OrientationRecipe& r) : g_(g), r_(r), n_(g.num_vertices()) {
        adj_.resize(n_);
        for (const Edge& e : g.edges) {
            const int k = static_cast<int>(e.kind);
            if (r.flips(e.kind)) {
                adj_[e.tail].push_back({e.head, k * 3 + 2});
                adj_[e.head].push_back({e.tail, k * 3 + 2});
            } else {
                adj_[e.tail].push_back({e.head, k * 3 + 0});
                adj_[e.head].push_back({e.tail, k * 3 + 1});
            }
        }
    }

    bool parallel_odd_pair() const {
        std::vector<std::tuple<int, int, int>> keys;
        for (const Edge& e : g_.edges) {
            if (!r_.odd_edge(e.kind)) continue;
            int a = e.tail, b = e.head;
            if (r_.flips(e.kind) && a > b) std::swap(a, b);
            keys.emplace_back(a, b, static_cast<int>(e.kind));
        }
        std::sort(keys.begin(), keys.end());
        return std::adjacent_find(keys.begin(), keys.end()) != keys.end();
    }

    void run() {
        std::vector<int> cell(n_);
        for (int v = 0; v < n_; ++v) {
            std::vector<int> counts(kNumKinds * 3 + 1, 0);
            counts[0] = static_cast<int>(g_.vertices[v]);
            for (const Incidence& inc : adj_[v]) ++counts[1 + inc.code];
            init_sigs_.push_back(std::move(counts));
        }
        relabel_by(cell, [&](int v) { return init_sigs_[v]; });
        refine(cell);
        std::vector<int> prefix;
        search(cell, prefix);
    }

    const Leaf& best() const { return *best_; }
    bool zero() const { return zero_; }

private:
    template <class F>
    int relabel_by(std::vector<int>& cell, F sig) {
        using S = decltype(sig(0));
        std::vector<S> sigs;
        sigs.reserve(n_);
        for (int v = 0; v < n_; ++v) sigs.push_back(sig(v));
        std::vector<S> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int v = 0; v < n_; ++v)
            cell[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
        return static_cast<int>(sorted.size());
    }

    // Cells are numbered densely; a vertex's cell id is the rank of its
    // signature, which starts with the previous cell id so refinement never
    // reorders existing cells.
    void refine(std::vector<int>& cell) {
        int count = 1 + *std::max_element(cell.begin(), cell.end());
        while (count < n_) {
            int next = relabel_by(cell, [&](int v) {
                std::vector<int> s;
                s.reserve(1 + adj_[v].size());
                s.push_back(cell[v]);
                for (const Incidence& inc : adj_[v]) s.push_back(cell[inc.other] * (kNumKinds * 3) + inc.code);
                std::sort(s.begin() + 1, s.end());
                return s;
            });
            if (next == count) break;
            count = next;
        }
    }

    void search(const std::vector<int>& cell, std::vector<int>& prefix) {
        const int ncells = 1 + *std::max_element(cell.begin(), cell.end());
        if (ncells == n_) {
            visit_leaf(cell);
            return;
        }
        std::vector<int> size(ncells, 0);
        for (int c : cell) ++size[c];
        int target = -1;
        for (int c = 0; c < ncells; ++c)
            if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;

        std::vector<int> members;
        for (int v = 0; v < n_; ++v)
            if (cell[v] == target) members.push_back(v);

        std::vector<int> explored;
        for (int v : members) {
            if (same_orbit(v, explored, prefix)) continue;
            explored.push_back(v);
            std::vector<int> child(n_);
            for (int w = 0; w < n_; ++w) child[w] = 2 * cell[w] + ((cell[w] == target && w != v) ? 1 : 0);
            relabel_by(child, [&](int w) { return child[w]; });
            refine(child);
            prefix.push_back(v);
            search(child, prefix);
            prefix.pop_back();
        }
    }

    // Orbit pruning using the automorphisms found so far that fix the prefix.
    bool same_orbit(int v, const std::vector<int>& explored, const std::vector<int>& prefix) const {
        if (explored.empty() || autos_.empty()) return false;
        std::vector<int> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        bool any = false;
        for (const auto& a : autos_) {
            bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return a[p] == p; });
            if (!fixes) continue;
            any = true;
            for (int x = 0; x < n_; ++x) parent[find(x)] = find(a[x]);
        }
        if (!any) return false;
        const int rv = find(v);
        return std::any_of(explored.begin(), explored.end(), [&](int u) { return find(u) == rv; });
    }

    void visit_leaf(const std::vector<int>& perm) {
        Leaf leaf;
        leaf.perm = perm;
        leaf.key = leaf_key(perm, leaf.sign);
        auto it = seen_.find(leaf.key);
        if (it != seen_.end()) {
            const Leaf& other = it->second;
            if (other.sign != leaf.sign) zero_ = true;
            // automorphism: v -> other.perm^{-1}(perm(v))
            std::vector<int> inv(n_);
            for (int v = 0; v < n_; ++v) inv[other.perm[v]] = v;
            std::vector<int> a(n_);
            for (int v = 0; v < n_; ++v) a[v] = inv[perm[v]];
            autos_.push_back(std::move(a));
            return;
        }
        auto [pos, inserted] = seen_.emplace(leaf.key, leaf);
        if (!best_ || pos->second.key < best_->key) best_ = &pos->second;
    }

    std::vector<int> leaf_key(const std::vector<int>& perm, int& sign) const {
        const int m = g_.num_edges();
        struct Mapped {
            int a, b, k, idx;
        };
        std::vector<Mapped> es(m);
        int s = 1;
        for (int j = 0; j < m; ++j) {
            const Edge& e = g_.edges[j];
            int a = perm[e.tail], b = perm[e.head];
            if (r_.flips(e.kind) && a > b) {
                std::swap(a, b);
                s *= r_.flip_sign();
            }
            es[j] = {a, b, static_cast<int>(e.kind), j};
        }
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            return std::tie(es[x].a, es[x].b, es[x].k) < std::tie(es[y].a, es[y].b, es[y].k);
        });
        std::vector<int> newpos(m);
        for (int i = 0; i < m; ++i) newpos[order[i]] = i;

        std::vector<int> seq;
        for (int v = 0; v < n_; ++v)
            if (r_.odd_vertex(g_.vertices[v])) seq.push_back(perm[v]);
        s *= inversion_sign(seq);
        seq.clear();
        for (int j = 0; j < m; ++j)
            if (r_.odd_edge(g_.edges[j].kind)) seq.push_back(newpos[j]);
        s *= inversion_sign(seq);
        sign = s;

        std::vector<int> key(n_ + 3 * m);
        for (int v = 0; v < n_; ++v) key[perm[v]] = static_cast<int>(g_.vertices[v]);
        for (int i = 0; i < m; ++i) {
            const Mapped& x = es[order[i]];
            key[n_ + 3 * i] = x.a;
            key[n_ + 3 * i + 1] = x.b;
            key[n_ + 3 * i + 2] = x.k;
        }
        return key;
    }

    const LabeledGraph& g_;
    const OrientationRecipe& r_;
    int n_;
    std::vector<std::vector<Incidence>> adj_;
    std::vector<std::vector<int>> init_sigs_;
    std::map<std::vector<int>, Leaf> seen_;
    const Leaf* best_ = nullptr;
    std::vector<std::vector<int>> autos_;
    bool zero_ = false;
};

LabeledGraph graph_from_key(const std::vector<int>& key, int n) {
    LabeledGraph out;
    for (int v = 0; v < n; ++v) out.vertices.push_back(static_cast<VertexColor>(key[v]));
    for (std::size_t i = n; i < key.size(); i += 3)
        out.edges.push_back({key[i], key[i + 1], static_cast<EdgeKind>(key[i + 2])});
    return out;
}

}  // namespace

CanonicalResult canonicalize_full(const LabeledGraph& g, const OrientationRecipe& recipe) {
    g.validate();
    CanonicalResult res;
    Canonicalizer c(g, recipe);
    if (g.num_vertices() == 0) {
        res.form.encoding = encode(g);
        return res;
    }
    c.run();
    const Leaf& best = c.best();
    res.graph = graph_from_key(best.key, g.num_vertices());
    res.form.encoding = encode(res.graph);
    res.vertex_position = best.perm;
    res.form.sign = best.sign;
    res.form.is_zero = c.zero() || c.parallel_odd_pair();
    return res;
}

CanonicalForm canonicalize(const LabeledGraph& g, const OrientationRecipe& recipe) {
    return canonicalize_full(g, recipe).form;
}

Relabeled relabel(const LabeledGraph& g, const std::vector<int>& perm, const OrientationRecipe& recipe) {
    g.validate();
    Relabeled out;
    const int n = g.num_vertices();
    out.graph.vertices.resize(n);
    std::vector<int> seq;
    for (int v = 0; v < n; ++v) {
        out.graph.vertices[perm[v]] = g.vertices[v];
        if (recipe.odd_vertex(g.vertices[v])) seq.push_back(perm[v]);
    }
    int s = inversion_sign(seq);
    const int m = g.num_edges();
    std::vector<Edge> es(m);
    for (int j = 0; j < m; ++j) {
        Edge e = g.edges[j];
        e.tail = perm[e.tail];
        e.head = perm[e.head];
        if (recipe.flips(e.kind) && e.tail > e.head) {
            std::swap(e.tail, e.head);
            s *= recipe.flip_sign();
        }
        es[j] = e;
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return std::tie(es[x].tail, es[x].head, es[x].kind) < std::tie(es[y].tail, es[y].head, es[y].kind);
    });
    std::vector<int> newpos(m);
    for (int i = 0; i < m; ++i) {
        newpos[order[i]] = i;
        out.graph.edges.push_back(es[order[i]]);
    }
    seq.clear();
    for (int j = 0; j < m; ++j)
        if (recipe.odd_edge(g.edges[j].kind)) seq.push_back(newpos[j]);
    s *= inversion_sign(seq);
    out.sign = s;
    return out;
}

int word_sign(const std::vector<int>& word, const std::vector<bool>& token_odd) {
    std::vector<int> seq;
    for (int t : word)
        if (token_odd[t]) seq.push_back(t);
    return inversion_sign(seq);
}

}  // namespace gcx
