#include "gcx/brute.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace gcx::brute {

namespace {

int parity_sign(const std::vector<int>& seq) {
    int inv = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j) inv += seq[i] > seq[j];
    return inv % 2 ? -1 : 1;
}

std::string key_of(const LabeledGraph& h) {
    std::string s;
    for (VertexColor c : h.vertices) s += color_char(c);
    s += ';';
    for (const Edge& e : h.edges) {
        s += std::to_string(e.tail) + '-' + std::to_string(e.head) + ':' + std::string(kind_token(e.kind)) + ',';
    }
    return s;
}

bool edge_less(const Edge& a, const Edge& b) {
    return std::tie(a.tail, a.head, a.kind) < std::tie(b.tail, b.head, b.kind);
}

// Relabels by perm, turns flip-signed edges to tail < head and sorts edges.
Relabeling normalize(const LabeledGraph& g, const OrientationRecipe& r, const std::vector<int>& perm) {
    const int m = g.num_edges();
    std::vector<Edge> mapped(m);
    std::vector<bool> flip(m, false);
    for (int e = 0; e < m; ++e) {
        Edge x{perm[g.edges[e].tail], perm[g.edges[e].head], g.edges[e].kind};
        if (r.flips(x.kind) && x.tail > x.head) {
            std::swap(x.tail, x.head);
            flip[e] = true;
        }
        mapped[e] = x;
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return edge_less(mapped[a], mapped[b]); });
    std::vector<int> edge_perm(m);
    for (int i = 0; i < m; ++i) edge_perm[order[i]] = i;
    return relabel(g, r, perm, edge_perm, flip);
}

bool has_odd_twin(const LabeledGraph& g, const OrientationRecipe& r) {
    std::set<std::tuple<int, int, EdgeKind>> seen;
    for (const Edge& e : g.edges) {
        if (!r.odd_edge(e.kind)) continue;
        int t = e.tail, h = e.head;
        if (r.flips(e.kind) && t > h) std::swap(t, h);
        if (!seen.insert({t, h, e.kind}).second) return true;
    }
    return false;
}

}  // namespace

Relabeling relabel(const LabeledGraph& g, const OrientationRecipe& r, const std::vector<int>& perm,
                   const std::vector<int>& edge_perm, const std::vector<bool>& flip) {
    const int n = g.num_vertices(), m = g.num_edges();
    Relabeling out;
    out.graph.vertices.resize(n);
    out.graph.edges.resize(m);
    for (int v = 0; v < n; ++v) out.graph.vertices[perm[v]] = g.vertices[v];
    int sign = 1;
    for (int e = 0; e < m; ++e) {
        Edge x{perm[g.edges[e].tail], perm[g.edges[e].head], g.edges[e].kind};
        if (flip[e]) {
            if (!r.flips(x.kind)) throw std::invalid_argument("brute::relabel: edge kind has a fixed direction");
            std::swap(x.tail, x.head);
            sign *= r.flip_sign();
        }
        out.graph.edges[edge_perm[e]] = x;
    }
    std::vector<int> vs, es;
    for (int v = 0; v < n; ++v)
        if (r.odd_vertex(g.vertices[v])) vs.push_back(perm[v]);
    for (int e = 0; e < m; ++e)
        if (r.odd_edge(g.edges[e].kind)) es.push_back(edge_perm[e]);
    out.sign = sign * parity_sign(vs) * parity_sign(es);
    return out;
}

Relabeling random_relabel(const LabeledGraph& g, const OrientationRecipe& r, std::mt19937_64& rng) {
    const int n = g.num_vertices(), m = g.num_edges();
    std::vector<int> perm(n), edge_perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::iota(edge_perm.begin(), edge_perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::shuffle(edge_perm.begin(), edge_perm.end(), rng);
    std::vector<bool> flip(m);
    std::bernoulli_distribution coin(0.5);
    for (int e = 0; e < m; ++e) flip[e] = r.flips(g.edges[e].kind) && coin(rng);
    return relabel(g, r, perm, edge_perm, flip);
}

Form canonicalize(const LabeledGraph& g, const OrientationRecipe& r) {
    const int n = g.num_vertices();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Form best;
    bool first = true, conflict = false;
    do {
        Relabeling h = normalize(g, r, perm);
        std::string key = key_of(h.graph);
        if (first || key < best.key) {
            best.key = std::move(key);
            best.sign = h.sign;
            conflict = false;
            first = false;
        } else if (key == best.key && h.sign != best.sign) {
            conflict = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    best.is_zero = conflict || has_odd_twin(g, r);
    if (best.is_zero) best.sign = 0;
    return best;
}

LabeledGraph random_graph(const ComplexId& c, int n, int m, std::mt19937_64& rng) {
    const ComplexSpec& s = spec_of(c.family);
    std::vector<VertexColor> colors;
    std::vector<EdgeKind> kinds;
    for (int i = 0; i < kNumColors; ++i)
        if (s.colors[i]) colors.push_back(VertexColor(i));
    for (int i = 0; i < kNumKinds; ++i)
        if (s.kinds[i]) kinds.push_back(EdgeKind(i));
    auto pick = [&](auto& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    LabeledGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(pick(colors));
    auto add = [&](int a, int b) {
        if (std::bernoulli_distribution(0.5)(rng)) std::swap(a, b);
        g.add_edge(a, b, pick(kinds));
    };
    for (int v = 1; v < n && g.num_edges() < m; ++v) add(v, std::uniform_int_distribution<int>(0, v - 1)(rng));
    if (n >= 2)
        while (g.num_edges() < m) {
            int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
            int b = std::uniform_int_distribution<int>(0, n - 2)(rng);
            if (b >= a) ++b;
            add(a, b);
        }
    return g;
}

std::vector<Class> classes(const ComplexId& c, int g, int k, int max_vertices) {
    check_id(c);
    const ComplexSpec& s = spec_of(c.family);
    const OrientationRecipe r = recipe_of(c);
    std::vector<Class> out;
    for (int n = 1; n <= max_vertices; ++n) {
        const int m = g + n - 1;
        if (m < 0) continue;
        struct Slot {
            int a, b;
            EdgeKind kind;
        };
        std::vector<Slot> slots;
        for (int kk = 0; kk < kNumKinds; ++kk) {
            if (!s.kinds[kk]) continue;
            const EdgeKind kind = EdgeKind(kk);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (a != b && (!r.flips(kind) || a < b)) slots.push_back({a, b, kind});
        }
        int vmax = 2 * m - s.min_valence * (n - 1);
        if (s.max_valence >= 0) vmax = std::min(vmax, s.max_valence);
        if (n == 1 && m > 0) continue;

        std::vector<VertexColor> colors(n);
        std::vector<int> allowed;
        for (int i = 0; i < kNumColors; ++i)
            if (s.colors[i]) allowed.push_back(i);
        std::vector<int> cidx(n, 0);
        std::unordered_set<std::string> seen;  // labeled graphs already covered by an orbit
        while (true) {
            for (int v = 0; v < n; ++v) colors[v] = VertexColor(allowed[cidx[v]]);
            std::vector<int> chosen, val(n, 0);
            auto labeled_key = [&](const LabeledGraph& h) {
                // labeled identity, ignoring edge order
                std::vector<Edge> es = h.edges;
                for (Edge& e : es)
                    if (r.flips(e.kind) && e.tail > e.head) std::swap(e.tail, e.head);
                std::sort(es.begin(), es.end(), edge_less);
                LabeledGraph x{h.vertices, es};
                return key_of(x);
            };
            std::function<void(int, int)> rec = [&](int start, int left) {
                if (left == 0) {
                    LabeledGraph h;
                    h.vertices = colors;
                    for (int i : chosen) h.add_edge(slots[i].a, slots[i].b, slots[i].kind);
                    if (degree(c, h) != k || !is_generator(c, h)) return;
                    if (seen.count(labeled_key(h))) return;
                    std::vector<int> perm(n);
                    std::iota(perm.begin(), perm.end(), 0);
                    do {
                        LabeledGraph p = normalize(h, r, perm).graph;
                        seen.insert(labeled_key(p));
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    Form f = brute::canonicalize(h, r);
                    out.push_back({h, f.key, f.is_zero});
                    return;
                }
                int deficit = 0;
                for (int v = 0; v < n; ++v) deficit += std::max(0, s.min_valence - val[v]);
                if (deficit > 2 * left) return;
                for (int i = start; i < static_cast<int>(slots.size()); ++i) {
                    const Slot& sl = slots[i];
                    if (val[sl.a] >= vmax || val[sl.b] >= vmax) continue;
                    ++val[sl.a];
                    ++val[sl.b];
                    chosen.push_back(i);
                    rec(i, left - 1);
                    chosen.pop_back();
                    --val[sl.a];
                    --val[sl.b];
                }
            };
            rec(0, m);
            int i = 0;
            for (; i < n; ++i) {
                if (++cidx[i] < static_cast<int>(allowed.size())) break;
                cidx[i] = 0;
            }
            if (i == n) break;
        }
    }
    return out;
}

std::vector<int> checkable_degrees(Workspace& ws, const ComplexId& c, int g) {
    std::vector<int> out;
    for (int k : ws.degrees(c, g)) {
        bool ok = true;
        try {
            for (const CountProfile& p : count_vectors(c, g, k)) ok &= p.vertices() <= kMaxVertices;
        } catch (const std::logic_error&) {
            ok = false;
        }
        if (ok) out.push_back(k);
    }
    return out;
}

BasisComparison compare_basis(Workspace& ws, const ComplexId& c, int g, int k) {
    BasisComparison cmp;
    cmp.complex = c;
    cmp.g = g;
    cmp.k = k;
    const OrientationRecipe r = recipe_of(c);
    const auto basis = ws.basis(c, g, k);
    cmp.basis = basis->size();
    std::set<std::string> from_oracle;
    std::ostringstream why;
    for (const Class& cl : classes(c, g, k, kMaxVertices)) {
        const CanonicalForm f = gcx::canonicalize(cl.representative, r);
        if (f.is_zero != cl.is_zero) why << "zero mismatch on " << encode(cl.representative) << "; ";
        if (cl.is_zero) continue;
        ++cmp.oracle;
        if (!from_oracle.insert(f.encoding).second) why << "two classes share " << f.encoding << "; ";
    }
    const std::set<std::string> from_basis(basis->encodings.begin(), basis->encodings.end());
    for (const auto& e : from_oracle)
        if (!from_basis.count(e)) why << "missing from basis: " << e << "; ";
    for (const auto& e : from_basis)
        if (!from_oracle.count(e)) why << "not found by oracle: " << e << "; ";
    cmp.detail = why.str();
    cmp.agree = cmp.detail.empty() && cmp.oracle == cmp.basis;
    return cmp;
}

FuzzReport fuzz_canonicalize(long long cases, std::uint64_t seed, int max_vertices) {
    const std::vector<ComplexId> ids{{Family::GC, 2},          {Family::GC, 3},          {Family::dGC, 2},
                                     {Family::dGC, 3},         {Family::GC_lambda_t, 2}, {Family::GC_lambda_t, 3},
                                     {Family::rdGC4edge, 2},   {Family::rdGC4edge, 3},   {Family::hatOGC, 2},
                                     {Family::hatOGC, 3}};
    std::mt19937_64 rng(seed);
    FuzzReport rep;
    auto fail = [&](const std::string& what, const ComplexId& c, const LabeledGraph& g) {
        ++rep.failures;
        if (rep.first_failure.empty()) rep.first_failure = what + " for " + to_string(c) + " " + encode(g);
    };
    for (long long i = 0; i < cases; ++i) {
        const ComplexId& c = ids[i % ids.size()];
        const OrientationRecipe r = recipe_of(c);
        const int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
        const int m = n == 1 ? 0 : std::uniform_int_distribution<int>(n - 1, n + 3)(rng);
        const LabeledGraph g = random_graph(c, n, m, rng);
        const Relabeling h = random_relabel(g, r, rng);
        ++rep.cases;
        const CanonicalForm fg = gcx::canonicalize(g, r), fh = gcx::canonicalize(h.graph, r);
        const Form bg = brute::canonicalize(g, r), bh = brute::canonicalize(h.graph, r);
        if (fg.is_zero != bg.is_zero) {
            fail("zero detection differs", c, g);
            continue;
        }
        if (fg.encoding != fh.encoding || bg.key != bh.key) {
            fail("relabeling changed the canonical form", c, g);
            continue;
        }
        if (!fg.is_zero && (fg.sign != h.sign * fh.sign || bg.sign != h.sign * bh.sign)) {
            fail("relabeling sign differs", c, g);
            continue;
        }
        // isomorphism test against an independent graph with the same counts
        const LabeledGraph other = random_graph(c, n, m, rng);
        const bool fast_iso = gcx::canonicalize(other, r).encoding == fg.encoding;
        const bool slow_iso = brute::canonicalize(other, r).key == bg.key;
        if (fast_iso != slow_iso) fail("isomorphism verdict differs", c, g);
    }
    return rep;
}

}  // namespace gcx::brute
