#include "gcx/complexes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gcx {

namespace {

constexpr std::array<bool, kNumKinds> kinds_of(std::initializer_list<EdgeKind> ks) {
    std::array<bool, kNumKinds> a{};
    for (EdgeKind k : ks) a[static_cast<int>(k)] = true;
    return a;
}

using K = EdgeKind;

std::vector<ComplexSpec> build_registry() {
    std::vector<ComplexSpec> r;
    auto add = [&](Family f, const char* tag) -> ComplexSpec& {
        ComplexSpec s;
        s.family = f;
        s.tag = tag;
        s.colors = {true, false};
        s.kinds = kinds_of({K::solid});
        r.push_back(s);
        return r.back();
    };
    auto gc = [&](Family f, const char* tag, int minv) -> ComplexSpec& {
        ComplexSpec& s = add(f, tag);
        s.kinds = kinds_of({K::dotted});
        s.gc_type = true;
        s.min_valence = minv;
        return s;
    };
    gc(Family::GC, "GC", 3);
    gc(Family::GC_simple, "GC_simple", 3);
    gc(Family::GC_geq2, "GC_geq2", 2);
    gc(Family::GC_2valent, "GC_2valent", 2).max_valence = 2;
    {
        ComplexSpec& s = gc(Family::GC_leq4, "GC_leq4", 3);
        s.max_valence = 4;
        s.quotient = Quotient::leq4;
    }
    add(Family::dGC, "dGC").min_valence = 2;
    add(Family::dGC_geq2, "dGC_geq2").min_valence = 2;
    add(Family::OGC, "OGC").min_valence = 2;
    add(Family::OGC_geq2, "OGC_geq2").min_valence = 2;
    for (auto [f, tag] : {std::pair{Family::hatOGC, "hatOGC"},
                          {Family::barGC2edge, "barGC2edge"},
                          {Family::barTGC, "barTGC"},
                          {Family::barSGC, "barSGC"},
                          {Family::GC_t_dotted, "GC_t_dotted"}}) {
        ComplexSpec& s = add(f, tag);
        s.kinds = kinds_of({K::solid, K::dotted});
        s.edge_retype = true;
    }
    for (auto [f, tag] : {std::pair{Family::rdGC4edge, "rdGC4edge"}, {Family::dGC_wedge_tilde, "dGC_wedge_tilde"}}) {
        ComplexSpec& s = add(f, tag);
        s.kinds = kinds_of({K::solid, K::s_dotted, K::t_dotted, K::wavy});
        s.edge_retype = true;
    }
    for (auto [f, tag] : {std::pair{Family::TGC, "TGC"},
                          {Family::SGC, "SGC"},
                          {Family::STGC, "STGC"},
                          {Family::SoTGC, "SoTGC"},
                          {Family::GC_wedge, "GC_wedge"},
                          {Family::GC_vee, "GC_vee"},
                          {Family::GC_wedge_vee, "GC_wedge_vee"},
                          {Family::GC_vee_plus_wedge, "GC_vee_plus_wedge"},
                          {Family::X_st, "X_st"}})
        add(f, tag).min_valence = 2;
    add(Family::GC_st_geq3, "GC_st_geq3");
    add(Family::GC_s_plus_t_geq3, "GC_s_plus_t_geq3");
    add(Family::GC_t_geq3, "GC_t_geq3");
    for (auto [f, tag] : {std::pair{Family::GC_lambda_t, "GC_lambda_dd1_t"},
                          {Family::GC_lambda_or, "GC_lambda_dd1_or"},
                          {Family::GC_lambda_tilde_t, "GC_lambda_tilde_t"},
                          {Family::GC_lambda_tilde_or, "GC_lambda_tilde_or"}}) {
        ComplexSpec& s = add(f, tag);
        s.colors = {true, true};
        s.kinds = kinds_of({K::solid, K::dotted});
        s.edge_retype = true;
        s.white_parts = true;
    }
    add(Family::GC_wheeled, "GC_wheeled");
    {
        ComplexSpec& s = add(Family::oGC3, "oGC3");
        s.kinds = kinds_of({K::solid, K::dotted});
        s.edge_retype = true;
        s.exact_trivalent = true;
        s.max_valence = 3;
        s.quotient = Quotient::ihx;
    }
    return r;
}

const std::vector<ComplexSpec>& registry() {
    static const std::vector<ComplexSpec> r = build_registry();
    return r;
}

}  // namespace

const std::vector<Family>& all_families() {
    static const std::vector<Family> fs = [] {
        std::vector<Family> v;
        for (const auto& s : registry()) v.push_back(s.family);
        return v;
    }();
    return fs;
}

const ComplexSpec& spec_of(Family f) {
    for (const auto& s : registry())
        if (s.family == f) return s;
    throw std::invalid_argument("unregistered family");
}

std::string family_tag(Family f) { return spec_of(f).tag; }

std::optional<Family> family_from_tag(const std::string& tag) {
    for (const auto& s : registry())
        if (s.tag == tag) return s.family;
    return std::nullopt;
}

std::string to_string(const ComplexId& c) { return family_tag(c.family) + ":d=" + std::to_string(c.d); }

ComplexId parse_complex_id(const std::string& s) {
    ComplexId c;
    std::string tag = s;
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        tag = s.substr(0, colon);
        std::string rest = s.substr(colon + 1);
        if (rest.rfind("d=", 0) != 0) throw std::invalid_argument("expected 'd=<int>' after ':' in " + s);
        try {
            std::size_t used = 0;
            c.d = std::stoi(rest.substr(2), &used);
            if (used != rest.size() - 2) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad d in " + s);
        }
    }
    auto f = family_from_tag(tag);
    if (!f) throw std::invalid_argument("unknown complex '" + tag + "'");
    c.family = *f;
    check_id(c);
    return c;
}

void check_id(const ComplexId& c) {
    spec_of(c.family);
    if (c.d < 1) throw std::invalid_argument("d must be >= 1");
    if (spec_of(c.family).white_parts && c.d < 2) throw std::invalid_argument("two-colour families need d >= 2");
}

namespace {
int undirected_parameter(const ComplexId& c) { return spec_of(c.family).gc_type ? c.d : c.d - 1; }
}  // namespace

int vertex_degree(const ComplexId& c, VertexColor col) { return col == VertexColor::black ? c.d : c.d - 1; }

int edge_degree(const ComplexId& c, EdgeKind k) {
    const int du = undirected_parameter(c);
    switch (k) {
        case K::solid: return 1 - c.d;
        case K::dotted:
        case K::s_dotted:
        case K::t_dotted: return 1 - du;
        case K::wavy: return 2 - du;
    }
    return 0;
}

OrientationRecipe recipe_of(const ComplexId& c) {
    OrientationRecipe r;
    for (int col = 0; col < kNumColors; ++col)
        r.odd_color[col] = (vertex_degree(c, static_cast<VertexColor>(col)) % 2) != 0;
    for (int k = 0; k < kNumKinds; ++k) {
        r.odd_kind[k] = (edge_degree(c, static_cast<EdgeKind>(k)) % 2) != 0;
        r.flip_signed[k] = static_cast<EdgeKind>(k) != K::solid;
    }
    r.d_odd = (undirected_parameter(c) % 2) != 0;
    return r;
}

int degree(const ComplexId& c, const LabeledGraph& g) {
    const ComplexSpec& s = spec_of(c.family);
    int deg = -c.d;
    for (VertexColor col : g.vertices) {
        if (!s.colors[static_cast<int>(col)]) throw std::invalid_argument("vertex colour foreign to " + s.tag);
        deg += vertex_degree(c, col);
    }
    for (const Edge& e : g.edges) {
        if (!s.kinds[static_cast<int>(e.kind)]) throw std::invalid_argument("edge kind foreign to " + s.tag);
        deg += edge_degree(c, e.kind);
    }
    return deg;
}

bool satisfies_predicate(const ComplexId& c, const LabeledGraph& g, const ValenceProfile& p) {
    const ComplexSpec& s = spec_of(c.family);
    for (VertexColor col : g.vertices)
        if (!s.colors[static_cast<int>(col)]) return false;
    for (const Edge& e : g.edges)
        if (!s.kinds[static_cast<int>(e.kind)]) return false;
    if (g.vertices.empty()) return false;

    bool any_ge3 = false, any_passing = false, any_target = false, any_source = false;
    bool biv_target = false, biv_source = false, all_in_out = true, white_out = false, any_black = false;
    for (std::size_t v = 0; v < p.size(); ++v) {
        const VertexValence& x = p[v];
        const int val = x.total();
        if (val < s.min_valence) return false;
        if (s.max_valence >= 0 && val > s.max_valence) return false;
        if (s.exact_trivalent && val != 3) return false;
        any_ge3 |= val >= 3;
        any_passing |= x.passing();
        any_target |= x.target();
        any_source |= x.source();
        biv_target |= val == 2 && x.target();
        biv_source |= val == 2 && x.source();
        all_in_out &= x.solid_in() >= 1 && x.solid_out() >= 1;
        if (g.vertices[v] == VertexColor::white) white_out |= x.solid_out() > 0;
        else any_black = true;
    }
    auto count_kind = [&](EdgeKind k) {
        return std::count_if(g.edges.begin(), g.edges.end(), [&](const Edge& e) { return e.kind == k; });
    };

    switch (c.family) {
        case Family::GC:
        case Family::GC_geq2:
        case Family::GC_2valent:
        case Family::GC_leq4: return true;
        case Family::GC_simple: {
            std::set<std::pair<int, int>> seen;
            for (const Edge& e : g.edges)
                if (!seen.insert(std::minmax(e.tail, e.head)).second) return false;
            return true;
        }
        case Family::dGC: return !any_passing && any_ge3;
        case Family::dGC_geq2: return !any_passing;
        case Family::OGC: return !any_passing && any_ge3 && !has_solid_cycle(g);
        case Family::OGC_geq2: return !any_passing && !has_solid_cycle(g);
        case Family::hatOGC: return !has_solid_cycle(g);
        case Family::barGC2edge: return true;
        case Family::barTGC: return any_target;
        case Family::barSGC: return any_source;
        case Family::GC_t_dotted: return any_target && count_kind(K::dotted) > 0;
        case Family::rdGC4edge: return true;
        case Family::dGC_wedge_tilde: return count_kind(K::t_dotted) + count_kind(K::wavy) > 0;
        case Family::TGC: return !any_passing && any_ge3 && any_target;
        case Family::SGC: return !any_passing && any_ge3 && any_source;
        case Family::STGC: return !any_passing && any_ge3 && any_target && any_source;
        case Family::SoTGC: return !any_passing && any_ge3 && (any_target || any_source);
        case Family::GC_wedge: return !any_passing && any_ge3 && biv_target;
        case Family::GC_vee: return !any_passing && any_ge3 && biv_source;
        case Family::GC_wedge_vee: return !any_passing && any_ge3 && biv_target && biv_source;
        case Family::GC_vee_plus_wedge: return !any_passing && any_ge3 && (biv_target || biv_source);
        case Family::X_st:
            return !any_passing && any_ge3 && any_target && any_source && !(biv_target && biv_source);
        case Family::GC_st_geq3: return any_target && any_source;
        case Family::GC_s_plus_t_geq3: return any_target || any_source;
        case Family::GC_t_geq3: return any_target;
        case Family::GC_lambda_t: return !white_out && any_black && any_target;
        case Family::GC_lambda_or: return !white_out && any_black && !has_solid_cycle(g);
        case Family::GC_lambda_tilde_t: return !white_out && any_target;
        case Family::GC_lambda_tilde_or: return !white_out && !has_solid_cycle(g);
        case Family::GC_wheeled: return all_in_out;
        case Family::oGC3: return !has_solid_cycle(g);
    }
    return false;
}

bool is_generator(const ComplexId& c, const LabeledGraph& g) {
    if (g.num_vertices() == 0 || !is_connected(g)) return false;
    for (const Edge& e : g.edges)
        if (e.tail == e.head || e.tail < 0 || e.head < 0 || e.tail >= g.num_vertices() || e.head >= g.num_vertices())
            return false;
    return satisfies_predicate(c, g, valence_profile(g));
}

int CountProfile::total_edges() const {
    int s = 0;
    for (int e : edges) s += e;
    return s;
}

std::optional<int> max_vertices(const ComplexId& c, int g) {
    const ComplexSpec& s = spec_of(c.family);
    if (c.family == Family::GC_2valent) return g == 1 ? std::nullopt : std::optional<int>(0);
    if (s.min_valence >= 3) return std::max(0, 2 * g - 2);
    return std::nullopt;
}

int min_vertices(const ComplexId& c, int g) {
    (void)c;
    return g >= 1 ? 2 : 1;
}

namespace {

// Enumerates all profiles with vertex count in [vlo, vhi] and calls f.
template <class F>
void for_each_profile(const ComplexId& c, int g, int vlo, int vhi, F f) {
    const ComplexSpec& s = spec_of(c.family);
    std::vector<int> kinds;
    for (int k = 0; k < kNumKinds; ++k)
        if (s.kinds[k]) kinds.push_back(k);
    for (int V = std::max(vlo, 1); V <= vhi; ++V) {
        const int E = V + g - 1;
        if (E < 0) continue;
        if (2 * E < s.min_valence * V) continue;
        if (s.max_valence >= 0 && 2 * E > s.max_valence * V) continue;
        if (s.exact_trivalent && 2 * E != 3 * V) continue;
        for (int white = 0; white <= (s.colors[1] ? V : 0); ++white) {
            CountProfile p;
            p.white = white;
            p.black = V - white;
            if (!s.colors[0] && p.black > 0) continue;
            // distribute E among the allowed kinds
            std::vector<int> cnt(kinds.size(), 0);
            auto rec = [&](auto&& self, std::size_t i, int left) -> void {
                if (i + 1 == kinds.size()) {
                    cnt[i] = left;
                    CountProfile q = p;
                    for (std::size_t j = 0; j < kinds.size(); ++j) q.edges[kinds[j]] = cnt[j];
                    f(q);
                    return;
                }
                for (int x = 0; x <= left; ++x) {
                    cnt[i] = x;
                    self(self, i + 1, left - x);
                }
            };
            rec(rec, 0, E);
        }
    }
}

int profile_degree(const ComplexId& c, const CountProfile& p) {
    int deg = -c.d + p.black * vertex_degree(c, VertexColor::black) + p.white * vertex_degree(c, VertexColor::white);
    for (int k = 0; k < kNumKinds; ++k) deg += p.edges[k] * edge_degree(c, static_cast<EdgeKind>(k));
    return deg;
}

}  // namespace

std::vector<CountProfile> count_vectors(const ComplexId& c, int g, int k) {
    check_id(c);
    if (g < 1) throw std::invalid_argument("loop order must be >= 1");
    const ComplexSpec& s = spec_of(c.family);
    auto vmax = max_vertices(c, g);
    int vhi;
    if (vmax) {
        vhi = *vmax;
    } else {
        int nk = 0;
        for (bool b : s.kinds) nk += b;
        if (nk != 1 || s.colors[1]) throw std::logic_error("infinitely many count profiles");
        // single kind: degree = -d + d V + e (V + g - 1) with d + e = 1
        const EdgeKind only = static_cast<EdgeKind>(std::find(s.kinds.begin(), s.kinds.end(), true) - s.kinds.begin());
        const int e = edge_degree(c, only);
        if (c.d + e != 1) throw std::logic_error("unexpected degree slope");
        vhi = k + c.d - e * (g - 1);
    }
    std::vector<CountProfile> out;
    for_each_profile(c, g, min_vertices(c, g), vhi, [&](const CountProfile& p) {
        if (profile_degree(c, p) != k) return;
        if (s.white_parts && p.black == 0 &&
            (c.family == Family::GC_lambda_t || c.family == Family::GC_lambda_or))
            return;
        out.push_back(p);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> candidate_degrees(const ComplexId& c, int g, int vcap) {
    check_id(c);
    auto vmax = max_vertices(c, g);
    const int vhi = vmax ? std::min(*vmax, vcap) : vcap;
    std::set<int> ds;
    for_each_profile(c, g, min_vertices(c, g), vhi, [&](const CountProfile& p) { ds.insert(profile_degree(c, p)); });
    return {ds.begin(), ds.end()};
}

int default_vertex_cap(int g) {
    if (g <= 1) return 10;
    if (g <= 3) return 3 * g - 1;
    return 2 * g - 1;
}

}  // namespace gcx
