#include "gcx/theorems.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <sstream>
#include <tuple>

#include "gcx/brute.hpp"
#include "gcx/cache.hpp"
#include "gcx/parallel.hpp"

namespace gcx {

D2Report verify_d2(Workspace& ws, const ComplexId& c, int g) {
    check_id(c);
    D2Report r;
    r.complex = c;
    r.g = g;
    const auto window = ws.degrees(c, g);
    for (int k : window) {
        if (!std::count(window.begin(), window.end(), k + 2)) continue;
        r.degrees_checked.push_back(k);
        const SparseMatrix d0 = cached_delta_matrix(ws, c, g, k);
        const SparseMatrix d1 = cached_delta_matrix(ws, c, g, k + 1);
        if (d0.cols() == 0 || d1.rows() == 0) continue;
        if (!multiply(d1, d0).is_zero()) r.failing.push_back(k);
    }
    return r;
}

bool TableComparison::equal() const {
    return missing.empty() && std::all_of(rows.begin(), rows.end(), [](const DegreeComparison& r) { return r.equal(); });
}

TableComparison compare_tables(const CohomologyTable& a, const CohomologyTable& b, int shift) {
    TableComparison t;
    for (const auto& [k, da] : a.dims) {
        auto it = b.dims.find(k + shift);
        if (it != b.dims.end())
            t.rows.push_back({k, da, it->second});
        else if (da != 0)
            t.missing.push_back(to_string(a.complex) + " H^" + std::to_string(k) + "=" + std::to_string(da));
    }
    for (const auto& [k, db] : b.dims)
        if (db != 0 && !a.dims.count(k - shift))
            t.missing.push_back(to_string(b.complex) + " H^" + std::to_string(k) + "=" + std::to_string(db));
    return t;
}

SparseMatrix column_of(const Chain& x, const Basis& b) {
    SparseMatrix m(b.size(), 1, Field::Q());
    for (const auto& [enc, coeff] : x.terms) {
        const int i = b.find(enc);
        if (i < 0) throw std::invalid_argument("chain term not in basis: " + enc);
        m.add(i, 0, coeff);
    }
    m.finalize();
    return m;
}

SparseMatrix kernel(const SparseMatrix& m) {
    if (m.field().kind != Field::Kind::rational) throw std::invalid_argument("kernel expects a matrix over Q");
    const int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
    for (const Triplet& t : m.entries()) a[t.row][t.col] = t.value;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const mpq_class inv = 1 / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const mpq_class f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    SparseMatrix k(cols, cols - static_cast<int>(pivot_col.size()), Field::Q());
    int out = 0;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        k.add(f, out, 1);
        for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i)
            if (a[i][f] != 0) k.add(pivot_col[i], out, -a[i][f]);
        ++out;
    }
    k.finalize();
    return k;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint32_t kPrime1 = 32003;
constexpr std::uint32_t kPrime2 = 65521;
// Every comparison below is an equality of integers: no tolerance.
constexpr long long kTolerance = 0;

ComplexId id(Family f, int d) { return {f, d}; }

std::string dims_str(const CohomologyTable& t) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [k, d] : t.dims) {
        if (d == 0) continue;
        os << (first ? "" : ", ") << k << ":" << d;
        first = false;
    }
    os << "}";
    return os.str();
}

bool differs(long long a, long long b) { return (a > b ? a - b : b - a) > kTolerance; }

// Tables over one field, memoized per (complex, g).
class Tables {
public:
    Tables(Workspace& ws, int threads) : ws_(ws), threads_(threads) {}

    const CohomologyTable& get(const ComplexId& c, int g, const Field& f = Field::Q()) {
        {
            std::lock_guard lk(mu_);
            auto it = memo_.find({c, g, f.tag()});
            if (it != memo_.end()) return it->second;
        }
        CohomologyTable t = quotient_cohomology_dims(ws_, c, g, f);
        std::lock_guard lk(mu_);
        return memo_.emplace(std::make_tuple(c, g, f.tag()), std::move(t)).first->second;
    }

    void prefetch(const std::vector<std::pair<ComplexId, int>>& items, const Field& f) {
        parallel_for(static_cast<int>(items.size()), threads_,
                     [&](int i, int) { get(items[i].first, items[i].second, f); });
    }

private:
    Workspace& ws_;
    int threads_;
    std::mutex mu_;
    std::map<std::tuple<ComplexId, int, std::string>, CohomologyTable> memo_;
};

LabeledGraph polygon(int j) {
    LabeledGraph g;
    for (int i = 0; i < j; ++i) g.add_vertex(VertexColor::black);
    for (int i = 0; i < j; ++i) g.add_edge(i, (i + 1) % j, EdgeKind::dotted);
    return g;
}

LabeledGraph tetrahedron() {
    LabeledGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(VertexColor::black);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) g.add_edge(a, b, EdgeKind::dotted);
    return g;
}

int rank_or_zero(const SparseMatrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : rank(m); }

// The complexes whose tables criteria 3 to 10 read, at the loop orders used.
std::vector<std::pair<ComplexId, int>> table_suite() {
    std::vector<std::pair<ComplexId, int>> s;
    s.push_back({id(Family::GC_2valent, 2), 1});
    for (int g : {2, 3}) {
        s.push_back({id(Family::GC, 2), g});
        s.push_back({id(Family::GC, 3), g});
    }
    for (Family f : {Family::dGC, Family::barGC2edge, Family::rdGC4edge})
        for (int d : {2, 3}) s.push_back({id(f, d), 3});
    for (Family f : {Family::OGC, Family::TGC, Family::SGC, Family::oGC3, Family::STGC, Family::SoTGC})
        s.push_back({id(f, 3), 3});
    for (Family f : {Family::GC_wedge, Family::GC_vee, Family::dGC_wedge_tilde, Family::GC_lambda_tilde_t,
                     Family::GC_lambda_tilde_or})
        for (int g = 1; g <= 3; ++g) s.push_back({id(f, 3), g});
    for (Family f : {Family::GC_wedge_vee, Family::GC_vee_plus_wedge})
        for (int d : {2, 3}) s.push_back({id(f, d), 3});
    s.push_back({id(Family::GC_wheeled, 2), 3});
    return s;
}

struct Battery {
    const TheoremOptions& opt;
    Workspace& ws;
    Tables& tables;

    const CohomologyTable& T(Family f, int d, int g) { return tables.get(id(f, d), g); }

    // 1: d^2 = 0
    void c1(CriterionResult& r) {
        r.title = "d^2 = 0 exactly over Q, every family, d in {2,3}, g <= 3 (g <= 4 for GC, dGC)";
        std::vector<std::pair<ComplexId, int>> items;
        for (Family f : all_families())
            for (int d : {2, 3}) {
                const int gmax = f == Family::GC || f == Family::dGC ? 4 : 3;
                for (int g = 1; g <= gmax; ++g) items.push_back({id(f, d), g});
            }
        std::vector<D2Report> reps(items.size());
        parallel_for(static_cast<int>(items.size()), opt.threads,
                     [&](int i, int) { reps[i] = verify_d2(ws, items[i].first, items[i].second); });
        long long pairs = 0;
        r.pass = true;
        for (const D2Report& rep : reps) {
            pairs += static_cast<long long>(rep.degrees_checked.size());
            if (rep.ok()) continue;
            r.pass = false;
            std::ostringstream os;
            os << to_string(rep.complex) << " g=" << rep.g << " fails at k =";
            for (int k : rep.failing) os << " " << k;
            r.details.push_back(os.str());
        }
        r.details.push_back(std::to_string(items.size()) + " (complex, g) pairs, " + std::to_string(pairs) +
                            " degree pairs checked");
    }

    // 2: chain maps
    void c2(CriterionResult& r) {
        r.title = "delta M = M delta exactly at g <= 3 for f, s, z, j, iota, F_t, F_or, mu (d in {2,3})";
        std::vector<std::pair<MapId, int>> items;
        for (MapTag t : {MapTag::f, MapTag::s, MapTag::z, MapTag::j, MapTag::iota, MapTag::F_t, MapTag::F_or, MapTag::mu})
            for (int d : {2, 3})
                for (int g = 1; g <= 3; ++g) items.push_back({make_map(t, d), g});
        std::vector<ChainMapReport> reps(items.size());
        parallel_for(static_cast<int>(items.size()), opt.threads,
                     [&](int i, int) { reps[i] = verify_chain_map(ws, items[i].first, items[i].second); });
        long long cols = 0;
        r.pass = true;
        for (const ChainMapReport& rep : reps) {
            cols += rep.columns_checked;
            if (rep.ok()) continue;
            r.pass = false;
            r.details.push_back(map_tag_name(rep.map.tag) + " " + to_string(rep.map.source) + " -> " +
                                to_string(rep.map.target) + " g=" + std::to_string(rep.g) + ": " +
                                std::to_string(rep.violations.size()) + " columns violate, first at k=" +
                                std::to_string(rep.violations.front().degree));
        }
        r.details.push_back(std::to_string(items.size()) + " (map, d, g) cases, " + std::to_string(cols) +
                            " columns checked");
    }

    // 3: H(GC_2) at g = 3 and the tetrahedron
    void c3(CriterionResult& r) {
        r.title = "H(GC, d=2, g=3) = {0:1} and the tetrahedron spans H^0";
        const ComplexId c = id(Family::GC, 2);
        const CohomologyTable& t = tables.get(c, 3);
        bool dims_ok = true;
        for (const auto& [k, d] : t.dims) dims_ok &= !differs(d, k == 0 ? 1 : 0);
        dims_ok &= t.dims.count(0) > 0;
        r.details.push_back("dims " + dims_str(t));
        const Chain tet = chain_of(c, tetrahedron());
        const auto b0 = ws.basis(c, 3, 0);
        const SparseMatrix v = column_of(tet, *b0);
        const bool nonzero = !tet.empty();
        const bool closed = multiply(cached_delta_matrix(ws, c, 3, 0), v).is_zero();
        const SparseMatrix im = cached_delta_matrix(ws, c, 3, -1);
        const int rb = rank_or_zero(im);
        const bool not_exact = rank_or_zero(im.cols() ? hstack(im, v) : v) > rb;
        r.details.push_back(std::string("tetrahedron nonzero=") + (nonzero ? "yes" : "no") +
                            " closed=" + (closed ? "yes" : "no") + " non-exact=" + (not_exact ? "yes" : "no"));
        r.pass = dims_ok && nonzero && closed && not_exact;
    }

    // 4: bivalent loops
    void c4(CriterionResult& r) {
        r.title = "GC_2valent d=2: j-gon nonzero iff j = 1 mod 4 (2 <= j <= 9), each giving a 1-dim class";
        const ComplexId c = id(Family::GC_2valent, 2);
        const CohomologyTable& t = tables.get(c, 1);
        r.pass = true;
        std::ostringstream os;
        std::set<int> class_degrees;
        for (int j = 2; j <= 9; ++j) {
            const LabeledGraph p = polygon(j);
            const bool nonzero = !chain_of(c, p).empty();
            const bool expect = j % 4 == 1;
            const int k = degree(c, p);
            os << " j=" << j << (nonzero ? ":nonzero" : ":zero");
            if (nonzero != expect) r.pass = false;
            if (!expect) continue;
            class_degrees.insert(k);
            auto it = t.dims.find(k);
            if (it == t.dims.end() || differs(it->second, 1)) {
                r.pass = false;
                r.details.push_back("H^" + std::to_string(k) + " not 1 for the " + std::to_string(j) + "-gon");
            }
        }
        for (const auto& [k, d] : t.dims)
            if (!class_degrees.count(k) && d != 0) {
                r.pass = false;
                r.details.push_back("unexpected H^" + std::to_string(k) + "=" + std::to_string(d));
            }
        r.details.push_back("gons:" + os.str());
        r.details.push_back("dims " + dims_str(t) + " (class of the j-gon sits in its degree j-2)");
    }

    // 5: vanishing range
    void c5(CriterionResult& r) {
        r.title = "H^k(GC_d, g) vanishes outside (2-d)g-1 <= k <= (3-d)g-3, lower bound (2-d)g at g=3";
        r.pass = true;
        for (int d : {2, 3})
            for (int g : {2, 3}) {
                const CohomologyTable& t = T(Family::GC, d, g);
                const int lo = (2 - d) * g - (g == 3 ? 0 : 1), hi = (3 - d) * g - 3;
                bool ok = t.complete;
                for (const auto& [k, dim] : t.dims)
                    if ((k < lo || k > hi) && dim != 0) ok = false;
                r.pass &= ok;
                r.details.push_back("GC:d=" + std::to_string(d) + " g=" + std::to_string(g) + " range [" +
                                    std::to_string(lo) + "," + std::to_string(hi) + "] dims " + dims_str(t) +
                                    (ok ? "" : "  VIOLATION"));
            }
    }

    // 6: quasi-isomorphic models of GC_2
    void c6(CriterionResult& r) {
        r.title = "H at g=3 equal for GC_2, dGC_2, OGC_3, TGC_3, SGC_3, barGC2edge_3, rdGC4edge_3, oGC3_3";
        const CohomologyTable& base = T(Family::GC, 2, 3);
        r.pass = true;
        const std::vector<ComplexId> others = {id(Family::dGC, 2),        id(Family::OGC, 3),
                                               id(Family::TGC, 3),        id(Family::SGC, 3),
                                               id(Family::barGC2edge, 3), id(Family::rdGC4edge, 3),
                                               id(Family::oGC3, 3)};
        r.details.push_back("GC:d=2 " + dims_str(base));
        for (const ComplexId& c : others) {
            const CohomologyTable& t = tables.get(c, 3);
            const bool eq = compare_tables(base, t).equal();
            r.pass &= eq;
            r.details.push_back(to_string(c) + " " + dims_str(t) + (eq ? " equal" : " DIFFERS"));
        }
        // the two reduced models at their own index, for the record
        for (Family f : {Family::barGC2edge, Family::rdGC4edge}) {
            const bool eq2 = compare_tables(T(Family::dGC, 2, 3), T(f, 2, 3)).equal();
            const bool eq3 = compare_tables(T(Family::dGC, 3, 3), T(f, 3, 3)).equal();
            r.details.push_back("note: " + family_tag(f) + ":d=D vs dGC:d=D, D=2 " + (eq2 ? "equal" : "differs") +
                                ", D=3 " + (eq3 ? "equal" : "differs"));
        }
    }

    // 7: acyclic complexes
    void c7(CriterionResult& r) {
        r.title = "acyclic at D=3, g <= 3: GC_wedge, GC_vee, dGC_wedge_tilde, GC_lambda_tilde_t, GC_lambda_tilde_or";
        r.pass = true;
        for (Family f : {Family::GC_wedge, Family::GC_vee, Family::dGC_wedge_tilde, Family::GC_lambda_tilde_t,
                         Family::GC_lambda_tilde_or}) {
            std::ostringstream os;
            os << family_tag(f) << ":d=3";
            bool ok = true;
            for (int g = 1; g <= 3; ++g) {
                const CohomologyTable& t = T(f, 3, g);
                ok &= t.all_zero();
                os << " g=" << g << dims_str(t) << "(" << t.dims.size() << " degrees)";
            }
            r.pass &= ok;
            r.details.push_back(os.str() + (ok ? "" : "  NOT ACYCLIC"));
        }
    }

    // 8: STGC splits
    void c8(CriterionResult& r) {
        r.title = "H^k(STGC_3) = H^k(TGC_3) + H^k(SGC_3) + H^(k-1)(SoTGC_3) at g=3";
        const CohomologyTable& st = T(Family::STGC, 3, 3);
        const CohomologyTable& t = T(Family::TGC, 3, 3);
        const CohomologyTable& s = T(Family::SGC, 3, 3);
        const CohomologyTable& so = T(Family::SoTGC, 3, 3);
        // compared where all four sides are determined
        std::vector<int> ks;
        for (const auto& [k, d] : st.dims)
            if (t.dims.count(k) && s.dims.count(k) && so.dims.count(k - 1)) ks.push_back(k);
        r.pass = !ks.empty();
        for (int k : ks) {
            const long long lhs = st.dim(k), rhs = t.dim(k) + s.dim(k) + so.dim(k - 1);
            if (differs(lhs, rhs)) {
                r.pass = false;
                r.details.push_back("k=" + std::to_string(k) + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs));
            }
        }
        r.details.push_back("STGC " + dims_str(st) + ", TGC " + dims_str(t) + ", SGC " + dims_str(s) + ", SoTGC " +
                            dims_str(so));
        if (!ks.empty())
            r.details.push_back("degrees compared " + std::to_string(ks.front()) + ".." + std::to_string(ks.back()));
    }

    // 9: vee-plus-wedge vs wedge-vee
    void c9(CriterionResult& r) {
        r.title = "H^k(GC_vee_plus_wedge) = H^(k+1)(GC_wedge_vee) at g=3 (D in {2,3})";
        r.pass = true;
        for (int d : {2, 3}) {
            const CohomologyTable& a = T(Family::GC_vee_plus_wedge, d, 3);
            const CohomologyTable& b = T(Family::GC_wedge_vee, d, 3);
            const TableComparison cmp = compare_tables(a, b, 1);
            const bool ok = cmp.equal() && !cmp.rows.empty();
            r.pass &= ok;
            std::string line = "D=" + std::to_string(d) + " vee+wedge " + dims_str(a) + " wedge.vee " + dims_str(b) +
                               ", " + std::to_string(cmp.rows.size()) + " degrees compared";
            for (const auto& m : cmp.missing) line += "; undetermined " + m;
            r.details.push_back(line + (ok ? "" : "  DIFFERS"));
        }
    }

    // 10: wheeled example
    void c10(CriterionResult& r) {
        r.title = "GC_wheeled d=2 g=3: one degree -1 generator, dim H^0 = 1, mu iso on H^0";
        const ComplexId w = id(Family::GC_wheeled, 2), gc = id(Family::GC, 2);
        const CohomologyTable& t = tables.get(w, 3);
        const int n1 = ws.basis(w, 3, -1)->size();
        const bool a = !differs(n1, 1);
        const bool b = t.dims.count(0) && !differs(t.dim(0), 1);
        // induced rank on H^0 = rank [M Z_src | B_tgt] - rank B_tgt
        const MapId mu = make_map(MapTag::mu, 2);
        const SparseMatrix z = kernel(cached_delta_matrix(ws, gc, 3, 0));
        const SparseMatrix mz = multiply(map_matrix(ws, mu, 3, 0), z);
        const SparseMatrix bt = cached_delta_matrix(ws, w, 3, -1);
        const int rb = rank_or_zero(bt);
        const int induced = rank_or_zero(bt.cols() ? hstack(mz, bt) : mz) - rb;
        const long long hs = T(Family::GC, 2, 3).dim(0);
        const bool c = t.dims.count(0) && !differs(induced, hs) && !differs(induced, t.dim(0));
        r.pass = a && b && c;
        r.details.push_back("degree -1 generators: " + std::to_string(n1) + (a ? "" : "  FAIL"));
        r.details.push_back("H(GC_wheeled) " + dims_str(t) + ", basis sizes -1:" + std::to_string(n1) + " 0:" +
                            std::to_string(ws.basis(w, 3, 0)->size()) + (b ? "" : "  FAIL: H^0 != 1"));
        r.details.push_back("mu on H^0: dim source " + std::to_string(hs) + ", dim target " +
                            std::to_string(t.dim(0)) + ", induced rank " + std::to_string(induced) + (c ? "" : "  FAIL"));
    }

    // 11: field robustness
    void c11(CriterionResult& r) {
        r.title = "dimensions above agree over GF(32003), GF(65521) and Q";
        const auto suite = table_suite();
        r.pass = true;
        for (const Field& f : {Field::Q(), Field::Fp(kPrime1), Field::Fp(kPrime2)}) tables.prefetch(suite, f);
        int compared = 0;
        for (const auto& [c, g] : suite) {
            const CohomologyTable& q = tables.get(c, g, Field::Q());
            for (std::uint32_t p : {kPrime1, kPrime2}) {
                const CohomologyTable& t = tables.get(c, g, Field::Fp(p));
                ++compared;
                if (t.dims != q.dims) {
                    r.pass = false;
                    r.details.push_back(to_string(c) + " g=" + std::to_string(g) + " over Fp:" + std::to_string(p) +
                                        " " + dims_str(t) + " vs Q " + dims_str(q));
                }
            }
        }
        r.details.push_back(std::to_string(suite.size()) + " tables, " + std::to_string(compared) +
                            " prime-vs-Q comparisons");
    }

    // 12: valence <= 4 quotient (reported only)
    void c12(CriterionResult& r) {
        r.title = "H(GC_2) = H(GC_leq4, d=2) at g <= 4 (optional)";
        r.optional = true;
        r.pass = true;
        for (int g = 1; g <= 4; ++g) {
            const CohomologyTable& a = T(Family::GC, 2, g);
            const CohomologyTable& b = T(Family::GC_leq4, 2, g);
            const bool eq = compare_tables(a, b).equal();
            r.pass &= eq;
            r.details.push_back("g=" + std::to_string(g) + " GC " + dims_str(a) + " GC_leq4 " + dims_str(b) +
                                (eq ? " equal" : " DIFFERS"));
        }
    }

    // 13: brute-force oracle
    void c13(CriterionResult& r) {
        r.title = "generate_basis = brute-force classes (g <= 2 all families, g = 3 GC and dGC); canonical sign fuzz";
        std::vector<std::tuple<ComplexId, int, int>> items;
        auto add = [&](const ComplexId& c, int g) {
            for (int k : brute::checkable_degrees(ws, c, g)) items.push_back({c, g, k});
        };
        for (Family f : all_families())
            for (int d : {2, 3})
                for (int g : {1, 2}) add(id(f, d), g);
        for (Family f : {Family::GC, Family::dGC})
            for (int d : {2, 3}) add(id(f, d), 3);
        std::vector<brute::BasisComparison> reps(items.size());
        parallel_for(static_cast<int>(items.size()), opt.threads, [&](int i, int) {
            const auto& [c, g, k] = items[i];
            reps[i] = brute::compare_basis(ws, c, g, k);
        });
        r.pass = true;
        long long classes = 0;
        for (const auto& rep : reps) {
            classes += rep.basis;
            if (rep.agree) continue;
            r.pass = false;
            r.details.push_back(to_string(rep.complex) + " g=" + std::to_string(rep.g) + " k=" +
                                std::to_string(rep.k) + ": oracle " + std::to_string(rep.oracle) + " basis " +
                                std::to_string(rep.basis) + " " + rep.detail.substr(0, 200));
        }
        r.details.push_back(std::to_string(items.size()) + " (complex, g, k) bases compared, " +
                            std::to_string(classes) + " generators");
        const auto fz = brute::fuzz_canonicalize(opt.fuzz_cases, opt.fuzz_seed);
        const bool fuzz_ok = fz.ok() && fz.cases >= 10'000;
        r.pass &= fuzz_ok;
        r.details.push_back("fuzz: " + std::to_string(fz.cases) + " cases, " + std::to_string(fz.failures) +
                            " failures" + (fz.ok() ? "" : ", first: " + fz.first_failure));
    }
};

}  // namespace

std::vector<CriterionResult> run_theorems(const TheoremOptions& opt) {
    Settings s;
    s.threads = 1;  // parallelism is across independent items
    s.budget = opt.budget;
    s.cache = opt.cache;
    Workspace ws(s);
    Tables tables(ws, std::max(1, opt.threads));
    Battery b{opt, ws, tables};
    using Fn = void (Battery::*)(CriterionResult&);
    const Fn fns[kNumCriteria] = {&Battery::c1, &Battery::c2, &Battery::c3,  &Battery::c4,  &Battery::c5,
                                  &Battery::c6, &Battery::c7, &Battery::c8,  &Battery::c9,  &Battery::c10,
                                  &Battery::c11, &Battery::c12, &Battery::c13};
    bool prefetched = false;
    std::vector<CriterionResult> out;
    for (int i = 0; i < kNumCriteria; ++i) {
        if (!opt.only.empty() && !opt.only.count(i + 1)) continue;
        if (opt.only.empty() && opt.threads > 1 && i + 1 >= 3 && !prefetched) {
            tables.prefetch(table_suite(), Field::Q());
            prefetched = true;
        }
        CriterionResult r;
        r.id = i + 1;
        const auto t0 = Clock::now();
        try {
            (b.*fns[i])(r);
        } catch (const ResourceError&) {
            throw;
        } catch (const std::exception& e) {
            r.pass = false;
            r.details.push_back(std::string("error: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (opt.on_result) opt.on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

bool required_pass(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass || r.optional; });
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  C" << r.id << (r.id < 10 ? "  " : " ") << r.title;
    if (r.optional) os << " [reported only]";
    os << "  (" << std::fixed;
    os.precision(1);
    os << r.seconds << " s)\n";
    for (const auto& d : r.details) os << "      " << d << "\n";
    return os.str();
}

}  // namespace gcx
