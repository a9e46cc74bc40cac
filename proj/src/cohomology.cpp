#include "gcx/cohomology.hpp"

#include "json.hpp"

#include "gcx/cache.hpp"
#include "gcx/differential.hpp"

namespace gcx {

bool CohomologyTable::all_zero() const {
    for (const auto& [k, d] : dims)
        if (d != 0) return false;
    return true;
}

SparseMatrix cached_delta_matrix(Workspace& ws, const ComplexId& c, int g, int k) {
    const auto& cache = ws.settings().cache;
    const CacheKey key{CacheKind::matrix, c, g, k, "Q", "delta"};
    if (cache)
        if (auto payload = cache->load(key)) return parse_matrix(*payload);
    SparseMatrix m = delta_matrix(ws, c, g, k, Field::Q());
    if (cache) cache->store(key, serialize_matrix(m));
    return m;
}

namespace {

int rank_in(const SparseMatrix& q, const Field& f) { return q.cols() == 0 || q.rows() == 0 ? 0 : rank_over(q, f); }

CohomologyTable compute(Workspace& ws, const ComplexId& c, int g, const Field& f, bool with_relations) {
    check_id(c);
    CohomologyTable t;
    t.complex = c;
    t.g = g;
    t.field = f;
    t.complete = max_vertices(c, g).has_value();
    const auto window = ws.degrees(c, g);
    const auto exact = ws.exact_degrees(c, g);
    for (int k : window) t.basis_sizes[k] = ws.basis(c, g, k)->size();

    std::map<int, SparseMatrix> rel;  // relations at degree k, over Q
    auto relations = [&](int k) -> const SparseMatrix& {
        auto it = rel.find(k);
        if (it != rel.end()) return it->second;
        SparseMatrix r = with_relations ? quotient_relations(ws, c, g, k)
                                        : SparseMatrix(ws.basis(c, g, k)->size(), 0, Field::Q());
        return rel.emplace(k, std::move(r)).first->second;
    };
    std::map<int, int> rel_rank;
    auto relation_rank = [&](int k) {
        auto it = rel_rank.find(k);
        if (it != rel_rank.end()) return it->second;
        return rel_rank[k] = rank_in(relations(k), f);
    };
    // rank of delta_k on the quotient: rank [delta_k | R_{k+1}] - rank R_{k+1}
    std::map<int, int> drank;
    auto delta_rank = [&](int k) {
        auto it = drank.find(k);
        if (it != drank.end()) return it->second;
        const int n = ws.basis(c, g, k)->size(), m = ws.basis(c, g, k + 1)->size();
        int r = 0;
        if (n > 0 && m > 0) {
            SparseMatrix d = cached_delta_matrix(ws, c, g, k);
            const SparseMatrix& R = relations(k + 1);
            r = R.cols() == 0 ? rank_in(d, f) : rank_in(hstack(d, R), f) - relation_rank(k + 1);
        }
        return drank[k] = r;
    };
    for (int k : exact) {
        const long long n = ws.basis(c, g, k)->size();
        const int rr = relation_rank(k);
        if (with_relations) t.relation_ranks[k] = rr;
        t.dims[k] = (n - rr) - delta_rank(k) - delta_rank(k - 1);
        if (t.dims[k] < 0) throw std::logic_error("negative cohomology dimension; differential is inconsistent");
    }
    return t;
}

}  // namespace

CohomologyTable cohomology_dims(Workspace& ws, const ComplexId& c, int g, const Field& f) {
    return compute(ws, c, g, f, false);
}

CohomologyTable quotient_cohomology_dims(Workspace& ws, const ComplexId& c, int g, const Field& f) {
    return compute(ws, c, g, f, spec_of(c.family).quotient != Quotient::none);
}

bool euler_consistent(const CohomologyTable& t) {
    long long lhs = 0, rhs = 0;
    for (const auto& [k, d] : t.dims) lhs += (k % 2 ? -1 : 1) * d;
    for (const auto& [k, n] : t.basis_sizes) {
        auto it = t.relation_ranks.find(k);
        rhs += (k % 2 ? -1 : 1) * (n - (it == t.relation_ranks.end() ? 0 : it->second));
    }
    return lhs == rhs;
}

std::string to_json(const CohomologyTable& t) {
    nlohmann::ordered_json j;
    j["complex"] = family_tag(t.complex.family);
    j["d"] = t.complex.d;
    j["g"] = t.g;
    j["field"] = t.field.tag();
    j["dims"] = nlohmann::ordered_json::object();
    for (const auto& [k, d] : t.dims) j["dims"][std::to_string(k)] = d;
    j["basis_sizes"] = nlohmann::ordered_json::object();
    for (const auto& [k, n] : t.basis_sizes) j["basis_sizes"][std::to_string(k)] = n;
    if (!t.relation_ranks.empty()) {
        j["relation_ranks"] = nlohmann::ordered_json::object();
        for (const auto& [k, r] : t.relation_ranks) j["relation_ranks"][std::to_string(k)] = r;
    }
    j["complete"] = t.complete;
    return j.dump();
}

CohomologyTable table_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    CohomologyTable t;
    t.complex = parse_complex_id(j.at("complex").get<std::string>() + ":d=" + std::to_string(j.at("d").get<int>()));
    t.g = j.at("g").get<int>();
    t.field = parse_field(j.at("field").get<std::string>());
    for (auto& [k, v] : j.at("dims").items()) t.dims[std::stoi(k)] = v.get<long long>();
    for (auto& [k, v] : j.at("basis_sizes").items()) t.basis_sizes[std::stoi(k)] = v.get<int>();
    if (j.contains("relation_ranks"))
        for (auto& [k, v] : j.at("relation_ranks").items()) t.relation_ranks[std::stoi(k)] = v.get<int>();
    t.complete = j.value("complete", true);
    return t;
}

}  // namespace gcx
