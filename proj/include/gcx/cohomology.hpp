#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcx/basis.hpp"
#include "gcx/complexes.hpp"
#include "gcx/linalg.hpp"

namespace gcx {

struct CohomologyTable {
    ComplexId complex;
    int g = 0;
    Field field;
    std::map<int, long long> dims;         // degrees where H^k is determined
    std::map<int, int> basis_sizes;        // every enumerated degree
    std::map<int, int> relation_ranks;     // quotient families only
    bool complete = true;                  // false when a vertex cap truncates the family

    long long dim(int k) const {
        auto it = dims.find(k);
        return it == dims.end() ? 0 : it->second;
    }
    bool all_zero() const;
};

// Delta matrix over Q, memoized through the workspace cache when present.
SparseMatrix cached_delta_matrix(Workspace& ws, const ComplexId& c, int g, int k);

CohomologyTable cohomology_dims(Workspace& ws, const ComplexId& c, int g, const Field& f = Field::Fp(32003));
// Cohomology of the quotient by quotient_relations(); equals cohomology_dims
// for families without relations.
CohomologyTable quotient_cohomology_dims(Workspace& ws, const ComplexId& c, int g, const Field& f = Field::Fp(32003));

// sum (-1)^k dim H^k == sum (-1)^k (basis_k - relation rank_k); only
// meaningful for complete tables.
bool euler_consistent(const CohomologyTable& t);

std::string to_json(const CohomologyTable& t);
CohomologyTable table_from_json(const std::string& text);

}  // namespace gcx
