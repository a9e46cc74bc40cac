#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "gcx/basis.hpp"
#include "gcx/cohomology.hpp"
#include "gcx/complexes.hpp"
#include "gcx/differential.hpp"
#include "gcx/linalg.hpp"

namespace gcx {

class CacheStore;

struct D2Report {
    ComplexId complex;
    int g = 0;
    std::vector<int> degrees_checked;
    std::vector<int> failing;  // k with delta_{k+1} delta_k != 0
    bool ok() const { return failing.empty(); }
};

// delta_{k+1} * delta_k == 0 exactly over Q for every consecutive pair of
// degrees in the complete window.
D2Report verify_d2(Workspace& ws, const ComplexId& c, int g);

struct DegreeComparison {
    int k = 0;
    long long a = 0;
    long long b = 0;
    bool equal() const { return a == b; }
};

// Compares H^k(a) with H^(k + shift)(b) over the degrees determined in both.
struct TableComparison {
    std::vector<DegreeComparison> rows;
    std::vector<std::string> missing;  // nonzero dims of one side outside the other's window
    bool equal() const;
};
TableComparison compare_tables(const CohomologyTable& a, const CohomologyTable& b, int shift = 0);

// A graph as a column vector in the basis at its degree; throws if some term
// is not in the basis.
SparseMatrix column_of(const Chain& x, const Basis& b);

// Basis of the kernel of m over Q, one column per kernel vector.
SparseMatrix kernel(const SparseMatrix& m);

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    bool optional = false;  // reported but never affects the exit status
    std::vector<std::string> details;
    double seconds = 0;
};

struct TheoremOptions {
    int threads = 1;
    long long budget = 10'000'000;
    std::shared_ptr<CacheStore> cache;
    long long fuzz_cases = 10'000;
    std::uint64_t fuzz_seed = 20240611;
    std::set<int> only;  // empty: all criteria
    std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kNumCriteria = 13;

std::vector<CriterionResult> run_theorems(const TheoremOptions& opt);
bool required_pass(const std::vector<CriterionResult>& results);
// "PASS  C3  ..." followed by indented detail lines.
std::string format_result(const CriterionResult& r);

}  // namespace gcx
