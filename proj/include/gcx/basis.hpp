#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "gcx/complexes.hpp"

namespace gcx {

class CacheStore;

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Basis {
    ComplexId id;
    int g = 0;
    int k = 0;
    std::vector<std::string> encodings;  // sorted
    std::vector<LabeledGraph> graphs;    // canonical representatives, same order
    std::unordered_map<std::string, int> index;

    int size() const { return static_cast<int>(encodings.size()); }
    int find(const std::string& enc) const;
};

struct Settings {
    long long budget = 10'000'000;  // decorated candidates per (g, k)
    int threads = 1;
    std::optional<int> vertex_cap;  // for families with bivalent vertices
    std::shared_ptr<CacheStore> cache;
};

// Undirected skeleton: all vertices black, all edges dotted; loops excluded.
struct SkeletonKey {
    int vertices, edges, min_valence, max_valence;
    auto operator<=>(const SkeletonKey&) const = default;
};

// Holds settings and memoized bases/skeletons. Safe to share across threads.
class Workspace {
public:
    explicit Workspace(Settings s = {});

    const Settings& settings() const { return settings_; }
    int vertex_cap(const ComplexId& c, int g) const;

    std::shared_ptr<const Basis> basis(const ComplexId& c, int g, int k);
    std::shared_ptr<const std::vector<LabeledGraph>> skeletons(const SkeletonKey& key);

    // Degrees whose bases are complete at loop order g (all degrees for
    // finite families; for bivalent families those with #V <= cap).
    std::vector<int> degrees(const ComplexId& c, int g);
    // Degrees where H^k is determined: the neighbours k-1, k+1 are complete too.
    std::vector<int> exact_degrees(const ComplexId& c, int g);

private:
    Settings settings_;
    std::mutex mu_;
    std::map<SkeletonKey, std::shared_ptr<const std::vector<LabeledGraph>>> skeletons_;
    std::map<std::tuple<ComplexId, int, int>, std::shared_ptr<const Basis>> bases_;
};

Basis generate_basis(Workspace& ws, const ComplexId& c, int g, int k);
Basis generate_basis(const ComplexId& c, int g, int k);

// Connected loopless multigraphs with the given counts and valence bounds,
// one per isomorphism class.
std::vector<LabeledGraph> enumerate_skeletons(const SkeletonKey& key);

std::string serialize_basis(const Basis& b);
Basis parse_basis(const std::string& text);

}  // namespace gcx
