#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "gcx/complexes.hpp"

namespace gcx {

inline constexpr int kCodeVersion = 1;

enum class CacheKind { basis, matrix, table };

std::string kind_dir(CacheKind k);

struct CacheKey {
    CacheKind kind = CacheKind::basis;
    ComplexId complex;
    int g = 0;
    std::optional<int> degree;
    std::string field;  // empty, "Q" or "Fp:<p>"
    std::string extra;  // free-form discriminator, e.g. a map id or vertex cap

    // Filesystem-safe and injective in the fields above.
    std::string str() const;
};

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t checksum64(const std::string& data);

class CacheStore {
public:
    explicit CacheStore(std::filesystem::path root, int version = kCodeVersion);

    // Root from the GCX_CACHE_DIR environment variable, if set.
    static std::optional<std::filesystem::path> root_from_env();

    void store(const CacheKey& key, const std::string& payload) const;
    // Absent when missing or written by another version; throws CacheError on
    // a checksum mismatch.
    std::optional<std::string> load(const CacheKey& key) const;

    std::filesystem::path path_of(const CacheKey& key) const;
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
    int version_;
};

}  // namespace gcx
