#include "gcx/cache.hpp"

#include <openssl/sha.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace gcx {

namespace fs = std::filesystem;

std::string kind_dir(CacheKind k) {
    switch (k) {
        case CacheKind::basis: return "basis";
        case CacheKind::matrix: return "matrix";
        case CacheKind::table: return "table";
    }
    return "other";
}

namespace {

// Keeps [A-Za-z0-9.-]; everything else becomes _XX (hex), so the mapping is injective.
std::string escape(const std::string& s) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '.' || c == '-') {
            out += static_cast<char>(c);
        } else {
            out += '_';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

}  // namespace

std::string CacheKey::str() const {
    std::string s = escape(family_tag(complex.family)) + "~d" + std::to_string(complex.d) + "~g" + std::to_string(g);
    s += degree ? "~k" + std::to_string(*degree) : std::string("~kall");
    if (!field.empty()) s += "~f" + escape(field);
    if (!extra.empty()) s += "~x" + escape(extra);
    return s;
}

std::uint64_t checksum64(const std::string& data) {
    unsigned char md[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | md[i];
    return v;
}

CacheStore::CacheStore(fs::path root, int version) : root_(std::move(root)), version_(version) {}

std::optional<fs::path> CacheStore::root_from_env() {
    if (const char* p = std::getenv("GCX_CACHE_DIR"); p && *p) return fs::path(p);
    return std::nullopt;
}

fs::path CacheStore::path_of(const CacheKey& key) const { return root_ / kind_dir(key.kind) / (key.str() + ".dat"); }

void CacheStore::store(const CacheKey& key, const std::string& payload) const {
    const fs::path path = path_of(key);
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw CacheError("cannot create " + path.parent_path().string() + ": " + ec.message());

    std::ostringstream header;
    header << "#gcx-cache;version=" << version_ << ";checksum=" << std::hex << checksum64(payload) << std::dec
           << ";length=" << payload.size() << "\n";

    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    const fs::path tmp = path.string() + ".tmp." + std::to_string(rd()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw CacheError("cannot write " + tmp.string());
        out << header.str() << payload;
        out.flush();
        if (!out) throw CacheError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw CacheError("cannot rename into " + path.string() + ": " + ec.message());
    }
}

std::optional<std::string> CacheStore::load(const CacheKey& key) const {
    const fs::path path = path_of(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header)) throw CacheError("empty cache file " + path.string());
    int version = -1;
    std::uint64_t sum = 0;
    std::size_t length = 0;
    if (std::sscanf(header.c_str(), "#gcx-cache;version=%d;checksum=%lx;length=%zu", &version,
                    reinterpret_cast<unsigned long*>(&sum), &length) != 3)
        throw CacheError("malformed cache header in " + path.string());
    if (version != version_) return std::nullopt;
    std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (payload.size() != length || checksum64(payload) != sum)
        throw CacheError("checksum mismatch in " + path.string());
    return payload;
}

}  // namespace gcx
