#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>
#include <unistd.h>

#include "gcx/cache.hpp"
#include "gcx/cohomology.hpp"

using namespace gcx;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gcx_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("store then load is byte identical") {
    const fs::path root = fresh_dir("roundtrip");
    CacheStore store(root);
    const CacheKey key{CacheKind::basis, {Family::GC, 2}, 3, 0, "", ""};
    std::string payload = "line one\nline two\n";
    payload += std::string(1, '\0') + "binary\xff";
    store.store(key, payload);
    CHECK(store.load(key) == payload);
    CHECK(fs::exists(root / "basis" / (key.str() + ".dat")));
    CHECK(store.path_of(key).parent_path().filename() == "basis");
    CHECK_FALSE(store.load(CacheKey{CacheKind::basis, {Family::GC, 2}, 3, 1, "", ""}).has_value());
    fs::remove_all(root);
}

TEST_CASE("a different version stamp reads as absent") {
    const fs::path root = fresh_dir("version");
    const CacheKey key{CacheKind::table, {Family::dGC, 3}, 2, std::nullopt, "Q", ""};
    CacheStore(root, 1).store(key, "payload");
    CHECK(CacheStore(root, 1).load(key) == std::string("payload"));
    CHECK_FALSE(CacheStore(root, 2).load(key).has_value());
    fs::remove_all(root);
}

TEST_CASE("corruption is reported, never used") {
    const fs::path root = fresh_dir("corrupt");
    CacheStore store(root);
    const CacheKey key{CacheKind::matrix, {Family::GC, 3}, 3, -3, "Q", "delta"};
    store.store(key, "0123456789");
    {
        std::fstream f(store.path_of(key), std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-3, std::ios::end);
        f.put('X');
    }
    CHECK_THROWS_AS(store.load(key), CacheError);
    {
        std::ofstream f(store.path_of(key), std::ios::binary | std::ios::trunc);
        f << "not a header\n";
    }
    CHECK_THROWS_AS(store.load(key), CacheError);
    fs::remove_all(root);
}

TEST_CASE("concurrent writers of one key leave a complete file") {
    const fs::path root = fresh_dir("concurrent");
    CacheStore store(root);
    const CacheKey key{CacheKind::basis, {Family::dGC, 2}, 3, 1, "", ""};
    std::vector<std::string> payloads;
    for (int t = 0; t < 8; ++t) payloads.push_back(std::string(200000 + t, static_cast<char>('a' + t)));
    for (int round = 0; round < 5; ++round) {
        std::vector<std::thread> ws;
        for (int t = 0; t < 8; ++t)
            ws.emplace_back([&, t] {
                for (int i = 0; i < 4; ++i) store.store(key, payloads[t]);
            });
        for (auto& th : ws) th.join();
        const auto got = store.load(key);
        REQUIRE(got.has_value());
        CHECK(std::find(payloads.begin(), payloads.end(), *got) != payloads.end());
    }
    int leftovers = 0;
    for (const auto& e : fs::directory_iterator(root / "basis")) leftovers += e.path().extension() != ".dat";
    CHECK(leftovers == 0);
    fs::remove_all(root);
}

TEST_CASE("keys are injective and filesystem safe") {
    std::set<std::string> seen;
    int n = 0;
    for (Family f : all_families())
        for (int d : {2, 3})
            for (int g : {1, 2})
                for (std::optional<int> k : {std::optional<int>{}, std::optional<int>{-1}, std::optional<int>{1}})
                    for (const char* field : {"", "Q", "Fp:32003"})
                        for (const char* extra : {"", "delta", "x/y z"}) {
                            const std::string s = CacheKey{CacheKind::matrix, {f, d}, g, k, field, extra}.str();
                            ++n;
                            seen.insert(s);
                            for (char c : s) CHECK((std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
                                                    c == '-' || c == '_' || c == '~'));
                        }
    CHECK(static_cast<int>(seen.size()) == n);
}

TEST_CASE("the cache is pure memoization") {
    const fs::path root = fresh_dir("purity");
    const ComplexId c{Family::dGC, 3};
    Workspace plain;
    const auto expect = quotient_cohomology_dims(plain, c, 3, Field::Q());
    for (int pass = 0; pass < 2; ++pass) {
        Settings s;
        s.cache = std::make_shared<CacheStore>(root);
        Workspace ws(s);
        const auto t = quotient_cohomology_dims(ws, c, 3, Field::Q());
        CHECK(t.dims == expect.dims);
        CHECK(t.basis_sizes == expect.basis_sizes);
        for (int k : ws.degrees(c, 3)) CHECK(ws.basis(c, 3, k)->encodings == plain.basis(c, 3, k)->encodings);
    }
    CHECK(fs::exists(root / "matrix"));
    fs::remove_all(root);
}

TEST_CASE("cache root from the environment") {
    ::setenv("GCX_CACHE_DIR", "/tmp/somewhere", 1);
    CHECK(CacheStore::root_from_env() == fs::path("/tmp/somewhere"));
    ::unsetenv("GCX_CACHE_DIR");
    CHECK_FALSE(CacheStore::root_from_env().has_value());
}
