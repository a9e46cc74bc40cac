#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "gcx/cache.hpp"
#include "gcx/theorems.hpp"

// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status 0 iff all required criteria pass.
int main(int argc, char** argv) {
    CLI::App app{"acceptance battery"};
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<int> only;
    app.add_option("--threads", threads)->check(CLI::PositiveNumber);
    app.add_option("--only", only);
    CLI11_PARSE(app, argc, argv);

    gcx::TheoremOptions opt;
    opt.threads = threads;
    opt.only.insert(only.begin(), only.end());
    if (auto root = gcx::CacheStore::root_from_env()) opt.cache = std::make_shared<gcx::CacheStore>(*root);
    opt.on_result = [](const gcx::CriterionResult& r) { std::cout << gcx::format_result(r) << std::flush; };
    const auto results = gcx::run_theorems(opt);
    int failed = 0;
    for (const auto& r : results) failed += !r.pass && !r.optional;
    std::cout << (failed ? std::to_string(failed) + " required criteria failed" : "all required criteria pass") << "\n";
    return failed ? 1 : 0;
}
