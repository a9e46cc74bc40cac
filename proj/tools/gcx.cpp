#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcx/basis.hpp"
#include "gcx/cache.hpp"
#include "gcx/cohomology.hpp"
#include "gcx/complexes.hpp"
#include "gcx/differential.hpp"
#include "gcx/linalg.hpp"
#include "gcx/theorems.hpp"

using namespace gcx;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kCheckFailure = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string command;
    std::string complex;
    std::optional<int> d;
    std::string g = "";
    std::optional<int> degree;
    std::string field = "Fp:32003";
    std::string format = "table";
    std::string cache_dir;
    int threads = 0;
    long long budget = 10'000'000;
    std::optional<int> vertex_cap;
    std::string a, b;
    std::string map;
    std::vector<int> only;
    long long fuzz_cases = 10'000;
};

ComplexId complex_of(const std::string& text, const std::optional<int>& d) {
    if (text.empty()) throw UsageError("--complex is required");
    ComplexId c;
    try {
        c = parse_complex_id(text);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (d && text.find(':') == std::string::npos) c.d = *d;
    try {
        check_id(c);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    return c;
}

// "3", "1-3" or "1..3"
std::vector<int> g_range(const std::string& s) {
    if (s.empty()) throw UsageError("--g is required");
    try {
        auto dash = s.find('-');
        auto dots = s.find("..");
        if (dots != std::string::npos || (dash != std::string::npos && dash > 0)) {
            const auto cut = dots != std::string::npos ? dots : dash;
            const int lo = std::stoi(s.substr(0, cut)), hi = std::stoi(s.substr(cut + (dots != std::string::npos ? 2 : 1)));
            if (lo < 1 || hi < lo) throw UsageError("bad loop-order range " + s);
            std::vector<int> out;
            for (int g = lo; g <= hi; ++g) out.push_back(g);
            return out;
        }
        const int g = std::stoi(s);
        if (g < 1) throw UsageError("loop order must be >= 1");
        return {g};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("bad --g value " + s);
    }
}

std::shared_ptr<CacheStore> cache_of(const Config& cfg) {
    if (!cfg.cache_dir.empty()) return std::make_shared<CacheStore>(cfg.cache_dir);
    if (auto env = CacheStore::root_from_env()) return std::make_shared<CacheStore>(*env);
    return nullptr;
}

int threads_of(const Config& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

Workspace workspace_of(const Config& cfg) {
    Settings s;
    s.budget = cfg.budget;
    s.threads = threads_of(cfg);
    s.vertex_cap = cfg.vertex_cap;
    s.cache = cache_of(cfg);
    return Workspace(s);
}

std::vector<int> degrees_of(Workspace& ws, const ComplexId& c, int g, const std::optional<int>& k) {
    if (k) return {*k};
    return ws.degrees(c, g);
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

int cmd_basis(const Config& cfg) {
    const ComplexId c = complex_of(cfg.complex, cfg.d);
    Workspace ws = workspace_of(cfg);
    json out = json::array();
    if (cfg.format == "csv") std::cout << "complex,d,g,degree,index,encoding\n";
    for (int g : g_range(cfg.g))
        for (int k : degrees_of(ws, c, g, cfg.degree)) {
            auto b = ws.basis(c, g, k);
            if (cfg.format == "json") {
                out.push_back({{"complex", family_tag(c.family)}, {"d", c.d}, {"g", g}, {"degree", k},
                               {"size", b->size()}, {"basis", b->encodings}});
            } else if (cfg.format == "csv") {
                for (int i = 0; i < b->size(); ++i)
                    std::cout << family_tag(c.family) << "," << c.d << "," << g << "," << k << "," << i << ","
                              << csv_quote(b->encodings[i]) << "\n";
            } else {
                std::cout << to_string(c) << " g=" << g << " k=" << k << " size=" << b->size() << "\n";
                for (int i = 0; i < b->size(); ++i) std::cout << "  " << i << "  " << b->encodings[i] << "\n";
            }
        }
    if (cfg.format == "json") std::cout << out.dump(2) << "\n";
    return kPass;
}

int cmd_delta(const Config& cfg) {
    const ComplexId c = complex_of(cfg.complex, cfg.d);
    Workspace ws = workspace_of(cfg);
    const Field f = parse_field(cfg.field);
    json out = json::array();
    if (cfg.format == "csv") std::cout << "g,degree,row,col,value\n";
    for (int g : g_range(cfg.g))
        for (int k : degrees_of(ws, c, g, cfg.degree)) {
            SparseMatrix m = cached_delta_matrix(ws, c, g, k);
            if (!(f == Field::Q())) m = m.to_field(f);
            if (cfg.format == "json") {
                json entries = json::array();
                for (const Triplet& t : m.entries()) entries.push_back({t.row, t.col, t.value.get_str()});
                out.push_back({{"complex", family_tag(c.family)}, {"d", c.d}, {"g", g}, {"degree", k},
                               {"field", f.tag()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}});
            } else if (cfg.format == "csv") {
                for (const Triplet& t : m.entries())
                    std::cout << g << "," << k << "," << t.row << "," << t.col << "," << t.value.get_str() << "\n";
            } else {
                std::cout << to_string(c) << " g=" << g << " delta_" << k << " (" << m.rows() << " x " << m.cols()
                          << ", " << m.nnz() << " nonzeros, " << f.tag() << ")\n";
                for (const Triplet& t : m.entries())
                    std::cout << "  " << t.row << " " << t.col << " " << t.value.get_str() << "\n";
            }
        }
    if (cfg.format == "json") std::cout << out.dump(2) << "\n";
    return kPass;
}

void print_tables(const std::vector<CohomologyTable>& ts, const std::string& format) {
    if (format == "json") {
        json out = json::array();
        for (const auto& t : ts) out.push_back(json::parse(to_json(t)));
        std::cout << (ts.size() == 1 ? out[0].dump() : out.dump(2)) << "\n";
        return;
    }
    if (format == "csv") std::cout << "complex,d,g,field,degree,basis_size,dim\n";
    for (const auto& t : ts) {
        if (format == "table")
            std::cout << to_string(t.complex) << " g=" << t.g << " over " << t.field.tag()
                      << (t.complete ? "" : " (vertex cap: only determined degrees shown)") << "\n"
                      << "  degree  basis  dim\n";
        for (const auto& [k, n] : t.basis_sizes) {
            auto it = t.dims.find(k);
            const std::string dim = it == t.dims.end() ? "?" : std::to_string(it->second);
            if (format == "csv")
                std::cout << family_tag(t.complex.family) << "," << t.complex.d << "," << t.g << "," << t.field.tag()
                          << "," << k << "," << n << "," << (it == t.dims.end() ? "" : dim) << "\n";
            else
                std::cout << "  " << std::setw(6) << k << "  " << std::setw(5) << n << "  " << dim << "\n";
        }
    }
}

int cmd_cohomology(const Config& cfg) {
    const ComplexId c = complex_of(cfg.complex, cfg.d);
    Workspace ws = workspace_of(cfg);
    const Field f = parse_field(cfg.field);
    std::vector<CohomologyTable> ts;
    for (int g : g_range(cfg.g)) {
        auto t = quotient_cohomology_dims(ws, c, g, f);
        if (cfg.degree) {
            for (auto* m : {&t.dims}) std::erase_if(*m, [&](const auto& kv) { return kv.first != *cfg.degree; });
            std::erase_if(t.basis_sizes, [&](const auto& kv) { return kv.first != *cfg.degree; });
        }
        ts.push_back(std::move(t));
    }
    print_tables(ts, cfg.format);
    return kPass;
}

int cmd_verify_d2(const Config& cfg) {
    const ComplexId c = complex_of(cfg.complex, cfg.d);
    Workspace ws = workspace_of(cfg);
    bool ok = true;
    json out = json::array();
    if (cfg.format == "csv") std::cout << "complex,d,g,degrees_checked,failing,pass\n";
    for (int g : g_range(cfg.g)) {
        const D2Report r = verify_d2(ws, c, g);
        ok &= r.ok();
        if (cfg.format == "json") {
            out.push_back({{"complex", family_tag(c.family)}, {"d", c.d}, {"g", g},
                           {"degrees_checked", r.degrees_checked}, {"failing", r.failing}, {"pass", r.ok()}});
        } else if (cfg.format == "csv") {
            std::cout << family_tag(c.family) << "," << c.d << "," << g << "," << r.degrees_checked.size() << ","
                      << r.failing.size() << "," << (r.ok() ? "true" : "false") << "\n";
        } else {
            std::cout << (r.ok() ? "pass" : "FAIL") << "  d^2 = 0 for " << to_string(c) << " g=" << g << " ("
                      << r.degrees_checked.size() << " degree pairs)";
            for (int k : r.failing) std::cout << " fails at k=" << k;
            std::cout << "\n";
        }
    }
    if (cfg.format == "json") std::cout << out.dump(2) << "\n";
    return ok ? kPass : kCheckFailure;
}

int cmd_verify_map(const Config& cfg) {
    if (cfg.map.empty()) throw UsageError("verify-map needs a map id (f, s, z, j, iota, F_t, F_or, mu, inclusion, projection)");
    MapId m;
    try {
        const MapTag tag = parse_map_tag(cfg.map);
        if (!cfg.a.empty() || !cfg.b.empty()) {
            if (cfg.a.empty() || cfg.b.empty()) throw UsageError("--a and --b must be given together");
            m = make_map(tag, complex_of(cfg.a, cfg.d), complex_of(cfg.b, cfg.d));
        } else {
            if (!cfg.d) throw UsageError("--d is required");
            m = make_map(tag, *cfg.d);
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    Workspace ws = workspace_of(cfg);
    bool ok = true;
    json out = json::array();
    if (cfg.format == "csv") std::cout << "map,source,target,g,columns_checked,violations,pass\n";
    for (int g : g_range(cfg.g)) {
        const ChainMapReport r = verify_chain_map(ws, m, g);
        ok &= r.ok();
        if (cfg.format == "json") {
            json v = json::array();
            for (const auto& x : r.violations) v.push_back({{"degree", x.degree}, {"column", x.column}});
            out.push_back({{"map", map_tag_name(m.tag)}, {"source", to_string(m.source)}, {"target", to_string(m.target)},
                           {"g", g}, {"degrees_checked", r.degrees_checked}, {"columns_checked", r.columns_checked},
                           {"violations", v}, {"pass", r.ok()}});
        } else if (cfg.format == "csv") {
            std::cout << map_tag_name(m.tag) << "," << to_string(m.source) << "," << to_string(m.target) << "," << g
                      << "," << r.columns_checked << "," << r.violations.size() << "," << (r.ok() ? "true" : "false")
                      << "\n";
        } else {
            std::cout << (r.ok() ? "pass" : "FAIL") << "  " << map_tag_name(m.tag) << ": " << to_string(m.source)
                      << " -> " << to_string(m.target) << " g=" << g << " (" << r.columns_checked << " columns)\n";
            for (const auto& x : r.violations) std::cout << "  k=" << x.degree << " " << x.column << "\n";
        }
    }
    if (cfg.format == "json") std::cout << out.dump(2) << "\n";
    return ok ? kPass : kCheckFailure;
}

int cmd_compare(const Config& cfg) {
    if (cfg.a.empty() || cfg.b.empty()) throw UsageError("compare needs --a and --b");
    const ComplexId a = complex_of(cfg.a, cfg.d), b = complex_of(cfg.b, cfg.d);
    Workspace ws = workspace_of(cfg);
    const Field f = parse_field(cfg.field);
    bool all_equal = true;
    json out = json::array();
    if (cfg.format == "csv") std::cout << "g,degree,a,b,verdict\n";
    for (int g : g_range(cfg.g)) {
        const auto ta = quotient_cohomology_dims(ws, a, g, f);
        const auto tb = quotient_cohomology_dims(ws, b, g, f);
        const TableComparison cmp = compare_tables(ta, tb);
        all_equal &= cmp.equal();
        const std::string verdict = cmp.equal() ? "equal" : "differs";
        if (cfg.format == "json") {
            json rows = json::array();
            for (const auto& r : cmp.rows)
                rows.push_back({{"degree", r.k}, {"a", r.a}, {"b", r.b}, {"verdict", r.equal() ? "equal" : "differs"}});
            out.push_back({{"a", to_string(a)}, {"b", to_string(b)}, {"g", g}, {"field", f.tag()}, {"degrees", rows},
                           {"undetermined", cmp.missing}, {"verdict", verdict}});
        } else if (cfg.format == "csv") {
            for (const auto& r : cmp.rows)
                std::cout << g << "," << r.k << "," << r.a << "," << r.b << "," << (r.equal() ? "equal" : "differs")
                          << "\n";
        } else {
            std::cout << to_string(a) << " vs " << to_string(b) << " g=" << g << " over " << f.tag() << "\n"
                      << "  degree      a      b\n";
            for (const auto& r : cmp.rows)
                std::cout << "  " << std::setw(6) << r.k << " " << std::setw(6) << r.a << " " << std::setw(6) << r.b
                          << "  " << (r.equal() ? "equal" : "differs") << "\n";
            for (const auto& m : cmp.missing) std::cout << "  undetermined on the other side: " << m << "\n";
            std::cout << "  verdict: " << verdict << "\n";
        }
    }
    if (cfg.format == "json") std::cout << out.dump(2) << "\n";
    return all_equal ? kPass : kCheckFailure;
}

int cmd_theorems(const Config& cfg) {
    TheoremOptions opt;
    opt.threads = threads_of(cfg);
    opt.budget = cfg.budget;
    opt.cache = cache_of(cfg);
    opt.fuzz_cases = cfg.fuzz_cases;
    for (int i : cfg.only) {
        if (i < 1 || i > kNumCriteria) throw UsageError("no criterion " + std::to_string(i));
        opt.only.insert(i);
    }
    if (cfg.format == "table") opt.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::flush; };
    const auto results = run_theorems(opt);
    if (cfg.format == "json") {
        json out = json::array();
        for (const auto& r : results)
            out.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"optional", r.optional},
                           {"seconds", r.seconds}, {"details", r.details}});
        std::cout << out.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "id,pass,optional,seconds,title\n";
        for (const auto& r : results)
            std::cout << r.id << "," << (r.pass ? "true" : "false") << "," << (r.optional ? "true" : "false") << ","
                      << r.seconds << "," << csv_quote(r.title) << "\n";
    } else {
        int failed = 0;
        for (const auto& r : results) failed += !r.pass && !r.optional;
        std::cout << (failed ? std::to_string(failed) + " required criteria failed" : "all required criteria pass")
                  << "\n";
    }
    return required_pass(results) ? kPass : kCheckFailure;
}

void report_error(const std::string& kind, const std::string& msg) {
    std::cerr << json{{"error", kind}, {"message", msg}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph complex computations: bases, differentials, cohomology and checks"};
    app.require_subcommand(1);
    Config cfg;

    auto common = [&](CLI::App* sub, bool needs_complex) {
        if (needs_complex) {
            sub->add_option("--complex", cfg.complex, "family tag, optionally with :d=<n>")->required();
            sub->add_option("--g", cfg.g, "loop order, or a range like 1-3")->required();
        }
        sub->add_option("--d", cfg.d, "family parameter");
        sub->add_option("--field", cfg.field, "Q, Fp:<p> or a prime")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"table", "json", "csv"}))
            ->capture_default_str();
        sub->add_option("--cache-dir", cfg.cache_dir, "cache root (default: $GCX_CACHE_DIR)");
        sub->add_option("--threads", cfg.threads, "worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
        sub->add_option("--budget", cfg.budget, "decorated candidates per (g, degree)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--vertex-cap", cfg.vertex_cap, "vertex cap for families with bivalent vertices")
            ->check(CLI::PositiveNumber);
    };

    auto* basis = app.add_subcommand("basis", "list the basis at (g, degree)");
    common(basis, true);
    basis->add_option("--degree", cfg.degree);
    auto* delta = app.add_subcommand("delta", "print the differential matrix delta_k");
    common(delta, true);
    delta->add_option("--degree", cfg.degree);
    auto* coh = app.add_subcommand("cohomology", "cohomology dimensions");
    common(coh, true);
    coh->add_option("--degree", cfg.degree);
    auto* d2 = app.add_subcommand("verify-d2", "check delta^2 = 0 in every degree");
    common(d2, true);
    auto* vm = app.add_subcommand("verify-map", "check that a map commutes with the differentials");
    common(vm, false);
    vm->add_option("map", cfg.map, "f, s, z, j, iota, F_t, F_or, mu, inclusion, projection")->required();
    vm->add_option("--g", cfg.g, "loop order, or a range like 1-3")->required();
    vm->add_option("--a", cfg.a, "explicit source complex");
    vm->add_option("--b", cfg.b, "explicit target complex");
    auto* cmp = app.add_subcommand("compare", "compare cohomology of two complexes degree by degree");
    common(cmp, false);
    cmp->add_option("--a", cfg.a)->required();
    cmp->add_option("--b", cfg.b)->required();
    cmp->add_option("--g", cfg.g, "loop order, or a range like 1-3")->required();
    auto* thm = app.add_subcommand("theorems", "run the acceptance battery");
    common(thm, false);
    thm->add_option("--only", cfg.only, "criterion numbers to run");
    thm->add_option("--fuzz-cases", cfg.fuzz_cases)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        (void)parse_field(cfg.field);
    } catch (const std::exception& e) {
        report_error("usage", e.what());
        return kUsage;
    }
    try {
        if (cfg.command == "basis") return cmd_basis(cfg);
        if (cfg.command == "delta") return cmd_delta(cfg);
        if (cfg.command == "cohomology") return cmd_cohomology(cfg);
        if (cfg.command == "verify-d2") return cmd_verify_d2(cfg);
        if (cfg.command == "verify-map") return cmd_verify_map(cfg);
        if (cfg.command == "compare") return cmd_compare(cfg);
        if (cfg.command == "theorems") return cmd_theorems(cfg);
    } catch (const UsageError& e) {
        report_error("usage", e.what());
        return kUsage;
    } catch (const ResourceError& e) {
        report_error("budget", e.what());
        return kResource;
    } catch (const CacheError& e) {
        report_error("cache", e.what());
        return kResource;
    } catch (const std::filesystem::filesystem_error& e) {
        report_error("io", e.what());
        return kResource;
    } catch (const std::bad_alloc&) {
        report_error("memory", "out of memory");
        return kResource;
    } catch (const FieldError& e) {
        report_error("field", e.what());
        return kCheckFailure;
    }
    report_error("usage", "unknown command " + cfg.command);
    return kUsage;
}
