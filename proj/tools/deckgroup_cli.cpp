// Command-line front end: classify deck groups of iterates of bicritical
// rational maps, dump a single deck group, cross-check the engine against
// the brute-force fiber oracle, or run the randomized property suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deckgroup/deckgroup.hpp"
#include "deckgroup/parse.hpp"
#include "deckgroup/serialize.hpp"

namespace {

using namespace deckgroup;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitViolation = 2;

struct MapOptions {
    std::string normal_form;
    int degree = 0;
    std::string pre_json;
    std::string post_json;
    std::string map_json;
    std::string map_file;
};

struct CommonOptions {
    int k_max = 4;
    int k = 0;  // deck/verify level; 0 means "use k_max"
    double eps = 0.0;
    std::uint64_t seed = 20240817;
    std::string format = "json";
};

Tolerance make_tolerance(const CommonOptions& opts) {
    Tolerance tol;
    if (const char* env = std::getenv("DECK_EPS")) tol.eps = std::stod(env);
    if (opts.eps > 0.0) tol.eps = opts.eps;
    tol.rng_seed = opts.seed;
    return tol;
}

BicriticalMap build_map(const MapOptions& opts) {
    if (!opts.map_file.empty()) {
        std::ifstream in(opts.map_file);
        if (!in) throw std::invalid_argument("cannot open map file: " + opts.map_file);
        return bicritical_from_json(json::parse(in));
    }
    if (!opts.map_json.empty()) return bicritical_from_json(json::parse(opts.map_json));
    if (!opts.normal_form.empty()) {
        if (opts.degree < 2) throw std::invalid_argument("--normal-form requires --degree >= 2");
        std::vector<cplx> coeffs = parse_complex_list(opts.normal_form);
        if (coeffs.size() != 4)
            throw std::invalid_argument("--normal-form expects four comma-separated entries");
        return from_normal_form(coeffs[0], coeffs[1], coeffs[2], coeffs[3], opts.degree);
    }
    if (!opts.post_json.empty()) {
        if (opts.degree < 2) throw std::invalid_argument("--post requires --degree >= 2");
        MoebiusMap pre = opts.pre_json.empty() ? MoebiusMap::identity()
                                               : json::parse(opts.pre_json).get<MoebiusMap>();
        MoebiusMap post = json::parse(opts.post_json).get<MoebiusMap>();
        return BicriticalMap(pre, opts.degree, post);
    }
    throw std::invalid_argument("no map given: use --normal-form, --post, --map or --map-file");
}

void add_map_options(CLI::App* cmd, MapOptions& opts) {
    cmd->add_option("--normal-form", opts.normal_form,
                    "coefficients alpha,beta,gamma,delta of (az^d+b)/(cz^d+d)");
    cmd->add_option("--degree", opts.degree, "degree d >= 2");
    cmd->add_option("--pre", opts.pre_json, "pre Moebius map as JSON");
    cmd->add_option("--post", opts.post_json, "post Moebius map as JSON");
    cmd->add_option("--map", opts.map_json, "full map as inline JSON");
    cmd->add_option("--map-file", opts.map_file, "full map as a JSON file");
}

void add_common_options(CLI::App* cmd, CommonOptions& opts, bool with_k) {
    cmd->add_option("--k-max", opts.k_max, "largest iterate level")->check(CLI::PositiveNumber);
    if (with_k) cmd->add_option("--k", opts.k, "iterate level")->check(CLI::PositiveNumber);
    cmd->add_option("--eps", opts.eps, "comparison tolerance");
    cmd->add_option("--seed", opts.seed, "rng seed");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
}

void print_report(const ClassificationReport& report, const std::string& format) {
    if (format == "json") {
        std::cout << json(report).dump(2) << "\n";
        return;
    }
    std::cout << "degree " << report.degree << (report.power_map ? "  power map" : "")
              << (report.critically_coalescing ? "  critically coalescing" : "") << "\n";
    if (report.degenerate_warning)
        std::cout << "warning: input is numerically close to a power map\n";
    for (const LevelResult& level : report.levels)
        std::cout << "  k=" << level.k << "  order=" << level.order
                  << "  type=" << level.type.str() << "\n";
    std::cout << "verdict: " << (report.consistent() ? "consistent" : *report.violation) << "\n";
}

int run_classify(const MapOptions& map_opts, const CommonOptions& opts) {
    BicriticalMap f = build_map(map_opts);
    ClassificationReport report = classify_map(f, opts.k_max, make_tolerance(opts));
    print_report(report, opts.format);
    return report.consistent() ? kExitOk : kExitViolation;
}

int run_deck(const MapOptions& map_opts, const CommonOptions& opts) {
    BicriticalMap f = build_map(map_opts);
    Tolerance tol = make_tolerance(opts);
    int k = opts.k > 0 ? opts.k : opts.k_max;
    DeckGroup group = deck_group(f, k, tol);
    GroupType type = identify_group(group.elements, tol);
    if (opts.format == "json") {
        std::cout << deck_group_to_json(group, type, tol).dump(2) << "\n";
    } else {
        std::cout << "Deck(f^" << k << "): order " << group.elements.size() << ", type "
                  << type.str() << ", " << group.new_elements_count << " new at this level\n";
    }
    return kExitOk;
}

int run_verify(const MapOptions& map_opts, const CommonOptions& opts) {
    BicriticalMap f = build_map(map_opts);
    Tolerance tol = make_tolerance(opts);
    int k = opts.k > 0 ? opts.k : opts.k_max;
    bool match = oracle_matches_engine(f, k, tol);
    std::cout << (match ? "verify: engine and fiber oracle agree"
                        : "verify: MISMATCH between engine and fiber oracle")
              << " at k=" << k << "\n";
    return match ? kExitOk : kExitViolation;
}

int run_suite(const SuiteConfig& config, const std::string& format) {
    SuiteResult result = run_random_suite(config);
    if (format == "json") {
        json failures = json::array();
        for (const SuiteOutcome& o : result.outcomes)
            if (!o.passed)
                failures.push_back({{"index", o.index}, {"degree", o.degree}, {"detail", o.detail}});
        std::cout << json{{"count", config.count},
                          {"passed", result.passed},
                          {"failed", result.failed},
                          {"failures", failures}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "suite: " << result.passed << "/" << config.count << " passed\n";
        for (const SuiteOutcome& o : result.outcomes)
            if (!o.passed)
                std::cout << "  sample " << o.index << " (d=" << o.degree << "): " << o.detail
                          << "\n";
    }
    return result.all_passed() ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deck groups of iterates of bicritical rational maps"};
    app.require_subcommand(1);

    MapOptions map_opts;
    CommonOptions opts;

    CLI::App* classify = app.add_subcommand("classify", "classify Deck(f^k) for k = 1..k_max");
    add_map_options(classify, map_opts);
    add_common_options(classify, opts, false);

    CLI::App* deck = app.add_subcommand("deck", "print a single deck group with its elements");
    add_map_options(deck, map_opts);
    add_common_options(deck, opts, true);

    CLI::App* verify =
        app.add_subcommand("verify", "cross-check the engine against the fiber oracle");
    add_map_options(verify, map_opts);
    add_common_options(verify, opts, true);

    SuiteConfig suite_config;
    std::vector<int> degrees;
    CLI::App* suite = app.add_subcommand("suite", "run the randomized property suites");
    suite->add_option("--degrees", degrees, "degree list")->delimiter(',');
    suite->add_option("--count", suite_config.count, "number of sampled maps");
    suite->add_option("--seed", suite_config.seed, "rng seed");
    suite->add_option("--k-max", suite_config.k_max, "largest iterate level")
        ->check(CLI::PositiveNumber);
    suite->add_flag("--coalescing", suite_config.coalescing,
                    "sample (z^d - a)/(z^d + a) to exercise the dihedral branches");
    std::string suite_format = "table";
    suite->add_option("--format", suite_format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    double suite_eps = 0.0;
    suite->add_option("--eps", suite_eps, "comparison tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (classify->parsed()) return run_classify(map_opts, opts);
        if (deck->parsed()) return run_deck(map_opts, opts);
        if (verify->parsed()) return run_verify(map_opts, opts);
        if (suite->parsed()) {
            if (suite_config.count < 1) {
                std::cerr << "error: --count must be >= 1\n";
                return kExitInputError;
            }
            if (!degrees.empty()) suite_config.degrees = degrees;
            if (const char* env = std::getenv("DECK_EPS")) suite_config.tol.eps = std::stod(env);
            if (suite_eps > 0.0) suite_config.tol.eps = suite_eps;
            return run_suite(suite_config, suite_format);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitInputError;
}
