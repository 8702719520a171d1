#pragma once

#include <cstdint>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "classify.hpp"
#include "invariants.hpp"
#include "sampling.hpp"

namespace deckgroup {

struct SuiteConfig {
    std::vector<int> degrees{2, 3};
    int count = 100;
    std::uint64_t seed = 1;
    bool coalescing = false;
    int k_max = 4;
    Tolerance tol{};
};

struct SuiteOutcome {
    int index = 0;
    int degree = 2;
    bool passed = false;
    std::string detail;  // violation or invariant-failure text when failed
    ClassificationReport report;
};

struct SuiteResult {
    int passed = 0;
    int failed = 0;
    std::vector<SuiteOutcome> outcomes;  // in sample order

    bool all_passed() const { return failed == 0; }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline SuiteOutcome run_one(const SuiteConfig& config, int index) {
    SuiteOutcome outcome;
    outcome.index = index;
    outcome.degree = config.degrees[index % config.degrees.size()];
    try {
        Tolerance tol = config.tol;
        tol.rng_seed = splitmix64(config.seed + static_cast<std::uint64_t>(index));
        Rng rng(tol.rng_seed);
        BicriticalMap f = config.coalescing ? random_coalescing(rng, outcome.degree)
                                            : random_bicritical(rng, outcome.degree, tol);
        DeckChain chain = compute_deck_chain(f, config.k_max, tol);
        outcome.report = classify_chain(f, chain, tol);
        if (!outcome.report.consistent()) {
            outcome.detail = *outcome.report.violation;
            return outcome;
        }
        if (auto failure = check_chain_invariants(f, chain, tol)) {
            outcome.detail = *failure;
            return outcome;
        }
        if (!check_dihedral_coalescing(f, outcome.report, tol)) {
            outcome.detail = "dihedral deck group on a non-coalescing map";
            return outcome;
        }
        outcome.passed = true;
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << "exception: " << e.what();
        outcome.detail = os.str();
    }
    return outcome;
}

} // namespace detail

// Sample maps, classify each, run the structural invariants.  Work fans out
// across threads; results are merged in sample order so output is
// deterministic for a fixed seed.
inline SuiteResult run_random_suite(const SuiteConfig& config) {
    if (config.count < 1) throw std::invalid_argument("suite: count must be >= 1");
    if (config.degrees.empty()) throw std::invalid_argument("suite: degree list is empty");

    SuiteResult result;
    result.outcomes.resize(config.count);

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> tasks;
    for (unsigned w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w] {
            for (int i = static_cast<int>(w); i < config.count; i += static_cast<int>(workers))
                result.outcomes[i] = detail::run_one(config, i);
        }));
    }
    for (auto& t : tasks) t.get();

    for (const SuiteOutcome& o : result.outcomes)
        (o.passed ? result.passed : result.failed) += 1;
    return result;
}

} // namespace deckgroup
