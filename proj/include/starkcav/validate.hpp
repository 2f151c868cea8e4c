// validate.hpp — The artifact's acceptance gate as a reusable report:
// unitarity, oracle agreement, closed-form identities, brute-force discord
// agreement, spectral content, trend reproduction and output determinism.
// Exit-code semantics live in the CLI; this just computes and records.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace starkcav::scan {

struct ValidationOptions {
    int bf_states = 100;
    int bf_theta_steps = 361;
    int bf_phi_steps = 721;
    std::uint64_t seed = 20250809;
    std::filesystem::path scratch_dir;  // empty -> system temp

    // Fault-injection hook for tests: shifts the closed-form coherence used
    // in the identity check, which must flip the report to failing.
    double coherence_tamper = 0.0;
};

struct Check {
    std::string id;       // "1".."10", with letter suffixes for sub-checks
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double threshold = 0.0;
    std::string detail;
    double seconds = 0.0;
};

struct ValidationReport {
    std::vector<Check> checks;

    bool all_pass() const;
    std::string text() const;  // one line per check
    std::string json() const;
};

ValidationReport run_validation(const ValidationOptions& opts = {});

}  // namespace starkcav::scan
