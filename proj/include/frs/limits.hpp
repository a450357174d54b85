#pragma once

namespace frs {

// Budgets guarding the combinatorial operations. All caps are configurable
// per call; the defaults keep everything comfortably at desk scale.
// kHardUniverseCap is a representation ceiling (universe labels are packed
// into bytes in several hot paths) and cannot be raised by configuration.
struct Limits {
    int max_arity = 8;
    int max_universe = 64;           // generic enumeration guard
    int max_tuple_len = 6;           // fingerprint tuple budget
    int arrow_domain_cap = 64;       // pruned bad-coloring search
    int exhaustive_domain_cap = 20;  // exhaustive r^N oracle
    long long step_budget = 50'000'000;  // elementary steps for scans
    int ba_export_max_atoms = 5;     // 2^k universe cap for exports

    static const Limits& defaults() {
        static const Limits instance;
        return instance;
    }
};

inline constexpr int kHardUniverseCap = 255;

} // namespace frs
