#pragma once

#include <optional>
#include <vector>

#include "frs/structure.hpp"

namespace frs {

// A family of same-width host tuples indexed by the elements of a finite
// index structure.
struct IndexedFamily {
    FiniteStructure index;
    FiniteStructure host;
    int width = 1;
    std::vector<std::vector<int>> tuples; // tuples[i] = width-tuple for index element i

    void validate() const;
    // Concatenation of the tuples along an index tuple.
    std::vector<int> spread(std::span<const int> index_tuple) const;
};

struct IndiscernibleReport {
    bool pass = false;
    std::optional<std::pair<std::vector<int>, std::vector<int>>> counterexample;
    long long tuples_checked = 0;
};

// Quantifier-free indiscernibility: equal index fingerprints must give equal
// host fingerprints of the spread tuples, for index tuples up to n_max.
IndiscernibleReport qf_indiscernible_check(const IndexedFamily& fam, int n_max,
                                           const Limits& limits = Limits::defaults());

struct LocallyBasedReport {
    bool pass = false;
    std::optional<std::vector<int>> counterexample; // index tuple of Y with no X match
    long long tuples_checked = 0;
};

// Atomic local basedness of Y on X: every index tuple of Y is matched, at
// equal index type, by some index tuple of X with host-type-equal spread.
LocallyBasedReport atomic_locally_based_check(const IndexedFamily& x, const IndexedFamily& y,
                                              int n_max, const Limits& limits = Limits::defaults());

} // namespace frs
