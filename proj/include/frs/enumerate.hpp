#pragma once

#include <span>
#include <utility>
#include <vector>

#include "frs/fingerprint.hpp"
#include "frs/structure.hpp"

namespace frs {

// Injective maps preserving and reflecting every relation and commuting with
// every function, in lexicographic order of the map sequence. Backtracking
// with partial-assignment pruning. Throws SignatureError on mismatch.
std::vector<Embedding> enumerate_embeddings(const FiniteStructure& a, const FiniteStructure& c);

// Embeddings whose map agrees with the pinned (source, target) pairs.
std::vector<Embedding> enumerate_embeddings_extending(
    const FiniteStructure& a, const FiniteStructure& c,
    std::span<const std::pair<int, int>> pinned);

bool is_embedding(const FiniteStructure& a, const FiniteStructure& c, std::span<const int> map);

// Image sets of embeddings, deduplicated, ordered by sorted image set.
std::vector<std::vector<int>> enumerate_copies(const FiniteStructure& a, const FiniteStructure& c);

struct AutomorphismGroup {
    std::vector<std::vector<int>> generators;
    long long order = 0;
    bool is_rigid = true;
};

AutomorphismGroup automorphism_group(const FiniteStructure& a);

// A minimal fingerprint over all enumerations of the universe; equal codes
// characterize isomorphism. Cost grows factorially with size.
QfFingerprint canonical_fingerprint(const FiniteStructure& a,
                                    const Limits& limits = Limits::defaults());

// One representative per isomorphism class of substructures of `m` generated
// by at most k elements, in order of first discovery (generator combinations
// scanned in lexicographic order, sizes ascending).
std::vector<FiniteStructure> age_enumerate(const FiniteStructure& m, int k,
                                           const Limits& limits = Limits::defaults());

} // namespace frs
