#pragma once

#include <span>
#include <string>
#include <vector>

#include "frs/structure.hpp"

namespace frs {

struct Embedding {
    std::vector<int> map; // map[i] = image of source element i

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

// Canonical code of the substructure generated by a tuple, with the
// generator positions marked. Local indices follow term-discovery order:
// round-based closure of the generators under functions, symbols in
// signature order, argument tuples in lexicographic order of local indices.
//
// Two tuples (over the same signature, possibly in different structures)
// have equal fingerprints exactly when mapping one tuple onto the other
// coordinatewise extends to an isomorphism of the generated substructures.
struct QfFingerprint {
    int generator_count = 0;
    int local_size = 0;
    std::vector<int> generator_map;                       // position -> local index
    std::vector<std::vector<int>> fun_tables;             // per function, flat local tables
    std::vector<std::vector<std::vector<int>>> rel_tables; // per relation, sorted local tuples

    friend bool operator==(const QfFingerprint&, const QfFingerprint&) = default;

    // Flat encoding; equal fingerprints have equal encodings and vice versa.
    // Usable as an ordered or hashed map key.
    std::string key() const;
};

struct GeneratedSubstructure {
    FiniteStructure structure;
    Embedding inclusion; // local index -> element of the ambient structure
};

// Closure of `gens` under all functions of `m`, relabeled 0..k-1 in
// term-discovery order.
GeneratedSubstructure generated_substructure(const FiniteStructure& m, std::span<const int> gens);

QfFingerprint qftp_fingerprint(const FiniteStructure& m, std::span<const int> tuple,
                               const Limits& limits = Limits::defaults());

// Same computation without the tuple-length budget; for internal callers
// that need full-universe enumeration fingerprints.
QfFingerprint qftp_fingerprint_unchecked(const FiniteStructure& m, std::span<const int> tuple);

} // namespace frs
