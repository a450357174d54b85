#pragma once

#include <string>

#include <json.hpp>

#include "frs/boolalg.hpp"
#include "frs/indiscernibles.hpp"
#include "frs/ramsey.hpp"
#include "frs/semiretraction.hpp"
#include "frs/structure.hpp"

namespace frs {

using Json = nlohmann::json;

// Structure documents:
// { "signature": {"relations": [["<",2]], "functions": [["p",1]]},
//   "universe": 6,
//   "relations": {"<": [[0,1], ...]},
//   "functions": {"p": [[[0],0], [[1],0], ...]} }   (exhaustive tables)
// Unknown fields are rejected; integers are universe labels.
Json structure_to_json(const FiniteStructure& s);
FiniteStructure structure_from_json(const Json& j);

// Witness documents: {a_frag, b_frag, g: [[src,dst],...], f: [...], depth}
// plus optional a_host when f lands in a larger fragment than g's source.
Json witness_to_json(const SemiRetractionWitness& w);
SemiRetractionWitness witness_from_json(const Json& j);

// Family documents: {index, host, width, tuples: [[...], ...]}.
Json family_to_json(const IndexedFamily& fam);
IndexedFamily family_from_json(const Json& j);

// Algebra documents: {atoms: [names]}; elements are sorted atom-name arrays.
Json algebra_to_json(const AtomSetAlgebra& b);
AtomSetAlgebra algebra_from_json(const Json& j);
Json element_to_json(const AtomSetAlgebra& b, AtomSetAlgebra::Elem x);
AtomSetAlgebra::Elem element_from_json(const AtomSetAlgebra& b, const Json& j);

Json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

Json verdict_to_json(const ArrowVerdict& v);
Json stats_to_json(const SearchStats& s);

// Reads a whole file and parses; parse failures carry the byte position.
Json load_document(const std::string& path);
FiniteStructure load_structure(const std::string& path);

// FNV-1a 64 digest of the canonical (sorted-key, compact) dump.
std::string content_digest(const Json& j);

} // namespace frs
