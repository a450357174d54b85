#pragma once

#include <set>
#include <utility>
#include <vector>

#include "frs/boolalg.hpp"
#include "frs/semiretraction.hpp"
#include "frs/structure.hpp"

namespace frs {

struct GraphSpec {
    int m = 0;
    std::set<std::pair<int, int>> edges; // normalized i < j, no loops

    static GraphSpec complete(int m);
    static GraphSpec discrete(int m);
    void validate() const;
    bool has_edge(int i, int j) const;
};

struct HypergraphSpec {
    int m = 0;
    int n = 2;                        // uniformity
    std::set<std::vector<int>> edges; // strictly increasing n-tuples

    void validate() const;
};

enum class TreeFlavor { stree, strtree };

struct TreeSpec {
    int branching = 2;
    int height = 2;
    TreeFlavor flavor = TreeFlavor::strtree;
};

// Linear order on n points in {<}; the relation is the full strict order.
FiniteStructure make_chain(int n);

// Symmetric irreflexive binary relation R.
FiniteStructure make_graph(const GraphSpec& spec);

// n-ary relation R, stored under full symmetric closure of each edge set.
FiniteStructure make_hypergraph(const HypergraphSpec& spec,
                                const Limits& limits = Limits::defaults());

// Signature {E, prec}: E an equivalence with the given class sizes, prec the
// convex order (class i entirely before class i+1, positions ordered within).
// When ordered == false the signature is {E} alone.
FiniteStructure make_convex_equivalence(std::span<const int> class_sizes, bool ordered = true);

// All sequences over {0..k-1} of length <= h, enumerated by length then
// lexicographically. Functions: meet = longest common prefix. Relations:
// initseg (reflexive initial-segment order), lex (strict lexicographic
// order: proper initial segments come first), and per flavor either level
// predicates P0..Ph or the strict length preorder len.
FiniteStructure make_tree(const TreeSpec& spec, const Limits& limits = Limits::defaults());

std::vector<std::vector<int>> tree_node_list(const TreeSpec& spec,
                                             const Limits& limits = Limits::defaults());

// Tree structure on an explicit meet-closed set of nodes.
FiniteStructure make_tree_fragment(const std::vector<std::vector<int>>& nodes, TreeFlavor flavor);

struct GraphBaEncoding {
    AtomSetAlgebra algebra;
    std::vector<AtomSetAlgebra::Elem> vertex_images; // the map g
    GraphSpec spec;

    // The graph relation carried by the algebra: distinct with nonzero meet.
    bool encoded_edge(AtomSetAlgebra::Elem x, AtomSetAlgebra::Elem y) const {
        return x != y && (x & y) != 0;
    }
};

// One atom per vertex plus one per edge; g(v) joins the vertex atom with
// every incident edge atom. Distinct images meet nonzero exactly on edges
// and all triple meets vanish.
GraphBaEncoding encode_graph_to_ba(const GraphSpec& spec,
                                   const Limits& limits = Limits::defaults());

struct HypergraphBaEncoding {
    AtomSetAlgebra algebra;
    std::vector<AtomSetAlgebra::Elem> vertex_images; // the map g
    HypergraphSpec spec;

    // b element for an increasing tuple: join of the atoms of all its
    // extensions (itself included) up to length n.
    AtomSetAlgebra::Elem b_of(const std::vector<int>& increasing_tuple) const;

    std::vector<std::vector<int>> atom_tuples; // atom index -> its tuple
};

// One atom per strictly increasing tuple of length 1..n, so that the nested
// elements b are strictly decreasing along prefix extension. Meets of
// distinct images are nonzero exactly for k < n vertices, or for k = n
// vertices forming a hyperedge. Requires m >= n+1 so every proper prefix
// has at least two extensions and the nesting is strict.
HypergraphBaEncoding encode_hypergraph_to_ba(const HypergraphSpec& spec,
                                             const Limits& limits = Limits::defaults());

// Witness between a convex equivalence relation (c classes of size s) and a
// tree fragment: class i enters the lex-ordered successors of the all-zero
// node of length 2i; the fragment's levels return order-preservingly into
// the classes of a host with 2c classes.
SemiRetractionWitness eqrel_tree_witness(int classes, int class_size,
                                    const Limits& limits = Limits::defaults());

// n-chain into the ordered complete graph on n vertices; f is the identity
// onto the chain reduct.
SemiRetractionWitness ordered_graph_indiscernible_fragment(int n);

enum class InterdefKind { pred, succ_reduct };

// Identity-map witnesses between quantifier-free interdefinable fragments.
// `pred` pairs ({0..n}, p) with its expansion by the successor relation.
// `succ_reduct` has no total finite fragment (the successor function
// escapes); it reports fragment incompleteness.
SemiRetractionWitness interdefinability_fragments(InterdefKind kind, int n);

// Witness for the graph-into-Boolean-algebra encoding: the graph maps into
// the exported algebra via g and the algebra returns via the identity into
// the graph of the "distinct with nonzero meet" relation on its universe.
SemiRetractionWitness graph_ba_witness(const GraphSpec& spec, int depth = 2,
                                       const Limits& limits = Limits::defaults());

} // namespace frs
