#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frs/structure.hpp"

namespace frs {

// Finite Boolean algebra presented by a named atom set. Elements are atom
// subsets, packed as bitmasks over the atom indices; the lattice operations
// are the set operations. The induced order x <= y is x & y == x and is
// never stored.
class AtomSetAlgebra {
public:
    using Elem = std::uint64_t;

    explicit AtomSetAlgebra(std::vector<std::string> atom_names);

    int atom_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& atom_names() const { return names_; }

    Elem zero() const { return 0; }
    Elem one() const { return full_; }
    Elem atom(int i) const { return Elem(1) << i; }
    Elem join(Elem x, Elem y) const { return x | y; }
    Elem meet(Elem x, Elem y) const { return x & y; }
    Elem complement_of(Elem x) const { return full_ & ~x; }
    bool valid(Elem x) const { return (x & ~full_) == 0; }

private:
    std::vector<std::string> names_;
    Elem full_ = 0;
};

// The signature {join, meet, compl, zero, one} used by exported algebras.
const Signature& boolean_signature();

// Structure on universe 2^k whose element labels are the subset bitmasks.
FiniteStructure export_structure(const AtomSetAlgebra& b,
                                 const Limits& limits = Limits::defaults());

// For each sign vector w over the tuple (bit i of w set = positive literal
// t_i), whether the meet of the signed literals is nonempty. Two tuples have
// equal quantifier-free types in the Boolean-algebra signature exactly when
// their patterns are equal.
std::vector<bool> qftp_cells(const AtomSetAlgebra& b, std::span<const AtomSetAlgebra::Elem> t,
                             const Limits& limits = Limits::defaults());

// Atoms of the subalgebra generated by `gens`: the nonempty cells, in
// increasing bitmask order. They partition the full set.
std::vector<AtomSetAlgebra::Elem> subalgebra_atoms(const AtomSetAlgebra& b,
                                                   std::span<const AtomSetAlgebra::Elem> gens);

// An algebra embedding B1 -> B2, presented by the surjection
// atoms(B2) -> atoms(B1) that induces it.
struct BaEmbedding {
    std::vector<int> atom_surjection; // index: atom of B2 -> atom of B1

    AtomSetAlgebra::Elem apply(const AtomSetAlgebra& b1, const AtomSetAlgebra& b2,
                               AtomSetAlgebra::Elem x) const;
};

// All embeddings B1 -> B2, in lexicographic order of the surjection. Empty
// when atom_count(B1) > atom_count(B2).
std::vector<BaEmbedding> enumerate_ba_embeddings(const AtomSetAlgebra& b1,
                                                 const AtomSetAlgebra& b2);

} // namespace frs
