#include "frs/boolalg.hpp"

#include <algorithm>

#include "frs/errors.hpp"

namespace frs {

AtomSetAlgebra::AtomSetAlgebra(std::vector<std::string> atom_names)
    : names_(std::move(atom_names)) {
    if (names_.empty()) throw MalformedError("atom set must be nonempty");
    if (names_.size() > 62) throw BudgetError("atom set too large for bitmask elements");
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw MalformedError("empty atom name");
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw MalformedError("duplicate atom name: " + names_[i]);
    }
    full_ = (names_.size() == 62) ? ~Elem(0) >> 2 : (Elem(1) << names_.size()) - 1;
}

const Signature& boolean_signature() {
    static const Signature sig{
        {},
        {{"join", 2}, {"meet", 2}, {"compl", 1}, {"zero", 0}, {"one", 0}},
    };
    return sig;
}

FiniteStructure export_structure(const AtomSetAlgebra& b, const Limits& limits) {
    int k = b.atom_count();
    if (k > limits.ba_export_max_atoms)
        throw BudgetError("algebra with " + std::to_string(k) + " atoms exceeds export cap of " +
                          std::to_string(limits.ba_export_max_atoms));
    int n = 1 << k;
    FiniteStructure s(boolean_signature(), n);
    s.fill_function("join", [](std::span<const int> a) { return a[0] | a[1]; });
    s.fill_function("meet", [](std::span<const int> a) { return a[0] & a[1]; });
    s.fill_function("compl", [n](std::span<const int> a) { return (n - 1) & ~a[0]; });
    s.fill_function("zero", [](std::span<const int>) { return 0; });
    s.fill_function("one", [n](std::span<const int>) { return n - 1; });
    return s;
}

std::vector<bool> qftp_cells(const AtomSetAlgebra& b, std::span<const AtomSetAlgebra::Elem> t,
                             const Limits& limits) {
    if (static_cast<int>(t.size()) > limits.max_tuple_len)
        throw BudgetError("cell pattern tuple exceeds budget");
    for (auto x : t)
        if (!b.valid(x)) throw MalformedError("element outside algebra");
    size_t cells = size_t(1) << t.size();
    std::vector<bool> pattern(cells);
    for (size_t w = 0; w < cells; ++w) {
        AtomSetAlgebra::Elem cell = b.one();
        for (size_t i = 0; i < t.size(); ++i)
            cell &= (w >> i & 1) ? t[i] : b.complement_of(t[i]);
        pattern[w] = cell != 0;
    }
    return pattern;
}

std::vector<AtomSetAlgebra::Elem> subalgebra_atoms(const AtomSetAlgebra& b,
                                                   std::span<const AtomSetAlgebra::Elem> gens) {
    if (gens.size() > 30) throw BudgetError("generator tuple too long for cell enumeration");
    std::vector<AtomSetAlgebra::Elem> atoms;
    size_t cells = size_t(1) << gens.size();
    for (size_t w = 0; w < cells; ++w) {
        AtomSetAlgebra::Elem cell = b.one();
        for (size_t i = 0; i < gens.size(); ++i)
            cell &= (w >> i & 1) ? gens[i] : b.complement_of(gens[i]);
        if (cell != 0) atoms.push_back(cell);
    }
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

AtomSetAlgebra::Elem BaEmbedding::apply(const AtomSetAlgebra& b1, const AtomSetAlgebra& b2,
                                        AtomSetAlgebra::Elem x) const {
    AtomSetAlgebra::Elem out = 0;
    for (int beta = 0; beta < b2.atom_count(); ++beta)
        if (x >> atom_surjection[beta] & 1) out |= b2.atom(beta);
    (void)b1;
    return out;
}

std::vector<BaEmbedding> enumerate_ba_embeddings(const AtomSetAlgebra& b1,
                                                 const AtomSetAlgebra& b2) {
    int k1 = b1.atom_count();
    int k2 = b2.atom_count();
    std::vector<BaEmbedding> out;
    if (k1 > k2) return out;
    std::vector<int> s(k2, 0);
    while (true) {
        std::vector<char> hit(k1, 0);
        for (int v : s) hit[v] = 1;
        if (std::find(hit.begin(), hit.end(), 0) == hit.end()) out.push_back(BaEmbedding{s});
        int pos = k2 - 1;
        while (pos >= 0 && s[pos] + 1 == k1) { s[pos] = 0; --pos; }
        if (pos < 0) break;
        ++s[pos];
    }
    return out;
}

} // namespace frs
