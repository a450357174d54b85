#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "frs/boolalg.hpp"
#include "frs/constructions.hpp"
#include "frs/enumerate.hpp"
#include "frs/errors.hpp"
#include "frs/fingerprint.hpp"

using namespace frs;
using Elem = AtomSetAlgebra::Elem;

namespace {

// Full element map induced by a surjection-presented embedding.
std::vector<int> ba_embedding_as_map(const AtomSetAlgebra& b1, const AtomSetAlgebra& b2,
                                     const BaEmbedding& e) {
    std::vector<int> map(size_t(1) << b1.atom_count());
    for (Elem x = 0; x < map.size(); ++x) map[x] = static_cast<int>(e.apply(b1, b2, x));
    return map;
}

} // namespace

TEST_CASE("export of the one-atom algebra") {
    AtomSetAlgebra b({"a"});
    FiniteStructure s = export_structure(b);
    CHECK(s.size() == 2);
    int compl_idx = s.sig().fun_index("compl");
    std::vector<int> zero{0};
    CHECK(s.fun_value(compl_idx, zero) == 1);
}

TEST_CASE("export of the two-atom algebra has intersection as meet") {
    AtomSetAlgebra b({"a", "b"});
    FiniteStructure s = export_structure(b);
    CHECK(s.size() == 4);
    int meet_idx = s.sig().fun_index("meet");
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            std::vector<int> args{x, y};
            CHECK(s.fun_value(meet_idx, args) == (x & y));
        }
}

TEST_CASE("lattice and de Morgan laws hold exhaustively for small algebras") {
    for (int k = 1; k <= 4; ++k) {
        std::vector<std::string> names;
        for (int i = 0; i < k; ++i) names.push_back("a" + std::to_string(i));
        AtomSetAlgebra b(names);
        for (Elem x = 0; x <= b.one(); ++x)
            for (Elem y = 0; y <= b.one(); ++y) {
                REQUIRE(b.complement_of(b.join(x, y)) ==
                        b.meet(b.complement_of(x), b.complement_of(y)));
                REQUIRE(b.join(x, b.meet(x, y)) == x);
                REQUIRE(b.meet(x, b.join(x, y)) == x);
            }
    }
}

TEST_CASE("export automorphisms are atom permutations") {
    for (int k = 2; k <= 3; ++k) {
        std::vector<std::string> names;
        for (int i = 0; i < k; ++i) names.push_back("a" + std::to_string(i));
        AtomSetAlgebra b(names);
        long long factorial = 1;
        for (int i = 2; i <= k; ++i) factorial *= i;
        CHECK(automorphism_group(export_structure(b)).order == factorial);
    }
}

TEST_CASE("export respects the cap on atoms") {
    AtomSetAlgebra b({"a", "b", "c", "d", "e", "f"});
    CHECK_THROWS_AS((void)export_structure(b), BudgetError);
}

TEST_CASE("cell pattern of the (zero, one) pair") {
    AtomSetAlgebra b({"a", "b"});
    std::vector<Elem> t{b.zero(), b.one()};
    std::vector<bool> pattern = qftp_cells(b, t);
    // only the cell with x0 negative, x1 positive is nonempty
    CHECK(pattern == std::vector<bool>{false, false, true, false});
    std::vector<Elem> reversed{b.one(), b.zero()};
    CHECK(qftp_cells(b, reversed) != pattern);
}

TEST_CASE("disjoint non-covering pairs share a cell pattern") {
    AtomSetAlgebra b({"a", "b", "c"});
    std::vector<Elem> first{b.atom(0), b.atom(1)};
    std::vector<Elem> second{b.atom(1), b.atom(2)};
    CHECK(qftp_cells(b, first) == qftp_cells(b, second));
}

TEST_CASE("edge and non-edge image pairs differ exactly in the meet cell") {
    GraphSpec edge;
    edge.m = 2;
    edge.edges = {{0, 1}};
    GraphBaEncoding with_edge = encode_graph_to_ba(edge);
    GraphBaEncoding without = encode_graph_to_ba(GraphSpec::discrete(2));

    std::vector<Elem> te{with_edge.vertex_images[0], with_edge.vertex_images[1]};
    std::vector<Elem> tn{without.vertex_images[0], without.vertex_images[1]};
    std::vector<bool> pe = qftp_cells(with_edge.algebra, te);
    std::vector<bool> pn = qftp_cells(without.algebra, tn);
    REQUIRE(pe.size() == pn.size());
    for (size_t w = 0; w < pe.size(); ++w) {
        if (w == 3) // both positive: the meet cell
            CHECK(pe[w] != pn[w]);
        else
            CHECK(pe[w] == pn[w]);
    }
}

TEST_CASE("subalgebra atoms of a single atom generator") {
    AtomSetAlgebra b({"a", "b"});
    std::vector<Elem> gens{b.atom(0)};
    std::vector<Elem> atoms = subalgebra_atoms(b, gens);
    CHECK(atoms == std::vector<Elem>{1, 2});
}

TEST_CASE("subalgebra atoms partition the full set") {
    std::mt19937 rng(5);
    AtomSetAlgebra b({"a", "b", "c", "d"});
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Elem> gens(1 + rng() % 3);
        for (auto& g : gens) g = rng() & b.one();
        std::vector<Elem> atoms = subalgebra_atoms(b, gens);
        Elem join = 0;
        for (size_t i = 0; i < atoms.size(); ++i) {
            CHECK(atoms[i] != 0);
            for (size_t j = i + 1; j < atoms.size(); ++j) CHECK((atoms[i] & atoms[j]) == 0);
            join |= atoms[i];
        }
        CHECK(join == b.one());
    }
}

TEST_CASE("subalgebra atom counts for graph encodings") {
    CHECK(subalgebra_atoms(encode_graph_to_ba(GraphSpec::discrete(3)).algebra,
                           encode_graph_to_ba(GraphSpec::discrete(3)).vertex_images)
              .size() == 3);
    GraphBaEncoding k3 = encode_graph_to_ba(GraphSpec::complete(3));
    CHECK(subalgebra_atoms(k3.algebra, k3.vertex_images).size() == 6);
}

TEST_CASE("algebra embedding counts") {
    AtomSetAlgebra b1({"x"});
    AtomSetAlgebra b2({"x", "y"});
    AtomSetAlgebra b3({"x", "y", "z"});
    CHECK(enumerate_ba_embeddings(b1, b3).size() == 1);
    CHECK(enumerate_ba_embeddings(b2, b3).size() == 6);
    CHECK(enumerate_ba_embeddings(b3, b3).size() == 6);
    CHECK(enumerate_ba_embeddings(b3, b2).empty());
}

TEST_CASE("specialized embeddings agree with the generic enumerator on exports") {
    for (int k1 = 1; k1 <= 2; ++k1)
        for (int k2 = k1; k2 <= 3; ++k2) {
            std::vector<std::string> n1, n2;
            for (int i = 0; i < k1; ++i) n1.push_back("a" + std::to_string(i));
            for (int i = 0; i < k2; ++i) n2.push_back("a" + std::to_string(i));
            AtomSetAlgebra b1(n1), b2(n2);
            std::set<std::vector<int>> fast;
            for (const auto& e : enumerate_ba_embeddings(b1, b2))
                fast.insert(ba_embedding_as_map(b1, b2, e));
            std::set<std::vector<int>> generic;
            for (const auto& e : enumerate_embeddings(export_structure(b1), export_structure(b2)))
                generic.insert(e.map);
            CHECK(fast == generic);
        }
}

TEST_CASE("cell patterns decide quantifier-free types on exports") {
    // exhaustive over all tuples of length <= 4 for up to 4 atoms: the map
    // between type fingerprints and cell patterns must be a bijection
    for (int k = 2; k <= 4; ++k) {
        std::vector<std::string> names;
        for (int i = 0; i < k; ++i) names.push_back("a" + std::to_string(i));
        AtomSetAlgebra b(names);
        FiniteStructure s = export_structure(b);
        std::map<std::string, std::vector<bool>> fp_to_pattern;
        std::map<std::vector<bool>, std::string> pattern_to_fp;
        for (int len = 1; len <= 4; ++len) {
            std::vector<int> t(len, 0);
            while (true) {
                std::vector<Elem> elems(t.begin(), t.end());
                std::vector<bool> pattern = qftp_cells(b, elems);
                std::string key = qftp_fingerprint(s, t).key();
                auto [it1, new1] = fp_to_pattern.emplace(key, pattern);
                REQUIRE(it1->second == pattern);
                auto [it2, new2] = pattern_to_fp.emplace(pattern, key);
                REQUIRE(it2->second == key);
                int pos = len - 1;
                while (pos >= 0 && t[pos] + 1 == s.size()) { t[pos] = 0; --pos; }
                if (pos < 0) break;
                ++t[pos];
            }
        }
    }
}

TEST_CASE("embedding counts match the surjection formula up to four atoms") {
    // number of surjections k2 -> k1 by inclusion-exclusion
    auto surjections = [](int k2, int k1) {
        long long total = 0;
        auto binom = [](int n, int k) {
            long long b = 1;
            for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
            return b;
        };
        for (int i = 0; i <= k1; ++i) {
            long long term = binom(k1, i);
            long long p = 1;
            for (int e = 0; e < k2; ++e) p *= (k1 - i);
            total += (i % 2 ? -1 : 1) * term * p;
        }
        return total;
    };
    for (int k1 = 1; k1 <= 4; ++k1)
        for (int k2 = k1; k2 <= 4; ++k2) {
            std::vector<std::string> n1, n2;
            for (int i = 0; i < k1; ++i) n1.push_back("a" + std::to_string(i));
            for (int i = 0; i < k2; ++i) n2.push_back("a" + std::to_string(i));
            CHECK(enumerate_ba_embeddings(AtomSetAlgebra(n1), AtomSetAlgebra(n2)).size() ==
                  static_cast<size_t>(surjections(k2, k1)));
        }
}

TEST_CASE("export closures have one element per subset of the generated atoms") {
    AtomSetAlgebra b({"a", "b", "c"});
    FiniteStructure s = export_structure(b);
    std::mt19937 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<int> gens(1 + rng() % 2);
        for (int& g : gens) g = static_cast<int>(rng() % s.size());
        std::vector<Elem> elems(gens.begin(), gens.end());
        size_t atom_count = subalgebra_atoms(b, elems).size();
        CHECK(generated_substructure(s, gens).structure.size() == (size_t(1) << atom_count));
    }
}

TEST_CASE("cell patterns refuse tuples beyond the budget") {
    AtomSetAlgebra b({"a", "b"});
    std::vector<Elem> t(7, b.one());
    CHECK_THROWS_AS((void)qftp_cells(b, t), BudgetError);
}
