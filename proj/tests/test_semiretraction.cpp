#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "frs/constructions.hpp"
#include "frs/enumerate.hpp"
#include "frs/errors.hpp"
#include "frs/semiretraction.hpp"

using namespace frs;

namespace {

FiniteStructure pred_fragment(int n) {
    FiniteStructure s(Signature{{}, {{"p", 1}}}, n + 1);
    s.fill_function("p", [](std::span<const int> a) { return a[0] == 0 ? 0 : a[0] - 1; });
    return s;
}

FiniteStructure cycle(int n) {
    FiniteStructure s(Signature{{}, {{"s", 1}}}, n);
    s.fill_function("s", [n](std::span<const int> a) { return (a[0] + 1) % n; });
    return s;
}

// Two disjoint cycles of length n on universe {0..2n-1}.
FiniteStructure two_cycles(int n) {
    FiniteStructure s(Signature{{}, {{"s", 1}}}, 2 * n);
    s.fill_function("s", [n](std::span<const int> a) {
        int x = a[0];
        return x < n ? (x + 1) % n : n + (x + 1 - n) % n;
    });
    return s;
}

std::vector<int> identity_map(int n) {
    std::vector<int> out(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
}

} // namespace

TEST_CASE("the identity map respects types") {
    FiniteStructure chain = make_chain(4);
    CrossMap id{chain, chain, identity_map(4)};
    CHECK(check_qftp_respecting(id, 3).pass);
}

TEST_CASE("forgetting a relation is respected by the identity") {
    // richer: successor graph with order; poorer: order only
    FiniteStructure rich(Signature{{{"S", 2}, {"<", 2}}, {}}, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            rich.add_rel_tuple(1, {i, j});
            if (j == i + 1) rich.add_rel_tuple(0, {i, j});
        }
    CrossMap down{rich, make_chain(4), identity_map(4)};
    CHECK(check_qftp_respecting(down, 3).pass);
    // and the other direction fails: the order alone cannot see adjacency
    CrossMap up{make_chain(4), rich, identity_map(4)};
    RespectReport r = check_qftp_respecting(up, 2);
    CHECK_FALSE(r.pass);
    REQUIRE(r.counterexample.has_value());
}

TEST_CASE("interleaving two cycles into one is not type-respecting") {
    // the finite shadow of the two-chains-into-one interpretation map:
    // component i of the double cycle lands on the even/odd points
    int n = 3;
    FiniteStructure b = two_cycles(n);
    FiniteStructure a = cycle(2 * n);
    std::vector<int> interleave(2 * n);
    for (int i = 0; i < n; ++i) {
        interleave[i] = 2 * i;
        interleave[n + i] = 2 * i + 1;
    }
    CrossMap h{b, a, interleave};
    RespectReport r = check_qftp_respecting(h, 2);
    CHECK_FALSE(r.pass);
    REQUIRE(r.counterexample.has_value());
    // the violating pair crosses the two components
    auto crosses = [n](const std::vector<int>& t) {
        bool lo = false, hi = false;
        for (int x : t) (x < n ? lo : hi) = true;
        return lo && hi;
    };
    CHECK(crosses(r.counterexample->left));
    CHECK(crosses(r.counterexample->right));
}

TEST_CASE("composition embedding check on identity and tree witnesses") {
    CHECK(check_composition_embedding(interdefinability_fragments(InterdefKind::pred, 4)).pass);
    CHECK(check_composition_embedding(eqrel_tree_witness(2, 2)).pass);
}

TEST_CASE("swapping two g-images breaks the composition") {
    SemiRetractionWitness w = eqrel_tree_witness(2, 2);
    std::swap(w.g.map[0], w.g.map[1]); // reverses the order inside class 0
    CompositionReport r = check_composition_embedding(w);
    CHECK_FALSE(r.pass);
    CHECK(!r.detail.empty());
}

TEST_CASE("restricted inverse images hold along the tree witness") {
    SemiRetractionWitness w = eqrel_tree_witness(2, 3);
    // pattern: an increasing triple inside one class
    std::vector<int> a_pattern{0, 1, 2};
    std::vector<int> b_gens{0, 1, 2};
    std::vector<int> b0 = w.g.apply_tuple(b_gens);
    std::vector<int> a0 = w.g.apply_tuple(a_pattern);
    RestrictedReport r =
        check_restricted_inverse_images(w.f, w.a_dom(), a_pattern, b0, a0, Limits::defaults());
    CHECK(r.pass);

    // the witnessing preimage type is the meet-equality type
    int meet = w.b_frag().sig().fun_index("meet");
    std::vector<int> m01{a0[0], a0[1]}, m12{a0[1], a0[2]};
    CHECK(w.b_frag().fun_value(meet, m01) == w.b_frag().fun_value(meet, m12));
}

TEST_CASE("restricted inverse images: length-one patterns pass trivially") {
    SemiRetractionWitness w = eqrel_tree_witness(2, 2);
    std::vector<int> a_pattern{0};
    std::vector<int> b_gens{0, 1};
    std::vector<int> b0 = w.g.apply_tuple(b_gens);
    std::vector<int> a0 = w.g.apply_tuple(a_pattern);
    CHECK(check_restricted_inverse_images(w.f, w.a_dom(), a_pattern, b0, a0).pass);
}

TEST_CASE("an order-reversing f fails with a type mismatch") {
    FiniteStructure chain = make_chain(2);
    CrossMap f{chain, chain, {1, 0}};
    std::vector<int> pattern{0, 1}, b0{0, 1}, a0{0, 1};
    RestrictedReport r = check_restricted_inverse_images(f, chain, pattern, b0, a0);
    CHECK_FALSE(r.pass);
    CHECK(r.failure == RestrictedFailure::type_mismatch);
}

TEST_CASE("preimages can escape the image when functions close outward") {
    FiniteStructure one_point(Signature{{}, {{"p", 1}}}, 1);
    one_point.fill_function("p", [](std::span<const int>) { return 0; });
    FiniteStructure target = pred_fragment(2);
    CrossMap f{one_point, target, {2}};
    std::vector<int> pattern{1}, b0{0}, a0{0};
    RestrictedReport r = check_restricted_inverse_images(f, target, pattern, b0, a0);
    CHECK_FALSE(r.pass);
    CHECK(r.failure == RestrictedFailure::escapes_image);
}

TEST_CASE("constant colorings induce constant colorings") {
    SemiRetractionWitness w = ordered_graph_indiscernible_fragment(3);
    std::vector<int> a_gens{0, 1};
    std::vector<int> fg_gens = w.fg_tuple(a_gens);
    GeneratedSubstructure a = generated_substructure(w.a_host(), fg_gens);
    size_t domain = enumerate_embeddings(a.structure, w.a_host()).size();
    std::vector<int> constant(domain, 1);
    EmbeddingColoring c0 = induced_coloring(w, a_gens, constant);
    for (int color : c0.colors) CHECK(color == 1);
}

TEST_CASE("identity witnesses induce the same coloring") {
    SemiRetractionWitness w = interdefinability_fragments(InterdefKind::pred, 3);
    std::vector<int> a_gens{2, 1, 0}; // enumerates the substructure it generates
    std::vector<int> fg_gens = w.fg_tuple(a_gens);
    GeneratedSubstructure a = generated_substructure(w.a_host(), fg_gens);
    std::vector<Embedding> domain = enumerate_embeddings(a.structure, w.a_host());
    std::vector<int> colors(domain.size());
    std::iota(colors.begin(), colors.end(), 0);
    EmbeddingColoring c0 = induced_coloring(w, a_gens, colors);
    REQUIRE(c0.domain.size() == domain.size());
    CHECK(c0.colors == colors);
}

TEST_CASE("transfer pipeline on the ordered complete graph fragment") {
    SemiRetractionWitness w = ordered_graph_indiscernible_fragment(4);
    std::vector<int> a_gens{0, 1}, b_gens{0, 1, 2};
    std::vector<int> fg_a = w.fg_tuple(a_gens);
    GeneratedSubstructure a = generated_substructure(w.a_host(), fg_a);
    std::vector<Embedding> a_domain = enumerate_embeddings(a.structure, w.a_host());

    std::vector<int> g_b = w.g.apply_tuple(b_gens);
    GeneratedSubstructure bprime = generated_substructure(w.b_frag(), g_b);
    std::vector<Embedding> hosts = enumerate_embeddings(bprime.structure, w.b_frag());
    REQUIRE(!hosts.empty());

    std::mt19937 rng(99);
    for (int seed = 0; seed < 3; ++seed) {
        std::vector<int> colors(a_domain.size());
        for (int& c : colors) c = static_cast<int>(rng() % 2);
        for (const auto& h : hosts) {
            TransferReport report = transfer_pipeline_check(w, a_gens, b_gens, colors, h);
            CHECK(report.identity_ok);
            CHECK(report.checked == 3); // embeddings of the pair into the triple
            CHECK(report.colors_on_k <= report.colors_on_h);
        }
    }
}

TEST_CASE("transfer pipeline on the graph-to-algebra fragment") {
    GraphSpec spec;
    spec.m = 3;
    spec.edges = {{0, 1}};
    SemiRetractionWitness w = graph_ba_witness(spec);
    std::vector<int> a_gens{0, 1}; // the edge
    std::vector<int> b_gens{0, 1, 2};

    std::vector<int> fg_a = w.fg_tuple(a_gens);
    GeneratedSubstructure a = generated_substructure(w.a_host(), fg_a);
    std::vector<Embedding> a_domain = enumerate_embeddings(a.structure, w.a_host());
    REQUIRE(!a_domain.empty());

    std::vector<int> g_b = w.g.apply_tuple(b_gens);
    GeneratedSubstructure bprime = generated_substructure(w.b_frag(), g_b);
    std::vector<Embedding> hosts = enumerate_embeddings(bprime.structure, w.b_frag());
    REQUIRE(!hosts.empty());

    std::mt19937 rng(7);
    std::vector<int> colors(a_domain.size());
    for (int& c : colors) c = static_cast<int>(rng() % 2);
    TransferReport report = transfer_pipeline_check(w, a_gens, b_gens, colors, hosts[0]);
    CHECK(report.identity_ok);
    CHECK(report.checked == 2); // the two orientations of the edge
}

TEST_CASE("pre-adjunction identity on identity and tree witnesses") {
    PreadjunctionReport id_report =
        preadjunction_check(interdefinability_fragments(InterdefKind::pred, 2), 2);
    CHECK(id_report.pass);
    CHECK(id_report.identities_checked > 0);

    PreadjunctionReport tree_report = preadjunction_check(eqrel_tree_witness(2, 2), 2);
    CHECK(tree_report.pass);
    CHECK(tree_report.identities_checked > 0);
}

TEST_CASE("dropping the inner composite breaks the translation identity") {
    SemiRetractionWitness w = eqrel_tree_witness(2, 2);
    std::vector<int> a_tuple{0}, b_tuple{0};
    FiniteMap v{{0, 0}};
    std::vector<int> g_b = w.g.apply_tuple(b_tuple);
    FiniteMap psi;
    for (int x : g_b) psi.emplace_back(x, x);

    FiniteMap gv = map_push(w.g, v);
    std::optional<FiniteMap> psi_gv = map_compose(psi, gv);
    REQUIRE(psi_gv.has_value());
    std::optional<FiniteMap> lhs = preadjunction_translate(w, a_tuple, *psi_gv);
    REQUIRE(lhs.has_value());

    // mutated translation: f(psi) alone, skipping the inner f∘g
    FiniteMap mutated = map_push(w.f, psi);
    std::optional<FiniteMap> rhs = map_compose(mutated, v);
    CHECK((!rhs.has_value() || *rhs != *lhs));
}

TEST_CASE("passing witnesses preserve the type of every tuple through fg") {
    std::mt19937 rng(55);
    for (SemiRetractionWitness w :
         {eqrel_tree_witness(2, 2), ordered_graph_indiscernible_fragment(4),
          interdefinability_fragments(InterdefKind::pred, 4)}) {
        REQUIRE(verify_semiretraction(w).pass());
        for (int trial = 0; trial < 60; ++trial) {
            int len = 1 + static_cast<int>(rng() % w.depth);
            std::vector<int> t(len);
            for (int& x : t) x = static_cast<int>(rng() % w.a_dom().size());
            std::vector<int> image = w.fg_tuple(t);
            CHECK(qftp_fingerprint(w.a_dom(), t) == qftp_fingerprint(w.a_host(), image));
        }
    }
}

TEST_CASE("a restriction that cannot land as an embedding is reported") {
    // the B side forgets the order, so an order-reversing embedding exists
    // there whose pullback misses the chain
    FiniteStructure chain = make_chain(2);
    FiniteStructure bare(Signature{{{"<", 2}}, {}}, 2); // empty order
    SemiRetractionWitness w;
    w.g = CrossMap{chain, bare, {0, 1}};
    w.f = CrossMap{bare, chain, {0, 1}};
    w.depth = 2;
    std::vector<int> a_gens{0, 1};
    std::vector<int> colors(1, 0); // Emb(chain2, chain2) has one element
    CHECK_THROWS_AS((void)induced_coloring(w, a_gens, colors), FragmentError);
}
