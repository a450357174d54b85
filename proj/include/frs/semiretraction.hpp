#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frs/enumerate.hpp"
#include "frs/fingerprint.hpp"
#include "frs/ramsey.hpp"
#include "frs/structure.hpp"

namespace frs {

// Injective map between finite fragments of structures in possibly
// different signatures.
struct CrossMap {
    FiniteStructure source;
    FiniteStructure target;
    std::vector<int> map; // total on source universe, injective

    void validate() const;
    int apply(int x) const { return map[x]; }
    std::vector<int> apply_tuple(std::span<const int> t) const;
    // Inverse where defined; nullopt when y is outside the image.
    std::optional<int> preimage(int y) const;
};

// Finite-fragment witness for a semi-retraction pair (g, f). The maps are
// restrictions of an infinite-structure pair to fragments: g's source (the
// verified A-side fragment) and f's target (the A-side host) are fragments
// of the same ambient structure and share a signature, but f's target may
// properly extend the reach of g's source; the composition f∘g then lands
// in the host.
struct SemiRetractionWitness {
    CrossMap g; // A-side fragment -> B-side fragment
    CrossMap f; // B-side fragment -> A-side host
    int depth = 4;

    const FiniteStructure& a_dom() const { return g.source; }
    const FiniteStructure& b_frag() const { return g.target; }
    const FiniteStructure& a_host() const { return f.target; }

    void validate() const;
    int fg(int x) const { return f.map[g.map[x]]; }
    std::vector<int> fg_tuple(std::span<const int> t) const;
};

struct TuplePair {
    std::vector<int> left;
    std::vector<int> right;
};

struct RespectReport {
    bool pass = false;
    std::optional<TuplePair> counterexample; // same source type, different image types
    long long tuples_checked = 0;
};

// For all same-length tuples up to n_max from the source: equal source
// fingerprints must give equal image fingerprints. Tuples are grouped by
// source fingerprint so only one comparison per class member is needed.
RespectReport check_qftp_respecting(const CrossMap& h, int n_max,
                                    const Limits& limits = Limits::defaults());

struct CompositionReport {
    bool pass = false;
    std::string detail; // first violated fact, when failing
};

// f∘g must embed g's source into f's target: injective, relations preserved
// and reflected, functions commuting.
CompositionReport check_composition_embedding(const SemiRetractionWitness& w);

struct SemiRetractionReport {
    RespectReport g_respecting;
    RespectReport f_respecting;
    CompositionReport composition;

    bool pass() const {
        return g_respecting.pass && f_respecting.pass && composition.pass;
    }
};

SemiRetractionReport verify_semiretraction(const SemiRetractionWitness& w,
                                           const Limits& limits = Limits::defaults());

enum class RestrictedFailure { escapes_image, outside_b0, type_mismatch };

struct RestrictedReport {
    bool pass = false;
    std::optional<RestrictedFailure> failure;
    std::vector<int> counterexample; // the offending tuple in f's target
    long long candidates_checked = 0;
};

// Restricted-inverse-images property of f for the pattern tuple `a_pattern`
// (anchored in `a_pattern_structure`, any structure over f's target
// signature) witnessed by `a0`: every tuple inside <f(b0)> with the pattern
// type pulls back through f to a tuple inside b0 of type a0.
RestrictedReport check_restricted_inverse_images(const CrossMap& f,
                                                 const FiniteStructure& a_pattern_structure,
                                                 std::span<const int> a_pattern,
                                                 std::span<const int> b0, std::span<const int> a0,
                                                 const Limits& limits = Limits::defaults());

// A coloring of Emb(P, host) for a local pattern structure P; colors are
// aligned with the canonical embedding enumeration.
struct EmbeddingColoring {
    GeneratedSubstructure pattern;   // P with its inclusion into the host
    std::vector<Embedding> domain;   // Emb(P, host)
    std::vector<int> colors;
};

// The pullback coloring c0(e) = c(f(e restricted to the g-image of the
// generators)). `a_gens` must enumerate a substructure of g's source;
// `c_colors` is aligned with Emb(<fg(a_gens)>, a_host).
EmbeddingColoring induced_coloring(const SemiRetractionWitness& w, std::span<const int> a_gens,
                                   std::span<const int> c_colors,
                                   const Limits& limits = Limits::defaults());

struct TransferReport {
    bool identity_ok = false; // c(k∘j) = c0(h∘j') for every j
    int checked = 0;          // number of j enumerated
    int colors_on_k = 0;      // distinct colors of c on k∘Emb(A,B)
    int colors_on_h = 0;      // distinct colors of c0 on h∘Emb(A',B')
    std::vector<int> k_map;   // constructed embedding B -> a_host
};

// Runs the full transfer construction: k = f(h restricted to g(B-gens)),
// then the per-embedding color identity. `h` is an embedding of
// <g(b_gens)> into b_frag.
TransferReport transfer_pipeline_check(const SemiRetractionWitness& w,
                                       std::span<const int> a_gens, std::span<const int> b_gens,
                                       std::span<const int> c_colors, const Embedding& h,
                                       const Limits& limits = Limits::defaults());

// Finite partial maps on universe points, sorted by domain point.
using FiniteMap = std::vector<std::pair<int, int>>;

std::optional<int> map_apply(const FiniteMap& m, int x);
std::optional<FiniteMap> map_compose(const FiniteMap& outer, const FiniteMap& inner);
FiniteMap map_push(const CrossMap& f, const FiniteMap& psi); // f(psi)
FiniteMap cross_restriction(const CrossMap& f, std::span<const int> domain_points);

// The pre-adjunction translation: psi -> f(psi) ∘ f ∘ g, restricted to the
// points of `a_points`. Nullopt when some composite step escapes a domain.
std::optional<FiniteMap> preadjunction_translate(const SemiRetractionWitness& w,
                                                 std::span<const int> a_points,
                                                 const FiniteMap& psi);

struct PreadjunctionReport {
    bool pass = false;
    long long identities_checked = 0;
    std::string failure; // description of the first failing identity
};

// Exhaustively checks the translation identity
// Phi_{a,c}(psi ∘ g(v)) = Phi_{b,c}(psi) ∘ v over all tuples a, b from g's
// source and c from the B-side fragment of length <= max_len, all
// type-preserving injections v: ran(a) -> ran(b) and psi: ran(g(b)) ->
// ran(c), within the step budget.
PreadjunctionReport preadjunction_check(const SemiRetractionWitness& w, int max_len,
                                        const Limits& limits = Limits::defaults());

// All qftp-preserving injections ran(domain_tuple) -> ran(codomain_tuple),
// each presented as a FiniteMap. Tuples may sit in different structures
// over one signature.
std::vector<FiniteMap> enumerate_type_preserving_injections(
    const FiniteStructure& dom_structure, std::span<const int> domain_tuple,
    const FiniteStructure& cod_structure, std::span<const int> codomain_tuple,
    const Limits& limits = Limits::defaults());

} // namespace frs
