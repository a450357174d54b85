#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frs/enumerate.hpp"
#include "frs/structure.hpp"

namespace frs {

enum class ArrowMode { substructure, embedding };

// The partition-arrow question: does every r-coloring of the copies of A in
// C (or of the embeddings A -> C) admit a copy of B (an embedding of B)
// whose induced A-objects receive at most d colors?
struct ArrowQuery {
    FiniteStructure c;
    FiniteStructure b;
    FiniteStructure a;
    int r = 2;
    int d = 1;
    ArrowMode mode = ArrowMode::substructure;

    void validate() const;
};

// An assignment of colors 0..r-1 to the canonical domain: copies of A in C
// ordered by sorted image set, or embeddings A -> C in lexicographic map
// order.
struct Coloring {
    ArrowMode mode = ArrowMode::substructure;
    std::vector<int> colors;
};

struct SearchStats {
    long long nodes = 0;
    int domain_size = 0;
    int block_count = 0;
    int workers = 1;
};

enum class ArrowStatus { holds, fails, degenerate };

struct ArrowVerdict {
    ArrowStatus status = ArrowStatus::holds;
    std::optional<Coloring> witness; // present exactly when status == fails
    std::string reason;              // set for degenerate and vacuous outcomes
    SearchStats stats;

    bool holds() const { return status == ArrowStatus::holds; }
};

// Precomputed domain and host blocks for one query. Exposed so witness
// validation and the exhaustive oracle can recount independently of the
// pruned search.
struct ArrowInstance {
    std::vector<std::vector<int>> copies;   // substructure mode: A-copies in C
    std::vector<Embedding> embeddings;      // embedding mode: Emb(A, C)
    std::vector<std::vector<int>> blocks;   // per host B-object: domain indices
    int domain_size = 0;
};

ArrowInstance build_arrow_instance(const ArrowQuery& q);

// A coloring is bad when every host block sees at least d+1 distinct colors;
// the arrow holds exactly when no bad coloring exists. Backtracking over the
// domain with color-symmetry breaking (a new color index may be used only
// once all smaller ones appear) and per-block propagation. `workers` <= 0
// selects the available hardware parallelism; the verdict does not depend
// on it.
ArrowVerdict check_arrow(const ArrowQuery& q, const Limits& limits = Limits::defaults(),
                         int workers = 1);

// Straight recount, no search-path sharing with check_arrow.
bool validate_witness(const ArrowQuery& q, const Coloring& coloring);

// Exhaustive r^N oracle over all colorings; domain capped by
// limits.exhaustive_domain_cap. Returns a bad coloring or nullopt.
std::optional<Coloring> exhaustive_bad_coloring(const ArrowQuery& q,
                                                const Limits& limits = Limits::defaults());

struct DegreeCell {
    int b_index = 0;
    int r = 2;
    // Least d verified to hold with some pool C. When budget_exceeded is
    // set, smaller d values were skipped unverified and the true minimum
    // over the pool may be lower.
    std::optional<int> minimal_d;
    int achieved_c_index = -1;
    std::optional<Coloring> refuting_witness; // bad coloring at minimal_d - 1 on the achieving C
    bool budget_exceeded = false;
};

// Upper-bound evidence only: arrow success is monotone under enlarging C, so
// pool failures do not certify class-level lower bounds.
struct DegreeReport {
    std::vector<DegreeCell> cells;
    int pool_lower_bound = 0; // max resolved minimal_d across cells
};

DegreeReport degree_evidence(const FiniteStructure& a, std::span<const FiniteStructure> b_pool,
                             std::span<const FiniteStructure> c_pool, int r_max, ArrowMode mode,
                             const Limits& limits = Limits::defaults(), int workers = 1);

struct TwoDegreesReport {
    int d_sub = 0;
    int d_emb = 0;
    long long aut_order = 0;
    bool bound_ok = false; // d_sub <= d_emb <= |Aut(A)| * d_sub on this instance
    std::vector<ArrowVerdict> sub_sweep; // verdicts for d = 1..d_sub
    std::vector<ArrowVerdict> emb_sweep; // verdicts for d = 1..d_emb
};

TwoDegreesReport two_degrees_check(const FiniteStructure& a, const FiniteStructure& b,
                                   const FiniteStructure& c, int r,
                                   const Limits& limits = Limits::defaults(), int workers = 1);

} // namespace frs
