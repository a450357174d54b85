#include "frs/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "frs/errors.hpp"

namespace frs {

namespace {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b9;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace

void ArrowQuery::validate() const {
    if (!(c.sig() == b.sig()) || !(b.sig() == a.sig()))
        throw SignatureError("arrow query structures must share a signature");
    if (r < 2) throw MalformedError("arrow requires r >= 2");
    if (d < 1) throw MalformedError("arrow requires d >= 1");
}

ArrowInstance build_arrow_instance(const ArrowQuery& q) {
    q.validate();
    ArrowInstance inst;
    if (q.mode == ArrowMode::substructure) {
        inst.copies = enumerate_copies(q.a, q.c);
        inst.domain_size = static_cast<int>(inst.copies.size());
        std::vector<std::vector<int>> b_copies = enumerate_copies(q.b, q.c);
        inst.blocks.reserve(b_copies.size());
        for (const auto& host : b_copies) {
            std::vector<int> block;
            for (size_t i = 0; i < inst.copies.size(); ++i) {
                if (std::includes(host.begin(), host.end(), inst.copies[i].begin(),
                                  inst.copies[i].end()))
                    block.push_back(static_cast<int>(i));
            }
            inst.blocks.push_back(std::move(block));
        }
    } else {
        inst.embeddings = enumerate_embeddings(q.a, q.c);
        inst.domain_size = static_cast<int>(inst.embeddings.size());
        std::unordered_map<std::vector<int>, int, VecHash> index;
        for (size_t i = 0; i < inst.embeddings.size(); ++i)
            index.emplace(inst.embeddings[i].map, static_cast<int>(i));
        std::vector<Embedding> b_embs = enumerate_embeddings(q.b, q.c);
        std::vector<Embedding> ab = enumerate_embeddings(q.a, q.b);
        inst.blocks.reserve(b_embs.size());
        for (const auto& h : b_embs) {
            std::vector<int> block;
            block.reserve(ab.size());
            for (const auto& e : ab) {
                std::vector<int> comp(e.map.size());
                for (size_t i = 0; i < e.map.size(); ++i) comp[i] = h.map[e.map[i]];
                auto it = index.find(comp);
                if (it == index.end())
                    throw InternalError("composed embedding missing from domain");
                block.push_back(it->second);
            }
            inst.blocks.push_back(std::move(block));
        }
    }
    return inst;
}

namespace {

// Bad-coloring CSP over precomputed blocks. Every block must see at least
// d+1 distinct colors; prune a branch as soon as some block cannot.
class BadColoringSearch {
public:
    BadColoringSearch(const ArrowInstance& inst, int r, int d)
        : blocks_(inst.blocks), n_(inst.domain_size), r_(r), need_(d + 1) {
        member_of_.resize(n_);
        for (size_t b = 0; b < blocks_.size(); ++b)
            for (int e : blocks_[b]) member_of_[e].push_back(static_cast<int>(b));
    }

    // Enumerates symmetry-broken prefixes of the first `depth` positions.
    std::vector<std::vector<int>> prefixes(int depth) const {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        expand_prefix(cur, depth, out);
        return out;
    }

    struct WorkerState {
        std::vector<int> colors;
        std::vector<std::vector<int>> block_color_count;
        std::vector<int> block_assigned;
        std::vector<int> block_distinct;
        long long nodes = 0;
    };

    WorkerState fresh_state() const {
        WorkerState s;
        s.colors.assign(n_, -1);
        s.block_color_count.assign(blocks_.size(), std::vector<int>(r_, 0));
        s.block_assigned.assign(blocks_.size(), 0);
        s.block_distinct.assign(blocks_.size(), 0);
        return s;
    }

    bool assign(WorkerState& s, int elem, int color) const {
        s.colors[elem] = color;
        bool ok = true;
        for (int b : member_of_[elem]) {
            ++s.block_assigned[b];
            if (++s.block_color_count[b][color] == 1) ++s.block_distinct[b];
            int remaining = static_cast<int>(blocks_[b].size()) - s.block_assigned[b];
            int reachable = std::min(s.block_distinct[b] + remaining, r_);
            if (reachable < need_) ok = false;
        }
        return ok;
    }

    void unassign(WorkerState& s, int elem, int color) const {
        s.colors[elem] = -1;
        for (int b : member_of_[elem]) {
            --s.block_assigned[b];
            if (--s.block_color_count[b][color] == 0) --s.block_distinct[b];
        }
    }

    bool dfs(WorkerState& s, int pos, int max_used, const std::atomic<bool>& stop,
             std::vector<int>& found) const {
        if (stop.load(std::memory_order_relaxed)) return false;
        if (pos == n_) {
            found = s.colors;
            return true;
        }
        ++s.nodes;
        int limit = std::min(max_used + 1, r_ - 1);
        for (int color = 0; color <= limit; ++color) {
            bool viable = assign(s, pos, color);
            if (viable &&
                dfs(s, pos + 1, std::max(max_used, color), stop, found))
                return true;
            unassign(s, pos, color);
            if (stop.load(std::memory_order_relaxed)) return false;
        }
        return false;
    }

    int domain_size() const { return n_; }

private:
    void expand_prefix(std::vector<int>& cur, int depth,
                       std::vector<std::vector<int>>& out) const {
        if (static_cast<int>(cur.size()) == depth) {
            out.push_back(cur);
            return;
        }
        int max_used = -1;
        for (int c : cur) max_used = std::max(max_used, c);
        int limit = std::min(max_used + 1, r_ - 1);
        for (int color = 0; color <= limit; ++color) {
            cur.push_back(color);
            expand_prefix(cur, depth, out);
            cur.pop_back();
        }
    }

    const std::vector<std::vector<int>>& blocks_;
    int n_;
    int r_;
    int need_;
    std::vector<std::vector<int>> member_of_;
};

int effective_workers(int workers) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    return std::min(workers, 64);
}

std::optional<std::vector<int>> run_search(const BadColoringSearch& search, int n, int workers,
                                           long long& nodes_out) {
    std::atomic<bool> stop{false};
    std::optional<std::vector<int>> result;
    std::mutex result_mutex;
    std::atomic<long long> nodes{0};

    int prefix_depth = 0;
    std::vector<std::vector<int>> prefixes{{}};
    while (workers > 1 && prefix_depth < n &&
           static_cast<int>(prefixes.size()) < workers * 4) {
        ++prefix_depth;
        prefixes = search.prefixes(prefix_depth);
    }

    std::atomic<size_t> next{0};
    auto worker_fn = [&]() {
        BadColoringSearch::WorkerState state = search.fresh_state();
        while (!stop.load(std::memory_order_relaxed)) {
            size_t idx = next.fetch_add(1);
            if (idx >= prefixes.size()) break;
            const auto& prefix = prefixes[idx];
            bool viable = true;
            int max_used = -1;
            int applied = 0;
            for (int pos = 0; pos < static_cast<int>(prefix.size()); ++pos) {
                if (!search.assign(state, pos, prefix[pos])) {
                    ++applied;
                    viable = false;
                    break;
                }
                ++applied;
                max_used = std::max(max_used, prefix[pos]);
            }
            if (viable) {
                std::vector<int> found;
                if (search.dfs(state, static_cast<int>(prefix.size()), max_used, stop, found)) {
                    std::lock_guard<std::mutex> lock(result_mutex);
                    if (!result) result = std::move(found);
                    stop.store(true, std::memory_order_relaxed);
                }
            }
            for (int pos = applied - 1; pos >= 0; --pos)
                search.unassign(state, pos, prefix[pos]);
        }
        nodes.fetch_add(state.nodes);
    };

    if (workers == 1 || prefixes.size() <= 1) {
        worker_fn();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w) threads.emplace_back(worker_fn);
        for (auto& t : threads) t.join();
    }
    nodes_out = nodes.load();
    return result;
}

} // namespace

ArrowVerdict check_arrow(const ArrowQuery& q, const Limits& limits, int workers) {
    ArrowInstance inst = build_arrow_instance(q);
    ArrowVerdict verdict;
    verdict.stats.domain_size = inst.domain_size;
    verdict.stats.block_count = static_cast<int>(inst.blocks.size());
    verdict.stats.workers = effective_workers(workers);

    if (inst.blocks.empty()) {
        verdict.status = ArrowStatus::degenerate;
        verdict.reason = q.mode == ArrowMode::substructure ? "no host copy of B in C"
                                                           : "no embedding of B into C";
        return verdict;
    }
    if (inst.domain_size == 0) {
        verdict.status = ArrowStatus::holds;
        verdict.reason = "vacuous: no copies of A in C, every host block is monochromatic";
        return verdict;
    }
    if (q.d + 1 > q.r) {
        verdict.status = ArrowStatus::holds;
        verdict.reason = "vacuous: d + 1 exceeds the number of colors";
        return verdict;
    }
    for (const auto& block : inst.blocks) {
        if (static_cast<int>(block.size()) <= q.d) {
            verdict.status = ArrowStatus::holds;
            verdict.reason = "a host block has at most d members";
            return verdict;
        }
    }
    if (inst.domain_size > limits.arrow_domain_cap)
        throw BudgetError("arrow domain of size " + std::to_string(inst.domain_size) +
                          " exceeds cap " + std::to_string(limits.arrow_domain_cap));

    BadColoringSearch search(inst, q.r, q.d);
    long long nodes = 0;
    std::optional<std::vector<int>> bad =
        run_search(search, inst.domain_size, verdict.stats.workers, nodes);
    verdict.stats.nodes = nodes;
    if (bad) {
        verdict.status = ArrowStatus::fails;
        verdict.witness = Coloring{q.mode, std::move(*bad)};
    } else {
        verdict.status = ArrowStatus::holds;
    }
    return verdict;
}

bool validate_witness(const ArrowQuery& q, const Coloring& coloring) {
    ArrowInstance inst = build_arrow_instance(q);
    if (coloring.mode != q.mode) throw MalformedError("coloring mode does not match query");
    if (static_cast<int>(coloring.colors.size()) != inst.domain_size)
        throw MalformedError("coloring is not total on the domain");
    for (int c : coloring.colors)
        if (c < 0 || c >= q.r) throw MalformedError("color index out of range");
    if (inst.blocks.empty()) return false;
    for (const auto& block : inst.blocks) {
        std::vector<char> seen(q.r, 0);
        int distinct = 0;
        for (int e : block)
            if (!seen[coloring.colors[e]]) {
                seen[coloring.colors[e]] = 1;
                ++distinct;
            }
        if (distinct < q.d + 1) return false;
    }
    return true;
}

std::optional<Coloring> exhaustive_bad_coloring(const ArrowQuery& q, const Limits& limits) {
    ArrowInstance inst = build_arrow_instance(q);
    if (inst.domain_size > limits.exhaustive_domain_cap)
        throw BudgetError("domain exceeds exhaustive oracle cap");
    if (inst.blocks.empty()) return std::nullopt;
    std::vector<int> colors(inst.domain_size, 0);
    while (true) {
        bool bad = true;
        for (const auto& block : inst.blocks) {
            std::vector<char> seen(q.r, 0);
            int distinct = 0;
            for (int e : block)
                if (!seen[colors[e]]) {
                    seen[colors[e]] = 1;
                    ++distinct;
                }
            if (distinct < q.d + 1) {
                bad = false;
                break;
            }
        }
        if (bad) return Coloring{q.mode, colors};
        int pos = inst.domain_size - 1;
        while (pos >= 0 && colors[pos] + 1 == q.r) { colors[pos] = 0; --pos; }
        if (pos < 0) break;
        ++colors[pos];
    }
    return std::nullopt;
}

namespace {

// Least d in 1..r for which the arrow holds, with the failing verdicts along
// the way. The sweep stops at r because a block can never see more than r
// colors.
struct Sweep {
    int minimal_d = -1;
    std::vector<ArrowVerdict> verdicts;
    bool degenerate = false;
};

Sweep sweep_minimal_d(const FiniteStructure& a, const FiniteStructure& b,
                      const FiniteStructure& c, int r, ArrowMode mode, const Limits& limits,
                      int workers) {
    Sweep sweep;
    for (int d = 1; d <= r; ++d) {
        ArrowQuery q{c, b, a, r, d, mode};
        ArrowVerdict v = check_arrow(q, limits, workers);
        if (v.status == ArrowStatus::degenerate) {
            sweep.degenerate = true;
            sweep.verdicts.push_back(std::move(v));
            return sweep;
        }
        bool holds = v.holds();
        sweep.verdicts.push_back(std::move(v));
        if (holds) {
            sweep.minimal_d = d;
            return sweep;
        }
    }
    return sweep;
}

} // namespace

DegreeReport degree_evidence(const FiniteStructure& a, std::span<const FiniteStructure> b_pool,
                             std::span<const FiniteStructure> c_pool, int r_max, ArrowMode mode,
                             const Limits& limits, int workers) {
    if (b_pool.empty() || c_pool.empty()) throw MalformedError("degree evidence needs nonempty pools");
    DegreeReport report;
    for (size_t bi = 0; bi < b_pool.size(); ++bi) {
        for (int r = 2; r <= r_max; ++r) {
            DegreeCell cell;
            cell.b_index = static_cast<int>(bi);
            cell.r = r;
            for (int d = 1; d <= r && !cell.minimal_d; ++d) {
                for (size_t ci = 0; ci < c_pool.size(); ++ci) {
                    ArrowQuery q{c_pool[ci], b_pool[bi], a, r, d, mode};
                    try {
                        ArrowVerdict v = check_arrow(q, limits, workers);
                        if (v.holds()) {
                            cell.minimal_d = d;
                            cell.achieved_c_index = static_cast<int>(ci);
                            if (d > 1) {
                                ArrowQuery prev{c_pool[ci], b_pool[bi], a, r, d - 1, mode};
                                ArrowVerdict pv = check_arrow(prev, limits, workers);
                                if (pv.witness) cell.refuting_witness = pv.witness;
                            }
                            break;
                        }
                    } catch (const BudgetError&) {
                        cell.budget_exceeded = true;
                    }
                }
            }
            if (cell.minimal_d)
                report.pool_lower_bound = std::max(report.pool_lower_bound, *cell.minimal_d);
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

TwoDegreesReport two_degrees_check(const FiniteStructure& a, const FiniteStructure& b,
                                   const FiniteStructure& c, int r, const Limits& limits,
                                   int workers) {
    TwoDegreesReport report;
    Sweep sub = sweep_minimal_d(a, b, c, r, ArrowMode::substructure, limits, workers);
    Sweep emb = sweep_minimal_d(a, b, c, r, ArrowMode::embedding, limits, workers);
    if (sub.degenerate || emb.degenerate || sub.minimal_d < 0 || emb.minimal_d < 0)
        throw MalformedError("two-degrees instance is degenerate (B has no host copy in C)");
    report.d_sub = sub.minimal_d;
    report.d_emb = emb.minimal_d;
    report.aut_order = automorphism_group(a).order;
    report.bound_ok = report.d_sub <= report.d_emb &&
                      report.d_emb <= report.aut_order * report.d_sub;
    report.sub_sweep = std::move(sub.verdicts);
    report.emb_sweep = std::move(emb.verdicts);
    return report;
}

} // namespace frs
