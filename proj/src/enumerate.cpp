#include "frs/enumerate.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "frs/errors.hpp"

namespace frs {

namespace {

// Precomputed check schedule: when source element `i` is assigned, verify
// exactly the relation tuples and function applications that become fully
// mapped at that point.
struct CheckPlan {
    // per depth: relation tuples (rel, tuple) over elements <= depth containing depth
    std::vector<std::vector<std::pair<int, std::vector<int>>>> rel_checks;
    // per depth: function applications (fun, args, value) whose args and value
    // lie within 0..depth and which involve depth (in args or as value)
    std::vector<std::vector<std::tuple<int, std::vector<int>, int>>> fun_checks;
};

CheckPlan build_plan(const FiniteStructure& a) {
    int n = a.size();
    CheckPlan plan;
    plan.rel_checks.resize(n);
    plan.fun_checks.resize(n);
    const auto& rels = a.sig().relations;
    for (size_t r = 0; r < rels.size(); ++r) {
        int arity = rels[r].arity;
        std::vector<int> t(arity, 0);
        while (true) {
            int mx = *std::max_element(t.begin(), t.end());
            plan.rel_checks[mx].emplace_back(static_cast<int>(r), t);
            int pos = arity - 1;
            while (pos >= 0 && t[pos] + 1 == n) { t[pos] = 0; --pos; }
            if (pos < 0) break;
            ++t[pos];
        }
    }
    const auto& funs = a.sig().functions;
    for (size_t f = 0; f < funs.size(); ++f) {
        int arity = funs[f].arity;
        std::vector<int> t(arity, 0);
        while (true) {
            int v = a.fun_value(static_cast<int>(f), t);
            int mx = v;
            for (int x : t) mx = std::max(mx, x);
            plan.fun_checks[mx].emplace_back(static_cast<int>(f), t, v);
            int pos = arity - 1;
            while (pos >= 0 && t[pos] + 1 == n) { t[pos] = 0; --pos; }
            if (pos < 0) break;
            ++t[pos];
        }
    }
    return plan;
}

bool consistent_at(const FiniteStructure& a, const FiniteStructure& c, const CheckPlan& plan,
                   const std::vector<int>& map, int depth) {
    thread_local std::vector<int> image;
    for (const auto& [r, tuple] : plan.rel_checks[depth]) {
        image.resize(tuple.size());
        for (size_t i = 0; i < tuple.size(); ++i) image[i] = map[tuple[i]];
        if (a.rel_holds(r, tuple) != c.rel_holds(r, image)) return false;
    }
    for (const auto& [f, args, value] : plan.fun_checks[depth]) {
        image.resize(args.size());
        for (size_t i = 0; i < args.size(); ++i) image[i] = map[args[i]];
        if (c.fun_value(f, image) != map[value]) return false;
    }
    return true;
}

void search(const FiniteStructure& a, const FiniteStructure& c, const CheckPlan& plan,
            std::vector<int>& map, std::vector<char>& used, int depth,
            std::vector<Embedding>& out) {
    int n = a.size();
    if (depth == n) {
        out.push_back(Embedding{map});
        return;
    }
    if (map[depth] >= 0) {
        if (consistent_at(a, c, plan, map, depth)) search(a, c, plan, map, used, depth + 1, out);
        return;
    }
    for (int v = 0; v < c.size(); ++v) {
        if (used[v]) continue;
        map[depth] = v;
        used[v] = 1;
        if (consistent_at(a, c, plan, map, depth)) search(a, c, plan, map, used, depth + 1, out);
        used[v] = 0;
        map[depth] = -1;
    }
}

} // namespace

std::vector<Embedding> enumerate_embeddings_extending(
    const FiniteStructure& a, const FiniteStructure& c,
    std::span<const std::pair<int, int>> pinned) {
    if (!(a.sig() == c.sig())) throw SignatureError("embedding between different signatures");
    std::vector<Embedding> out;
    if (a.size() > c.size()) return out;
    std::vector<int> map(a.size(), -1);
    std::vector<char> used(c.size(), 0);
    for (auto [src, dst] : pinned) {
        if (src < 0 || src >= a.size() || dst < 0 || dst >= c.size())
            throw MalformedError("pinned pair outside universe");
        if (map[src] >= 0 && map[src] != dst) return out; // contradictory pins
        if (map[src] < 0 && used[dst]) return out;        // pin collides
        map[src] = dst;
        used[dst] = 1;
    }
    CheckPlan plan = build_plan(a);
    search(a, c, plan, map, used, 0, out);
    return out;
}

std::vector<Embedding> enumerate_embeddings(const FiniteStructure& a, const FiniteStructure& c) {
    return enumerate_embeddings_extending(a, c, {});
}

bool is_embedding(const FiniteStructure& a, const FiniteStructure& c, std::span<const int> map) {
    if (!(a.sig() == c.sig())) return false;
    if (static_cast<int>(map.size()) != a.size()) return false;
    std::vector<char> used(c.size(), 0);
    for (int v : map) {
        if (v < 0 || v >= c.size() || used[v]) return false;
        used[v] = 1;
    }
    CheckPlan plan = build_plan(a);
    std::vector<int> m(map.begin(), map.end());
    for (int depth = 0; depth < a.size(); ++depth)
        if (!consistent_at(a, c, plan, m, depth)) return false;
    return true;
}

std::vector<std::vector<int>> enumerate_copies(const FiniteStructure& a, const FiniteStructure& c) {
    std::set<std::vector<int>> images;
    for (const auto& e : enumerate_embeddings(a, c)) {
        std::vector<int> img = e.map;
        std::sort(img.begin(), img.end());
        images.insert(std::move(img));
    }
    return std::vector<std::vector<int>>(images.begin(), images.end());
}

namespace {

std::vector<int> compose_perm(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(f.size());
    for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];
    return h;
}

} // namespace

AutomorphismGroup automorphism_group(const FiniteStructure& a) {
    AutomorphismGroup result;
    std::vector<Embedding> all = enumerate_embeddings(a, a);
    result.order = static_cast<long long>(all.size());
    result.is_rigid = result.order == 1;

    // Greedy reduction to a small generating set via closure testing.
    std::set<std::vector<int>> known;
    std::vector<int> identity(a.size());
    for (int i = 0; i < a.size(); ++i) identity[i] = i;
    known.insert(identity);
    for (const auto& e : all) {
        if (known.count(e.map)) continue;
        result.generators.push_back(e.map);
        // close under composition with everything known
        std::vector<std::vector<int>> frontier = {e.map};
        known.insert(e.map);
        while (!frontier.empty()) {
            std::vector<std::vector<int>> next;
            for (const auto& g : frontier) {
                std::vector<std::vector<int>> snapshot(known.begin(), known.end());
                for (const auto& h : snapshot) {
                    for (const auto& prod : {compose_perm(g, h), compose_perm(h, g)}) {
                        if (known.insert(prod).second) next.push_back(prod);
                    }
                }
            }
            frontier = std::move(next);
        }
    }
    return result;
}

QfFingerprint canonical_fingerprint(const FiniteStructure& a, const Limits& limits) {
    int n = a.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    long long steps = 0;
    bool have = false;
    QfFingerprint best;
    std::string best_key;
    do {
        QfFingerprint fp = qftp_fingerprint_unchecked(a, perm);
        std::string key = fp.key();
        if (!have || key < best_key) {
            best = std::move(fp);
            best_key = std::move(key);
            have = true;
        }
        steps += n;
        if (steps > limits.step_budget)
            throw BudgetError("canonical fingerprint budget exceeded (universe too large)");
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<FiniteStructure> age_enumerate(const FiniteStructure& m, int k, const Limits& limits) {
    if (k < 1) throw MalformedError("age bound must be >= 1");
    std::vector<FiniteStructure> classes;
    std::set<std::string> seen;
    long long steps = 0;
    for (int len = 1; len <= k && len <= m.size(); ++len) {
        std::vector<int> gens(len);
        for (int i = 0; i < len; ++i) gens[i] = i;
        while (true) {
            GeneratedSubstructure sub = generated_substructure(m, gens);
            steps += sub.structure.size() * sub.structure.size();
            if (steps > limits.step_budget) throw BudgetError("age enumeration budget exceeded");
            std::string key = canonical_fingerprint(sub.structure, limits).key();
            if (seen.insert(key).second) classes.push_back(std::move(sub.structure));
            // next combination in lexicographic order
            int pos = len - 1;
            while (pos >= 0 && gens[pos] == m.size() - len + pos) --pos;
            if (pos < 0) break;
            ++gens[pos];
            for (int i = pos + 1; i < len; ++i) gens[i] = gens[i - 1] + 1;
        }
    }
    return classes;
}

} // namespace frs
