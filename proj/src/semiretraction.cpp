#include "frs/semiretraction.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "frs/errors.hpp"

namespace frs {

void CrossMap::validate() const {
    if (static_cast<int>(map.size()) != source.size())
        throw MalformedError("cross map is not total on its source universe");
    std::vector<char> used(target.size(), 0);
    for (int v : map) {
        if (v < 0 || v >= target.size())
            throw MalformedError("cross map image outside target universe");
        if (used[v]) throw MalformedError("cross map is not injective");
        used[v] = 1;
    }
}

std::vector<int> CrossMap::apply_tuple(std::span<const int> t) const {
    std::vector<int> out(t.size());
    for (size_t i = 0; i < t.size(); ++i) out[i] = map[t[i]];
    return out;
}

std::optional<int> CrossMap::preimage(int y) const {
    for (size_t i = 0; i < map.size(); ++i)
        if (map[i] == y) return static_cast<int>(i);
    return std::nullopt;
}

void SemiRetractionWitness::validate() const {
    g.validate();
    f.validate();
    if (!(g.target == f.source))
        throw FragmentError("witness fragments disagree: g's target is not f's source");
    if (!(g.source.sig() == f.target.sig()))
        throw SignatureError("f must land in the signature of g's source");
    if (depth < 1) throw MalformedError("witness depth must be >= 1");
}

std::vector<int> SemiRetractionWitness::fg_tuple(std::span<const int> t) const {
    std::vector<int> out(t.size());
    for (size_t i = 0; i < t.size(); ++i) out[i] = fg(t[i]);
    return out;
}

namespace {

// Iterate all tuples of a fixed length over 0..n-1 in lexicographic order.
struct TupleOdometer {
    std::vector<int> t;
    int n;

    explicit TupleOdometer(int len, int n_) : t(len, 0), n(n_) {}
    bool next() {
        int pos = static_cast<int>(t.size()) - 1;
        while (pos >= 0 && t[pos] + 1 == n) { t[pos] = 0; --pos; }
        if (pos < 0) return false;
        ++t[pos];
        return true;
    }
};

} // namespace

RespectReport check_qftp_respecting(const CrossMap& h, int n_max, const Limits& limits) {
    h.validate();
    if (n_max > limits.max_tuple_len) throw BudgetError("respect check depth exceeds budget");
    RespectReport report;
    long long steps = 0;
    for (int len = 1; len <= n_max; ++len) {
        // class representative: first tuple (in lex order) with each source type
        std::unordered_map<std::string, std::pair<std::vector<int>, std::string>> classes;
        TupleOdometer odo(len, h.source.size());
        while (true) {
            steps += len;
            if (steps > limits.step_budget) throw BudgetError("respect check step budget exceeded");
            std::string src_key = qftp_fingerprint_unchecked(h.source, odo.t).key();
            std::vector<int> image = h.apply_tuple(odo.t);
            std::string img_key = qftp_fingerprint_unchecked(h.target, image).key();
            auto [it, inserted] = classes.try_emplace(src_key, odo.t, img_key);
            if (!inserted && it->second.second != img_key) {
                report.counterexample = TuplePair{it->second.first, odo.t};
                report.tuples_checked = report.tuples_checked + 1;
                return report;
            }
            ++report.tuples_checked;
            if (!odo.next()) break;
        }
    }
    report.pass = true;
    return report;
}

CompositionReport check_composition_embedding(const SemiRetractionWitness& w) {
    w.validate();
    CompositionReport report;
    const FiniteStructure& a = w.a_dom();
    const FiniteStructure& host = w.a_host();
    std::vector<int> comp(a.size());
    for (int x = 0; x < a.size(); ++x) comp[x] = w.fg(x);

    std::vector<char> used(host.size(), 0);
    for (int v : comp) {
        if (used[v]) {
            report.detail = "composition is not injective";
            return report;
        }
        used[v] = 1;
    }
    if (is_embedding(a, host, comp)) {
        report.pass = true;
        return report;
    }
    // locate a violated fact for the report
    const auto& rels = a.sig().relations;
    for (size_t r = 0; r < rels.size(); ++r) {
        TupleOdometer odo(rels[r].arity, a.size());
        while (true) {
            std::vector<int> image(odo.t.size());
            for (size_t i = 0; i < odo.t.size(); ++i) image[i] = comp[odo.t[i]];
            if (a.rel_holds(static_cast<int>(r), odo.t) !=
                host.rel_holds(static_cast<int>(r), image)) {
                report.detail = "relation " + rels[r].name + " not preserved/reflected";
                return report;
            }
            if (!odo.next()) break;
        }
    }
    const auto& funs = a.sig().functions;
    for (size_t f = 0; f < funs.size(); ++f) {
        TupleOdometer odo(funs[f].arity, a.size());
        while (true) {
            std::vector<int> image(odo.t.size());
            for (size_t i = 0; i < odo.t.size(); ++i) image[i] = comp[odo.t[i]];
            if (host.fun_value(static_cast<int>(f), image) !=
                comp[a.fun_value(static_cast<int>(f), odo.t)]) {
                report.detail = "function " + funs[f].name + " does not commute";
                return report;
            }
            if (!odo.next()) break;
        }
    }
    report.detail = "composition fails to embed";
    return report;
}

SemiRetractionReport verify_semiretraction(const SemiRetractionWitness& w, const Limits& limits) {
    w.validate();
    SemiRetractionReport report;
    report.g_respecting = check_qftp_respecting(w.g, w.depth, limits);
    report.f_respecting = check_qftp_respecting(w.f, w.depth, limits);
    report.composition = check_composition_embedding(w);
    return report;
}

RestrictedReport check_restricted_inverse_images(const CrossMap& f,
                                                 const FiniteStructure& a_pattern_structure,
                                                 std::span<const int> a_pattern,
                                                 std::span<const int> b0, std::span<const int> a0,
                                                 const Limits& limits) {
    f.validate();
    if (!(a_pattern_structure.sig() == f.target.sig()))
        throw SignatureError("pattern tuple must live in the target signature");
    if (a_pattern.size() != a0.size())
        throw MalformedError("pattern and witness tuples must have equal length");
    RestrictedReport report;

    std::string pattern_key = qftp_fingerprint(a_pattern_structure, a_pattern, limits).key();
    std::string a0_key = qftp_fingerprint(f.source, a0, limits).key();

    std::vector<int> fb0 = f.apply_tuple(b0);
    GeneratedSubstructure closure = generated_substructure(f.target, fb0);
    const std::vector<int>& universe = closure.inclusion.map; // global points of <f(b0)>

    std::set<int> b0_set(b0.begin(), b0.end());

    TupleOdometer odo(static_cast<int>(a_pattern.size()), static_cast<int>(universe.size()));
    while (true) {
        ++report.candidates_checked;
        if (report.candidates_checked * static_cast<long long>(a_pattern.size()) >
            limits.step_budget)
            throw BudgetError("restricted-inverse-image scan budget exceeded");
        std::vector<int> c1(odo.t.size());
        for (size_t i = 0; i < odo.t.size(); ++i) c1[i] = universe[odo.t[i]];
        if (qftp_fingerprint_unchecked(f.target, c1).key() == pattern_key) {
            std::vector<int> c0(c1.size());
            bool escaped = false, outside = false;
            for (size_t i = 0; i < c1.size(); ++i) {
                std::optional<int> pre = f.preimage(c1[i]);
                if (!pre) {
                    escaped = true;
                    break;
                }
                c0[i] = *pre;
                if (!b0_set.count(c0[i])) outside = true;
            }
            if (escaped || outside ||
                qftp_fingerprint_unchecked(f.source, c0).key() != a0_key) {
                report.failure = escaped  ? RestrictedFailure::escapes_image
                                 : outside ? RestrictedFailure::outside_b0
                                           : RestrictedFailure::type_mismatch;
                report.counterexample = c1;
                return report;
            }
        }
        if (!odo.next()) break;
    }
    report.pass = true;
    return report;
}

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

std::vector<int> global_to_local(const GeneratedSubstructure& s, int ambient_size) {
    std::vector<int> loc(ambient_size, -1);
    for (size_t i = 0; i < s.inclusion.map.size(); ++i) loc[s.inclusion.map[i]] = static_cast<int>(i);
    return loc;
}

} // namespace

EmbeddingColoring induced_coloring(const SemiRetractionWitness& w, std::span<const int> a_gens,
                                   std::span<const int> c_colors, const Limits& limits) {
    (void)limits;
    w.validate();
    std::vector<int> fg_gens = w.fg_tuple(a_gens);
    GeneratedSubstructure a_struct = generated_substructure(w.a_host(), fg_gens);
    {
        std::set<int> ran(fg_gens.begin(), fg_gens.end());
        if (ran.size() != a_struct.inclusion.map.size())
            throw FragmentError("generator tuple does not enumerate a substructure");
    }
    std::vector<Embedding> a_domain = enumerate_embeddings(a_struct.structure, w.a_host());
    if (c_colors.size() != a_domain.size())
        throw MalformedError("coloring size does not match Emb(A, host)");
    std::unordered_map<std::vector<int>, int, VecHash> a_index;
    for (size_t i = 0; i < a_domain.size(); ++i)
        a_index.emplace(a_domain[i].map, static_cast<int>(i));

    std::vector<int> g_gens = w.g.apply_tuple(a_gens);
    EmbeddingColoring out;
    out.pattern = generated_substructure(w.b_frag(), g_gens);
    out.domain = enumerate_embeddings(out.pattern.structure, w.b_frag());
    std::vector<int> a_local = global_to_local(a_struct, w.a_host().size());
    std::vector<int> aprime_local = global_to_local(out.pattern, w.b_frag().size());

    out.colors.reserve(out.domain.size());
    for (const auto& e : out.domain) {
        // restriction of e to the g-image generators, pushed through f
        std::vector<int> rmap(a_struct.structure.size(), -1);
        for (size_t i = 0; i < a_gens.size(); ++i) {
            int gi = g_gens[i];
            int li = aprime_local[gi];
            int target = w.f.map[e.map[li]];
            int src_local = a_local[fg_gens[i]];
            if (rmap[src_local] >= 0 && rmap[src_local] != target)
                throw InternalError("inconsistent restriction of an embedding");
            rmap[src_local] = target;
        }
        for (int v : rmap)
            if (v < 0) throw InternalError("restriction does not cover the pattern");
        if (!is_embedding(a_struct.structure, w.a_host(), rmap))
            throw FragmentError("restriction of an embedding does not land as an embedding");
        auto it = a_index.find(rmap);
        if (it == a_index.end())
            throw InternalError("restricted embedding missing from Emb(A, host)");
        out.colors.push_back(c_colors[it->second]);
    }
    return out;
}

TransferReport transfer_pipeline_check(const SemiRetractionWitness& w,
                                       std::span<const int> a_gens, std::span<const int> b_gens,
                                       std::span<const int> c_colors, const Embedding& h,
                                       const Limits& limits) {
    w.validate();
    TransferReport report;

    std::vector<int> fg_a = w.fg_tuple(a_gens);
    std::vector<int> fg_b = w.fg_tuple(b_gens);
    GeneratedSubstructure a_struct = generated_substructure(w.a_host(), fg_a);
    GeneratedSubstructure b_struct = generated_substructure(w.a_host(), fg_b);
    std::vector<int> g_a = w.g.apply_tuple(a_gens);
    std::vector<int> g_b = w.g.apply_tuple(b_gens);
    GeneratedSubstructure aprime = generated_substructure(w.b_frag(), g_a);
    GeneratedSubstructure bprime = generated_substructure(w.b_frag(), g_b);

    {
        std::set<int> ran_a(fg_a.begin(), fg_a.end()), ran_b(fg_b.begin(), fg_b.end());
        if (ran_a.size() != a_struct.inclusion.map.size() ||
            ran_b.size() != b_struct.inclusion.map.size())
            throw FragmentError("generator tuples must enumerate substructures");
    }
    if (static_cast<int>(h.map.size()) != bprime.structure.size() ||
        !is_embedding(bprime.structure, w.b_frag(), h.map))
        throw MalformedError("h must embed <g(B-gens)> into the B-side fragment");

    EmbeddingColoring c0 = induced_coloring(w, a_gens, c_colors, limits);
    std::unordered_map<std::vector<int>, int, VecHash> c0_index;
    for (size_t i = 0; i < c0.domain.size(); ++i)
        c0_index.emplace(c0.domain[i].map, static_cast<int>(i));
    std::vector<Embedding> a_domain = enumerate_embeddings(a_struct.structure, w.a_host());
    std::unordered_map<std::vector<int>, int, VecHash> a_index;
    for (size_t i = 0; i < a_domain.size(); ++i)
        a_index.emplace(a_domain[i].map, static_cast<int>(i));

    std::vector<int> a_local = global_to_local(a_struct, w.a_host().size());
    std::vector<int> b_local = global_to_local(b_struct, w.a_host().size());
    std::vector<int> bprime_local = global_to_local(bprime, w.b_frag().size());
    std::vector<int> aprime_local = global_to_local(aprime, w.b_frag().size());

    // k = f(h restricted to g(B-gens)), as a map on B's local universe
    std::vector<int> k(b_struct.structure.size(), -1);
    for (size_t i = 0; i < b_gens.size(); ++i) {
        int src_local = b_local[fg_b[i]];
        int target = w.f.map[h.map[bprime_local[g_b[i]]]];
        if (k[src_local] >= 0 && k[src_local] != target)
            throw InternalError("inconsistent restriction for k");
        k[src_local] = target;
    }
    for (int v : k)
        if (v < 0) throw InternalError("k restriction does not cover B");
    if (!is_embedding(b_struct.structure, w.a_host(), k))
        throw FragmentError("constructed k is not an embedding of B into the host");
    report.k_map = k;

    // fg(point of a_dom) -> point of a_dom, for pulling j back through fg
    std::vector<int> fg_inverse(w.a_host().size(), -1);
    for (int x = 0; x < w.a_dom().size(); ++x) fg_inverse[w.fg(x)] = x;

    std::set<int> colors_k, colors_h;
    bool all_equal = true;
    std::vector<Embedding> j_list = enumerate_embeddings(a_struct.structure, b_struct.structure);
    for (const auto& j : j_list) {
        // c(k ∘ j)
        std::vector<int> kj(j.map.size());
        for (size_t i = 0; i < j.map.size(); ++i) kj[i] = k[j.map[i]];
        auto it_kj = a_index.find(kj);
        if (it_kj == a_index.end()) throw InternalError("k∘j missing from Emb(A, host)");
        int c_kj = c_colors[it_kj->second];

        // j' = unique embedding A' -> B' extending g((fg)^{-1}(j)) on the generators
        std::vector<std::pair<int, int>> pinned;
        pinned.reserve(a_gens.size());
        for (size_t i = 0; i < a_gens.size(); ++i) {
            int a_local_idx = a_local[fg_a[i]]; // local of fg(a_i) in A
            int image_global = b_struct.inclusion.map[j.map[a_local_idx]];
            int pulled = fg_inverse[image_global];
            if (pulled < 0) throw InternalError("j image escapes fg(a_dom)");
            pinned.emplace_back(aprime_local[g_a[i]], bprime_local[w.g.map[pulled]]);
        }
        std::vector<Embedding> jprime =
            enumerate_embeddings_extending(aprime.structure, bprime.structure, pinned);
        if (jprime.size() != 1)
            throw InternalError("extension of the pulled-back embedding is not unique (" +
                                std::to_string(jprime.size()) + " candidates)");

        // c0(h ∘ j')
        std::vector<int> hj(jprime[0].map.size());
        for (size_t i = 0; i < hj.size(); ++i) hj[i] = h.map[jprime[0].map[i]];
        auto it_hj = c0_index.find(hj);
        if (it_hj == c0_index.end()) throw InternalError("h∘j' missing from Emb(A', B-side)");
        int c0_hj = c0.colors[it_hj->second];

        colors_k.insert(c_kj);
        colors_h.insert(c0_hj);
        if (c_kj != c0_hj) all_equal = false;
        ++report.checked;
    }
    report.identity_ok = all_equal && report.checked > 0;
    report.colors_on_k = static_cast<int>(colors_k.size());
    report.colors_on_h = static_cast<int>(colors_h.size());
    return report;
}

std::optional<int> map_apply(const FiniteMap& m, int x) {
    for (const auto& [k, v] : m)
        if (k == x) return v;
    return std::nullopt;
}

std::optional<FiniteMap> map_compose(const FiniteMap& outer, const FiniteMap& inner) {
    FiniteMap out;
    out.reserve(inner.size());
    for (const auto& [x, y] : inner) {
        std::optional<int> z = map_apply(outer, y);
        if (!z) return std::nullopt;
        out.emplace_back(x, *z);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FiniteMap map_push(const CrossMap& f, const FiniteMap& psi) {
    FiniteMap out;
    out.reserve(psi.size());
    for (const auto& [x, y] : psi) out.emplace_back(f.map[x], f.map[y]);
    std::sort(out.begin(), out.end());
    return out;
}

FiniteMap cross_restriction(const CrossMap& f, std::span<const int> domain_points) {
    FiniteMap out;
    out.reserve(domain_points.size());
    for (int x : domain_points) out.emplace_back(x, f.map[x]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<FiniteMap> preadjunction_translate(const SemiRetractionWitness& w,
                                                 std::span<const int> a_points,
                                                 const FiniteMap& psi) {
    FiniteMap out;
    std::set<int> seen;
    for (int x : a_points) {
        if (!seen.insert(x).second) continue;
        std::optional<int> mid = map_apply(psi, w.g.map[x]);
        if (!mid) return std::nullopt;
        out.emplace_back(x, w.f.map[*mid]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FiniteMap> enumerate_type_preserving_injections(
    const FiniteStructure& dom_structure, std::span<const int> domain_tuple,
    const FiniteStructure& cod_structure, std::span<const int> codomain_tuple,
    const Limits& limits) {
    // distinct points, in increasing order
    std::vector<int> dom(domain_tuple.begin(), domain_tuple.end());
    std::sort(dom.begin(), dom.end());
    dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
    std::vector<int> cod(codomain_tuple.begin(), codomain_tuple.end());
    std::sort(cod.begin(), cod.end());
    cod.erase(std::unique(cod.begin(), cod.end()), cod.end());

    std::vector<FiniteMap> out;
    if (dom.size() > cod.size()) return out;
    std::string dom_key = qftp_fingerprint(dom_structure, dom, limits).key();

    std::vector<int> image(dom.size(), -1);
    std::vector<char> used(cod.size(), 0);
    auto recurse = [&](auto&& self, size_t pos) -> void {
        if (pos == dom.size()) {
            std::vector<int> mapped(dom.size());
            for (size_t i = 0; i < dom.size(); ++i) mapped[i] = cod[image[i]];
            if (qftp_fingerprint_unchecked(cod_structure, mapped).key() == dom_key) {
                FiniteMap m;
                for (size_t i = 0; i < dom.size(); ++i) m.emplace_back(dom[i], mapped[i]);
                out.push_back(std::move(m));
            }
            return;
        }
        for (size_t c = 0; c < cod.size(); ++c) {
            if (used[c]) continue;
            image[pos] = static_cast<int>(c);
            used[c] = 1;
            self(self, pos + 1);
            used[c] = 0;
            image[pos] = -1;
        }
    };
    recurse(recurse, 0);
    return out;
}

PreadjunctionReport preadjunction_check(const SemiRetractionWitness& w, int max_len,
                                        const Limits& limits) {
    w.validate();
    PreadjunctionReport report;
    long long steps = 0;

    std::vector<std::vector<int>> a_tuples, c_tuples;
    for (int len = 1; len <= max_len; ++len) {
        TupleOdometer odo_a(len, w.a_dom().size());
        while (true) {
            a_tuples.push_back(odo_a.t);
            if (!odo_a.next()) break;
        }
        TupleOdometer odo_c(len, w.b_frag().size());
        while (true) {
            c_tuples.push_back(odo_c.t);
            if (!odo_c.next()) break;
        }
    }

    for (const auto& a_tuple : a_tuples) {
        for (const auto& b_tuple : a_tuples) {
            std::vector<FiniteMap> vs = enumerate_type_preserving_injections(
                w.a_dom(), a_tuple, w.a_dom(), b_tuple, limits);
            if (vs.empty()) continue;
            std::vector<int> g_b = w.g.apply_tuple(b_tuple);
            for (const auto& c_tuple : c_tuples) {
                std::vector<FiniteMap> psis = enumerate_type_preserving_injections(
                    w.b_frag(), g_b, w.b_frag(), c_tuple, limits);
                if (psis.empty()) continue;
                for (const auto& v : vs) {
                    // w-morphism: g applied to v
                    FiniteMap gv = map_push(w.g, v);
                    for (const auto& psi : psis) {
                        steps += static_cast<long long>(a_tuple.size());
                        if (steps > limits.step_budget)
                            throw BudgetError("pre-adjunction check budget exceeded");
                        std::optional<FiniteMap> psi_gv = map_compose(psi, gv);
                        if (!psi_gv) {
                            report.failure = "psi ∘ g(v) escapes its domain";
                            return report;
                        }
                        std::optional<FiniteMap> lhs =
                            preadjunction_translate(w, a_tuple, *psi_gv);
                        std::optional<FiniteMap> phi_psi =
                            preadjunction_translate(w, b_tuple, psi);
                        std::optional<FiniteMap> rhs;
                        if (phi_psi) rhs = map_compose(*phi_psi, v);
                        if (!lhs || !rhs || *lhs != *rhs) {
                            report.failure = "translation identity fails";
                            return report;
                        }
                        ++report.identities_checked;
                    }
                }
            }
        }
    }
    report.pass = true;
    return report;
}

} // namespace frs
