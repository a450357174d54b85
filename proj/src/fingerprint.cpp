#include "frs/fingerprint.hpp"

#include <algorithm>

#include "frs/errors.hpp"

namespace frs {

namespace {

// Discovery order for the closure of `gens` under the functions of `m`:
// rounds over a snapshot of the discovered set, function symbols in
// signature order, argument tuples in lexicographic order of local indices.
std::vector<int> discover_closure(const FiniteStructure& m, std::span<const int> gens,
                                  std::vector<int>& local_of) {
    local_of.assign(m.size(), -1);
    std::vector<int> discovered;
    for (int g : gens) {
        if (g < 0 || g >= m.size()) throw MalformedError("generator outside universe");
        if (local_of[g] < 0) {
            local_of[g] = static_cast<int>(discovered.size());
            discovered.push_back(g);
        }
    }
    const auto& funs = m.sig().functions;
    bool grew = true;
    while (grew) {
        grew = false;
        size_t snapshot = discovered.size();
        for (size_t f = 0; f < funs.size(); ++f) {
            int arity = funs[f].arity;
            std::vector<int> idx(arity, 0);
            std::vector<int> args(arity, 0);
            while (true) {
                for (int i = 0; i < arity; ++i) args[i] = discovered[idx[i]];
                int v = m.fun_value(static_cast<int>(f), args);
                if (local_of[v] < 0) {
                    local_of[v] = static_cast<int>(discovered.size());
                    discovered.push_back(v);
                    grew = true;
                }
                int pos = arity - 1;
                while (pos >= 0 && idx[pos] + 1 == static_cast<int>(snapshot)) {
                    idx[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++idx[pos];
            }
        }
    }
    return discovered;
}

QfFingerprint fingerprint_of_closure(const FiniteStructure& m, std::span<const int> gens,
                                     const std::vector<int>& discovered,
                                     const std::vector<int>& local_of) {
    QfFingerprint fp;
    fp.generator_count = static_cast<int>(gens.size());
    fp.local_size = static_cast<int>(discovered.size());
    fp.generator_map.reserve(gens.size());
    for (int g : gens) fp.generator_map.push_back(local_of[g]);

    int k = fp.local_size;
    const auto& funs = m.sig().functions;
    fp.fun_tables.resize(funs.size());
    for (size_t f = 0; f < funs.size(); ++f) {
        int arity = funs[f].arity;
        long long entries = 1;
        for (int i = 0; i < arity; ++i) entries *= k;
        fp.fun_tables[f].reserve(static_cast<size_t>(entries));
        std::vector<int> args(arity, 0);
        for (long long e = 0; e < entries; ++e) {
            long long rest = e;
            for (int i = arity - 1; i >= 0; --i) {
                args[i] = discovered[rest % k];
                rest /= k;
            }
            fp.fun_tables[f].push_back(local_of[m.fun_value(static_cast<int>(f), args)]);
        }
    }

    const auto& rels = m.sig().relations;
    fp.rel_tables.resize(rels.size());
    for (size_t r = 0; r < rels.size(); ++r) {
        int arity = rels[r].arity;
        long long entries = 1;
        for (int i = 0; i < arity; ++i) entries *= k;
        std::vector<int> locals(arity, 0), args(arity, 0);
        for (long long e = 0; e < entries; ++e) {
            long long rest = e;
            for (int i = arity - 1; i >= 0; --i) {
                locals[i] = static_cast<int>(rest % k);
                args[i] = discovered[locals[i]];
                rest /= k;
            }
            if (m.rel_holds(static_cast<int>(r), args)) fp.rel_tables[r].push_back(locals);
        }
    }
    return fp;
}

} // namespace

std::string QfFingerprint::key() const {
    std::vector<int> flat;
    flat.push_back(generator_count);
    flat.push_back(local_size);
    flat.insert(flat.end(), generator_map.begin(), generator_map.end());
    for (const auto& t : fun_tables) {
        flat.push_back(static_cast<int>(t.size()));
        flat.insert(flat.end(), t.begin(), t.end());
    }
    for (const auto& rt : rel_tables) {
        flat.push_back(static_cast<int>(rt.size()));
        for (const auto& t : rt) flat.insert(flat.end(), t.begin(), t.end());
    }
    return std::string(reinterpret_cast<const char*>(flat.data()), flat.size() * sizeof(int));
}

GeneratedSubstructure generated_substructure(const FiniteStructure& m, std::span<const int> gens) {
    if (gens.empty()) throw MalformedError("empty generator tuple");
    std::vector<int> local_of;
    std::vector<int> discovered = discover_closure(m, gens, local_of);
    int k = static_cast<int>(discovered.size());

    FiniteStructure sub(m.sig(), k);
    const auto& rels = m.sig().relations;
    for (size_t r = 0; r < rels.size(); ++r) {
        int arity = rels[r].arity;
        long long entries = 1;
        for (int i = 0; i < arity; ++i) entries *= k;
        std::vector<int> locals(arity, 0), args(arity, 0);
        for (long long e = 0; e < entries; ++e) {
            long long rest = e;
            for (int i = arity - 1; i >= 0; --i) {
                locals[i] = static_cast<int>(rest % k);
                args[i] = discovered[locals[i]];
                rest /= k;
            }
            if (m.rel_holds(static_cast<int>(r), args)) sub.add_rel_tuple(static_cast<int>(r), locals);
        }
    }
    const auto& funs = m.sig().functions;
    for (size_t f = 0; f < funs.size(); ++f) {
        int arity = funs[f].arity;
        long long entries = 1;
        for (int i = 0; i < arity; ++i) entries *= k;
        std::vector<int> locals(arity, 0), args(arity, 0);
        for (long long e = 0; e < entries; ++e) {
            long long rest = e;
            for (int i = arity - 1; i >= 0; --i) {
                locals[i] = static_cast<int>(rest % k);
                args[i] = discovered[locals[i]];
                rest /= k;
            }
            sub.set_fun_entry(static_cast<int>(f), locals,
                              local_of[m.fun_value(static_cast<int>(f), args)]);
        }
    }
    return GeneratedSubstructure{std::move(sub), Embedding{std::move(discovered)}};
}

QfFingerprint qftp_fingerprint_unchecked(const FiniteStructure& m, std::span<const int> tuple) {
    if (tuple.empty()) throw MalformedError("empty tuple");
    std::vector<int> local_of;
    std::vector<int> discovered = discover_closure(m, tuple, local_of);
    return fingerprint_of_closure(m, tuple, discovered, local_of);
}

QfFingerprint qftp_fingerprint(const FiniteStructure& m, std::span<const int> tuple,
                               const Limits& limits) {
    if (static_cast<int>(tuple.size()) > limits.max_tuple_len)
        throw BudgetError("tuple length " + std::to_string(tuple.size()) +
                          " exceeds fingerprint budget " + std::to_string(limits.max_tuple_len));
    return qftp_fingerprint_unchecked(m, tuple);
}

} // namespace frs
