#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "frs/errors.hpp"
#include "frs/limits.hpp"
#include "frs/signature.hpp"

namespace frs {

// A finite structure over universe {0..n-1}: a set of tuples per relation
// symbol and a total table per function symbol. Immutable once built (the
// mutating setters are for construction only); safe to share across threads
// afterwards.
class FiniteStructure {
public:
    FiniteStructure() = default;
    FiniteStructure(Signature sig, int size);

    const Signature& sig() const { return sig_; }
    int size() const { return size_; }

    bool rel_holds(int rel, std::span<const int> tuple) const;
    int fun_value(int fun, std::span<const int> args) const;

    // Sorted tuple listing, for serialization and fingerprints.
    const std::set<std::vector<int>>& rel_tuples(int rel) const { return rel_tables_[rel]; }
    const std::vector<int>& fun_table(int fun) const { return fun_tables_[fun]; }

    void add_rel_tuple(int rel, std::vector<int> tuple);
    void set_relation(const std::string& name, const std::vector<std::vector<int>>& tuples);

    // Fills the whole table from a callable (args span -> value).
    template <typename F>
    void fill_function(const std::string& name, F&& fn) {
        int f = sig_.fun_index(name);
        if (f < 0) throw MalformedError("unknown function symbol: " + name);
        int arity = sig_.functions[f].arity;
        std::vector<int> args(arity, 0);
        for (long long idx = 0; idx < static_cast<long long>(fun_tables_[f].size()); ++idx) {
            decode_args(idx, arity, args);
            set_fun_entry(f, args, fn(std::span<const int>(args)));
        }
    }

    void set_fun_entry(int fun, std::span<const int> args, int value);

    // Checks that every table entry lies inside the universe.
    void validate(const Limits& limits = Limits::defaults()) const;

    friend bool operator==(const FiniteStructure&, const FiniteStructure&) = default;

    long long fun_table_index(int fun, std::span<const int> args) const;

private:
    void decode_args(long long idx, int arity, std::vector<int>& out) const;

    Signature sig_;
    int size_ = 0;
    std::vector<std::set<std::vector<int>>> rel_tables_;
    std::vector<std::vector<int>> fun_tables_; // flat, row-major, size n^arity
};

// Copy of `m` with universe relabeled by `perm` (perm[old] = new).
FiniteStructure relabel(const FiniteStructure& m, std::span<const int> perm);

} // namespace frs
