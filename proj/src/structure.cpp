#include "frs/structure.hpp"

#include <algorithm>

namespace frs {

namespace {

long long pow_ll(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace

FiniteStructure::FiniteStructure(Signature sig, int size)
    : sig_(std::move(sig)), size_(size) {
    if (size_ < 1) throw MalformedError("structure universe must be nonempty");
    if (size_ > kHardUniverseCap) throw BudgetError("universe exceeds hard cap");
    sig_.validate();
    rel_tables_.resize(sig_.relations.size());
    fun_tables_.resize(sig_.functions.size());
    for (size_t f = 0; f < sig_.functions.size(); ++f) {
        long long entries = pow_ll(size_, sig_.functions[f].arity);
        if (entries > (1LL << 22))
            throw BudgetError("function table for '" + sig_.functions[f].name + "' too large");
        fun_tables_[f].assign(static_cast<size_t>(entries), 0);
    }
}

long long FiniteStructure::fun_table_index(int fun, std::span<const int> args) const {
    long long idx = 0;
    for (int a : args) idx = idx * size_ + a;
    (void)fun;
    return idx;
}

void FiniteStructure::decode_args(long long idx, int arity, std::vector<int>& out) const {
    for (int i = arity - 1; i >= 0; --i) {
        out[i] = static_cast<int>(idx % size_);
        idx /= size_;
    }
}

bool FiniteStructure::rel_holds(int rel, std::span<const int> tuple) const {
    // std::set lookup wants a vector; tuples are short so the copy is cheap
    thread_local std::vector<int> probe;
    probe.assign(tuple.begin(), tuple.end());
    return rel_tables_[rel].count(probe) > 0;
}

int FiniteStructure::fun_value(int fun, std::span<const int> args) const {
    return fun_tables_[fun][static_cast<size_t>(fun_table_index(fun, args))];
}

void FiniteStructure::add_rel_tuple(int rel, std::vector<int> tuple) {
    if (static_cast<int>(tuple.size()) != sig_.relations[rel].arity)
        throw MalformedError("tuple arity mismatch for relation " + sig_.relations[rel].name);
    for (int x : tuple)
        if (x < 0 || x >= size_)
            throw MalformedError("tuple entry outside universe in relation " + sig_.relations[rel].name);
    rel_tables_[rel].insert(std::move(tuple));
}

void FiniteStructure::set_relation(const std::string& name,
                                   const std::vector<std::vector<int>>& tuples) {
    int r = sig_.rel_index(name);
    if (r < 0) throw MalformedError("unknown relation symbol: " + name);
    rel_tables_[r].clear();
    for (const auto& t : tuples) add_rel_tuple(r, t);
}

void FiniteStructure::set_fun_entry(int fun, std::span<const int> args, int value) {
    if (value < 0 || value >= size_)
        throw MalformedError("function value outside universe for " + sig_.functions[fun].name);
    for (int a : args)
        if (a < 0 || a >= size_)
            throw MalformedError("function argument outside universe for " + sig_.functions[fun].name);
    fun_tables_[fun][static_cast<size_t>(fun_table_index(fun, args))] = value;
}

void FiniteStructure::validate(const Limits& limits) const {
    sig_.validate(limits);
    for (size_t r = 0; r < rel_tables_.size(); ++r) {
        for (const auto& t : rel_tables_[r]) {
            if (static_cast<int>(t.size()) != sig_.relations[r].arity)
                throw MalformedError("stored tuple arity mismatch");
            for (int x : t)
                if (x < 0 || x >= size_) throw MalformedError("stored tuple outside universe");
        }
    }
    for (const auto& table : fun_tables_)
        for (int v : table)
            if (v < 0 || v >= size_) throw MalformedError("function value outside universe");
}

FiniteStructure relabel(const FiniteStructure& m, std::span<const int> perm) {
    FiniteStructure out(m.sig(), m.size());
    for (size_t r = 0; r < m.sig().relations.size(); ++r) {
        for (const auto& t : m.rel_tuples(static_cast<int>(r))) {
            std::vector<int> mapped(t.size());
            for (size_t i = 0; i < t.size(); ++i) mapped[i] = perm[t[i]];
            out.add_rel_tuple(static_cast<int>(r), std::move(mapped));
        }
    }
    std::vector<int> inverse(m.size());
    for (int x = 0; x < m.size(); ++x) inverse[perm[x]] = x;
    for (size_t f = 0; f < m.sig().functions.size(); ++f) {
        int arity = m.sig().functions[f].arity;
        std::vector<int> args(arity, 0), pre(arity, 0);
        long long entries = 1;
        for (int i = 0; i < arity; ++i) entries *= m.size();
        for (long long idx = 0; idx < entries; ++idx) {
            long long rest = idx;
            for (int i = arity - 1; i >= 0; --i) {
                args[i] = static_cast<int>(rest % m.size());
                rest /= m.size();
            }
            for (int i = 0; i < arity; ++i) pre[i] = inverse[args[i]];
            out.set_fun_entry(static_cast<int>(f), args, perm[m.fun_value(static_cast<int>(f), pre)]);
        }
    }
    return out;
}

} // namespace frs
