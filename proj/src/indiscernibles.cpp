#include "frs/indiscernibles.hpp"

#include <unordered_map>
#include <unordered_set>

#include "frs/errors.hpp"
#include "frs/fingerprint.hpp"

namespace frs {

void IndexedFamily::validate() const {
    if (width < 1) throw MalformedError("family width must be >= 1");
    if (static_cast<int>(tuples.size()) != index.size())
        throw MalformedError("family must assign a tuple to every index element");
    for (const auto& t : tuples) {
        if (static_cast<int>(t.size()) != width) throw MalformedError("family tuple width mismatch");
        for (int x : t)
            if (x < 0 || x >= host.size()) throw MalformedError("family tuple outside host universe");
    }
}

std::vector<int> IndexedFamily::spread(std::span<const int> index_tuple) const {
    std::vector<int> out;
    out.reserve(index_tuple.size() * width);
    for (int i : index_tuple) out.insert(out.end(), tuples[i].begin(), tuples[i].end());
    return out;
}

namespace {

bool next_tuple(std::vector<int>& t, int n) {
    int pos = static_cast<int>(t.size()) - 1;
    while (pos >= 0 && t[pos] + 1 == n) { t[pos] = 0; --pos; }
    if (pos < 0) return false;
    ++t[pos];
    return true;
}

} // namespace

IndiscernibleReport qf_indiscernible_check(const IndexedFamily& fam, int n_max,
                                           const Limits& limits) {
    fam.validate();
    IndiscernibleReport report;
    long long steps = 0;
    for (int len = 1; len <= n_max; ++len) {
        std::unordered_map<std::string, std::pair<std::vector<int>, std::string>> classes;
        std::vector<int> t(len, 0);
        while (true) {
            steps += len;
            if (steps > limits.step_budget) throw BudgetError("indiscernibility budget exceeded");
            std::string idx_key = qftp_fingerprint_unchecked(fam.index, t).key();
            std::vector<int> host_tuple = fam.spread(t);
            std::string host_key = qftp_fingerprint_unchecked(fam.host, host_tuple).key();
            auto [it, inserted] = classes.try_emplace(idx_key, t, host_key);
            ++report.tuples_checked;
            if (!inserted && it->second.second != host_key) {
                report.counterexample = {it->second.first, t};
                return report;
            }
            if (!next_tuple(t, fam.index.size())) break;
        }
    }
    report.pass = true;
    return report;
}

LocallyBasedReport atomic_locally_based_check(const IndexedFamily& x, const IndexedFamily& y,
                                              int n_max, const Limits& limits) {
    x.validate();
    y.validate();
    if (!(x.index == y.index)) throw MalformedError("families must share the index structure");
    if (!(x.host.sig() == y.host.sig()))
        throw SignatureError("families must share the host signature");
    if (x.width != y.width) throw MalformedError("families must share the tuple width");

    LocallyBasedReport report;
    long long steps = 0;
    for (int len = 1; len <= n_max; ++len) {
        // index type -> set of host types realized by X on that index type
        std::unordered_map<std::string, std::unordered_set<std::string>> realized;
        std::vector<int> t(len, 0);
        while (true) {
            steps += len;
            if (steps > limits.step_budget) throw BudgetError("local basedness budget exceeded");
            std::string idx_key = qftp_fingerprint_unchecked(x.index, t).key();
            std::vector<int> host_tuple = x.spread(t);
            realized[idx_key].insert(qftp_fingerprint_unchecked(x.host, host_tuple).key());
            if (!next_tuple(t, x.index.size())) break;
        }
        t.assign(len, 0);
        while (true) {
            steps += len;
            if (steps > limits.step_budget) throw BudgetError("local basedness budget exceeded");
            std::string idx_key = qftp_fingerprint_unchecked(y.index, t).key();
            std::vector<int> host_tuple = y.spread(t);
            std::string host_key = qftp_fingerprint_unchecked(y.host, host_tuple).key();
            ++report.tuples_checked;
            auto it = realized.find(idx_key);
            if (it == realized.end() || !it->second.count(host_key)) {
                report.counterexample = t;
                return report;
            }
            if (!next_tuple(t, y.index.size())) break;
        }
    }
    report.pass = true;
    return report;
}

} // namespace frs
