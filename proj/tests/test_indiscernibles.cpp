#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "frs/constructions.hpp"
#include "frs/fingerprint.hpp"
#include "frs/indiscernibles.hpp"

using namespace frs;

namespace {

FiniteStructure pure_set(int n) { return FiniteStructure(Signature{}, n); }

IndexedFamily singleton_family(FiniteStructure index, FiniteStructure host,
                               std::vector<int> points) {
    IndexedFamily fam;
    fam.index = std::move(index);
    fam.host = std::move(host);
    fam.width = 1;
    for (int p : points) fam.tuples.push_back({p});
    return fam;
}

} // namespace

TEST_CASE("constant families are indiscernible") {
    IndexedFamily fam = singleton_family(pure_set(4), make_chain(3), {1, 1, 1, 1});
    CHECK(qf_indiscernible_check(fam, 3).pass);
}

TEST_CASE("an unordered index cannot enumerate a chain") {
    IndexedFamily fam = singleton_family(pure_set(4), make_chain(4), {0, 1, 2, 3});
    IndiscernibleReport r = qf_indiscernible_check(fam, 2);
    CHECK_FALSE(r.pass);
    REQUIRE(r.counterexample.has_value());
    // the violating pair is a transposition: same index type, opposite order
    auto [left, right] = *r.counterexample;
    CHECK(left.size() == 2);
    std::multiset<int> l(left.begin(), left.end()), rr(right.begin(), right.end());
    CHECK(l == rr);
}

TEST_CASE("a chain-indexed increasing enumeration is indiscernible") {
    IndexedFamily fam = singleton_family(make_chain(4), make_chain(4), {0, 1, 2, 3});
    CHECK(qf_indiscernible_check(fam, 3).pass);
}

TEST_CASE("indiscernibility survives restriction to an index substructure") {
    IndexedFamily fam = singleton_family(make_chain(5), make_chain(6), {0, 2, 3, 4, 5});
    REQUIRE(qf_indiscernible_check(fam, 3).pass);
    IndexedFamily restricted = singleton_family(make_chain(3), fam.host, {0, 3, 5});
    CHECK(qf_indiscernible_check(restricted, 3).pass);
}

TEST_CASE("every family is locally based on itself") {
    IndexedFamily fam = singleton_family(make_chain(3), make_chain(5), {0, 2, 4});
    CHECK(atomic_locally_based_check(fam, fam, 3).pass);
}

TEST_CASE("re-indexing along an index automorphism preserves local basedness") {
    // pure-set index: any permutation is an automorphism
    IndexedFamily x = singleton_family(pure_set(3), make_chain(4), {0, 1, 3});
    IndexedFamily y = singleton_family(pure_set(3), make_chain(4), {1, 3, 0});
    CHECK(atomic_locally_based_check(x, y, 3).pass);
    CHECK(atomic_locally_based_check(y, x, 3).pass);
}

TEST_CASE("a pattern absent from the base is a counterexample") {
    IndexedFamily x = singleton_family(pure_set(2), make_chain(2), {0, 0});
    IndexedFamily y = singleton_family(pure_set(2), make_chain(2), {0, 1});
    LocallyBasedReport r = atomic_locally_based_check(x, y, 2);
    CHECK_FALSE(r.pass);
    REQUIRE(r.counterexample.has_value());
}

TEST_CASE("local basedness transports constant atomic facts") {
    // rule form: any atomic fact holding on all a-spreads of one index type
    // holds on every b-spread of that type
    IndexedFamily x = singleton_family(make_chain(4), make_chain(6), {0, 1, 3, 5});
    IndexedFamily y = singleton_family(make_chain(4), make_chain(6), {1, 2, 4, 5});
    REQUIRE(atomic_locally_based_check(x, y, 2).pass);

    const int len = 2;
    // group index tuples by fingerprint
    std::map<std::string, std::vector<std::vector<int>>> classes;
    std::vector<int> t(len, 0);
    while (true) {
        classes[qftp_fingerprint_unchecked(x.index, t).key()].push_back(t);
        int pos = len - 1;
        while (pos >= 0 && t[pos] + 1 == x.index.size()) { t[pos] = 0; --pos; }
        if (pos < 0) break;
        ++t[pos];
    }
    int rel = x.host.sig().rel_index("<");
    for (const auto& [key, members] : classes) {
        // atomic facts: host "<" on every coordinate pair, and equalities
        for (int c0 = 0; c0 < len; ++c0)
            for (int c1 = 0; c1 < len; ++c1) {
                bool constant_true = true, constant_false = true;
                for (const auto& it : members) {
                    std::vector<int> spread = x.spread(it);
                    std::vector<int> args{spread[c0], spread[c1]};
                    (x.host.rel_holds(rel, args) ? constant_false : constant_true) = false;
                }
                if (!constant_true && !constant_false) continue;
                for (const auto& jt : members) {
                    std::vector<int> spread = y.spread(jt);
                    std::vector<int> args{spread[c0], spread[c1]};
                    if (constant_true) CHECK(y.host.rel_holds(rel, args));
                    if (constant_false) CHECK_FALSE(y.host.rel_holds(rel, args));
                }
            }
    }
}
