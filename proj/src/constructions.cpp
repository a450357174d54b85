#include "frs/constructions.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "frs/errors.hpp"

namespace frs {

GraphSpec GraphSpec::complete(int m) {
    GraphSpec spec;
    spec.m = m;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) spec.edges.insert({i, j});
    return spec;
}

GraphSpec GraphSpec::discrete(int m) {
    GraphSpec spec;
    spec.m = m;
    return spec;
}

void GraphSpec::validate() const {
    if (m < 1) throw MalformedError("graph needs at least one vertex");
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= m || j >= m) throw MalformedError("edge endpoint outside 0..m-1");
        if (i >= j) throw MalformedError("edges must be stored with i < j");
    }
}

bool GraphSpec::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return edges.count({i, j}) > 0;
}

void HypergraphSpec::validate() const {
    if (m < 1) throw MalformedError("hypergraph needs at least one vertex");
    if (n < 2) throw MalformedError("hypergraph uniformity must be >= 2");
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != n) throw MalformedError("edge size differs from uniformity");
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= m) throw MalformedError("edge member outside 0..m-1");
            if (i + 1 < e.size() && e[i] >= e[i + 1])
                throw MalformedError("edges must be strictly increasing tuples");
        }
    }
}

FiniteStructure make_chain(int n) {
    if (n < 1) throw MalformedError("chain needs at least one point");
    FiniteStructure s(Signature{{{"<", 2}}, {}}, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.add_rel_tuple(0, {i, j});
    return s;
}

FiniteStructure make_graph(const GraphSpec& spec) {
    spec.validate();
    FiniteStructure s(Signature{{{"R", 2}}, {}}, spec.m);
    for (auto [i, j] : spec.edges) {
        s.add_rel_tuple(0, {i, j});
        s.add_rel_tuple(0, {j, i});
    }
    return s;
}

FiniteStructure make_hypergraph(const HypergraphSpec& spec, const Limits& limits) {
    spec.validate();
    if (spec.n > limits.max_arity) throw BudgetError("hypergraph uniformity exceeds arity bound");
    FiniteStructure s(Signature{{{"R", spec.n}}, {}}, spec.m);
    for (const auto& e : spec.edges) {
        std::vector<int> perm = e;
        std::sort(perm.begin(), perm.end());
        do {
            s.add_rel_tuple(0, perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return s;
}

FiniteStructure make_convex_equivalence(std::span<const int> class_sizes, bool ordered) {
    if (class_sizes.empty()) throw MalformedError("need at least one class");
    int n = 0;
    for (int s : class_sizes) {
        if (s < 1) throw MalformedError("class sizes must be positive");
        n += s;
    }
    Signature sig{{{"E", 2}}, {}};
    if (ordered) sig.relations.push_back({"prec", 2});
    FiniteStructure s(sig, n);
    int start = 0;
    for (int size : class_sizes) {
        for (int i = start; i < start + size; ++i)
            for (int j = start; j < start + size; ++j) s.add_rel_tuple(0, {i, j});
        start += size;
    }
    if (ordered)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s.add_rel_tuple(1, {i, j});
    return s;
}

namespace {

bool is_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() > b.size()) return false;
    return std::equal(a.begin(), a.end(), b.begin());
}

std::vector<int> common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (size_t i = 0; i < std::min(a.size(), b.size()) && a[i] == b[i]; ++i)
        out.push_back(a[i]);
    return out;
}

bool node_order(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

} // namespace

std::vector<std::vector<int>> tree_node_list(const TreeSpec& spec, const Limits& limits) {
    if (spec.branching < 1 || spec.height < 0) throw MalformedError("bad tree spec");
    long long count = 1, level = 1;
    for (int l = 1; l <= spec.height; ++l) {
        level *= spec.branching;
        count += level;
        if (count > limits.max_universe) throw BudgetError("tree exceeds universe budget");
    }
    std::vector<std::vector<int>> nodes{{}};
    size_t level_start = 0;
    for (int l = 1; l <= spec.height; ++l) {
        size_t level_end = nodes.size();
        for (size_t i = level_start; i < level_end; ++i)
            for (int c = 0; c < spec.branching; ++c) {
                std::vector<int> child = nodes[i];
                child.push_back(c);
                nodes.push_back(std::move(child));
            }
        level_start = level_end;
    }
    std::sort(nodes.begin(), nodes.end(), node_order);
    return nodes;
}

FiniteStructure make_tree_fragment(const std::vector<std::vector<int>>& nodes_in,
                                   TreeFlavor flavor) {
    std::vector<std::vector<int>> nodes = nodes_in;
    std::sort(nodes.begin(), nodes.end(), node_order);
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    int n = static_cast<int>(nodes.size());
    if (n < 1) throw MalformedError("tree fragment needs at least one node");

    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index.emplace(nodes[i], i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!index.count(common_prefix(nodes[i], nodes[j])))
                throw FragmentError("tree fragment is not closed under meets");

    int max_len = 0;
    for (const auto& node : nodes) max_len = std::max(max_len, static_cast<int>(node.size()));

    Signature sig{{{"initseg", 2}, {"lex", 2}}, {{"meet", 2}}};
    if (flavor == TreeFlavor::stree) {
        for (int l = 0; l <= max_len; ++l) sig.relations.push_back({"P" + std::to_string(l), 1});
    } else {
        sig.relations.push_back({"len", 2});
    }
    FiniteStructure s(sig, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto& a = nodes[i];
            const auto& b = nodes[j];
            if (is_prefix(a, b)) s.add_rel_tuple(0, {i, j});
            if (i != j) {
                std::vector<int> meet = common_prefix(a, b);
                bool lex_less = is_prefix(a, b) ||
                                (!is_prefix(b, a) && a[meet.size()] < b[meet.size()]);
                if (lex_less) s.add_rel_tuple(1, {i, j});
            }
        }
    }
    if (flavor == TreeFlavor::stree) {
        for (int i = 0; i < n; ++i) {
            int level = static_cast<int>(nodes[i].size());
            int rel = s.sig().rel_index("P" + std::to_string(level));
            s.add_rel_tuple(rel, {i});
        }
    } else {
        int rel = s.sig().rel_index("len");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (nodes[i].size() < nodes[j].size()) s.add_rel_tuple(rel, {i, j});
    }
    s.fill_function("meet", [&](std::span<const int> args) {
        auto it = index.find(common_prefix(nodes[args[0]], nodes[args[1]]));
        return it->second;
    });
    return s;
}

FiniteStructure make_tree(const TreeSpec& spec, const Limits& limits) {
    return make_tree_fragment(tree_node_list(spec, limits), spec.flavor);
}

GraphBaEncoding encode_graph_to_ba(const GraphSpec& spec, const Limits& limits) {
    spec.validate();
    if (spec.m + static_cast<int>(spec.edges.size()) > 62)
        throw BudgetError("graph encoding needs too many atoms");
    (void)limits;
    std::vector<std::string> names;
    names.reserve(spec.m + spec.edges.size());
    for (int v = 0; v < spec.m; ++v) names.push_back("b" + std::to_string(v));
    std::map<std::pair<int, int>, int> edge_atom;
    for (auto [i, j] : spec.edges) {
        edge_atom[{i, j}] = static_cast<int>(names.size());
        names.push_back("b" + std::to_string(i) + "_" + std::to_string(j));
    }
    AtomSetAlgebra algebra(std::move(names));
    std::vector<AtomSetAlgebra::Elem> g(spec.m);
    for (int v = 0; v < spec.m; ++v) {
        AtomSetAlgebra::Elem x = algebra.atom(v);
        for (auto [edge, atom] : edge_atom)
            if (edge.first == v || edge.second == v) x |= algebra.atom(atom);
        g[v] = x;
    }
    return GraphBaEncoding{std::move(algebra), std::move(g), spec};
}

AtomSetAlgebra::Elem HypergraphBaEncoding::b_of(const std::vector<int>& increasing_tuple) const {
    AtomSetAlgebra::Elem out = 0;
    for (size_t a = 0; a < atom_tuples.size(); ++a)
        if (is_prefix(increasing_tuple, atom_tuples[a])) out |= algebra.atom(static_cast<int>(a));
    return out;
}

HypergraphBaEncoding encode_hypergraph_to_ba(const HypergraphSpec& spec, const Limits& limits) {
    spec.validate();
    if (spec.m <= spec.n)
        throw MalformedError(
            "hypergraph encoding requires m >= n+1: proper prefixes need at least two "
            "extensions so the nested antichain elements are strictly decreasing");
    (void)limits;

    // one atom per strictly increasing tuple of length 1..n
    std::vector<std::vector<int>> atom_tuples;
    for (int len = 1; len <= spec.n; ++len) {
        std::vector<int> t(len);
        for (int i = 0; i < len; ++i) t[i] = i;
        while (true) {
            atom_tuples.push_back(t);
            int pos = len - 1;
            while (pos >= 0 && t[pos] == spec.m - len + pos) --pos;
            if (pos < 0) break;
            ++t[pos];
            for (int i = pos + 1; i < len; ++i) t[i] = t[i - 1] + 1;
        }
    }
    std::sort(atom_tuples.begin(), atom_tuples.end(), node_order);
    if (atom_tuples.size() > 62) throw BudgetError("hypergraph encoding needs too many atoms");

    std::vector<std::string> names;
    names.reserve(atom_tuples.size());
    for (const auto& t : atom_tuples) {
        std::string name = "b";
        for (size_t i = 0; i < t.size(); ++i) name += (i ? "_" : "") + std::to_string(t[i]);
        names.push_back(std::move(name));
    }
    HypergraphBaEncoding enc{AtomSetAlgebra(std::move(names)), {}, spec, {}};
    enc.atom_tuples = std::move(atom_tuples);

    enc.vertex_images.assign(spec.m, 0);
    for (int l = 0; l < spec.m; ++l) {
        AtomSetAlgebra::Elem x = 0;
        for (const auto& t : enc.atom_tuples) {
            if (t.back() != l) continue;
            if (static_cast<int>(t.size()) < spec.n || spec.edges.count(t)) x |= enc.b_of(t);
        }
        enc.vertex_images[l] = x;
    }
    return enc;
}

SemiRetractionWitness eqrel_tree_witness(int classes, int class_size, const Limits& limits) {
    if (classes < 1 || class_size < 1) throw MalformedError("need positive class count and size");
    long long node_count = static_cast<long long>(classes) * (class_size + 1);
    if (node_count > limits.max_universe)
        throw BudgetError("tree fragment for " + std::to_string(classes) + " classes of size " +
                          std::to_string(class_size) + " exceeds the universe budget");

    std::vector<int> dom_sizes(classes, class_size);
    FiniteStructure a_dom = make_convex_equivalence(dom_sizes);
    std::vector<int> host_sizes(2 * classes, class_size);
    FiniteStructure a_host = make_convex_equivalence(host_sizes);

    // fragment nodes: the all-zero spine nodes of even length plus their
    // lex-ordered successor fans with labels 1..s
    std::vector<std::vector<int>> nodes;
    for (int i = 0; i < classes; ++i) {
        std::vector<int> eta(2 * i, 0);
        nodes.push_back(eta);
        for (int j = 1; j <= class_size; ++j) {
            std::vector<int> fan = eta;
            fan.push_back(j);
            nodes.push_back(std::move(fan));
        }
    }
    std::sort(nodes.begin(), nodes.end(), node_order);
    FiniteStructure b_frag = make_tree_fragment(nodes, TreeFlavor::strtree);
    std::map<std::vector<int>, int> node_index;
    for (size_t i = 0; i < nodes.size(); ++i) node_index.emplace(nodes[i], static_cast<int>(i));

    std::vector<int> g_map(a_dom.size());
    for (int p = 0; p < a_dom.size(); ++p) {
        int cls = p / class_size;
        int pos = p % class_size;
        std::vector<int> node(2 * cls, 0);
        node.push_back(pos + 1);
        g_map[p] = node_index.at(node);
    }

    std::vector<int> f_map(b_frag.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        int level = static_cast<int>(nodes[i].size());
        int pos_in_level = 0;
        for (size_t j = 0; j < nodes.size(); ++j)
            if (nodes[j].size() == nodes[i].size() && nodes[j] < nodes[i]) ++pos_in_level;
        f_map[i] = level * class_size + pos_in_level;
    }

    SemiRetractionWitness w;
    w.g = CrossMap{a_dom, b_frag, std::move(g_map)};
    w.f = CrossMap{std::move(b_frag), std::move(a_host), std::move(f_map)};
    w.depth = 4;
    w.validate();
    return w;
}

SemiRetractionWitness ordered_graph_indiscernible_fragment(int n) {
    if (n < 1) throw MalformedError("fragment needs at least one vertex");
    FiniteStructure chain = make_chain(n);
    FiniteStructure ordered_complete(Signature{{{"R", 2}, {"<", 2}}, {}}, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j) ordered_complete.add_rel_tuple(0, {i, j});
            if (i < j) ordered_complete.add_rel_tuple(1, {i, j});
        }
    std::vector<int> identity(n);
    for (int i = 0; i < n; ++i) identity[i] = i;

    SemiRetractionWitness w;
    w.g = CrossMap{chain, ordered_complete, identity};
    w.f = CrossMap{std::move(ordered_complete), std::move(chain), std::move(identity)};
    w.depth = 4;
    w.validate();
    return w;
}

SemiRetractionWitness interdefinability_fragments(InterdefKind kind, int n) {
    if (n < 0) throw MalformedError("fragment bound must be >= 0");
    if (kind == InterdefKind::succ_reduct)
        throw FragmentError(
            "fragment-incomplete: the successor function escapes every finite fragment "
            "({0..n} has no successor for n); only the predecessor variant has total "
            "finite fragments");

    int size = n + 1;
    FiniteStructure a_dom(Signature{{}, {{"p", 1}}}, size);
    a_dom.fill_function("p", [](std::span<const int> args) {
        return args[0] == 0 ? 0 : args[0] - 1;
    });
    FiniteStructure b_frag(Signature{{{"S", 2}}, {{"p", 1}}}, size);
    b_frag.fill_function("p", [](std::span<const int> args) {
        return args[0] == 0 ? 0 : args[0] - 1;
    });
    for (int i = 0; i + 1 < size; ++i) b_frag.add_rel_tuple(0, {i, i + 1});

    std::vector<int> identity(size);
    for (int i = 0; i < size; ++i) identity[i] = i;

    SemiRetractionWitness w;
    w.g = CrossMap{a_dom, b_frag, identity};
    w.f = CrossMap{std::move(b_frag), std::move(a_dom), std::move(identity)};
    w.depth = 4;
    w.validate();
    return w;
}

SemiRetractionWitness graph_ba_witness(const GraphSpec& spec, int depth, const Limits& limits) {
    GraphBaEncoding enc = encode_graph_to_ba(spec, limits);
    FiniteStructure b_frag = export_structure(enc.algebra, limits);

    int universe = b_frag.size();
    FiniteStructure a_host(Signature{{{"R", 2}}, {}}, universe);
    for (int x = 0; x < universe; ++x)
        for (int y = 0; y < universe; ++y)
            if (x != y && (x & y) != 0) a_host.add_rel_tuple(0, {x, y});

    std::vector<int> g_map(spec.m);
    for (int v = 0; v < spec.m; ++v) g_map[v] = static_cast<int>(enc.vertex_images[v]);
    std::vector<int> identity(universe);
    for (int i = 0; i < universe; ++i) identity[i] = i;

    SemiRetractionWitness w;
    w.g = CrossMap{make_graph(spec), b_frag, std::move(g_map)};
    w.f = CrossMap{std::move(b_frag), std::move(a_host), std::move(identity)};
    w.depth = depth;
    w.validate();
    return w;
}

} // namespace frs
