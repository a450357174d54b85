#include "frs/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "frs/errors.hpp"

namespace frs {

namespace {

void reject_unknown_fields(const Json& j, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    if (!j.is_object()) throw MalformedError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw MalformedError(where + ": unknown field '" + it.key() + "'");
    }
}

const Json& require(const Json& j, const char* field, const std::string& where) {
    auto it = j.find(field);
    if (it == j.end()) throw MalformedError(where + ": missing field '" + field + "'");
    return *it;
}

std::vector<int> int_vector(const Json& j, const std::string& where) {
    if (!j.is_array()) throw MalformedError(where + ": expected an array of integers");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw MalformedError(where + ": expected integer entries");
        out.push_back(x.get<int>());
    }
    return out;
}

Signature signature_from_json(const Json& j) {
    reject_unknown_fields(j, {"relations", "functions"}, "signature");
    Signature sig;
    auto read_symbols = [](const Json& arr, const std::string& where) {
        std::vector<SymbolDecl> out;
        if (!arr.is_array()) throw MalformedError(where + ": expected an array");
        for (const auto& entry : arr) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
                !entry[1].is_number_integer())
                throw MalformedError(where + ": expected [name, arity] pairs");
            out.push_back({entry[0].get<std::string>(), entry[1].get<int>()});
        }
        return out;
    };
    if (j.contains("relations")) sig.relations = read_symbols(j["relations"], "signature.relations");
    if (j.contains("functions")) sig.functions = read_symbols(j["functions"], "signature.functions");
    return sig;
}

Json signature_to_json(const Signature& sig) {
    Json rels = Json::array(), funs = Json::array();
    for (const auto& r : sig.relations) rels.push_back({r.name, r.arity});
    for (const auto& f : sig.functions) funs.push_back({f.name, f.arity});
    return Json{{"relations", rels}, {"functions", funs}};
}

} // namespace

Json structure_to_json(const FiniteStructure& s) {
    Json relations = Json::object();
    for (size_t r = 0; r < s.sig().relations.size(); ++r) {
        Json tuples = Json::array();
        for (const auto& t : s.rel_tuples(static_cast<int>(r))) tuples.push_back(t);
        relations[s.sig().relations[r].name] = tuples;
    }
    Json functions = Json::object();
    for (size_t f = 0; f < s.sig().functions.size(); ++f) {
        int arity = s.sig().functions[f].arity;
        Json table = Json::array();
        long long entries = 1;
        for (int i = 0; i < arity; ++i) entries *= s.size();
        std::vector<int> args(arity, 0);
        for (long long e = 0; e < entries; ++e) {
            long long rest = e;
            for (int i = arity - 1; i >= 0; --i) {
                args[i] = static_cast<int>(rest % s.size());
                rest /= s.size();
            }
            table.push_back({args, s.fun_value(static_cast<int>(f), args)});
        }
        functions[s.sig().functions[f].name] = table;
    }
    return Json{{"signature", signature_to_json(s.sig())},
                {"universe", s.size()},
                {"relations", relations},
                {"functions", functions}};
}

FiniteStructure structure_from_json(const Json& j) {
    reject_unknown_fields(j, {"signature", "universe", "relations", "functions"}, "structure");
    Signature sig = signature_from_json(require(j, "signature", "structure"));
    const Json& universe = require(j, "universe", "structure");
    if (!universe.is_number_integer()) throw MalformedError("structure: universe must be an integer");
    FiniteStructure s(sig, universe.get<int>());

    if (j.contains("relations")) {
        const Json& rels = j["relations"];
        if (!rels.is_object()) throw MalformedError("structure.relations: expected an object");
        for (auto it = rels.begin(); it != rels.end(); ++it) {
            int r = sig.rel_index(it.key());
            if (r < 0) throw MalformedError("structure.relations: unknown symbol '" + it.key() + "'");
            if (!it.value().is_array())
                throw MalformedError("structure.relations: expected tuple arrays");
            for (const auto& t : it.value())
                s.add_rel_tuple(r, int_vector(t, "structure.relations." + it.key()));
        }
    }
    std::vector<char> filled(sig.functions.size(), 0);
    if (j.contains("functions")) {
        const Json& funs = j["functions"];
        if (!funs.is_object()) throw MalformedError("structure.functions: expected an object");
        for (auto it = funs.begin(); it != funs.end(); ++it) {
            int f = sig.fun_index(it.key());
            if (f < 0) throw MalformedError("structure.functions: unknown symbol '" + it.key() + "'");
            if (!it.value().is_array())
                throw MalformedError("structure.functions: expected a table array");
            long long expected = 1;
            for (int i = 0; i < sig.functions[f].arity; ++i) expected *= s.size();
            if (static_cast<long long>(it.value().size()) != expected)
                throw MalformedError("structure.functions." + it.key() +
                                     ": table must be exhaustive (" + std::to_string(expected) +
                                     " entries)");
            for (const auto& entry : it.value()) {
                if (!entry.is_array() || entry.size() != 2)
                    throw MalformedError("structure.functions." + it.key() +
                                         ": expected [args, value] entries");
                std::vector<int> args = int_vector(entry[0], "structure.functions." + it.key());
                if (static_cast<int>(args.size()) != sig.functions[f].arity)
                    throw MalformedError("structure.functions." + it.key() + ": argument arity");
                if (!entry[1].is_number_integer())
                    throw MalformedError("structure.functions." + it.key() + ": integer value");
                s.set_fun_entry(f, args, entry[1].get<int>());
            }
            filled[f] = 1;
        }
    }
    for (size_t f = 0; f < sig.functions.size(); ++f)
        if (!filled[f])
            throw MalformedError("structure: function '" + sig.functions[f].name +
                                 "' has no table");
    s.validate();
    return s;
}

namespace {

Json map_pairs_to_json(const std::vector<int>& map) {
    Json out = Json::array();
    for (size_t i = 0; i < map.size(); ++i) out.push_back({static_cast<int>(i), map[i]});
    return out;
}

std::vector<int> map_pairs_from_json(const Json& j, int source_size, const std::string& where) {
    if (!j.is_array()) throw MalformedError(where + ": expected an array of pairs");
    std::vector<int> map(source_size, -1);
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer())
            throw MalformedError(where + ": expected [src, dst] integer pairs");
        int src = entry[0].get<int>();
        int dst = entry[1].get<int>();
        if (src < 0 || src >= source_size) throw MalformedError(where + ": source point in range");
        if (map[src] >= 0) throw MalformedError(where + ": duplicate source point");
        map[src] = dst;
    }
    for (int v : map)
        if (v < 0) throw MalformedError(where + ": map must be total on the source");
    return map;
}

} // namespace

Json witness_to_json(const SemiRetractionWitness& w) {
    Json j{{"a_frag", structure_to_json(w.a_dom())},
           {"b_frag", structure_to_json(w.b_frag())},
           {"g", map_pairs_to_json(w.g.map)},
           {"f", map_pairs_to_json(w.f.map)},
           {"depth", w.depth}};
    if (!(w.a_host() == w.a_dom())) j["a_host"] = structure_to_json(w.a_host());
    return j;
}

SemiRetractionWitness witness_from_json(const Json& j) {
    reject_unknown_fields(j, {"a_frag", "b_frag", "g", "f", "depth", "a_host"}, "witness");
    FiniteStructure a_frag = structure_from_json(require(j, "a_frag", "witness"));
    FiniteStructure b_frag = structure_from_json(require(j, "b_frag", "witness"));
    FiniteStructure a_host =
        j.contains("a_host") ? structure_from_json(j["a_host"]) : a_frag;
    SemiRetractionWitness w;
    w.g = CrossMap{a_frag, b_frag,
                   map_pairs_from_json(require(j, "g", "witness"), a_frag.size(), "witness.g")};
    w.f = CrossMap{std::move(b_frag), std::move(a_host),
                   map_pairs_from_json(require(j, "f", "witness"), w.g.target.size(), "witness.f")};
    const Json& depth = require(j, "depth", "witness");
    if (!depth.is_number_integer()) throw MalformedError("witness: depth must be an integer");
    w.depth = depth.get<int>();
    w.validate();
    return w;
}

Json family_to_json(const IndexedFamily& fam) {
    Json tuples = Json::array();
    for (const auto& t : fam.tuples) tuples.push_back(t);
    return Json{{"index", structure_to_json(fam.index)},
                {"host", structure_to_json(fam.host)},
                {"width", fam.width},
                {"tuples", tuples}};
}

IndexedFamily family_from_json(const Json& j) {
    reject_unknown_fields(j, {"index", "host", "width", "tuples"}, "family");
    IndexedFamily fam;
    fam.index = structure_from_json(require(j, "index", "family"));
    fam.host = structure_from_json(require(j, "host", "family"));
    const Json& width = require(j, "width", "family");
    if (!width.is_number_integer()) throw MalformedError("family: width must be an integer");
    fam.width = width.get<int>();
    const Json& tuples = require(j, "tuples", "family");
    if (!tuples.is_array()) throw MalformedError("family: tuples must be an array");
    for (const auto& t : tuples) fam.tuples.push_back(int_vector(t, "family.tuples"));
    fam.validate();
    return fam;
}

Json algebra_to_json(const AtomSetAlgebra& b) {
    return Json{{"atoms", b.atom_names()}};
}

AtomSetAlgebra algebra_from_json(const Json& j) {
    reject_unknown_fields(j, {"atoms"}, "algebra");
    const Json& atoms = require(j, "atoms", "algebra");
    if (!atoms.is_array()) throw MalformedError("algebra: atoms must be an array of names");
    std::vector<std::string> names;
    for (const auto& a : atoms) {
        if (!a.is_string()) throw MalformedError("algebra: atom names must be strings");
        names.push_back(a.get<std::string>());
    }
    return AtomSetAlgebra(std::move(names));
}

Json element_to_json(const AtomSetAlgebra& b, AtomSetAlgebra::Elem x) {
    Json out = Json::array();
    for (int i = 0; i < b.atom_count(); ++i)
        if (x >> i & 1) out.push_back(b.atom_names()[i]);
    return out;
}

AtomSetAlgebra::Elem element_from_json(const AtomSetAlgebra& b, const Json& j) {
    if (!j.is_array()) throw MalformedError("element: expected an array of atom names");
    AtomSetAlgebra::Elem x = 0;
    for (const auto& name : j) {
        if (!name.is_string()) throw MalformedError("element: atom names must be strings");
        bool found = false;
        for (int i = 0; i < b.atom_count(); ++i)
            if (b.atom_names()[i] == name.get<std::string>()) {
                x |= b.atom(i);
                found = true;
            }
        if (!found) throw MalformedError("element: unknown atom '" + name.get<std::string>() + "'");
    }
    return x;
}

Json coloring_to_json(const Coloring& c) {
    return Json{{"mode", c.mode == ArrowMode::substructure ? "substructure" : "embedding"},
                {"colors", c.colors}};
}

Coloring coloring_from_json(const Json& j) {
    reject_unknown_fields(j, {"mode", "colors"}, "coloring");
    Coloring c;
    const Json& mode = require(j, "mode", "coloring");
    if (mode == "substructure") c.mode = ArrowMode::substructure;
    else if (mode == "embedding") c.mode = ArrowMode::embedding;
    else throw MalformedError("coloring: mode must be 'substructure' or 'embedding'");
    c.colors = int_vector(require(j, "colors", "coloring"), "coloring.colors");
    return c;
}

Json verdict_to_json(const ArrowVerdict& v) {
    Json j{{"status", v.status == ArrowStatus::holds ? "holds"
            : v.status == ArrowStatus::fails         ? "fails"
                                                     : "degenerate"}};
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

Json stats_to_json(const SearchStats& s) {
    return Json{{"nodes", s.nodes},
                {"domain_size", s.domain_size},
                {"block_count", s.block_count},
                {"workers", s.workers}};
}

Json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedError("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw MalformedError(path + ": parse error at byte " + std::to_string(e.byte) + ": " +
                             e.what());
    }
}

FiniteStructure load_structure(const std::string& path) {
    return structure_from_json(load_document(path));
}

std::string content_digest(const Json& j) {
    std::string dump = j.dump(); // nlohmann orders object keys; stable
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", h);
    return std::string(buf);
}

} // namespace frs
