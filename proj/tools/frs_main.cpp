// Command-line front end: structure generators, type and embedding queries,
// partition-arrow decisions, semi-retraction verification, and the transfer
// pipeline, all over JSON documents.
//
// Exit codes: 0 pass/holds, 2 malformed input, 3 fail-with-witness,
// 4 degenerate input, 5 budget exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frs/constructions.hpp"
#include "frs/enumerate.hpp"
#include "frs/errors.hpp"
#include "frs/io.hpp"
#include "frs/ramsey.hpp"
#include "frs/semiretraction.hpp"

using namespace frs;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMalformed = 2;
constexpr int kExitFailWitness = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitBudget = 5;

struct Options {
    std::string format = "json";
    int workers = 0; // 0 = available parallelism
    Limits limits;
    std::string out_path;
};

void emit(const Options& opt, const Json& report) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opt.out_path.empty()) {
        file.open(opt.out_path);
        if (!file) throw MalformedError("cannot write to " + opt.out_path);
        os = &file;
    }
    if (opt.format == "json") {
        *os << report.dump(2) << "\n";
    } else {
        for (auto it = report.begin(); it != report.end(); ++it) {
            *os << it.key() << '\t'
                << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
                << "\n";
        }
    }
}

Json budgets_json(const Limits& l) {
    return Json{{"max_arity", l.max_arity},
                {"max_universe", l.max_universe},
                {"max_tuple_len", l.max_tuple_len},
                {"arrow_domain_cap", l.arrow_domain_cap},
                {"exhaustive_domain_cap", l.exhaustive_domain_cap},
                {"step_budget", l.step_budget},
                {"ba_export_max_atoms", l.ba_export_max_atoms}};
}

// Report envelope: command echo, digest of the canonicalized inputs,
// effective budgets, wall time.
class ReportBuilder {
public:
    ReportBuilder(std::string command, const Options& opt)
        : start_(std::chrono::steady_clock::now()), opt_(opt) {
        report_["command"] = std::move(command);
        report_["budgets"] = budgets_json(opt.limits);
    }

    void add_input(const Json& doc) { inputs_.push_back(doc); }

    Json& body() { return report_; }

    int finish(int exit_code) {
        report_["inputs_digest"] = content_digest(inputs_);
        report_["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count();
        emit(opt_, report_);
        return exit_code;
    }

private:
    std::chrono::steady_clock::time_point start_;
    const Options& opt_;
    Json report_;
    Json inputs_ = Json::array();
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

GraphSpec parse_graph_spec(int m, const std::string& edges_text) {
    GraphSpec spec;
    spec.m = m;
    std::string item;
    std::stringstream ss(edges_text);
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t dash = item.find('-');
        if (dash == std::string::npos)
            throw MalformedError("edges must look like 0-1,1-2: got '" + item + "'");
        int a = std::stoi(item.substr(0, dash));
        int b = std::stoi(item.substr(dash + 1));
        if (a == b) throw MalformedError("loops are not allowed");
        if (a > b) std::swap(a, b);
        spec.edges.insert({a, b});
    }
    spec.validate();
    return spec;
}

HypergraphSpec parse_hypergraph_spec(int m, int arity, const std::string& edges_text) {
    HypergraphSpec spec;
    spec.m = m;
    spec.n = arity;
    std::string item;
    std::stringstream ss(edges_text);
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        std::vector<int> edge = parse_int_list(item);
        std::sort(edge.begin(), edge.end());
        spec.edges.insert(edge);
    }
    spec.validate();
    return spec;
}

int run_arrow(const Options& opt, const std::string& name, ArrowMode mode,
              const std::string& c_path, const std::string& b_path, const std::string& a_path,
              int r, int d, bool exhaustive) {
    ReportBuilder report(name, opt);
    ArrowQuery q;
    q.c = load_structure(c_path);
    q.b = load_structure(b_path);
    q.a = load_structure(a_path);
    q.r = r;
    q.d = d;
    q.mode = mode;
    report.add_input(structure_to_json(q.c));
    report.add_input(structure_to_json(q.b));
    report.add_input(structure_to_json(q.a));
    report.body()["query"] =
        Json{{"r", r},
             {"d", d},
             {"mode", mode == ArrowMode::substructure ? "substructure" : "embedding"}};
    if (exhaustive) {
        std::optional<Coloring> bad = exhaustive_bad_coloring(q, opt.limits);
        if (bad) {
            if (!validate_witness(q, *bad)) throw InternalError("oracle witness failed validation");
            report.body()["verdict"] = Json{{"status", "fails"}};
            report.body()["witness"] = coloring_to_json(*bad);
            return report.finish(kExitFailWitness);
        }
        report.body()["verdict"] = Json{{"status", "holds"}, {"oracle", "exhaustive"}};
        return report.finish(kExitPass);
    }
    ArrowVerdict v = check_arrow(q, opt.limits, opt.workers);
    report.body()["verdict"] = verdict_to_json(v);
    report.body()["stats"] = stats_to_json(v.stats);
    if (v.status == ArrowStatus::degenerate) return report.finish(kExitDegenerate);
    if (v.status == ArrowStatus::fails) {
        if (!validate_witness(q, *v.witness)) throw InternalError("witness failed validation");
        report.body()["witness"] = coloring_to_json(*v.witness);
        return report.finish(kExitFailWitness);
    }
    return report.finish(kExitPass);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite structural Ramsey computations"};
    app.require_subcommand(1);
    app.fallthrough(); // accept global options after the subcommand too

    Options opt;
    app.add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--workers", opt.workers, "worker threads for the arrow search (0 = auto)");
    app.add_option("--out", opt.out_path, "write the report to a file instead of stdout");
    app.add_option("--max-tuple-len", opt.limits.max_tuple_len, "fingerprint tuple budget");
    app.add_option("--max-universe", opt.limits.max_universe, "universe budget");
    app.add_option("--arrow-domain-cap", opt.limits.arrow_domain_cap, "pruned search domain cap");
    app.add_option("--exhaustive-domain-cap", opt.limits.exhaustive_domain_cap,
                   "exhaustive oracle domain cap");
    app.add_option("--step-budget", opt.limits.step_budget, "elementary step budget for scans");
    app.add_option("--ba-export-max-atoms", opt.limits.ba_export_max_atoms,
                   "atom cap for algebra exports");

    // ---- make ----
    auto* make = app.add_subcommand("make", "generate structure documents");
    make->require_subcommand(1);

    int chain_n = 3;
    auto* make_chain_cmd = make->add_subcommand("chain", "linear order on n points");
    make_chain_cmd->add_option("--n", chain_n, "points")->required();

    int graph_m = 3;
    std::string graph_edges;
    auto* make_graph_cmd = make->add_subcommand("graph", "simple graph");
    make_graph_cmd->add_option("--m", graph_m, "vertices")->required();
    make_graph_cmd->add_option("--edges", graph_edges, "edges as 0-1,1-2");

    int hyper_m = 4, hyper_arity = 3;
    std::string hyper_edges;
    auto* make_hyper_cmd = make->add_subcommand("hyper", "uniform hypergraph");
    make_hyper_cmd->add_option("--m", hyper_m, "vertices")->required();
    make_hyper_cmd->add_option("--arity", hyper_arity, "uniformity")->required();
    make_hyper_cmd->add_option("--edges", hyper_edges, "edges as 0,1,2;1,2,3");

    std::string eqrel_classes = "2,2";
    bool eqrel_unordered = false;
    auto* make_eqrel_cmd = make->add_subcommand("eqrel", "convexly ordered equivalence relation");
    make_eqrel_cmd->add_option("--classes", eqrel_classes, "class sizes as 2,2")->required();
    make_eqrel_cmd->add_flag("--unordered", eqrel_unordered, "drop the convex order");

    int tree_branching = 2, tree_height = 2;
    std::string tree_flavor = "strtree";
    auto* make_tree_cmd =
        make->add_subcommand("tree", "tree with meet, initial-segment and lex order");
    make_tree_cmd->add_option("--branching", tree_branching)->required();
    make_tree_cmd->add_option("--height", tree_height)->required();
    make_tree_cmd->add_option("--flavor", tree_flavor)->check(CLI::IsMember({"stree", "strtree"}));

    int tp_classes = 2, tp_class_size = 2;
    auto* make_eqreltree_cmd =
        make->add_subcommand("eqrel-tree", "equivalence-into-tree witness document");
    make_eqreltree_cmd->add_option("--classes", tp_classes)->required();
    make_eqreltree_cmd->add_option("--class-size", tp_class_size)->required();

    int og_n = 4;
    auto* make_ordgraph_cmd =
        make->add_subcommand("ordgraph", "chain-into-ordered-complete-graph witness document");
    make_ordgraph_cmd->add_option("--n", og_n)->required();

    std::string interdef_kind = "pred";
    int interdef_n = 5;
    auto* make_interdef_cmd =
        make->add_subcommand("interdef", "identity witness between interdefinable fragments");
    make_interdef_cmd->add_option("--kind", interdef_kind)
        ->check(CLI::IsMember({"pred", "succ_reduct"}));
    make_interdef_cmd->add_option("--n", interdef_n);

    int gbw_m = 3, gbw_depth = 2;
    std::string gbw_edges;
    auto* make_graphba_cmd =
        make->add_subcommand("graphba", "graph-into-Boolean-algebra witness document");
    make_graphba_cmd->add_option("--m", gbw_m)->required();
    make_graphba_cmd->add_option("--edges", gbw_edges, "edges as 0-1,1-2");
    make_graphba_cmd->add_option("--depth", gbw_depth, "verification depth to record");

    // ---- queries ----
    std::string qftp_structure, qftp_tuple, qftp_tuple2;
    auto* qftp_cmd = app.add_subcommand("qftp", "quantifier-free type fingerprint of a tuple");
    qftp_cmd->add_option("--structure", qftp_structure)->required();
    qftp_cmd->add_option("--tuple", qftp_tuple)->required();
    qftp_cmd->add_option("--tuple2", qftp_tuple2, "second tuple to compare");

    std::string emb_a, emb_c;
    bool emb_list = false;
    auto* emb_cmd = app.add_subcommand("emb", "enumerate embeddings A -> C");
    emb_cmd->add_option("--a", emb_a)->required();
    emb_cmd->add_option("--c", emb_c)->required();
    emb_cmd->add_flag("--list", emb_list, "include the maps in the report");

    std::string copies_a, copies_c;
    auto* copies_cmd = app.add_subcommand("copies", "enumerate copies of A inside C");
    copies_cmd->add_option("--a", copies_a)->required();
    copies_cmd->add_option("--c", copies_c)->required();

    std::string aut_a;
    auto* aut_cmd = app.add_subcommand("aut", "automorphism group of a structure");
    aut_cmd->add_option("--a", aut_a)->required();

    std::string age_m;
    int age_k = 2;
    auto* age_cmd = app.add_subcommand("age", "isomorphism classes of small substructures");
    age_cmd->add_option("--m", age_m)->required();
    age_cmd->add_option("--k", age_k, "generator bound")->required();

    // ---- arrows ----
    std::string arrow_c, arrow_b, arrow_a;
    int arrow_r = 2, arrow_d = 1;
    bool arrow_exhaustive = false;
    auto* arrow_cmd = app.add_subcommand("arrow", "substructure partition arrow");
    arrow_cmd->add_option("--c", arrow_c)->required();
    arrow_cmd->add_option("--b", arrow_b)->required();
    arrow_cmd->add_option("--a", arrow_a)->required();
    arrow_cmd->add_option("--r", arrow_r, "colors");
    arrow_cmd->add_option("--d", arrow_d, "color bound");
    arrow_cmd->add_flag("--exhaustive", arrow_exhaustive, "use the exhaustive oracle");

    std::string earrow_c, earrow_b, earrow_a;
    int earrow_r = 2, earrow_d = 1;
    bool earrow_exhaustive = false;
    auto* earrow_cmd = app.add_subcommand("earrow", "embedding partition arrow");
    earrow_cmd->add_option("--c", earrow_c)->required();
    earrow_cmd->add_option("--b", earrow_b)->required();
    earrow_cmd->add_option("--a", earrow_a)->required();
    earrow_cmd->add_option("--r", earrow_r, "colors");
    earrow_cmd->add_option("--d", earrow_d, "color bound");
    earrow_cmd->add_flag("--exhaustive", earrow_exhaustive, "use the exhaustive oracle");

    std::string degree_a, degree_b_pool, degree_c_pool, degree_mode = "substructure";
    int degree_r_max = 2;
    auto* degree_cmd = app.add_subcommand("degree", "pool evidence for Ramsey degrees");
    degree_cmd->add_option("--a", degree_a)->required();
    degree_cmd->add_option("--b-pool", degree_b_pool, "comma-separated structure files")
        ->required();
    degree_cmd->add_option("--c-pool", degree_c_pool, "comma-separated structure files")
        ->required();
    degree_cmd->add_option("--r-max", degree_r_max);
    degree_cmd->add_option("--mode", degree_mode)
        ->check(CLI::IsMember({"substructure", "embedding"}));

    std::string twodeg_a, twodeg_b, twodeg_c;
    int twodeg_r = 2;
    auto* twodeg_cmd = app.add_subcommand("twodeg", "substructure vs embedding degrees");
    twodeg_cmd->add_option("--a", twodeg_a)->required();
    twodeg_cmd->add_option("--b", twodeg_b)->required();
    twodeg_cmd->add_option("--c", twodeg_c)->required();
    twodeg_cmd->add_option("--r", twodeg_r);

    // ---- semi-retractions ----
    std::string verify_witness;
    int verify_depth = 0;
    auto* verify_cmd = app.add_subcommand("semiret-verify", "verify the three witness axioms");
    verify_cmd->add_option("--witness", verify_witness)->required();
    verify_cmd->add_option("--depth", verify_depth, "override the stored depth");

    std::string restr_witness, restr_pattern, restr_b_gens, restr_b0;
    auto* restr_cmd = app.add_subcommand("restricted", "restricted inverse images under f");
    restr_cmd->add_option("--witness", restr_witness)->required();
    restr_cmd->add_option("--pattern", restr_pattern, "tuple in the A-side fragment")->required();
    restr_cmd->add_option("--b-gens", restr_b_gens, "tuple in the A-side fragment")->required();
    restr_cmd->add_option("--b0", restr_b0, "override: raw tuple in the B-side fragment");

    std::string transfer_witness, transfer_a_gens, transfer_b_gens, transfer_coloring;
    int transfer_h_index = 0, transfer_seed = 0, transfer_r = 2;
    auto* transfer_cmd = app.add_subcommand("transfer", "transfer construction identity check");
    transfer_cmd->add_option("--witness", transfer_witness)->required();
    transfer_cmd->add_option("--a-gens", transfer_a_gens)->required();
    transfer_cmd->add_option("--b-gens", transfer_b_gens)->required();
    transfer_cmd->add_option("--h-index", transfer_h_index, "index into Emb(<g(B)>, B-side)");
    transfer_cmd->add_option("--coloring", transfer_coloring, "coloring document");
    transfer_cmd->add_option("--seed", transfer_seed, "seed for a random coloring");
    transfer_cmd->add_option("--r", transfer_r, "colors for the random coloring");

    std::string preadj_witness;
    int preadj_max_len = 2;
    auto* preadj_cmd = app.add_subcommand("preadj", "pre-adjunction translation identity");
    preadj_cmd->add_option("--witness", preadj_witness)->required();
    preadj_cmd->add_option("--max-len", preadj_max_len);

    // ---- encodings ----
    int egb_m = 2;
    std::string egb_edges;
    auto* egb_cmd = app.add_subcommand("encode-graph-ba", "graph into a finite Boolean algebra");
    egb_cmd->add_option("--m", egb_m)->required();
    egb_cmd->add_option("--edges", egb_edges, "edges as 0-1,1-2");

    int ehb_m = 4, ehb_arity = 3;
    std::string ehb_edges;
    auto* ehb_cmd =
        app.add_subcommand("encode-hyper-ba", "hypergraph into a finite Boolean algebra");
    ehb_cmd->add_option("--m", ehb_m)->required();
    ehb_cmd->add_option("--arity", ehb_arity)->required();
    ehb_cmd->add_option("--edges", ehb_edges, "edges as 0,1,2;1,2,3");

    // ---- indiscernibles ----
    std::string indisc_family;
    int indisc_n_max = 2;
    auto* indisc_cmd = app.add_subcommand("indisc", "quantifier-free indiscernibility check");
    indisc_cmd->add_option("--family", indisc_family)->required();
    indisc_cmd->add_option("--n-max", indisc_n_max);

    std::string based_x, based_y;
    int based_n_max = 2;
    auto* based_cmd = app.add_subcommand("based", "atomic local basedness of Y on X");
    based_cmd->add_option("--x", based_x)->required();
    based_cmd->add_option("--y", based_y)->required();
    based_cmd->add_option("--n-max", based_n_max);

    CLI11_PARSE(app, argc, argv);

    try {
        // generator subcommands emit the bare structure document
        if (make_chain_cmd->parsed()) {
            emit(opt, structure_to_json(make_chain(chain_n)));
            return kExitPass;
        }
        if (make_graph_cmd->parsed()) {
            emit(opt, structure_to_json(make_graph(parse_graph_spec(graph_m, graph_edges))));
            return kExitPass;
        }
        if (make_hyper_cmd->parsed()) {
            emit(opt, structure_to_json(make_hypergraph(
                          parse_hypergraph_spec(hyper_m, hyper_arity, hyper_edges), opt.limits)));
            return kExitPass;
        }
        if (make_eqrel_cmd->parsed()) {
            std::vector<int> sizes = parse_int_list(eqrel_classes);
            emit(opt, structure_to_json(make_convex_equivalence(sizes, !eqrel_unordered)));
            return kExitPass;
        }
        if (make_tree_cmd->parsed()) {
            TreeSpec spec{tree_branching, tree_height,
                          tree_flavor == "stree" ? TreeFlavor::stree : TreeFlavor::strtree};
            emit(opt, structure_to_json(make_tree(spec, opt.limits)));
            return kExitPass;
        }
        if (make_eqreltree_cmd->parsed()) {
            emit(opt, witness_to_json(eqrel_tree_witness(tp_classes, tp_class_size, opt.limits)));
            return kExitPass;
        }
        if (make_ordgraph_cmd->parsed()) {
            emit(opt, witness_to_json(ordered_graph_indiscernible_fragment(og_n)));
            return kExitPass;
        }
        if (make_interdef_cmd->parsed()) {
            InterdefKind kind =
                interdef_kind == "pred" ? InterdefKind::pred : InterdefKind::succ_reduct;
            emit(opt, witness_to_json(interdefinability_fragments(kind, interdef_n)));
            return kExitPass;
        }
        if (make_graphba_cmd->parsed()) {
            emit(opt, witness_to_json(graph_ba_witness(parse_graph_spec(gbw_m, gbw_edges),
                                                       gbw_depth, opt.limits)));
            return kExitPass;
        }

        if (qftp_cmd->parsed()) {
            ReportBuilder report("qftp", opt);
            FiniteStructure m = load_structure(qftp_structure);
            report.add_input(structure_to_json(m));
            std::vector<int> t = parse_int_list(qftp_tuple);
            QfFingerprint fp = qftp_fingerprint(m, t, opt.limits);
            report.body()["fingerprint"] = Json{{"generator_count", fp.generator_count},
                                                {"local_size", fp.local_size},
                                                {"generator_map", fp.generator_map},
                                                {"digest", content_digest(Json(fp.key()))}};
            if (!qftp_tuple2.empty()) {
                QfFingerprint fp2 = qftp_fingerprint(m, parse_int_list(qftp_tuple2), opt.limits);
                report.body()["equal"] = fp == fp2;
            }
            return report.finish(kExitPass);
        }
        if (emb_cmd->parsed()) {
            ReportBuilder report("emb", opt);
            FiniteStructure a = load_structure(emb_a), c = load_structure(emb_c);
            report.add_input(structure_to_json(a));
            report.add_input(structure_to_json(c));
            std::vector<Embedding> embs = enumerate_embeddings(a, c);
            report.body()["count"] = embs.size();
            if (emb_list) {
                Json list = Json::array();
                for (const auto& e : embs) list.push_back(e.map);
                report.body()["embeddings"] = list;
            }
            return report.finish(kExitPass);
        }
        if (copies_cmd->parsed()) {
            ReportBuilder report("copies", opt);
            FiniteStructure a = load_structure(copies_a), c = load_structure(copies_c);
            report.add_input(structure_to_json(a));
            report.add_input(structure_to_json(c));
            std::vector<std::vector<int>> copies = enumerate_copies(a, c);
            report.body()["count"] = copies.size();
            report.body()["copies"] = copies;
            return report.finish(kExitPass);
        }
        if (aut_cmd->parsed()) {
            ReportBuilder report("aut", opt);
            FiniteStructure a = load_structure(aut_a);
            report.add_input(structure_to_json(a));
            AutomorphismGroup group = automorphism_group(a);
            report.body()["order"] = group.order;
            report.body()["rigid"] = group.is_rigid;
            report.body()["generators"] = group.generators;
            return report.finish(kExitPass);
        }
        if (age_cmd->parsed()) {
            ReportBuilder report("age", opt);
            FiniteStructure m = load_structure(age_m);
            report.add_input(structure_to_json(m));
            std::vector<FiniteStructure> classes = age_enumerate(m, age_k, opt.limits);
            report.body()["count"] = classes.size();
            Json list = Json::array();
            for (const auto& s : classes) list.push_back(structure_to_json(s));
            report.body()["classes"] = list;
            return report.finish(kExitPass);
        }

        if (arrow_cmd->parsed())
            return run_arrow(opt, "arrow", ArrowMode::substructure, arrow_c, arrow_b, arrow_a,
                             arrow_r, arrow_d, arrow_exhaustive);
        if (earrow_cmd->parsed())
            return run_arrow(opt, "earrow", ArrowMode::embedding, earrow_c, earrow_b, earrow_a,
                             earrow_r, earrow_d, earrow_exhaustive);

        if (degree_cmd->parsed()) {
            ReportBuilder report("degree", opt);
            FiniteStructure a = load_structure(degree_a);
            report.add_input(structure_to_json(a));
            std::vector<FiniteStructure> b_pool, c_pool;
            std::stringstream bs(degree_b_pool), cs(degree_c_pool);
            std::string item;
            while (std::getline(bs, item, ','))
                if (!item.empty()) {
                    b_pool.push_back(load_structure(item));
                    report.add_input(structure_to_json(b_pool.back()));
                }
            while (std::getline(cs, item, ','))
                if (!item.empty()) {
                    c_pool.push_back(load_structure(item));
                    report.add_input(structure_to_json(c_pool.back()));
                }
            ArrowMode mode =
                degree_mode == "substructure" ? ArrowMode::substructure : ArrowMode::embedding;
            DegreeReport dr =
                degree_evidence(a, b_pool, c_pool, degree_r_max, mode, opt.limits, opt.workers);
            Json cells = Json::array();
            bool budget_hit = false;
            for (const auto& cell : dr.cells) {
                Json c{{"b_index", cell.b_index},
                       {"r", cell.r},
                       {"achieved_c_index", cell.achieved_c_index},
                       {"budget_exceeded", cell.budget_exceeded}};
                if (cell.minimal_d) c["minimal_d"] = *cell.minimal_d;
                if (cell.refuting_witness)
                    c["refuting_witness"] = coloring_to_json(*cell.refuting_witness);
                budget_hit = budget_hit || cell.budget_exceeded;
                cells.push_back(std::move(c));
            }
            report.body()["cells"] = cells;
            report.body()["pool_lower_bound"] = dr.pool_lower_bound;
            report.body()["note"] =
                "upper-bound evidence for the supplied pools only; arrow success is "
                "monotone under enlarging C";
            return report.finish(budget_hit ? kExitBudget : kExitPass);
        }
        if (twodeg_cmd->parsed()) {
            ReportBuilder report("twodeg", opt);
            FiniteStructure a = load_structure(twodeg_a);
            FiniteStructure b = load_structure(twodeg_b);
            FiniteStructure c = load_structure(twodeg_c);
            report.add_input(structure_to_json(a));
            report.add_input(structure_to_json(b));
            report.add_input(structure_to_json(c));
            TwoDegreesReport tr = two_degrees_check(a, b, c, twodeg_r, opt.limits, opt.workers);
            report.body()["d_sub"] = tr.d_sub;
            report.body()["d_emb"] = tr.d_emb;
            report.body()["aut_order"] = tr.aut_order;
            report.body()["bound_ok"] = tr.bound_ok;
            return report.finish(tr.bound_ok ? kExitPass : kExitFailWitness);
        }

        if (verify_cmd->parsed()) {
            ReportBuilder report("semiret-verify", opt);
            Json doc = load_document(verify_witness);
            report.add_input(doc);
            SemiRetractionWitness w = witness_from_json(doc);
            if (verify_depth > 0) w.depth = verify_depth;
            SemiRetractionReport sr = verify_semiretraction(w, opt.limits);
            auto respect_json = [](const RespectReport& r) {
                Json j{{"pass", r.pass}, {"tuples_checked", r.tuples_checked}};
                if (r.counterexample)
                    j["counterexample"] = Json{{"left", r.counterexample->left},
                                               {"right", r.counterexample->right}};
                return j;
            };
            report.body()["g_respecting"] = respect_json(sr.g_respecting);
            report.body()["f_respecting"] = respect_json(sr.f_respecting);
            report.body()["composition"] =
                Json{{"pass", sr.composition.pass}, {"detail", sr.composition.detail}};
            report.body()["pass"] = sr.pass();
            report.body()["depth"] = w.depth;
            return report.finish(sr.pass() ? kExitPass : kExitFailWitness);
        }
        if (restr_cmd->parsed()) {
            ReportBuilder report("restricted", opt);
            Json doc = load_document(restr_witness);
            report.add_input(doc);
            SemiRetractionWitness w = witness_from_json(doc);
            std::vector<int> pattern = parse_int_list(restr_pattern);
            std::vector<int> b_gens = parse_int_list(restr_b_gens);
            std::vector<int> b0 =
                restr_b0.empty() ? w.g.apply_tuple(b_gens) : parse_int_list(restr_b0);
            std::vector<int> a0 = w.g.apply_tuple(pattern);
            RestrictedReport rr =
                check_restricted_inverse_images(w.f, w.a_dom(), pattern, b0, a0, opt.limits);
            report.body()["pass"] = rr.pass;
            report.body()["candidates_checked"] = rr.candidates_checked;
            if (rr.failure) {
                report.body()["failure"] =
                    *rr.failure == RestrictedFailure::escapes_image ? "escapes_image"
                    : *rr.failure == RestrictedFailure::outside_b0  ? "outside_b0"
                                                                    : "type_mismatch";
                report.body()["counterexample"] = rr.counterexample;
            }
            return report.finish(rr.pass ? kExitPass : kExitFailWitness);
        }
        if (transfer_cmd->parsed()) {
            ReportBuilder report("transfer", opt);
            Json doc = load_document(transfer_witness);
            report.add_input(doc);
            SemiRetractionWitness w = witness_from_json(doc);
            std::vector<int> a_gens = parse_int_list(transfer_a_gens);
            std::vector<int> b_gens = parse_int_list(transfer_b_gens);

            std::vector<int> fg_a = w.fg_tuple(a_gens);
            GeneratedSubstructure a_struct = generated_substructure(w.a_host(), fg_a);
            size_t domain = enumerate_embeddings(a_struct.structure, w.a_host()).size();
            std::vector<int> colors;
            if (!transfer_coloring.empty()) {
                colors = coloring_from_json(load_document(transfer_coloring)).colors;
            } else {
                std::mt19937 rng(static_cast<unsigned>(transfer_seed));
                colors.resize(domain);
                for (int& c : colors) c = static_cast<int>(rng() % transfer_r);
            }

            std::vector<int> g_b = w.g.apply_tuple(b_gens);
            GeneratedSubstructure bprime = generated_substructure(w.b_frag(), g_b);
            std::vector<Embedding> hosts = enumerate_embeddings(bprime.structure, w.b_frag());
            if (hosts.empty()) throw FragmentError("no embedding of <g(B)> into the fragment");
            if (transfer_h_index < 0 || transfer_h_index >= static_cast<int>(hosts.size()))
                throw MalformedError("--h-index out of range (found " +
                                     std::to_string(hosts.size()) + " embeddings)");
            TransferReport tr = transfer_pipeline_check(w, a_gens, b_gens, colors,
                                                        hosts[transfer_h_index], opt.limits);
            report.body()["identity_ok"] = tr.identity_ok;
            report.body()["checked"] = tr.checked;
            report.body()["colors_on_k"] = tr.colors_on_k;
            report.body()["colors_on_h"] = tr.colors_on_h;
            report.body()["k_map"] = tr.k_map;
            return report.finish(tr.identity_ok ? kExitPass : kExitFailWitness);
        }
        if (preadj_cmd->parsed()) {
            ReportBuilder report("preadj", opt);
            Json doc = load_document(preadj_witness);
            report.add_input(doc);
            SemiRetractionWitness w = witness_from_json(doc);
            PreadjunctionReport pr = preadjunction_check(w, preadj_max_len, opt.limits);
            report.body()["pass"] = pr.pass;
            report.body()["identities_checked"] = pr.identities_checked;
            if (!pr.failure.empty()) report.body()["failure"] = pr.failure;
            return report.finish(pr.pass ? kExitPass : kExitFailWitness);
        }

        if (egb_cmd->parsed()) {
            GraphBaEncoding enc =
                encode_graph_to_ba(parse_graph_spec(egb_m, egb_edges), opt.limits);
            Json doc{{"algebra", algebra_to_json(enc.algebra)}};
            Json g = Json::array();
            for (int v = 0; v < enc.spec.m; ++v)
                g.push_back({v, element_to_json(enc.algebra, enc.vertex_images[v])});
            doc["g"] = g;
            doc["subalgebra_atom_count"] = subalgebra_atoms(enc.algebra, enc.vertex_images).size();
            if (enc.algebra.atom_count() <= opt.limits.ba_export_max_atoms)
                doc["structure"] = structure_to_json(export_structure(enc.algebra, opt.limits));
            emit(opt, doc);
            return kExitPass;
        }
        if (ehb_cmd->parsed()) {
            HypergraphBaEncoding enc = encode_hypergraph_to_ba(
                parse_hypergraph_spec(ehb_m, ehb_arity, ehb_edges), opt.limits);
            Json doc{{"algebra", algebra_to_json(enc.algebra)}};
            Json g = Json::array();
            for (int v = 0; v < enc.spec.m; ++v)
                g.push_back({v, element_to_json(enc.algebra, enc.vertex_images[v])});
            doc["g"] = g;
            emit(opt, doc);
            return kExitPass;
        }

        if (indisc_cmd->parsed()) {
            ReportBuilder report("indisc", opt);
            Json doc = load_document(indisc_family);
            report.add_input(doc);
            IndexedFamily fam = family_from_json(doc);
            IndiscernibleReport ir = qf_indiscernible_check(fam, indisc_n_max, opt.limits);
            report.body()["pass"] = ir.pass;
            report.body()["tuples_checked"] = ir.tuples_checked;
            if (ir.counterexample)
                report.body()["counterexample"] = Json{{"left", ir.counterexample->first},
                                                       {"right", ir.counterexample->second}};
            return report.finish(ir.pass ? kExitPass : kExitFailWitness);
        }
        if (based_cmd->parsed()) {
            ReportBuilder report("based", opt);
            Json xdoc = load_document(based_x), ydoc = load_document(based_y);
            report.add_input(xdoc);
            report.add_input(ydoc);
            LocallyBasedReport lr = atomic_locally_based_check(
                family_from_json(xdoc), family_from_json(ydoc), based_n_max, opt.limits);
            report.body()["pass"] = lr.pass;
            report.body()["tuples_checked"] = lr.tuples_checked;
            if (lr.counterexample) report.body()["counterexample"] = *lr.counterexample;
            return report.finish(lr.pass ? kExitPass : kExitFailWitness);
        }
    } catch (const Error& e) {
        Json err{{"error", e.what()}};
        switch (e.kind()) {
            case ErrorKind::malformed:
            case ErrorKind::signature_mismatch:
                err["kind"] = "malformed";
                emit(opt, err);
                return kExitMalformed;
            case ErrorKind::budget:
                err["kind"] = "budget";
                emit(opt, err);
                return kExitBudget;
            case ErrorKind::fragment_incomplete:
                err["kind"] = "fragment_incomplete";
                emit(opt, err);
                return kExitDegenerate;
            case ErrorKind::internal:
                err["kind"] = "internal";
                emit(opt, err);
                return 1;
        }
    } catch (const std::exception& e) {
        emit(opt, Json{{"error", e.what()}, {"kind", "malformed"}});
        return kExitMalformed;
    }
    std::cerr << "no subcommand executed\n";
    return kExitMalformed;
}
