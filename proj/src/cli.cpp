#include "mumford/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mumford/acceptance.hpp"
#include "mumford/bt_tree.hpp"
#include "mumford/covering.hpp"
#include "mumford/enumerator.hpp"
#include "mumford/error.hpp"
#include "mumford/graph_of_groups.hpp"
#include "mumford/json_util.hpp"
#include "mumford/subrao.hpp"

namespace mumford {

namespace {

using nlohmann::json;

json versioned(json body) {
    json out = {{"schema", "v1"}};
    out.update(body);
    return out;
}

void emit(std::ostream& out, const json& record) { out << versioned(record).dump() << '\n'; }

json read_json_source(const std::string& source, const std::string& what) {
    std::string text;
    if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
        text = source;
    } else if (source == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(source);
        if (!in) throw Error("FileNotFound", "cannot open " + what + " " + source, ErrorKind::Input);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("Parse", what + " is not valid JSON: " + e.what(), ErrorKind::Input);
    }
}

DecoratedGraph load_graph(const std::string& path) {
    DecoratedGraph g = read_json_source(path, "graph").get<DecoratedGraph>();
    require_valid(g);
    return g;
}

std::pair<End, End> parse_ends(const std::string& text, std::uint64_t p) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
        throw input_error("expected two ends \"e1,e2\", got \"" + text + "\"");
    }
    return {End::parse(text.substr(0, comma), p), End::parse(text.substr(comma + 1), p)};
}

// "(n=1,u=1)" or "1,1".
BTVertex parse_vertex(std::string text, std::uint64_t p) {
    for (const char* strip : {"(", ")", "n=", "u="}) {
        for (auto pos = text.find(strip); pos != std::string::npos; pos = text.find(strip)) {
            text.erase(pos, std::string(strip).size());
        }
    }
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw input_error("expected a vertex \"(n=..,u=..)\"");
    long n = 0;
    try {
        std::size_t used = 0;
        n = std::stol(text.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("n");
    } catch (const std::exception&) {
        throw input_error("bad vertex level in \"" + text + "\"");
    }
    return make_vertex(n, Rat::parse(text.substr(comma + 1)), p);
}

std::vector<std::string> vertex_strings(const std::vector<BTVertex>& vs) {
    std::vector<std::string> out;
    for (const auto& v : vs) out.push_back(v.str());
    return out;
}

void check_prime(std::uint64_t p) {
    if (!is_prime(p)) throw Error("NotPrime", std::to_string(p) + " is not prime", ErrorKind::Input);
}

unsigned default_jobs() {
    const char* env = std::getenv("MUMFORD_JOBS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0 || v > 256) throw input_error("MUMFORD_JOBS must be an integer in 1..256");
    return static_cast<unsigned>(v);
}

struct GraphArgs {
    std::string input;
    std::uint64_t index = 0;
    std::string quotient;
};

struct EnumArgs {
    EnumParams params;
    bool census = false, min_volume = false, verify_bound = false;
    std::uint64_t scan_l = 0;
    unsigned s = 0;
    std::uint64_t seed = 1;
    unsigned jobs = 0;
    bool no_p_edge_rule = false, no_cyclic_edge_rule = false;
};

struct BtArgs {
    std::uint64_t p = 0;
    std::string matrix, matrix2, g1, g2, vertex;
    long window = 4;
    long precision = 10;
};

struct SubraoArgs {
    std::uint64_t p = 0;
    unsigned r = 0;
    std::string format = "json";
};

void run_graph(const std::string& cmd, const GraphArgs& a, std::ostream& out) {
    const DecoratedGraph g = load_graph(a.input);
    if (cmd == "volume") {
        emit(out, {{"mu", volume(g).str()}});
    } else if (cmd == "curvature") {
        json cs = json::object();
        for (const auto& [id, c] : curvatures(g)) cs[id] = c.str();
        emit(out, {{"curvatures", cs}});
    } else if (cmd == "reduce") {
        const DecoratedGraph r = reduce(g);
        emit(out, {{"graph", r}, {"mu", volume(r).str()}, {"reduced", is_reduced(r)}});
    } else if (cmd == "genus") {
        if ((a.index == 0) == a.quotient.empty()) throw input_error("genus needs exactly one of --index or --quotient");
        if (a.index != 0) {
            const GenusResult gr = genus_from_index(g, a.index);
            emit(out, {{"genus", big_json(gr.genus)}, {"index", a.index}, {"below_two", gr.below_two}});
        } else {
            const auto q = read_json_source(a.quotient, "quotient").get<AbelianQuotient>();
            const GaussBonnetReport rep = check_gauss_bonnet(g, q);
            const GenusResult gr = genus_from_index(g, rep.quotient_order);
            emit(out, {{"genus", big_json(gr.genus)},
                       {"index", rep.quotient_order},
                       {"below_two", gr.below_two},
                       {"covering_rank", rep.betti}});
        }
    } else {
        if (a.quotient.empty()) throw input_error("check-gb needs --quotient");
        const auto q = read_json_source(a.quotient, "quotient").get<AbelianQuotient>();
        emit(out, json(check_gauss_bonnet(g, q)));
    }
}

void run_enumerate(EnumArgs a, std::ostream& out) {
    const int modes = int(a.census) + int(a.min_volume) + int(a.verify_bound) + int(a.scan_l != 0);
    if (modes > 1) throw input_error("choose at most one of --census, --min-volume, --verify-bound, --scan-l");
    if (a.scan_l != 0 && a.s == 0) throw input_error("--scan-l needs --s");
    a.params.enforce_p_edge_rule = !a.no_p_edge_rule;
    a.params.enforce_cyclic_edge_rule = !a.no_cyclic_edge_rule;
    const unsigned jobs = a.jobs != 0 ? a.jobs : default_jobs();
    check_params(a.params);
    const EnumParams& params = a.params;

    if (a.census) {
        const CensusReport rep = curvature_census(params);
        for (const auto& [value, configs] : rep.entries) {
            emit(out, {{"record", "bucket"}, {"c", value.str()}, {"configurations", configs}});
        }
        emit(out, {{"record", "summary"},
                   {"p", params.p},
                   {"configurations", rep.configurations},
                   {"min_positive", rep.min_positive ? json(rep.min_positive->str()) : json(nullptr)},
                   {"violations", rep.violations},
                   {"findings", rep.findings}});
    } else if (a.min_volume) {
        const MinVolumeResult mv = min_positive_volume(params, jobs);
        std::vector<std::string> witnesses;
        for (const auto& w : mv.witnesses) witnesses.push_back(witness_label(w));
        emit(out, {{"min", mv.min.str()}, {"witnesses", witnesses}});
    } else if (a.verify_bound) {
        const BoundReport rep = verify_main_bound(params, jobs);
        for (const auto& e : rep.entries) {
            json rec = e;
            rec["record"] = "tree";
            emit(out, rec);
        }
        emit(out, {{"record", "summary"},
                   {"trees", rep.entries.size()},
                   {"counts", rep.counts},
                   {"exceptional", rep.exceptional},
                   {"exceptions_within_exclusions", rep.exceptions_within_exclusions}});
    } else if (a.scan_l != 0) {
        const ScanReport rep = elementary_abelian_scan(params, a.scan_l, a.s, a.seed, jobs);
        for (const auto& e : rep.entries) {
            json rec = e;
            rec["record"] = "tree";
            emit(out, rec);
        }
        emit(out, {{"record", "summary"},
                   {"ell", rep.ell},
                   {"s", rep.s},
                   {"trees", rep.entries.size()},
                   {"denominator_failures", rep.denominator_failures},
                   {"divisibility_failures", rep.divisibility_failures},
                   {"without_embedding", rep.without_embedding}});
    } else {
        for (const auto& g : enumerate_trees(params, jobs)) {
            json rec = tree_record(g);
            rec["record"] = "tree";
            emit(out, rec);
        }
    }
}

void run_bt(const std::string& cmd, const BtArgs& a, std::ostream& out) {
    check_prime(a.p);
    if (a.window < 0) throw input_error("--window must be non-negative");
    if (a.precision < 1) throw input_error("--precision must be positive");
    const LevelWindow window{-a.window, a.window};
    const auto need_matrix = [&](const std::string& text, const char* flag) {
        if (text.empty()) throw input_error(std::string(flag) + " is required for bt " + cmd);
        return ProjMat::parse(text);
    };

    if (cmd == "classify") {
        const ProjMat m = need_matrix(a.matrix, "--matrix");
        json rec = classify(m, a.p);
        rec["matrix"] = m.str();
        emit(out, rec);
    } else if (cmd == "fixed-points") {
        const ProjMat m = need_matrix(a.matrix, "--matrix");
        const FixedPoints fp = fixed_points(m, a.p, a.precision);
        std::vector<std::string> ends;
        for (const auto& e : fp.ends) ends.push_back(e.str(a.p));
        emit(out, {{"ends", ends},
                   {"discriminant", fp.discriminant.str()},
                   {"sqrt_discriminant",
                    fp.sqrt_discriminant ? json(format_approx(*fp.sqrt_discriminant, a.p)) : json(nullptr)}});
    } else if (cmd == "geodesic") {
        if (a.g1.empty()) throw input_error("--g1 is required for bt geodesic");
        const auto [e1, e2] = parse_ends(a.g1, a.p);
        const Geodesic geo = geodesic(e1, e2, a.p, window);
        emit(out, {{"vertices", vertex_strings(geo.vertices)},
                   {"truncated", geo.truncated},
                   {"window", {window.lo, window.hi}}});
    } else if (cmd == "intersect") {
        if (a.g1.empty() || a.g2.empty()) throw input_error("--g1 and --g2 are required for bt intersect");
        json rec = geodesic_intersection(parse_ends(a.g1, a.p), parse_ends(a.g2, a.p), a.p, window);
        rec["window"] = {window.lo, window.hi};
        emit(out, rec);
    } else if (cmd == "mirror") {
        const ProjMat m = need_matrix(a.matrix, "--matrix");
        const Mirror mir = mirror(m, a.p, a.window);
        emit(out, {{"vertices", vertex_strings(mir.vertices)},
                   {"reason", mir.reason.empty() ? json(nullptr) : json(mir.reason)},
                   {"truncated", mir.truncated},
                   {"radius", a.window}});
    } else if (cmd == "rho") {
        const ProjMat m = need_matrix(a.matrix, "--matrix");
        const BTVertex v = a.vertex.empty() ? BTVertex{} : parse_vertex(a.vertex, a.p);
        const ResidueMatrix r = rho(v, m, a.p);
        emit(out, {{"vertex", v.str()}, {"residue", r.str()}, {"identity", r.is_identity()}});
    } else {
        const ProjMat m1 = need_matrix(a.matrix, "--matrix");
        const ProjMat m2 = need_matrix(a.matrix2, "--matrix2");
        const PairReport rep = pair_type(m1, m2, a.p, a.window);
        const auto opt = [](const std::optional<unsigned>& x) { return x ? json(*x) : json(nullptr); };
        emit(out, {{"kind", kind_name(rep.kind)},
                   {"same_fixed_points", rep.same_fixed_points},
                   {"order1", opt(rep.order1)},
                   {"order2", opt(rep.order2)},
                   {"product_order", opt(rep.product_order)},
                   {"group_size", rep.group_size == 0 ? json(nullptr) : json(rep.group_size)},
                   {"mirrors_intersect", rep.mirrors_intersect ? json(*rep.mirrors_intersect) : json(nullptr)},
                   {"common_fixed", vertex_strings(rep.common_fixed)},
                   {"radius", a.window}});
    }
}

void run_subrao(const SubraoArgs& a, std::ostream& out) {
    const SubraoReport rep = subrao_bound_report(a.p, a.r);
    if (a.format == "table") {
        out << subrao_table(rep);
    } else {
        emit(out, json(rep));
    }
}

int run_verify(std::ostream& out, std::ostream& err) {
    const AcceptanceReport rep = run_acceptance([&](const CriterionResult& c) {
        err << (c.passed ? "PASS " : "FAIL ") << c.id << ' ' << c.name << ": " << c.detail << '\n';
    });
    out << rep.to_json().dump() << '\n';
    return rep.passed() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Graphs of groups, Mumford curves and the Bruhat-Tits tree", "mumford"};
    app.require_subcommand(1);

    GraphArgs graph_args;
    auto* graph = app.add_subcommand("graph", "Operations on a decorated graph of groups");
    graph->require_subcommand(1);
    std::string graph_cmd;
    for (const char* name : {"genus", "volume", "curvature", "reduce", "check-gb"}) {
        auto* sub = graph->add_subcommand(name);
        sub->add_option("input", graph_args.input, "Graph JSON file, '-' for stdin")->required();
        if (std::string(name) == "genus") sub->add_option("--index", graph_args.index, "Index of the normal subgroup");
        if (std::string(name) == "genus" || std::string(name) == "check-gb") {
            sub->add_option("--quotient", graph_args.quotient, "Quotient JSON file or inline JSON");
        }
        sub->callback([&graph_cmd, name] { graph_cmd = name; });
    }

    EnumArgs enum_args;
    auto* enumerate = app.add_subcommand("enumerate", "Bounded enumeration of reduced trees of groups");
    enumerate->add_option("--p", enum_args.params.p, "Residue characteristic")->required();
    enumerate->add_option("--max-vertices", enum_args.params.max_vertices)->capture_default_str();
    enumerate->add_option("--max-order", enum_args.params.max_group_order)->capture_default_str();
    enumerate->add_option("--max-star", enum_args.params.max_star)->capture_default_str();
    enumerate->add_flag("--census", enum_args.census, "Curvature census of star configurations");
    enumerate->add_flag("--min-volume", enum_args.min_volume, "Minimal positive volume and its witnesses");
    enumerate->add_flag("--verify-bound", enum_args.verify_bound, "Classify trees by 1/mu against 4");
    enumerate->add_option("--scan-l", enum_args.scan_l, "Elementary abelian scan for the prime l");
    enumerate->add_option("--s", enum_args.s, "Rank of (Z/l)^s for --scan-l");
    enumerate->add_option("--seed", enum_args.seed, "Seed for embedding samples")->capture_default_str();
    enumerate->add_option("--jobs", enum_args.jobs, "Worker threads (default MUMFORD_JOBS or 1)")
        ->check(CLI::Range(1, 256));
    enumerate->add_flag("--no-p-edge-rule", enum_args.no_p_edge_rule);
    enumerate->add_flag("--no-cyclic-edge-rule", enum_args.no_cyclic_edge_rule);

    BtArgs bt_args;
    auto* bt = app.add_subcommand("bt", "Bruhat-Tits tree computations");
    bt->require_subcommand(1);
    std::string bt_cmd;
    for (const char* name : {"classify", "fixed-points", "geodesic", "intersect", "mirror", "rho", "pair"}) {
        auto* sub = bt->add_subcommand(name);
        sub->add_option("--p", bt_args.p, "Prime")->required();
        sub->add_option("--matrix", bt_args.matrix, "Row-major \"a,b,c,d\"");
        sub->add_option("--matrix2", bt_args.matrix2, "Second matrix for pair");
        sub->add_option("--g1", bt_args.g1, "Geodesic ends \"e1,e2\"");
        sub->add_option("--g2", bt_args.g2, "Second geodesic for intersect");
        sub->add_option("--vertex", bt_args.vertex, "Vertex \"(n=..,u=..)\" for rho");
        sub->add_option("--window", bt_args.window, "Level window [-R,R], or ball radius R for mirror and pair")
            ->capture_default_str();
        sub->add_option("--precision", bt_args.precision, "p-adic digits for fixed points")->capture_default_str();
        sub->callback([&bt_cmd, name] { bt_cmd = name; });
    }

    SubraoArgs subrao_args;
    auto* subrao = app.add_subcommand("subrao", "The Subrao curve family for q = p^r");
    subrao->add_option("--p", subrao_args.p)->required();
    subrao->add_option("--r", subrao_args.r)->required();
    subrao->add_option("--format", subrao_args.format)->check(CLI::IsMember({"json", "table"}))->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help(e.what());
            return 0;
        }
        err << versioned({{"error", "Usage"}, {"message", e.what()}}).dump() << '\n';
        return 2;
    }

    try {
        if (graph->parsed()) run_graph(graph_cmd, graph_args, out);
        if (enumerate->parsed()) run_enumerate(enum_args, out);
        if (bt->parsed()) run_bt(bt_cmd, bt_args, out);
        if (subrao->parsed()) run_subrao(subrao_args, out);
        if (verify->parsed()) return run_verify(out, err);
        return 0;
    } catch (const Error& e) {
        err << versioned({{"error", e.code()}, {"message", e.what()}}).dump() << '\n';
        return e.kind() == ErrorKind::Input ? 2 : 1;
    } catch (const std::exception& e) {
        err << versioned({{"error", "Internal"}, {"message", e.what()}}).dump() << '\n';
        return 1;
    }
}

}  // namespace mumford
