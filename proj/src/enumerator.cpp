#include "mumford/enumerator.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <thread>

#include "mumford/covering.hpp"
#include "mumford/error.hpp"
#include "mumford/sampling.hpp"

namespace mumford {

namespace {

// Adjacency-list tree used during generation; converted to DecoratedGraph
// only for the final, deduplicated output.
struct RawTree {
    std::vector<GroupDesc> groups;
    std::vector<std::vector<std::pair<std::size_t, GroupDesc>>> adj;

    std::size_t add_vertex(const GroupDesc& g) {
        groups.push_back(g);
        adj.emplace_back();
        return groups.size() - 1;
    }
    void add_edge(std::size_t a, std::size_t b, const GroupDesc& h) {
        adj[a].push_back({b, h});
        adj[b].push_back({a, h});
    }
};

constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

std::string encode(const RawTree& t, std::size_t v, std::size_t parent) {
    std::vector<std::string> children;
    for (const auto& [w, h] : t.adj[v]) {
        if (w != parent) children.push_back(h.label() + ">" + encode(t, w, v));
    }
    std::sort(children.begin(), children.end());
    std::string out = t.groups[v].label() + "{";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += ",";
        out += children[i];
    }
    return out + "}";
}

std::pair<std::string, std::size_t> canonical_root(const RawTree& t) {
    std::string best;
    std::size_t root = 0;
    for (std::size_t v = 0; v < t.groups.size(); ++v) {
        std::string e = encode(t, v, kNoParent);
        if (v == 0 || e < best) {
            best = std::move(e);
            root = v;
        }
    }
    return {best, root};
}

RawTree from_graph(const DecoratedGraph& g) {
    RawTree t;
    for (const auto& v : g.vertices) t.add_vertex(v.group);
    for (const auto& e : g.tree_edges) t.add_edge(g.index_of(e.from), g.index_of(e.to), e.group);
    return t;
}

DecoratedGraph to_graph(const RawTree& t, std::uint64_t p) {
    DecoratedGraph g;
    g.p = p;
    const std::size_t root = canonical_root(t).second;
    const std::function<void(std::size_t, std::size_t, const std::string*)> visit =
        [&](std::size_t v, std::size_t parent, const std::string* parent_id) {
            const std::string id = "v" + std::to_string(g.vertices.size() + 1);
            g.vertices.push_back({id, t.groups[v]});
            if (parent_id) {
                for (const auto& [w, h] : t.adj[v]) {
                    if (w == parent) g.tree_edges.push_back({*parent_id, id, h});
                }
            }
            std::vector<std::pair<std::string, std::size_t>> children;
            for (const auto& [w, h] : t.adj[v]) {
                if (w != parent) children.push_back({h.label() + ">" + encode(t, w, v), w});
            }
            std::sort(children.begin(), children.end());
            for (const auto& [key, w] : children) visit(w, v, &id);
        };
    visit(root, kNoParent, nullptr);
    return g;
}

// Runs body(i) for i in [0, n) on `jobs` threads; index i goes to thread
// i % jobs, so callers that write into slot i get schedule-independent output.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) {
        threads.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += jobs) body(i);
        });
    }
    for (auto& th : threads) th.join();
}

Rat inv(std::uint64_t n) { return Rat(BigInt(1), BigInt(static_cast<unsigned long>(n))); }

bool edge_allowed(const GroupDesc& h, const GroupDesc& g, const EnumParams& params) {
    const auto allowed = allowed_edge_groups(g, params);
    return std::find(allowed.begin(), allowed.end(), h) != allowed.end();
}

std::string path_label(const DecoratedGraph& g) {
    const std::size_t n = g.vertices.size();
    if (n == 1) return g.vertices[0].group.label();
    std::vector<std::vector<std::pair<std::size_t, GroupDesc>>> adj(n);
    for (const auto& e : g.tree_edges) {
        const std::size_t a = g.index_of(e.from), b = g.index_of(e.to);
        adj[a].push_back({b, e.group});
        adj[b].push_back({a, e.group});
    }
    std::vector<std::size_t> ends;
    for (std::size_t v = 0; v < n; ++v) {
        if (adj[v].size() > 2) return {};
        if (adj[v].size() == 1) ends.push_back(v);
    }
    std::string best;
    for (std::size_t start : ends) {
        std::string s = g.vertices[start].group.label();
        std::size_t prev = kNoParent, cur = start;
        for (std::size_t step = 1; step < n; ++step) {
            for (const auto& [w, h] : adj[cur]) {
                if (w == prev) continue;
                s += h.kind == GroupKind::Trivial ? "-" : "-(" + h.label() + ")-";
                s += g.vertices[w].group.label();
                prev = cur;
                cur = w;
                break;
            }
        }
        if (best.empty() || s < best) best = s;
    }
    return best;
}

// Multisets of size s over pool (as non-decreasing index sequences).
void multisets(std::size_t pool, std::size_t s, std::vector<std::size_t>& cur,
               const std::function<void(const std::vector<std::size_t>&)>& emit) {
    if (cur.size() == s) {
        emit(cur);
        return;
    }
    const std::size_t start = cur.empty() ? 0 : cur.back();
    for (std::size_t i = start; i < pool; ++i) {
        cur.push_back(i);
        multisets(pool, s, cur, emit);
        cur.pop_back();
    }
}

StarConfig make_config(const GroupDesc& v, std::vector<GroupDesc> edges) {
    std::sort(edges.begin(), edges.end());
    Rat c = -inv(order(v));
    for (const auto& e : edges) c += Rat(BigInt(1), BigInt(2)) * inv(order(e));
    return {v, std::move(edges), c};
}

bool contains_config(const std::vector<StarConfig>& list, const StarConfig& c) {
    return std::find(list.begin(), list.end(), c) != list.end();
}

std::string config_list(const std::vector<StarConfig>& list) {
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i) out += (i ? ", " : "") + list[i].label();
    return out.empty() ? "{}" : "{" + out + "}";
}

}  // namespace

void check_params(const EnumParams& params) {
    if (!is_prime(params.p)) throw input_error("p=" + std::to_string(params.p) + " is not prime");
    if (params.max_vertices < 1) throw input_error("max_vertices must be positive");
    if (params.max_group_order < 2) throw input_error("max_group_order must be at least 2");
    if (params.max_star < 1) throw input_error("max_star must be positive");
}

std::vector<GroupDesc> vertex_group_pool(const EnumParams& params) {
    auto pool = admissible_groups(params.p, params.max_group_order);
    if (params.vertex_groups) {
        std::erase_if(pool, [&](const GroupDesc& g) {
            return std::find(params.vertex_groups->begin(), params.vertex_groups->end(), g) ==
                   params.vertex_groups->end();
        });
    }
    return pool;
}

std::vector<GroupDesc> allowed_edge_groups(const GroupDesc& g, const EnumParams& params) {
    std::vector<GroupDesc> out;
    for (const auto& h : subgroup_types(g)) {
        if (order(h) >= order(g)) continue;  // reducedness
        if (h.kind != GroupKind::Trivial) {
            if (g.kind == GroupKind::ElemAb && params.enforce_p_edge_rule) continue;
            if (g.kind == GroupKind::Cyclic && params.enforce_cyclic_edge_rule) continue;
        }
        out.push_back(h);
    }
    return out;
}

std::vector<DecoratedGraph> enumerate_trees(const EnumParams& params, unsigned jobs) {
    check_params(params);
    const auto pool = vertex_group_pool(params);

    std::vector<RawTree> level;
    for (const auto& g : pool) {
        RawTree t;
        t.add_vertex(g);
        level.push_back(std::move(t));
    }
    std::vector<RawTree> all = level;

    for (std::size_t size = 2; size <= params.max_vertices && !level.empty(); ++size) {
        // Each parent is extended independently; the per-parent results are
        // merged through an ordered map, so the next level is deterministic.
        std::vector<std::vector<std::pair<std::string, RawTree>>> grown(level.size());
        parallel_for(level.size(), jobs, [&](std::size_t i) {
            const RawTree& parent = level[i];
            for (std::size_t v = 0; v < parent.groups.size(); ++v) {
                if (parent.adj[v].size() >= params.max_star) continue;
                for (const auto& h : allowed_edge_groups(parent.groups[v], params)) {
                    for (const auto& g : pool) {
                        if (!edge_allowed(h, g, params)) continue;
                        RawTree child = parent;
                        const std::size_t w = child.add_vertex(g);
                        child.add_edge(v, w, h);
                        std::string key = canonical_root(child).first;
                        grown[i].push_back({std::move(key), std::move(child)});
                    }
                }
            }
        });
        std::map<std::string, RawTree> next;
        for (auto& bucket : grown) {
            for (auto& [key, tree] : bucket) next.emplace(std::move(key), std::move(tree));
        }
        level.clear();
        for (auto& [key, tree] : next) level.push_back(std::move(tree));
        all.insert(all.end(), level.begin(), level.end());
    }

    std::vector<std::pair<std::pair<std::size_t, std::string>, DecoratedGraph>> keyed;
    for (const auto& t : all) keyed.push_back({{t.groups.size(), canonical_root(t).first}, to_graph(t, params.p)});
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<DecoratedGraph> out;
    out.reserve(keyed.size());
    for (auto& [key, g] : keyed) out.push_back(std::move(g));
    return out;
}

std::string canonical_form(const DecoratedGraph& g) { return canonical_root(from_graph(g)).first; }

std::string witness_label(const DecoratedGraph& g) {
    std::string label = path_label(g);
    return label.empty() ? canonical_form(g) : label;
}

MinVolumeResult min_positive_volume(const EnumParams& params, unsigned jobs) {
    std::optional<Rat> best;
    std::vector<DecoratedGraph> witnesses;
    for (auto& g : enumerate_trees(params, jobs)) {
        const Rat mu = tree_volume(g);
        if (mu.sign() <= 0) continue;
        if (!best || mu < *best) {
            best = mu;
            witnesses.clear();
        }
        if (mu == *best) witnesses.push_back(std::move(g));
    }
    if (!best) throw Error("NoPositiveVolume", "no enumerated tree has positive volume");
    return {*best, std::move(witnesses)};
}

std::string StarConfig::label() const {
    std::string out = "(" + vertex.label() + ",s=" + std::to_string(edges.size()) + ",[";
    for (std::size_t i = 0; i < edges.size(); ++i) out += (i ? "," : "") + edges[i].label();
    return out + "])";
}

CensusReport curvature_census(const EnumParams& params) {
    check_params(params);
    CensusReport report;
    const std::uint64_t p = params.p;
    std::vector<StarConfig> universe;
    for (const auto& v : vertex_group_pool(params)) {
        const auto edges = allowed_edge_groups(v, params);
        for (std::size_t s = 1; s <= params.max_star; ++s) {
            std::vector<std::size_t> cur;
            multisets(edges.size(), s, cur, [&](const std::vector<std::size_t>& pick) {
                std::vector<GroupDesc> chosen;
                for (auto i : pick) chosen.push_back(edges[i]);
                universe.push_back(make_config(v, std::move(chosen)));
            });
        }
    }
    report.configurations = universe.size();
    for (const auto& c : universe) report.entries[c.c].push_back(c);
    for (auto& [value, list] : report.entries) {
        std::sort(list.begin(), list.end(), [](const StarConfig& a, const StarConfig& b) {
            return std::tie(a.vertex, a.edges) < std::tie(b.vertex, b.edges);
        });
    }

    const Rat sixth(BigInt(1), BigInt(6));
    const Rat quarter(BigInt(1), BigInt(4));
    const Rat third(BigInt(1), BigInt(3));
    for (const auto& [value, list] : report.entries) {
        if (value.sign() <= 0) continue;
        if (!report.min_positive) report.min_positive = value;
        if (value < sixth) {
            report.violations.push_back("c=" + value.str() + " is positive and below 1/6: " + config_list(list));
        }
    }

    // The classified cases, expressed with canonical descriptors for p and kept
    // only when the configuration exists in this search space.
    const GroupDesc z2 = canonicalize(GroupDesc::cyclic(2), p);
    const GroupDesc d2 = canonicalize(GroupDesc::klein4(), p);
    const GroupDesc z3 = canonicalize(GroupDesc::cyclic(3), p);
    const auto present = [&](const StarConfig& c) { return contains_config(universe, c); };
    for (auto c : {make_config(d2, {z2}), make_config(z2, {GroupDesc::trivial()})}) {
        if (present(c)) report.expected_zero.push_back(c);
    }
    if (auto c = make_config(z3, {GroupDesc::trivial()}); present(c)) report.expected_sixth.push_back(c);

    const auto compare_bucket = [&](const Rat& value, std::vector<StarConfig> expected, const std::string& name) {
        std::vector<StarConfig> actual;
        if (auto it = report.entries.find(value); it != report.entries.end()) actual = it->second;
        const auto by_key = [](const StarConfig& a, const StarConfig& b) {
            return std::tie(a.vertex, a.edges) < std::tie(b.vertex, b.edges);
        };
        std::sort(expected.begin(), expected.end(), by_key);
        if (actual != expected) {
            report.violations.push_back(name + " bucket is " + config_list(actual) + ", expected " +
                                        config_list(expected));
        }
    };
    compare_bucket(Rat(0), report.expected_zero, "c=0");
    compare_bucket(sixth, report.expected_sixth, "c=1/6");

    const std::vector<StarConfig> known_quarter = {make_config(d2, {z2, z2}),
                                                   make_config(d2, {GroupDesc::trivial()})};
    if (auto it = report.entries.find(quarter); it != report.entries.end()) {
        for (const auto& c : it->second) {
            if (!contains_config(known_quarter, c)) {
                report.findings.push_back(c.label() + " has c=1/4 but is absent from the classified list for 1/4");
            }
        }
    }
    for (const auto& [value, list] : report.entries) {
        if (value > quarter && value < third) {
            report.findings.push_back("c=" + value.str() + " lies strictly between 1/4 and 1/3: " +
                                      config_list(list));
        }
    }
    return report;
}

BoundReport verify_main_bound(const EnumParams& params, unsigned jobs) {
    BoundReport report;
    const Rat three(3), four(4);
    for (auto& g : enumerate_trees(params, jobs)) {
        BoundEntry e;
        e.mu = tree_volume(g);
        if (e.mu.sign() <= 0) {
            e.classification = "nonpositive";
        } else {
            e.ratio = Rat(1) / e.mu;
            e.classification = *e.ratio <= three ? "within_3" : (*e.ratio <= four ? "boundary_4" : "exceptional");
        }
        e.graph = std::move(g);
        ++report.counts[e.classification];
        if (e.classification == "exceptional") report.exceptional.push_back(witness_label(e.graph));
        report.entries.push_back(std::move(e));
    }
    std::sort(report.exceptional.begin(), report.exceptional.end());
    const std::uint64_t p = params.p;
    const std::set<std::string> exclusions = {
        witness_label(segment(p, canonicalize(GroupDesc::cyclic(2), p), canonicalize(GroupDesc::cyclic(3), p))),
        witness_label(segment(p, canonicalize(GroupDesc::klein4(), p), canonicalize(GroupDesc::cyclic(3), p)))};
    for (const auto& label : report.exceptional) {
        if (!exclusions.contains(label)) report.exceptions_within_exclusions = false;
    }
    return report;
}

bool divisibility_check(std::uint64_t ell, unsigned s, const BigInt& genus) {
    long exponent = ell == 2 ? static_cast<long>(s) - 2 : static_cast<long>(s) - 1;
    if (exponent <= 0) return true;
    const BigInt d = ipow(ell, static_cast<unsigned long>(exponent));
    const BigInt gm1 = genus - 1;
    return mpz_divisible_p(gm1.get_mpz_t(), d.get_mpz_t()) != 0;
}

ScanReport elementary_abelian_scan(const EnumParams& params, std::uint64_t ell, unsigned s, std::uint64_t seed,
                                   unsigned jobs) {
    check_params(params);
    if (!is_prime(ell)) throw input_error("l=" + std::to_string(ell) + " is not prime");
    if (ell == params.p) throw input_error("l must differ from the residue characteristic p");
    if (s < 1) throw input_error("s must be positive");

    EnumParams restricted = params;
    if (ell == 2) {
        restricted.vertex_groups = std::vector<GroupDesc>{GroupDesc::cyclic(2), GroupDesc::klein4()};
        restricted.max_group_order = 4;
    } else {
        restricted.vertex_groups = std::vector<GroupDesc>{GroupDesc::cyclic(ell)};
        restricted.max_group_order = ell;
    }
    const auto trees = enumerate_trees(restricted, jobs);
    const BigInt bound(static_cast<unsigned long>(ell == 2 ? 4 : ell));
    const std::vector<std::uint64_t> factors(s, ell);

    ScanReport report;
    report.ell = ell;
    report.s = s;
    report.entries.resize(trees.size());
    parallel_for(trees.size(), jobs, [&](std::size_t i) {
        ScanEntry& e = report.entries[i];
        e.graph = trees[i];
        e.mu = tree_volume(e.graph);
        e.denominator_ok = mpz_divisible_p(bound.get_mpz_t(), e.mu.den().get_mpz_t()) != 0;
        std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + i);
        if (auto q = sample_embedding(e.graph, factors, rng, 200)) {
            const auto gb = check_gauss_bonnet(e.graph, *q);
            e.embedded = true;
            e.genus = BigInt(static_cast<unsigned long>(gb.betti));
            e.divisible = gb.holds && divisibility_check(ell, s, *e.genus);
        }
    });
    for (const auto& e : report.entries) {
        if (!e.denominator_ok) ++report.denominator_failures;
        if (!e.embedded) ++report.without_embedding;
        if (!e.divisible) ++report.divisibility_failures;
    }
    return report;
}

nlohmann::json tree_record(const DecoratedGraph& g) {
    nlohmann::json curv = nlohmann::json::object();
    for (const auto& [id, c] : curvatures(g)) curv[id] = c.str();
    return {{"graph", g}, {"canonical", canonical_form(g)}, {"volume", tree_volume(g).str()}, {"curvatures", curv}};
}

void to_json(nlohmann::json& j, const StarConfig& c) {
    j = {{"vertex", c.vertex}, {"s", c.edges.size()}, {"edges", c.edges}, {"c", c.c.str()}, {"label", c.label()}};
}

void to_json(nlohmann::json& j, const CensusReport& r) {
    nlohmann::json buckets = nlohmann::json::array();
    for (const auto& [value, list] : r.entries) {
        nlohmann::json labels = nlohmann::json::array();
        for (const auto& c : list) labels.push_back(c.label());
        buckets.push_back({{"c", value.str()}, {"count", list.size()}, {"configurations", labels}});
    }
    j = {{"configurations", r.configurations},
         {"min_positive", r.min_positive ? nlohmann::json(r.min_positive->str()) : nlohmann::json(nullptr)},
         {"buckets", buckets},
         {"violations", r.violations},
         {"findings", r.findings}};
}

void to_json(nlohmann::json& j, const BoundEntry& e) {
    j = tree_record(e.graph);
    j["witness"] = witness_label(e.graph);
    j["ratio"] = e.ratio ? nlohmann::json(e.ratio->str()) : nlohmann::json(nullptr);
    j["classification"] = e.classification;
}

void to_json(nlohmann::json& j, const ScanEntry& e) {
    j = tree_record(e.graph);
    j["witness"] = witness_label(e.graph);
    j["denominator_ok"] = e.denominator_ok;
    j["embedded"] = e.embedded;
    j["genus"] = e.genus ? nlohmann::json(e.genus->get_ui()) : nlohmann::json(nullptr);
    j["divisible"] = e.divisible;
}

}  // namespace mumford
