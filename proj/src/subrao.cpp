#include "mumford/subrao.hpp"

#include <sstream>

#include "mumford/covering.hpp"
#include "mumford/error.hpp"
#include "mumford/finite_field.hpp"
#include "mumford/json_util.hpp"

namespace mumford {

namespace {

void check_args(std::uint64_t p, unsigned r) {
    if (!is_prime(p)) throw input_error("p=" + std::to_string(p) + " is not prime");
    if (r < 1) throw input_error("r must be at least 1");
    if (r > 12 || ipow(p, r) > BigInt(1u << 20)) throw input_error("q = p^r is too large");
}

}  // namespace

BigInt subrao_genus(std::uint64_t p, unsigned r) {
    const BigInt q1 = ipow(p, r) - 1;
    return q1 * q1;
}

DecoratedGraph subrao_graph(std::uint64_t p, unsigned r) {
    const GroupDesc e = canonicalize(GroupDesc::elem_ab(p, r), p);
    return segment(p, e, e);
}

SubraoReport subrao_bound_report(std::uint64_t p, unsigned r) {
    check_args(p, r);
    SubraoReport out;
    out.p = p;
    out.r = r;
    out.q = ipow(p, r).get_ui();
    const BigInt q(static_cast<unsigned long>(out.q));
    out.genus = subrao_genus(p, r);
    out.subgroup_order = q * q;
    out.full_aut_order = 2 * q * q * (q - 1);

    const DecoratedGraph g = subrao_graph(p, r);
    out.gauss_bonnet_genus = genus_from_index(g, out.q * out.q).genus;
    const std::uint64_t rank = betti(covering_graph(g, direct_product_quotient(g)));
    out.covering_rank = BigInt(static_cast<unsigned long>(rank));

    out.bound_lhs = out.subgroup_order;
    out.bound_rhs = 2 * (out.genus - 1);
    out.bound_holds = out.bound_lhs <= out.bound_rhs;
    out.bound_equality = out.bound_lhs == out.bound_rhs;
    out.nakajima_bound = 4 * out.genus + 4;
    out.exceeds_nakajima = out.full_aut_order > out.nakajima_bound;
    out.modulus = FiniteField(p, r).modulus_string();

    if (out.genus < 2) out.flags.push_back("genus_below_two");
    if (!out.bound_holds) out.flags.push_back("bound_violated");
    if (out.bound_equality) out.flags.push_back("bound_equality");
    if (out.gauss_bonnet_genus != out.genus || out.covering_rank != out.genus) {
        out.flags.push_back("genus_mismatch");
    }
    return out;
}

std::uint64_t verify_all_translations(std::uint64_t p, unsigned r) {
    check_args(p, r);
    const FiniteField field(p, r);
    const BiPoly curve = subrao_polynomial(field, field.size());
    std::uint64_t passed = 0;
    for (const auto& a : field.elements()) {
        for (const auto& b : field.elements()) {
            if (curve.substitute(a, b) == curve) ++passed;
        }
    }
    return passed;
}

void to_json(nlohmann::json& j, const SubraoReport& r) {
    j = {{"p", r.p},
         {"r", r.r},
         {"q", r.q},
         {"genus", big_json(r.genus)},
         {"subgroup_order", big_json(r.subgroup_order)},
         {"full_aut_order", big_json(r.full_aut_order)},
         {"full_aut_structure", "Z_p^{2r} x| D_{q-1}"},
         {"gauss_bonnet_genus", big_json(r.gauss_bonnet_genus)},
         {"covering_rank", big_json(r.covering_rank)},
         {"bound", {{"lhs", big_json(r.bound_lhs)},
                    {"rhs", big_json(r.bound_rhs)},
                    {"holds", r.bound_holds},
                    {"equality", r.bound_equality}}},
         {"nakajima_bound", big_json(r.nakajima_bound)},
         {"exceeds_nakajima", r.exceeds_nakajima},
         {"modulus", r.modulus},
         {"c", "metadata only (|c| < 1)"},
         {"flags", r.flags}};
}

std::string subrao_table(const SubraoReport& r) {
    std::ostringstream out;
    const auto row = [&](const std::string& k, const std::string& v) { out << k << std::string(24 - k.size(), ' ') << v << "\n"; };
    row("p, r, q", std::to_string(r.p) + ", " + std::to_string(r.r) + ", " + std::to_string(r.q));
    row("modulus", r.modulus);
    row("genus (q-1)^2", r.genus.get_str());
    row("Gauss-Bonnet genus", r.gauss_bonnet_genus.get_str());
    row("covering rank", r.covering_rank.get_str());
    row("|G| = q^2", r.subgroup_order.get_str());
    row("2(g-1)", r.bound_rhs.get_str());
    row("q^2 <= 2(g-1)", r.bound_holds ? (r.bound_equality ? "yes (equality)" : "yes") : "no");
    row("|Aut| = 2q^2(q-1)", r.full_aut_order.get_str());
    row("4g+4", r.nakajima_bound.get_str());
    std::string flags;
    for (const auto& f : r.flags) flags += (flags.empty() ? "" : ", ") + f;
    row("flags", flags.empty() ? "-" : flags);
    return out.str();
}

}  // namespace mumford
