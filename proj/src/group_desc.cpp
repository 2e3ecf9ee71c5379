#include "mumford/group_desc.hpp"

#include <algorithm>

#include "mumford/error.hpp"
#include "mumford/rational.hpp"

namespace mumford {

namespace {

std::uint64_t checked_power(std::uint64_t p, unsigned r) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < r; ++i) {
        if (out > (std::uint64_t{1} << 62) / p) {
            throw Error("GroupTooLarge", "p^r does not fit in 62 bits", ErrorKind::Input);
        }
        out *= p;
    }
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

GroupDesc GroupDesc::cyclic(std::uint64_t n) {
    if (n == 0) throw Error("InadmissibleGroup", "cyclic group of order 0", ErrorKind::Input);
    return {GroupKind::Cyclic, n, 0, 0};
}

GroupDesc GroupDesc::elem_ab(std::uint64_t p, unsigned r) {
    if (!is_prime(p)) throw Error("NotPrime", "E(p,r) needs a prime p, got " + std::to_string(p), ErrorKind::Input);
    checked_power(p, r);
    return {GroupKind::ElemAb, 1, p, r};
}

std::string GroupDesc::label() const {
    switch (kind) {
        case GroupKind::Trivial: return "1";
        case GroupKind::Cyclic: return "Z" + std::to_string(n);
        case GroupKind::Klein4: return "D2";
        case GroupKind::ElemAb: return "E(" + std::to_string(p) + "," + std::to_string(r) + ")";
    }
    return "?";
}

std::uint64_t order(const GroupDesc& g) {
    switch (g.kind) {
        case GroupKind::Trivial: return 1;
        case GroupKind::Cyclic: return g.n;
        case GroupKind::Klein4: return 4;
        case GroupKind::ElemAb: return checked_power(g.p, g.r);
    }
    return 1;
}

unsigned generator_count(const GroupDesc& g) {
    switch (g.kind) {
        case GroupKind::Trivial: return 0;
        case GroupKind::Cyclic: return g.n == 1 ? 0 : 1;
        case GroupKind::Klein4: return 2;
        case GroupKind::ElemAb: return g.r;
    }
    return 0;
}

std::uint64_t generator_order(const GroupDesc& g) {
    switch (g.kind) {
        case GroupKind::Trivial: return 1;
        case GroupKind::Cyclic: return g.n;
        case GroupKind::Klein4: return 2;
        case GroupKind::ElemAb: return g.p;
    }
    return 1;
}

bool AbelianFamily::contains(const GroupDesc& g) const {
    switch (kind) {
        case FamilyKind::CyclicPrimeToP:
            return g.kind == GroupKind::Cyclic && g.n >= 2 && gcd_u64(g.n, p) == 1;
        case FamilyKind::KleinFour:
            return g.kind == GroupKind::Klein4 && p != 2;
        case FamilyKind::ElementaryAbelian:
            return g.kind == GroupKind::ElemAb && g.p == p && g.r >= 1;
    }
    return false;
}

std::vector<GroupDesc> AbelianFamily::members(std::uint64_t max_order) const {
    std::vector<GroupDesc> out;
    switch (kind) {
        case FamilyKind::CyclicPrimeToP:
            for (std::uint64_t n = 2; n <= max_order; ++n) {
                if (gcd_u64(n, p) == 1) out.push_back(GroupDesc::cyclic(n));
            }
            break;
        case FamilyKind::KleinFour:
            if (p != 2 && max_order >= 4) out.push_back(GroupDesc::klein4());
            break;
        case FamilyKind::ElementaryAbelian: {
            std::uint64_t q = p;
            for (unsigned r = 1; q <= max_order; ++r) {
                out.push_back(GroupDesc::elem_ab(p, r));
                if (q > max_order / p) break;
                q *= p;
            }
            break;
        }
    }
    return out;
}

std::string AbelianFamily::description() const {
    switch (kind) {
        case FamilyKind::CyclicPrimeToP: return "Z/n with gcd(n," + std::to_string(p) + ")=1, n>=2";
        case FamilyKind::KleinFour: return "D2 = Z/2 x Z/2";
        case FamilyKind::ElementaryAbelian: return "E(r) = (Z/" + std::to_string(p) + ")^r, r>=1";
    }
    return "";
}

std::vector<AbelianFamily> classify_abelian_families(std::uint64_t p) {
    if (!is_prime(p)) throw Error("NotPrime", std::to_string(p) + " is not prime", ErrorKind::Input);
    std::vector<AbelianFamily> out{{FamilyKind::CyclicPrimeToP, p}};
    if (p != 2) out.push_back({FamilyKind::KleinFour, p});
    out.push_back({FamilyKind::ElementaryAbelian, p});
    return out;
}

std::vector<GroupDesc> admissible_groups(std::uint64_t p, std::uint64_t max_order) {
    std::vector<GroupDesc> out;
    for (const auto& family : classify_abelian_families(p)) {
        for (const auto& g : family.members(max_order)) out.push_back(g);
    }
    std::stable_sort(out.begin(), out.end(), [](const GroupDesc& a, const GroupDesc& b) {
        return std::make_pair(order(a), a) < std::make_pair(order(b), b);
    });
    return out;
}

RamificationProfile ramification_profile(const GroupDesc& g) {
    switch (g.kind) {
        case GroupKind::Trivial:
            throw Error("NoRamification", "the trivial group has no ramified points");
        case GroupKind::Cyclic:
            if (g.n == 1) throw Error("NoRamification", "the trivial group has no ramified points");
            return {{g.n, g.n}};
        case GroupKind::Klein4:
            return {{2, 2, 2}};
        case GroupKind::ElemAb:
            if (g.r == 0) throw Error("NoRamification", "the trivial group has no ramified points");
            return {{order(g)}};
    }
    return {};
}

bool admissible_subgroup(const GroupDesc& h, const GroupDesc& g) {
    if (order(h) == 1) return true;
    switch (h.kind) {
        case GroupKind::Cyclic:
            if (g.kind == GroupKind::Cyclic) return g.n % h.n == 0;
            if (g.kind == GroupKind::Klein4) return h.n == 2;
            return false;
        case GroupKind::Klein4:
            return g.kind == GroupKind::Klein4;
        case GroupKind::ElemAb:
            return g.kind == GroupKind::ElemAb && g.p == h.p && h.r <= g.r;
        case GroupKind::Trivial:
            return true;
    }
    return false;
}

std::vector<GroupDesc> subgroup_types(const GroupDesc& g) {
    std::vector<GroupDesc> out;
    switch (g.kind) {
        case GroupKind::Trivial:
            out.push_back(GroupDesc::trivial());
            break;
        case GroupKind::Cyclic:
            for (auto d : divisors(g.n)) out.push_back(d == 1 ? GroupDesc::trivial() : GroupDesc::cyclic(d));
            break;
        case GroupKind::Klein4:
            out = {GroupDesc::trivial(), GroupDesc::cyclic(2), GroupDesc::klein4()};
            break;
        case GroupKind::ElemAb:
            out.push_back(GroupDesc::trivial());
            for (unsigned r = 1; r <= g.r; ++r) out.push_back(GroupDesc::elem_ab(g.p, r));
            break;
    }
    return out;
}

GroupDesc canonicalize(const GroupDesc& g, std::uint64_t p) {
    if (!is_prime(p)) throw Error("NotPrime", std::to_string(p) + " is not prime", ErrorKind::Input);
    switch (g.kind) {
        case GroupKind::Trivial:
            return g;
        case GroupKind::Cyclic:
            if (g.n == 1) return GroupDesc::trivial();
            if (g.n == p) return GroupDesc::elem_ab(p, 1);
            if (g.n % p == 0) {
                throw Error("InadmissibleGroup",
                            "Z" + std::to_string(g.n) + " is not a PGL2 stabilizer in characteristic " +
                                std::to_string(p));
            }
            return g;
        case GroupKind::Klein4:
            return p == 2 ? GroupDesc::elem_ab(2, 2) : g;
        case GroupKind::ElemAb:
            if (g.r == 0) return GroupDesc::trivial();
            if (g.p == p) return g;
            if (g.r == 1) return GroupDesc::cyclic(g.p);
            if (g.p == 2 && g.r == 2) return GroupDesc::klein4();
            throw Error("InadmissibleGroup", g.label() + " is not a PGL2 stabilizer in characteristic " +
                                                 std::to_string(p));
    }
    return g;
}

bool is_canonical(const GroupDesc& g, std::uint64_t p) {
    try {
        return canonicalize(g, p) == g;
    } catch (const Error&) {
        return false;
    }
}

void to_json(nlohmann::json& j, const GroupDesc& g) {
    switch (g.kind) {
        case GroupKind::Trivial: j = {{"kind", "trivial"}}; break;
        case GroupKind::Cyclic: j = {{"kind", "cyclic"}, {"n", g.n}}; break;
        case GroupKind::Klein4: j = {{"kind", "klein4"}}; break;
        case GroupKind::ElemAb: j = {{"kind", "elemab"}, {"p", g.p}, {"r", g.r}}; break;
    }
}

void from_json(const nlohmann::json& j, GroupDesc& g) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "trivial") {
            g = GroupDesc::trivial();
        } else if (kind == "cyclic") {
            g = GroupDesc::cyclic(j.at("n").get<std::uint64_t>());
        } else if (kind == "klein4") {
            g = GroupDesc::klein4();
        } else if (kind == "elemab") {
            g = GroupDesc::elem_ab(j.at("p").get<std::uint64_t>(), j.at("r").get<unsigned>());
        } else {
            throw Error("Parse", "unknown group kind '" + kind + "'", ErrorKind::Input);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("Parse", std::string("bad group JSON: ") + e.what(), ErrorKind::Input);
    }
}

}  // namespace mumford
