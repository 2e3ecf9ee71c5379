#include "mumford/finite_abelian.hpp"

#include <algorithm>
#include <numeric>

#include "mumford/error.hpp"
#include "mumford/rational.hpp"

namespace mumford {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::uint64_t> factors) : factors_(std::move(factors)) {
    for (auto m : factors_) {
        if (m < 1) throw Error("InvalidQuotient", "cyclic factor of order 0", ErrorKind::Input);
        if (order_ > (std::uint64_t{1} << 24) / m) {
            throw Error("InvalidQuotient", "quotient group too large (limit 2^24 elements)", ErrorKind::Input);
        }
        order_ *= m;
    }
}

bool FiniteAbelianGroup::contains(const Element& x) const {
    if (x.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= factors_[i]) return false;
    }
    return true;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::add(const Element& a, const Element& b) const {
    Element out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = (a[i] + b[i]) % factors_[i];
    return out;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::scale(const Element& a, std::uint64_t k) const {
    Element out(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = (a[i] * (k % factors_[i])) % factors_[i];
    return out;
}

std::uint64_t FiniteAbelianGroup::element_order(const Element& a) const {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const std::uint64_t component = factors_[i] / gcd_u64(a[i], factors_[i]);
        out = std::lcm(out, component);
    }
    return out;
}

std::uint64_t FiniteAbelianGroup::index(const Element& x) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) out = out * factors_[i] + x[i];
    return out;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::element(std::uint64_t index) const {
    Element out(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        out[i] = index % factors_[i];
        index /= factors_[i];
    }
    return out;
}

std::vector<std::uint64_t> FiniteAbelianGroup::span(const std::vector<Element>& gens) const {
    std::vector<char> seen(order_, 0);
    std::vector<std::uint64_t> members{index(zero())};
    seen[members.front()] = 1;
    for (std::size_t head = 0; head < members.size(); ++head) {
        const Element x = element(members[head]);
        for (const auto& g : gens) {
            const std::uint64_t y = index(add(x, g));
            if (!seen[y]) {
                seen[y] = 1;
                members.push_back(y);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

std::optional<GroupDesc> identify_subgroup(const FiniteAbelianGroup& q,
                                           const std::vector<std::uint64_t>& members) {
    const std::uint64_t size = members.size();
    if (size == 1) return GroupDesc::trivial();
    std::uint64_t exponent = 1;
    for (auto idx : members) {
        const std::uint64_t o = q.element_order(q.element(idx));
        if (o == size) return GroupDesc::cyclic(size);
        exponent = std::lcm(exponent, o);
    }
    if (!is_prime(exponent)) return std::nullopt;
    unsigned r = 0;
    for (std::uint64_t s = size; s > 1; s /= exponent) {
        if (s % exponent != 0) return std::nullopt;
        ++r;
    }
    if (exponent == 2 && r == 2) return GroupDesc::klein4();
    return GroupDesc::elem_ab(exponent, r);
}

std::optional<std::vector<FiniteAbelianGroup::Element>> standard_generators(
    const FiniteAbelianGroup& q, const std::vector<std::uint64_t>& members, const GroupDesc& type) {
    using Element = FiniteAbelianGroup::Element;
    const unsigned count = generator_count(type);
    const std::uint64_t gen_order = generator_order(type);
    if (count == 0) return std::vector<Element>{};
    if (type.kind == GroupKind::Cyclic) {
        for (auto idx : members) {
            Element x = q.element(idx);
            if (q.element_order(x) == gen_order) return std::vector<Element>{x};
        }
        return std::nullopt;
    }
    // Klein4 and E(p,r): greedily extend an independent set of order-p
    // elements; greedy is exact for elementary abelian groups.
    std::vector<Element> gens;
    std::vector<std::uint64_t> current = q.span(gens);
    for (auto idx : members) {
        if (gens.size() == count) break;
        Element x = q.element(idx);
        if (q.element_order(x) != gen_order) continue;
        if (std::binary_search(current.begin(), current.end(), idx)) continue;
        gens.push_back(x);
        current = q.span(gens);
    }
    if (gens.size() != count) return std::nullopt;
    return gens;
}

}  // namespace mumford
