// Runs every acceptance criterion and prints one line per criterion.

#include <iostream>

#include "mumford/acceptance.hpp"

int main() {
    const auto report = mumford::run_acceptance([](const mumford::CriterionResult& c) {
        std::cout << (c.passed ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << c.detail
                  << std::endl;
    });
    const std::size_t passed = std::count_if(report.criteria.begin(), report.criteria.end(),
                                             [](const mumford::CriterionResult& c) { return c.passed; });
    std::cout << passed << "/" << report.criteria.size() << " criteria passed" << std::endl;
    return report.passed() ? 0 : 1;
}
