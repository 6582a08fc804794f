#pragma once

#include <cstdint>
#include <cstdlib>

namespace idxcap {

// Node-expansion budget for the branch-and-bound solvers. Exceeding a budget
// yields a bracket outcome, never a wrong answer.
struct Budget {
    std::uint64_t limit;
    std::uint64_t used = 0;

    explicit Budget(std::uint64_t lim = default_limit()) : limit(lim) {}

    bool tick() { return ++used <= limit; }
    bool exhausted() const { return used > limit; }

    static std::uint64_t default_limit() {
        if (const char* env = std::getenv("IDXCAP_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return v;
        }
        return 50'000'000;
    }
};

// Integer invariant outcome; exact when lower == upper, otherwise the best
// bracket found before the budget ran out.
struct BoundedInt {
    int lower = 0;
    int upper = 0;

    bool exact() const { return lower == upper; }
    int value() const { return lower; }  // only meaningful when exact()
};

}  // namespace idxcap
