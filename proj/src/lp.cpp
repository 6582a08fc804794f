#include "idxcap/lp.hpp"

#include <stdexcept>

namespace idxcap {

namespace {

// Dense tableau simplex. Bland's rule throughout, so it terminates on any
// input at these sizes.
struct Tableau {
    std::size_t rows, cols;                // cols excludes the rhs column
    std::vector<std::vector<Rational>> a;  // rows x (cols + 1), last is rhs
    std::vector<std::size_t> basis;        // basic variable per row

    void pivot(std::size_t pr, std::size_t pc) {
        Rational p = a[pr][pc];
        for (auto& v : a[pr]) v /= p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr || a[r][pc] == 0) continue;
            Rational f = a[r][pc];
            for (std::size_t c = 0; c <= cols; ++c) a[r][c] -= f * a[pr][c];
        }
        basis[pr] = pc;
    }

    // Minimizes obj (a row vector over all columns); returns {bounded, value}.
    // obj is expressed in terms of non-basic variables on entry via reduction.
    std::pair<bool, Rational> run(std::vector<Rational> obj, Rational value) {
        // reduce objective by current basis
        for (std::size_t r = 0; r < rows; ++r) {
            if (obj[basis[r]] == 0) continue;
            Rational f = obj[basis[r]];
            for (std::size_t c = 0; c < cols; ++c) obj[c] -= f * a[r][c];
            value -= f * a[r][cols];
        }
        while (true) {
            std::size_t pc = cols;
            for (std::size_t c = 0; c < cols; ++c)
                if (obj[c] < 0) {
                    pc = c;
                    break;
                }
            if (pc == cols) return {true, value};
            std::size_t pr = rows;
            for (std::size_t r = 0; r < rows; ++r) {
                if (a[r][pc] <= 0) continue;
                if (pr == rows) {
                    pr = r;
                    continue;
                }
                Rational cur = a[r][cols] / a[r][pc];
                Rational best = a[pr][cols] / a[pr][pc];
                if (cur < best || (cur == best && basis[r] < basis[pr])) pr = r;
            }
            if (pr == rows) return {false, value};  // unbounded
            Rational f = obj[pc];
            pivot(pr, pc);
            for (std::size_t c = 0; c <= cols; ++c) {
                Rational d = f * a[pr][c];
                if (c < cols)
                    obj[c] -= d;
                else
                    value -= d;
            }
        }
    }
};

}  // namespace

LpResult solve_lp(const std::vector<Rational>& objective, const std::vector<LpConstraint>& constraints) {
    std::size_t n = objective.size();
    std::size_t m = constraints.size();

    // count slack and artificial columns
    std::size_t slacks = 0, artificials = 0;
    for (const auto& c : constraints)
        if (c.sense != Sense::Eq) ++slacks;

    // normalize rhs to be nonnegative first; then <= gets slack, >= gets
    // surplus + artificial, = gets artificial (slack basis used when possible)
    struct Row {
        std::vector<Rational> coeffs;
        Sense sense;
        Rational rhs;
    };
    std::vector<Row> rows(m);
    for (std::size_t r = 0; r < m; ++r) {
        if (constraints[r].coeffs.size() != n) throw std::invalid_argument("solve_lp: coefficient size mismatch");
        rows[r] = {constraints[r].coeffs, constraints[r].sense, constraints[r].rhs};
        if (rows[r].rhs < 0) {
            for (auto& v : rows[r].coeffs) v = -v;
            rows[r].rhs = -rows[r].rhs;
            rows[r].sense = rows[r].sense == Sense::LessEq ? Sense::GreaterEq
                            : rows[r].sense == Sense::GreaterEq ? Sense::LessEq
                                                                : Sense::Eq;
        }
    }
    for (const auto& row : rows)
        if (row.sense != Sense::LessEq) ++artificials;

    std::size_t total = n + slacks + artificials;
    Tableau t;
    t.rows = m;
    t.cols = total;
    t.a.assign(m, std::vector<Rational>(total + 1, Rational(0)));
    t.basis.assign(m, 0);

    std::size_t slack_at = n, art_at = n + slacks;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) t.a[r][c] = rows[r].coeffs[c];
        t.a[r][total] = rows[r].rhs;
        switch (rows[r].sense) {
            case Sense::LessEq:
                t.a[r][slack_at] = 1;
                t.basis[r] = slack_at++;
                break;
            case Sense::GreaterEq:
                t.a[r][slack_at] = -1;
                ++slack_at;
                t.a[r][art_at] = 1;
                t.basis[r] = art_at++;
                break;
            case Sense::Eq:
                t.a[r][art_at] = 1;
                t.basis[r] = art_at++;
                break;
        }
    }

    LpResult res;
    if (artificials > 0) {
        std::vector<Rational> phase1(total, Rational(0));
        for (std::size_t c = n + slacks; c < total; ++c) phase1[c] = 1;
        auto [bounded, v] = t.run(std::move(phase1), Rational(0));
        (void)bounded;
        if (v != 0) {
            res.feasible = false;
            return res;
        }
        // drive remaining artificial basics out where possible
        for (std::size_t r = 0; r < m; ++r) {
            if (t.basis[r] < n + slacks) continue;
            std::size_t pc = total;
            for (std::size_t c = 0; c < n + slacks; ++c)
                if (t.a[r][c] != 0) {
                    pc = c;
                    break;
                }
            if (pc < total) t.pivot(r, pc);
        }
        // forbid artificials from re-entering
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = n + slacks; c < total; ++c) t.a[r][c] = 0;
    }

    std::vector<Rational> phase2(total, Rational(0));
    for (std::size_t c = 0; c < n; ++c) phase2[c] = objective[c];
    auto [bounded, value] = t.run(std::move(phase2), Rational(0));
    res.feasible = true;
    res.bounded = bounded;
    res.value = -value;  // run() tracks -(objective shift); see below
    // run() maintains value as: initial 0 minus accumulated reductions, which
    // equals the negated current objective value of the basic solution.
    res.solution.assign(n, Rational(0));
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis[r] < n) res.solution[t.basis[r]] = t.a[r][total];
    return res;
}

bool lp_feasible(const std::vector<LpConstraint>& constraints, std::size_t num_vars) {
    std::vector<Rational> zero(num_vars, Rational(0));
    return solve_lp(zero, constraints).feasible;
}

}  // namespace idxcap
