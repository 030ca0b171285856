#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stargale/rational.hpp"

namespace stargale {

enum class LpStatus { optimal, infeasible, unbounded };

struct SimplexResult {
    LpStatus status = LpStatus::infeasible;
    RationalVector x;        // primal optimum when status == optimal
    Rational objective = 0;  // c·x when status == optimal
};

namespace detail {

inline long simplex_pivot_budget() {
    return env_int("STARGALE_MAX_PIVOTS", 100000);
}

/// Dense exact tableau. Convention: each row encodes an equation over the
/// nonnegative variables with the right-hand side in the last column, and the
/// objective row encodes z = obj[n] - sum_j obj[j]*x_j, so a negative obj
/// entry marks an improving column.
struct SimplexTableau {
    std::size_t nvars = 0;
    std::vector<RationalVector> rows;   // each of length nvars + 1
    std::vector<std::size_t> basis;     // basic column per row
    RationalVector obj;                 // length nvars + 1

    void pivot(std::size_t pr, std::size_t pc, long& budget) {
        if (--budget < 0)
            throw BudgetError("simplex pivot budget exceeded; raise STARGALE_MAX_PIVOTS");
        Rational piv = rows[pr][pc];
        for (auto& v : rows[pr]) v /= piv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pr) continue;
            Rational f = rows[r][pc];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= nvars; ++j) rows[r][j] -= f * rows[pr][j];
        }
        if (Rational f = obj[pc]; f != 0)
            for (std::size_t j = 0; j <= nvars; ++j) obj[j] -= f * rows[pr][j];
        basis[pr] = pc;
    }

    /// Runs to optimality with Bland's smallest-index rule (both for the
    /// entering column and for ratio-test ties), which rules out cycling on
    /// degenerate exact inputs. Returns false when the objective is unbounded.
    bool run(long& budget) {
        for (;;) {
            std::size_t enter = nvars;
            for (std::size_t j = 0; j < nvars; ++j)
                if (obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == nvars) return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                Rational ratio = rows[i][nvars] / rows[i][enter];
                if (leave == rows.size() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter, budget);
        }
    }
};

}  // namespace detail

/// Exact two-phase primal simplex for max c·x subject to A·x = b, x >= 0.
/// Rows shorter than c are zero-padded. Deterministic: Bland's rule plus
/// fixed row order give bit-identical runs.
inline SimplexResult simplex_maximize(std::vector<RationalVector> a_rows, RationalVector b,
                                      const RationalVector& c) {
    std::size_t m = a_rows.size(), n = c.size();
    if (b.size() != m) throw InputError("simplex_maximize: rhs size mismatch");
    for (auto& r : a_rows) {
        if (r.size() > n) throw InputError("simplex_maximize: constraint row wider than objective");
        r.resize(n, Rational(0));
    }
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (auto& v : a_rows[i]) v = -v;
            b[i] = -b[i];
        }

    long budget = detail::simplex_pivot_budget();

    // Phase one: drive the artificial total to zero.
    detail::SimplexTableau t;
    t.nvars = n + m;
    t.rows.assign(m, RationalVector(n + m + 1, Rational(0)));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = a_rows[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][n + m] = b[i];
        t.basis[i] = n + i;
    }
    t.obj.assign(n + m + 1, Rational(0));
    for (std::size_t j = 0; j < m; ++j) t.obj[n + j] = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n + m; ++j) t.obj[j] -= t.rows[i][j];
    if (!t.run(budget))
        throw std::logic_error("phase-one objective is bounded by construction");
    if (t.obj[n + m] != 0) return {LpStatus::infeasible, {}, 0};

    // Replace leftover artificial basics by real columns; a row with no real
    // column left is a dependent equation and is dropped.
    std::vector<bool> drop(t.rows.size(), false);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.basis[i] < n) continue;
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (t.rows[i][j] != 0) {
                col = j;
                break;
            }
        if (col == n) {
            drop[i] = true;
            continue;
        }
        t.pivot(i, col, budget);
    }

    detail::SimplexTableau t2;
    t2.nvars = n;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (drop[i]) continue;
        RationalVector r(n + 1);
        for (std::size_t j = 0; j < n; ++j) r[j] = t.rows[i][j];
        r[n] = t.rows[i][n + m];
        t2.rows.push_back(std::move(r));
        t2.basis.push_back(t.basis[i]);
    }

    // Phase two: the real objective from the feasible basis.
    t2.obj.assign(n + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j) t2.obj[j] = -c[j];
    for (std::size_t i = 0; i < t2.rows.size(); ++i) {
        Rational f = t2.obj[t2.basis[i]];
        if (f == 0) continue;
        for (std::size_t j = 0; j <= n; ++j) t2.obj[j] -= f * t2.rows[i][j];
    }
    if (!t2.run(budget)) return {LpStatus::unbounded, {}, 0};

    RationalVector x(n, Rational(0));
    for (std::size_t i = 0; i < t2.rows.size(); ++i) x[t2.basis[i]] = t2.rows[i][n];
    return {LpStatus::optimal, std::move(x), t2.obj[n]};
}

/// Linear system over free rational variables: equalities A·z = b, optional
/// per-variable lower bounds, and a set of variables required to be strictly
/// positive. Weak and strict inequality rows are added through the helpers,
/// which introduce slack/surplus variables.
struct StrictFeasibilityProblem {
    std::size_t num_vars = 0;
    std::vector<RationalVector> equality_lhs;  // rows, zero-padded to num_vars when solved
    RationalVector equality_rhs;
    std::vector<std::optional<Rational>> lower_bounds;  // one entry per variable
    std::vector<std::size_t> strict_positive_vars;

    std::size_t add_var(std::optional<Rational> lb = std::nullopt) {
        lower_bounds.push_back(std::move(lb));
        return num_vars++;
    }

    std::size_t add_strict_positive_var() {
        std::size_t i = add_var();
        strict_positive_vars.push_back(i);
        return i;
    }

    void set_lower_bound(std::size_t i, Rational lb) {
        if (i >= num_vars) throw InputError("set_lower_bound: variable index out of range");
        lower_bounds[i] = std::move(lb);
    }

    void add_equality(RationalVector coeffs, Rational rhs) {
        if (coeffs.size() > num_vars)
            throw InputError("add_equality: more coefficients than variables");
        equality_lhs.push_back(std::move(coeffs));
        equality_rhs.push_back(std::move(rhs));
    }

    /// coeffs·z >= rhs, encoded with a fresh nonnegative slack variable.
    void require_ge(RationalVector coeffs, Rational rhs) {
        if (coeffs.size() > num_vars)
            throw InputError("require_ge: more coefficients than variables");
        std::size_t s = add_var(Rational(0));
        coeffs.resize(num_vars, Rational(0));
        coeffs[s] = -1;
        add_equality(std::move(coeffs), std::move(rhs));
    }

    /// coeffs·z > rhs, encoded with a fresh strictly positive surplus variable.
    void require_gt(RationalVector coeffs, Rational rhs) {
        if (coeffs.size() > num_vars)
            throw InputError("require_gt: more coefficients than variables");
        std::size_t s = add_strict_positive_var();
        coeffs.resize(num_vars, Rational(0));
        coeffs[s] = -1;
        add_equality(std::move(coeffs), std::move(rhs));
    }
};

struct StrictFeasibilityResult {
    bool feasible = false;
    RationalVector witness;  // one value per problem variable when feasible
    Rational margin = 0;     // optimal epsilon of the slack maximization
};

/// Decision procedure for the mixed strict/weak system. The strict part is
/// decided by slack maximization: {z_i > 0} is solvable iff
/// max eps s.t. z_i >= eps, eps <= 1 has optimum eps* > 0. The epsilon cap
/// makes the program bounded, so the simplex optimum is always attained and
/// the answer is exact, never a tolerance judgment.
inline StrictFeasibilityResult strict_feasible(const StrictFeasibilityProblem& p) {
    if (p.lower_bounds.size() != p.num_vars)
        throw InputError("strict_feasible: lower_bounds size mismatch");
    if (p.equality_lhs.size() != p.equality_rhs.size())
        throw InputError("strict_feasible: equality row/rhs count mismatch");
    for (const auto& r : p.equality_lhs)
        if (r.size() > p.num_vars)
            throw InputError("strict_feasible: equality row wider than variable count");
    for (std::size_t i : p.strict_positive_vars)
        if (i >= p.num_vars) throw InputError("strict_feasible: strict index out of range");

    // Each free variable becomes a difference of two nonnegative columns;
    // a lower-bounded variable becomes its bound plus one column.
    struct VarMap {
        std::size_t col_plus = 0, col_minus = 0;
        bool shifted = false;
        Rational shift = 0;
    };
    std::size_t lp_n = 0;
    std::vector<VarMap> vm(p.num_vars);
    for (std::size_t i = 0; i < p.num_vars; ++i) {
        if (p.lower_bounds[i]) {
            vm[i].shifted = true;
            vm[i].shift = *p.lower_bounds[i];
            vm[i].col_plus = lp_n++;
        } else {
            vm[i].col_plus = lp_n++;
            vm[i].col_minus = lp_n++;
        }
    }
    std::size_t eps_col = lp_n++;

    std::vector<std::size_t> strict_idx(p.strict_positive_vars);
    std::sort(strict_idx.begin(), strict_idx.end());
    strict_idx.erase(std::unique(strict_idx.begin(), strict_idx.end()), strict_idx.end());
    std::size_t first_strict_slack = lp_n;
    lp_n += strict_idx.size();
    std::size_t cap_slack = lp_n++;

    std::vector<RationalVector> rows;
    RationalVector rhs;
    auto emit_var = [&](RationalVector& row, std::size_t i, const Rational& coef, Rational& rv) {
        row[vm[i].col_plus] += coef;
        if (vm[i].shifted)
            rv -= coef * vm[i].shift;
        else
            row[vm[i].col_minus] -= coef;
    };

    for (std::size_t r = 0; r < p.equality_lhs.size(); ++r) {
        RationalVector row(lp_n, Rational(0));
        Rational rv = p.equality_rhs[r];
        const auto& co = p.equality_lhs[r];
        for (std::size_t i = 0; i < co.size(); ++i)
            if (co[i] != 0) emit_var(row, i, co[i], rv);
        rows.push_back(std::move(row));
        rhs.push_back(std::move(rv));
    }
    for (std::size_t k = 0; k < strict_idx.size(); ++k) {
        // z_i - eps - s_k = 0, i.e. z_i >= eps
        RationalVector row(lp_n, Rational(0));
        Rational rv = 0;
        emit_var(row, strict_idx[k], Rational(1), rv);
        row[eps_col] -= 1;
        row[first_strict_slack + k] -= 1;
        rows.push_back(std::move(row));
        rhs.push_back(std::move(rv));
    }
    {
        RationalVector row(lp_n, Rational(0));
        row[eps_col] = 1;
        row[cap_slack] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(Rational(1));
    }
    RationalVector c(lp_n, Rational(0));
    c[eps_col] = 1;

    SimplexResult lp = simplex_maximize(std::move(rows), std::move(rhs), c);
    if (lp.status == LpStatus::unbounded)
        throw std::logic_error("slack maximization is bounded by construction");

    StrictFeasibilityResult out;
    if (lp.status == LpStatus::infeasible || lp.objective <= 0) {
        out.feasible = false;
        out.margin = lp.status == LpStatus::optimal ? lp.objective : Rational(0);
        return out;
    }
    out.feasible = true;
    out.margin = lp.objective;
    out.witness.resize(p.num_vars);
    for (std::size_t i = 0; i < p.num_vars; ++i) {
        if (vm[i].shifted)
            out.witness[i] = vm[i].shift + lp.x[vm[i].col_plus];
        else
            out.witness[i] = lp.x[vm[i].col_plus] - lp.x[vm[i].col_minus];
    }
    return out;
}

}  // namespace stargale
