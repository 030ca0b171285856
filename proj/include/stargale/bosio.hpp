#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stargale/complexes.hpp"
#include "stargale/gale.hpp"
#include "stargale/geometry.hpp"
#include "stargale/lp.hpp"
#include "stargale/matrix.hpp"

namespace stargale {

/// A fundamental set together with one vector of Q^M per universe element.
/// Whether the pair is actually studiable (every member's vectors span) is
/// a checked predicate, not a constructor guarantee; only the dimensions
/// are enforced here.
struct StudiableSystem {
    FundamentalSet fundamental_set;
    std::vector<RationalVector> lambda;  // element j at lambda[j-1]

    StudiableSystem(FundamentalSet e, std::vector<RationalVector> l)
        : fundamental_set(std::move(e)), lambda(std::move(l)) {
        if (lambda.size() != fundamental_set.n)
            throw InputError("studiable system: vector count does not match universe size");
        for (const auto& v : lambda)
            if (v.size() != fundamental_set.M)
                throw InputError("studiable system: vector dimension does not match member "
                                 "cardinality");
    }

    const RationalVector& vector_of(int element) const { return lambda[element - 1]; }
};

struct GenCheck {
    bool ok = true;
    std::optional<Mask> witness_member;
};

/// True iff for every member P the vectors (lambda_p) form a basis of Q^M;
/// with |P| = M, spanning and basis coincide, so a single determinant per
/// member decides. This is exactly studiability of the pair.
inline GenCheck check_gen(const StudiableSystem& s) {
    std::size_t m = s.fundamental_set.M;
    for (Mask p : s.fundamental_set.members) {
        std::vector<int> verts = mask_vertices(p);
        RationalMatrix mat(m, m);
        for (std::size_t j = 0; j < verts.size(); ++j)
            for (std::size_t i = 0; i < m; ++i) mat(i, j) = s.vector_of(verts[j])[i];
        if (det(mat) == 0) return {false, p};
    }
    return {true, std::nullopt};
}

struct ImbWitness {
    Mask member_p = 0, member_q = 0;
    // Functional separating the two cones: >= 0 on the p-vectors, <= 0 on
    // the q-vectors, strictly positive total separation. Present when the
    // certificate LP produced it.
    std::optional<RationalVector> separating_functional;
};

struct ImbCheck {
    bool ok = true;
    std::optional<ImbWitness> witness;
};

namespace detail {

/// Strict intersection test for one member pair: sum t_p lambda_p =
/// sum s_q lambda_q with every t, s > 0.
inline bool cones_share_interior_point(const StudiableSystem& s, Mask p, Mask q) {
    std::vector<int> pv = mask_vertices(p), qv = mask_vertices(q);
    StrictFeasibilityProblem prob;
    for (std::size_t i = 0; i < pv.size() + qv.size(); ++i) prob.add_strict_positive_var();
    for (std::size_t i = 0; i < s.fundamental_set.M; ++i) {
        RationalVector row(prob.num_vars, Rational(0));
        for (std::size_t j = 0; j < pv.size(); ++j) row[j] = s.vector_of(pv[j])[i];
        for (std::size_t j = 0; j < qv.size(); ++j) row[pv.size() + j] -= s.vector_of(qv[j])[i];
        prob.add_equality(std::move(row), Rational(0));
    }
    return strict_feasible(prob).feasible;
}

/// Proper separating functional for a disjoint pair: phi with phi·lambda_p
/// >= 0, phi·lambda_q <= 0, total separation normalized to at least 1.
/// Under independent generators both cones are full-dimensional, so such a
/// functional always exists when the interiors are disjoint.
inline std::optional<RationalVector> separating_functional(const StudiableSystem& s, Mask p,
                                                           Mask q) {
    std::size_t m = s.fundamental_set.M;
    std::vector<int> pv = mask_vertices(p), qv = mask_vertices(q);
    StrictFeasibilityProblem prob;
    for (std::size_t i = 0; i < m; ++i) prob.add_var();
    RationalVector total(m, Rational(0));
    for (int v : pv) {
        RationalVector row(m);
        for (std::size_t i = 0; i < m; ++i) {
            row[i] = s.vector_of(v)[i];
            total[i] += row[i];
        }
        prob.require_ge(std::move(row), Rational(0));
    }
    for (int v : qv) {
        RationalVector row(m);
        for (std::size_t i = 0; i < m; ++i) {
            row[i] = -s.vector_of(v)[i];
            total[i] += row[i];
        }
        prob.require_ge(std::move(row), Rational(0));
    }
    prob.require_ge(std::move(total), Rational(1));
    StrictFeasibilityResult res = strict_feasible(prob);
    if (!res.feasible) return std::nullopt;
    return RationalVector(res.witness.begin(), res.witness.begin() + m);
}

}  // namespace detail

/// Imbrication: every two members' positive hulls have intersecting
/// relative interiors. Checked over unordered pairs; P = Q is trivially
/// true since a full-dimensional cone has nonempty interior. Witness is the
/// lexicographically first disjoint pair with a separating functional.
inline ImbCheck check_imb(const StudiableSystem& s) {
    GenCheck g = check_gen(s);
    if (!g.ok)
        throw PreconditionError("check_imb: member " + format_vertex_set(*g.witness_member) +
                                " does not span; interiors are only defined under independent "
                                "generators");
    const auto& mem = s.fundamental_set.members;
    for (std::size_t a = 0; a < mem.size(); ++a) {
        for (std::size_t b = a + 1; b < mem.size(); ++b) {
            if (detail::cones_share_interior_point(s, mem[a], mem[b])) continue;
            ImbWitness w;
            w.member_p = mem[a];
            w.member_q = mem[b];
            w.separating_functional = detail::separating_functional(s, mem[a], mem[b]);
            return {false, std::move(w)};
        }
    }
    return {true, std::nullopt};
}

/// Equivalent open-simplex form: the open convex hulls of {0} with each
/// member's vectors must intersect, i.e. the strict system additionally
/// bounds both coefficient sums below 1. Must agree with check_imb on
/// every input; the test suite enforces the equivalence.
inline ImbCheck check_imb_tilde(const StudiableSystem& s) {
    GenCheck g = check_gen(s);
    if (!g.ok)
        throw PreconditionError("check_imb_tilde: member " +
                                format_vertex_set(*g.witness_member) + " does not span");
    const auto& mem = s.fundamental_set.members;
    for (std::size_t a = 0; a < mem.size(); ++a) {
        for (std::size_t b = a + 1; b < mem.size(); ++b) {
            std::vector<int> pv = mask_vertices(mem[a]), qv = mask_vertices(mem[b]);
            StrictFeasibilityProblem prob;
            for (std::size_t i = 0; i < pv.size() + qv.size(); ++i)
                prob.add_strict_positive_var();
            for (std::size_t i = 0; i < s.fundamental_set.M; ++i) {
                RationalVector row(prob.num_vars, Rational(0));
                for (std::size_t j = 0; j < pv.size(); ++j) row[j] = s.vector_of(pv[j])[i];
                for (std::size_t j = 0; j < qv.size(); ++j)
                    row[pv.size() + j] -= s.vector_of(qv[j])[i];
                prob.add_equality(std::move(row), Rational(0));
            }
            RationalVector sum_t(prob.num_vars, Rational(0));
            RationalVector sum_s(prob.num_vars, Rational(0));
            for (std::size_t j = 0; j < pv.size(); ++j) sum_t[j] = -1;
            for (std::size_t j = 0; j < qv.size(); ++j) sum_s[pv.size() + j] = -1;
            prob.require_gt(std::move(sum_t), Rational(-1));  // sum of t strictly below 1
            prob.require_gt(std::move(sum_s), Rational(-1));  // sum of s strictly below 1
            if (strict_feasible(prob).feasible) continue;
            ImbWitness w;
            w.member_p = mem[a];
            w.member_q = mem[b];
            w.separating_functional = detail::separating_functional(s, mem[a], mem[b]);
            return {false, std::move(w)};
        }
    }
    return {true, std::nullopt};
}

/// Full condition bundle with the implied-condition cross-checks. The
/// headline verdict is gen AND substitute-existence AND imbrication; when
/// it holds, unique substitution and substitute-minimality are implied and
/// any observed failure of either implication is flagged as a theorem
/// violation (a library bug, not a data error). Always returns a report.
struct BosioReport {
    bool gen = false;
    std::optional<Mask> gen_witness;
    SubstituteCheck se;
    bool imb_evaluated = false;
    ImbCheck imb;
    bool bosio = false;
    bool seu = false;
    bool seu_minimal_evaluated = false;
    bool seu_minimal = false;
    bool theorem_violation = false;
    std::string violation_detail;
};

inline BosioReport check_bosio(const StudiableSystem& s) {
    BosioReport r;
    GenCheck g = check_gen(s);
    r.gen = g.ok;
    r.gen_witness = g.witness_member;
    r.se = check_SE(s.fundamental_set);
    if (r.gen) {
        r.imb = check_imb(s);
        r.imb_evaluated = true;
    }
    r.bosio = r.gen && r.se.ok && r.imb_evaluated && r.imb.ok;
    r.seu = check_SEU(s.fundamental_set).ok;
    if (s.fundamental_set.n > s.fundamental_set.M) {
        r.seu_minimal = is_SEU_minimal(s.fundamental_set);
        r.seu_minimal_evaluated = true;
    }
    if (r.bosio) {
        if (!r.seu) {
            r.theorem_violation = true;
            r.violation_detail =
                "gen, substitute-existence and imbrication hold but unique substitution fails";
        } else if (r.seu_minimal_evaluated && !r.seu_minimal) {
            r.theorem_violation = true;
            r.violation_detail =
                "full condition bundle holds but the family is not substitute-minimal";
        }
    }
    return r;
}

/// Both sides of the starshapedness equivalence for one realization: the
/// direct geometric decision against the dual-side bundle evaluated on the
/// facet-complement family and the Gale vectors of the points. Also checks
/// the finer equalities: gen against simpl, and (gen AND imb) against
/// (simpl AND Sep).
struct MainTheoremReport {
    StarshapedCheck primal;
    bool starshaped = false;

    std::optional<StudiableSystem> system;  // the derived dual pair
    bool gen = false;
    bool imb_evaluated = false;
    bool imb = false;
    bool seu_minimal = false;
    bool gale_side = false;

    bool sides_agree = false;
    bool gen_matches_simpl = false;
    bool th1_agrees = false;  // (gen AND imb) == (simpl AND Sep)
    bool ok = false;
};

inline MainTheoremReport main_theorem_crosscheck(const Realization& r) {
    MainTheoremReport rep;
    rep.primal = is_starshaped_at_origin(r);
    rep.starshaped = rep.primal.ok;

    VectorConfiguration config(r.ambient_dim(), r.points);
    GaleTransform gt = gale_transform(config);  // throws on rank deficiency
    FundamentalSet e = fundamental_set_from_facet_complements(r.complex);
    rep.system.emplace(std::move(e), gt.vectors);

    rep.gen = check_gen(*rep.system).ok;
    if (rep.gen) {
        rep.imb = check_imb(*rep.system).ok;
        rep.imb_evaluated = true;
    }
    // n > M always holds here: M = n - (d+1) with d >= 0
    rep.seu_minimal = is_SEU_minimal(rep.system->fundamental_set);
    rep.gale_side = rep.gen && rep.imb_evaluated && rep.imb && rep.seu_minimal;

    bool simpl = rep.primal.weak.simpl.ok;
    bool sep = rep.primal.weak.sep && rep.primal.weak.sep->ok;
    rep.gen_matches_simpl = rep.gen == simpl;
    rep.th1_agrees = (rep.gen && rep.imb) == (simpl && sep);
    rep.sides_agree = rep.starshaped == rep.gale_side;
    rep.ok = rep.sides_agree && rep.gen_matches_simpl && rep.th1_agrees;
    return rep;
}

struct ConditionKResult {
    Integer scale = 1;
    std::vector<RationalVector> lambda_integer;
};

/// With exact rational input the lattice condition is always satisfiable:
/// scaling by the least common denominator is a linear automorphism
/// carrying every vector into the integer lattice.
inline ConditionKResult check_condition_K(const StudiableSystem& s) {
    ConditionKResult out;
    for (const auto& v : s.lambda)
        for (const auto& c : v) out.scale = lcm_of(out.scale, den(c));
    out.lambda_integer.reserve(s.lambda.size());
    for (const auto& v : s.lambda)
        out.lambda_integer.push_back(scaled_vector(v, Rational(out.scale)));
    return out;
}

struct PerturbResult {
    StudiableSystem system;  // integer vectors, full condition bundle verified
    Integer denominator_bound = 1;
    Integer scale = 1;
};

/// Rounds every vector entry with escalating denominator bounds, scales to
/// integers, and re-runs the full condition bundle on each candidate until
/// one verifies. The re-verification is the safety net: nothing is returned
/// on the strength of the perturbation being small.
inline PerturbResult perturb_to_condition_K(const StudiableSystem& s,
                                            const Integer& max_denominator = Integer(
                                                1000000000000)) {
    BosioReport pre = check_bosio(s);
    if (!pre.bosio || pre.theorem_violation)
        throw PreconditionError("perturb_to_condition_K: input does not satisfy the condition "
                                "bundle (gen " +
                                std::string(pre.gen ? "true" : "false") + ", substitute-existence " +
                                std::string(pre.se.ok ? "true" : "false") + ", imbrication " +
                                std::string(pre.imb_evaluated && pre.imb.ok ? "true" : "false") +
                                ")");
    for (Integer bound = 1; bound <= max_denominator; bound *= 10) {
        Integer common = 1;
        std::vector<RationalVector> rounded;
        rounded.reserve(s.lambda.size());
        for (const auto& v : s.lambda) {
            RationalVector q(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                q[i] = best_rational_within(v[i], bound);
                common = lcm_of(common, den(q[i]));
            }
            rounded.push_back(std::move(q));
        }
        std::vector<RationalVector> integral;
        integral.reserve(rounded.size());
        for (const auto& v : rounded) integral.push_back(scaled_vector(v, Rational(common)));
        StudiableSystem candidate(s.fundamental_set, std::move(integral));
        BosioReport rep = check_bosio(candidate);
        if (rep.bosio && !rep.theorem_violation)
            return {std::move(candidate), bound, common};
    }
    throw BudgetError("perturb_to_condition_K: no denominator bound up to " +
                      max_denominator.str() + " yields a verified integer family");
}

}  // namespace stargale
