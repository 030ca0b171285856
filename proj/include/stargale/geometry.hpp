#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "stargale/complexes.hpp"
#include "stargale/lp.hpp"
#include "stargale/matrix.hpp"

namespace stargale {

inline RationalVector zero_vector(std::size_t dim) { return RationalVector(dim, Rational(0)); }

inline RationalVector negated(const RationalVector& v) {
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

inline RationalVector vector_sum(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw InputError("vector_sum: size mismatch");
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline RationalVector scaled_vector(const RationalVector& v, const Rational& f) {
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * f;
    return out;
}

/// A pure complex of dimension d realized by n points in Q^(d+1), with a
/// distinguished base point (the origin unless stated otherwise). Facets of
/// the complex have exactly d+1 vertices, so realized facets are
/// d-simplices in the ambient space.
struct Realization {
    SimplicialComplex complex;
    std::vector<RationalVector> points;  // vertex j at points[j-1]
    RationalVector base_point;

    Realization(SimplicialComplex c, std::vector<RationalVector> pts, RationalVector base = {})
        : complex(std::move(c)), points(std::move(pts)), base_point(std::move(base)) {
        if (!is_pure(complex)) throw InputError("realization: complex is not pure");
        if (dimension(complex) < 0)
            throw InputError("realization: facets must have at least one vertex");
        if (points.size() != complex.n)
            throw InputError("realization: point count does not match vertex count");
        std::size_t amb = static_cast<std::size_t>(dimension(complex)) + 1;
        for (const auto& p : points)
            if (p.size() != amb)
                throw InputError("realization: point dimension does not match facet size");
        if (base_point.empty()) base_point = zero_vector(amb);
        if (base_point.size() != amb)
            throw InputError("realization: base point dimension mismatch");
    }

    std::size_t ambient_dim() const { return points.empty() ? base_point.size() : points[0].size(); }
    const RationalVector& point(int vertex) const { return points[vertex - 1]; }
};

inline Realization translate(const Realization& r, const RationalVector& v) {
    std::vector<RationalVector> pts;
    pts.reserve(r.points.size());
    for (const auto& p : r.points) pts.push_back(vector_sum(p, v));
    return Realization(r.complex, std::move(pts), vector_sum(r.base_point, v));
}

inline Realization scale_points(const Realization& r, const Rational& f) {
    std::vector<RationalVector> pts;
    pts.reserve(r.points.size());
    for (const auto& p : r.points) pts.push_back(scaled_vector(p, f));
    return Realization(r.complex, std::move(pts), scaled_vector(r.base_point, f));
}

/// Signed (d+2)x(d+2) determinant whose columns are the facet points and
/// then x, each homogenized by appending 1 as the LAST coordinate. Facet
/// vertices enter in ascending order; the convention is fixed so sign
/// comparisons between evaluations are meaningful. Zero exactly when x lies
/// in the affine hull of the facet points.
inline Rational phi(const Realization& r, Mask facet, const RationalVector& x) {
    if (std::find(r.complex.facets.begin(), r.complex.facets.end(), facet) ==
        r.complex.facets.end())
        throw InputError("phi: " + format_vertex_set(facet) + " is not a facet");
    std::size_t amb = r.ambient_dim();
    if (x.size() != amb) throw InputError("phi: point dimension mismatch");
    std::vector<int> verts = mask_vertices(facet);
    RationalMatrix m(amb + 1, amb + 1);
    for (std::size_t j = 0; j < verts.size(); ++j) {
        const RationalVector& p = r.point(verts[j]);
        for (std::size_t i = 0; i < amb; ++i) m(i, j) = p[i];
        m(amb, j) = 1;
    }
    for (std::size_t i = 0; i < amb; ++i) m(i, amb) = x[i];
    m(amb, amb) = 1;
    return det(m);
}

struct AffineForm {
    RationalVector alpha;  // coefficients
    Rational beta = 0;     // constant term

    Rational eval(const RationalVector& x) const { return dot(alpha, x) + beta; }
};

/// phi(r, facet, ·) as an explicit affine function of its point argument.
inline AffineForm phi_form(const Realization& r, Mask facet) {
    std::size_t amb = r.ambient_dim();
    AffineForm f;
    f.beta = phi(r, facet, zero_vector(amb));
    f.alpha.resize(amb);
    for (std::size_t i = 0; i < amb; ++i) {
        RationalVector e = zero_vector(amb);
        e[i] = 1;
        f.alpha[i] = phi(r, facet, e) - f.beta;
    }
    return f;
}

struct SimplCheck {
    bool ok = true;
    std::optional<Mask> witness_facet;
};

/// True iff every facet's points form a basis of the ambient space
/// (nonzero determinant of the raw, non-homogenized point columns).
inline SimplCheck check_simpl(const Realization& r) {
    std::size_t amb = r.ambient_dim();
    for (Mask f : r.complex.facets) {
        std::vector<int> verts = mask_vertices(f);
        RationalMatrix m(amb, amb);
        for (std::size_t j = 0; j < verts.size(); ++j)
            for (std::size_t i = 0; i < amb; ++i) m(i, j) = r.point(verts[j])[i];
        if (det(m) == 0) return {false, f};
    }
    return {true, std::nullopt};
}

/// All nonempty faces, i.e. nonempty subsets of facets, deduplicated.
inline std::vector<Mask> nonempty_faces(const SimplicialComplex& c) {
    std::vector<Mask> out;
    for (Mask f : c.facets)
        for (Mask s = f; s; s = (s - 1) & f) out.push_back(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct SepWitness {
    Mask face_p = 0, face_q = 0;
    RationalVector point;              // common point of both relative interiors
    RationalVector coefficients_p;     // strictly positive weights, ascending vertex order
    RationalVector coefficients_q;
};

struct SepCheck {
    bool ok = true;
    std::optional<SepWitness> witness;
};

/// Cone-separation test: for every pair of distinct nonempty faces P, Q,
/// the strictly positive systems sum t_p x_p = sum s_q x_q must be
/// infeasible, i.e. the relative interiors of the spanned cones are
/// disjoint. Requires check_simpl (independent generators), under which
/// "relative interior" is exactly "strictly positive combinations". A pair
/// whose combined generators are linearly independent is separated outright
/// (any common point would need zero weight on the symmetric difference),
/// so only dependent pairs go to the LP.
inline SepCheck check_Sep(const Realization& r) {
    SimplCheck sc = check_simpl(r);
    if (!sc.ok)
        throw PreconditionError("check_Sep: facet " + format_vertex_set(*sc.witness_facet) +
                                " is not a basis; separation is only decided on independent "
                                "generators");
    std::size_t amb = r.ambient_dim();
    std::vector<Mask> faces = nonempty_faces(r.complex);
    RationalMatrix all = RationalMatrix::from_columns(r.points);
    for (std::size_t a = 0; a < faces.size(); ++a) {
        for (std::size_t b = a + 1; b < faces.size(); ++b) {
            Mask p = faces[a], q = faces[b];
            Mask u = p | q;
            std::vector<std::size_t> cols;
            for (int v : mask_vertices(u)) cols.push_back(static_cast<std::size_t>(v - 1));
            if (rank(all.select_columns(cols)) == mask_size(u)) continue;

            std::vector<int> pv = mask_vertices(p), qv = mask_vertices(q);
            StrictFeasibilityProblem prob;
            for (std::size_t i = 0; i < pv.size() + qv.size(); ++i)
                prob.add_strict_positive_var();
            for (std::size_t i = 0; i < amb; ++i) {
                RationalVector row(prob.num_vars, Rational(0));
                for (std::size_t j = 0; j < pv.size(); ++j) row[j] = r.point(pv[j])[i];
                for (std::size_t j = 0; j < qv.size(); ++j)
                    row[pv.size() + j] -= r.point(qv[j])[i];
                prob.add_equality(std::move(row), Rational(0));
            }
            StrictFeasibilityResult res = strict_feasible(prob);
            if (res.feasible) {
                SepWitness w;
                w.face_p = p;
                w.face_q = q;
                w.coefficients_p.assign(res.witness.begin(), res.witness.begin() + pv.size());
                w.coefficients_q.assign(res.witness.begin() + pv.size(),
                                        res.witness.begin() + pv.size() + qv.size());
                w.point = zero_vector(amb);
                for (std::size_t j = 0; j < pv.size(); ++j)
                    w.point = vector_sum(w.point,
                                         scaled_vector(r.point(pv[j]), w.coefficients_p[j]));
                return {false, std::move(w)};
            }
        }
    }
    return {true, std::nullopt};
}

struct WeaklyStarshapedCheck {
    bool ok = false;
    SimplCheck simpl;
    std::optional<SepCheck> sep;  // evaluated only when simpl holds
};

/// Decides weak starshapedness at the origin as the conjunction of the
/// facet-basis and cone-separation conditions, which together are
/// equivalent to every ray from the origin meeting the realization at most
/// once.
inline WeaklyStarshapedCheck check_weakly_starshaped(const Realization& r) {
    WeaklyStarshapedCheck w;
    w.simpl = check_simpl(r);
    if (!w.simpl.ok) return w;
    w.sep = check_Sep(r);
    w.ok = w.sep->ok;
    return w;
}

struct StarshapedCheck {
    bool ok = false;
    WeaklyStarshapedCheck weak;
    PseudomanifoldCheck pseudomanifold;

    std::string failing_leg() const {
        if (!weak.simpl.ok) return "simpl";
        if (weak.sep && !weak.sep->ok) return "Sep";
        if (!pseudomanifold.ok) return "pseudomanifold";
        return "";
    }
};

/// Starshaped at the origin: every ray from 0 meets the realization exactly
/// once. Decided as weakly starshaped (at most once) plus the complex being
/// a pseudomanifold (so the realized set has no boundary and rays cannot
/// escape through a gap).
inline StarshapedCheck is_starshaped_at_origin(const Realization& r) {
    StarshapedCheck s;
    s.weak = check_weakly_starshaped(r);
    s.pseudomanifold = is_pseudomanifold(r.complex);
    s.ok = s.weak.ok && s.pseudomanifold.ok;
    return s;
}

struct RayCastResult {
    std::size_t count = 0;
    std::vector<RationalVector> points;  // distinct intersection points, sorted
    bool degenerate_contact = false;     // some facet met the ray inside its own affine hull
};

/// Counts distinct intersection points of the open ray {t*u : t > 0} with
/// the realized facets, by exact solves of the barycentric system per facet
/// and exact deduplication across facets. Facets whose system is singular
/// (ray parallel to or inside the facet's affine hull, or a degenerate
/// facet) are tested for contact by LP and reported through the flag
/// instead of the count.
inline RayCastResult ray_cast(const Realization& r, const RationalVector& u) {
    std::size_t amb = r.ambient_dim();
    if (u.size() != amb) throw InputError("ray_cast: direction dimension mismatch");
    bool all_zero = true;
    for (const auto& c : u)
        if (c != 0) all_zero = false;
    if (all_zero) throw InputError("ray_cast: zero direction");

    RayCastResult res;
    std::vector<RationalVector> hits;
    for (Mask f : r.complex.facets) {
        std::vector<int> verts = mask_vertices(f);
        RationalMatrix m(amb + 1, amb + 1);
        for (std::size_t j = 0; j < verts.size(); ++j) {
            for (std::size_t i = 0; i < amb; ++i) m(i, j) = r.point(verts[j])[i];
            m(amb, j) = 1;
        }
        for (std::size_t i = 0; i < amb; ++i) m(i, amb) = -u[i];
        m(amb, amb) = 0;
        RationalVector rhs = zero_vector(amb + 1);
        rhs[amb] = 1;

        if (auto sol = solve_square(m, rhs)) {
            const Rational& lambda = (*sol)[amb];
            bool inside = lambda > 0;
            for (std::size_t j = 0; inside && j < verts.size(); ++j)
                if ((*sol)[j] < 0) inside = false;
            if (inside) hits.push_back(scaled_vector(u, lambda));
            continue;
        }
        // Singular system: does the ray meet the convex hull at all?
        StrictFeasibilityProblem prob;
        for (std::size_t j = 0; j < verts.size(); ++j) prob.add_var(Rational(0));
        std::size_t lambda_var = prob.add_strict_positive_var();
        for (std::size_t i = 0; i < amb; ++i) {
            RationalVector row(prob.num_vars, Rational(0));
            for (std::size_t j = 0; j < verts.size(); ++j) row[j] = r.point(verts[j])[i];
            row[lambda_var] = -u[i];
            prob.add_equality(std::move(row), Rational(0));
        }
        RationalVector ones(verts.size(), Rational(1));
        prob.add_equality(std::move(ones), Rational(1));
        if (strict_feasible(prob).feasible) res.degenerate_contact = true;
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    res.points = std::move(hits);
    res.count = res.points.size();
    return res;
}

inline std::size_t ray_cast_count(const Realization& r, const RationalVector& u) {
    return ray_cast(r, u).count;
}

struct KernelHalfspace {
    Mask facet = 0;
    AffineForm form;      // the facet's affine functional
    int orientation = 0;  // side of the hyperplane containing the kernel
};

struct KernelDescription {
    std::vector<KernelHalfspace> halfspaces;
    std::optional<RationalVector> witness;  // maximizes the minimum slack, capped at 1
    Rational witness_margin = 0;
};

inline Rational kernel_slack(const KernelDescription& k, const RationalVector& x) {
    Rational best;
    bool first = true;
    for (const auto& h : k.halfspaces) {
        Rational s = h.form.eval(x) * h.orientation;
        if (first || s < best) {
            best = s;
            first = false;
        }
    }
    return first ? Rational(0) : best;
}

inline bool kernel_contains(const KernelDescription& k, const RationalVector& x) {
    return kernel_slack(k, x) > 0;
}

namespace detail {

inline std::string center_failure_detail(const StarshapedCheck& sc) {
    std::string msg = "fails the " + sc.failing_leg() + " condition";
    if (sc.weak.sep && sc.weak.sep->witness) {
        const SepWitness& w = *sc.weak.sep->witness;
        msg += "; the ray through (";
        for (std::size_t i = 0; i < w.point.size(); ++i) {
            if (i) msg += ", ";
            msg += format_rational(w.point[i]);
        }
        msg += ") meets the cones of faces " + format_vertex_set(w.face_p) + " and " +
               format_vertex_set(w.face_q);
    } else if (!sc.weak.simpl.ok) {
        msg += " at facet " + format_vertex_set(*sc.weak.simpl.witness_facet);
    } else if (sc.pseudomanifold.witness_ridge) {
        msg += "; ridge " + format_vertex_set(*sc.pseudomanifold.witness_ridge) + " lies in " +
               std::to_string(sc.pseudomanifold.witness_ridge_count) + " facets";
    } else if (!sc.pseudomanifold.facet_graph_connected) {
        msg += "; facet adjacency graph has " +
               std::to_string(sc.pseudomanifold.facet_components.size()) + " components";
    }
    return msg;
}

}  // namespace detail

/// Open halfspace description of the set of valid centers. The seed point
/// fixes the orientation sign of every facet hyperplane and must itself be
/// a certified center: starshapedness is re-decided with the seed moved to
/// the origin. A point q is a center iff all oriented slacks are strictly
/// positive; the witness is the exact LP optimum of the minimum slack
/// (capped at 1), and always exists because the seed is strictly feasible.
inline KernelDescription kernel(const Realization& r, const RationalVector& seed) {
    std::size_t amb = r.ambient_dim();
    if (seed.size() != amb) throw InputError("kernel: seed dimension mismatch");
    for (Mask f : r.complex.facets)
        if (phi(r, f, seed) == 0)
            throw PreconditionError("kernel: seed lies on the hyperplane of facet " +
                                    format_vertex_set(f) + "; orientation undefined");
    StarshapedCheck sc = is_starshaped_at_origin(translate(r, negated(seed)));
    if (!sc.ok)
        throw PreconditionError("kernel: seed is not a center; the translated realization " +
                                detail::center_failure_detail(sc));

    KernelDescription k;
    for (Mask f : r.complex.facets) {
        KernelHalfspace h;
        h.facet = f;
        h.form = phi_form(r, f);
        h.orientation = sign_of(h.form.eval(seed));
        k.halfspaces.push_back(std::move(h));
    }

    StrictFeasibilityProblem prob;
    for (std::size_t i = 0; i < amb; ++i) prob.add_var();
    for (const auto& h : k.halfspaces) {
        RationalVector coeffs(amb);
        for (std::size_t i = 0; i < amb; ++i) coeffs[i] = h.form.alpha[i] * h.orientation;
        prob.require_gt(std::move(coeffs), -h.form.beta * h.orientation);
    }
    StrictFeasibilityResult res = strict_feasible(prob);
    if (res.feasible) {
        k.witness = RationalVector(res.witness.begin(), res.witness.begin() + amb);
        k.witness_margin = res.margin;
    }
    return k;
}

inline KernelDescription kernel(const Realization& r) { return kernel(r, r.base_point); }

struct RationalizeResult {
    Realization realization;        // integer coordinates, starshaped at the origin
    Integer denominator_bound = 1;  // rounding bound that succeeded
    Integer scale = 1;              // integer factor applied after rounding
};

/// Carries how close the failed attempts came: the largest normalized
/// minimum oriented slack at the origin over all tried bounds.
struct RationalizeBudgetError : BudgetError {
    Rational best_margin;
    Integer best_margin_bound;
    Integer max_denominator;

    RationalizeBudgetError(std::string msg, Rational margin, Integer bound, Integer max_den)
        : BudgetError(std::move(msg)),
          best_margin(std::move(margin)),
          best_margin_bound(std::move(bound)),
          max_denominator(std::move(max_den)) {}
};

/// Rounds every coordinate to a denominator-bounded rational (best
/// continued-fraction approximation), scales the whole configuration by the
/// least common denominator to reach integer coordinates, and re-verifies
/// starshapedness plus the exact facet sign vector at the origin. The bound
/// escalates by powers of ten until verification passes. Uniform positive
/// scaling multiplies every facet functional by a positive constant, so it
/// can never flip a sign that the rounding stage got right.
inline RationalizeResult rationalize(const SimplicialComplex& complex,
                                     const std::vector<RationalVector>& approx_points,
                                     const Integer& max_denominator = Integer(1000000000000)) {
    Realization input(complex, approx_points);
    std::size_t amb = input.ambient_dim();
    RationalVector origin = zero_vector(amb);

    std::vector<int> want_sign;
    for (Mask f : complex.facets) {
        Rational v = phi(input, f, origin);
        if (v == 0)
            throw PreconditionError("rationalize: facet " + format_vertex_set(f) +
                                    " passes through the origin; orientation signs undefined");
        want_sign.push_back(sign_of(v));
    }
    StarshapedCheck pre = is_starshaped_at_origin(input);
    if (!pre.ok)
        throw PreconditionError("rationalize: input is not starshaped at the origin; it " +
                                detail::center_failure_detail(pre));

    Rational best_margin;
    Integer best_margin_bound = 0;
    bool have_margin = false;
    for (Integer bound = 1;; bound *= 10) {
        if (bound > max_denominator) break;
        std::vector<RationalVector> rounded;
        rounded.reserve(approx_points.size());
        Integer common = 1;
        for (const auto& p : approx_points) {
            RationalVector q(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) {
                q[i] = best_rational_within(p[i], bound);
                common = lcm_of(common, den(q[i]));
            }
            rounded.push_back(std::move(q));
        }
        std::vector<RationalVector> integral;
        integral.reserve(rounded.size());
        for (const auto& p : rounded) integral.push_back(scaled_vector(p, Rational(common)));
        Realization candidate(complex, std::move(integral));

        bool signs_ok = true;
        Rational margin;
        bool margin_set = false;
        Rational norm = 1;  // phi scales by common^amb under uniform scaling by common
        for (std::size_t i = 0; i < amb; ++i) norm *= common;
        for (std::size_t i = 0; i < complex.facets.size(); ++i) {
            Rational v = phi(candidate, complex.facets[i], origin) * want_sign[i] / norm;
            if (!margin_set || v < margin) {
                margin = v;
                margin_set = true;
            }
            if (sign_of(v) != 1) signs_ok = false;
        }
        if (margin_set && (!have_margin || margin > best_margin)) {
            best_margin = margin;
            best_margin_bound = bound;
            have_margin = true;
        }
        if (signs_ok && is_starshaped_at_origin(candidate).ok)
            return {std::move(candidate), bound, common};
    }
    throw RationalizeBudgetError(
        "rationalize: no denominator bound up to " + max_denominator.str() +
            " yields a verified realization (best normalized margin " +
            format_rational(have_margin ? best_margin : Rational(0)) + " at bound " +
            best_margin_bound.str() + ")",
        have_margin ? best_margin : Rational(0), best_margin_bound, max_denominator);
}

struct NormalizeResult {
    Realization realization;  // integer coordinates, base point at the origin
    Integer scale = 1;
    RationalVector kernel_witness;       // lattice point strictly inside the kernel
    bool witness_rounded_from_lp = false;  // witness came from rounding the LP optimum
};

/// Moves the base point to the origin and clears denominators by one
/// uniform integer scale, yielding integer coordinates with the origin in
/// the kernel. The reported lattice witness is the rounded LP optimum when
/// some floor/ceil combination stays strictly inside every halfspace, and
/// the origin otherwise (always valid: starshapedness at 0 puts 0 in the
/// kernel).
inline NormalizeResult normalize_to_lattice(const Realization& r) {
    Realization centered = translate(r, negated(r.base_point));
    StarshapedCheck sc = is_starshaped_at_origin(centered);
    if (!sc.ok)
        throw PreconditionError("normalize_to_lattice: realization is not starshaped at its "
                                "base point; it " +
                                detail::center_failure_detail(sc));
    Integer common = 1;
    for (const auto& p : centered.points)
        for (const auto& c : p) common = lcm_of(common, den(c));
    NormalizeResult out{scale_points(centered, Rational(common)), common, {}, false};

    std::size_t amb = out.realization.ambient_dim();
    KernelDescription k = kernel(out.realization, zero_vector(amb));
    out.kernel_witness = zero_vector(amb);
    if (k.witness) {
        // Try every floor/ceil rounding of the LP optimum, nearest corner first.
        const RationalVector& w = *k.witness;
        for (std::uint32_t combo = 0; combo < (1u << amb); ++combo) {
            RationalVector cand(amb);
            for (std::size_t i = 0; i < amb; ++i)
                cand[i] = Rational((combo >> i) & 1 ? ceil_of(w[i]) : floor_of(w[i]));
            if (kernel_contains(k, cand)) {
                out.kernel_witness = std::move(cand);
                out.witness_rounded_from_lp = true;
                break;
            }
        }
    }
    return out;
}

}  // namespace stargale
