#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "stargale/bosio.hpp"
#include "stargale/complexes.hpp"
#include "stargale/gale.hpp"
#include "stargale/geometry.hpp"
#include "support/rng.hpp"

namespace stargale::testing {

inline std::string fixtures_dir() {
    const char* env = std::getenv("STARGALE_FIXTURES_DIR");
    return env ? env : "fixtures";
}

inline Rational q(long n, long d = 1) { return Rational(n, d); }

// ---- named fixtures ----

/// Unit square boundary: convex, starshaped at the origin.
inline Realization square_realization() {
    SimplicialComplex c = closure_lists({{1, 2}, {2, 3}, {3, 4}, {1, 4}}, 4);
    return Realization(c, {{q(1), q(0)}, {q(0), q(1)}, {q(-1), q(0)}, {q(0), q(-1)}});
}

/// Convex pentagon, vertices in counterclockwise angular order around 0.
inline Realization convex_pentagon() {
    SimplicialComplex c = closure_lists({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}}, 5);
    return Realization(
        c, {{q(2), q(0)}, {q(1), q(2)}, {q(-2), q(1)}, {q(-2), q(-1)}, {q(1), q(-2)}});
}

/// Nonconvex pentagon (vertex 2 pulled inward), still starshaped at 0:
/// the vertices stay in strictly increasing angular order.
inline Realization nonconvex_pentagon() {
    SimplicialComplex c = closure_lists({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}}, 5);
    return Realization(
        c, {{q(4), q(0)}, {q(1), q(1)}, {q(0), q(4)}, {q(-4), q(1)}, {q(1), q(-4)}});
}

/// Octahedron boundary: vertices +-e_i with 4 = -1, 5 = -2, 6 = -3.
inline Realization octahedron_boundary() {
    SimplicialComplex c = closure_lists({{1, 2, 3},
                                         {1, 2, 6},
                                         {1, 3, 5},
                                         {1, 5, 6},
                                         {2, 3, 4},
                                         {2, 4, 6},
                                         {3, 4, 5},
                                         {4, 5, 6}},
                                        6);
    return Realization(c, {{q(1), q(0), q(0)},
                           {q(0), q(1), q(0)},
                           {q(0), q(0), q(1)},
                           {q(-1), q(0), q(0)},
                           {q(0), q(-1), q(0)},
                           {q(0), q(0), q(-1)}});
}

/// Triangle boundary whose interior misses the origin: every facet line
/// avoids 0 (simpl holds) but rays toward the far side cross twice, so
/// cone separation fails.
inline Realization triangle_zero_outside() {
    SimplicialComplex c = closure_lists({{1, 2}, {2, 3}, {1, 3}}, 3);
    return Realization(c, {{q(1), q(0)}, {q(3), q(1)}, {q(1), q(2)}});
}

/// Two-edge path: weakly starshaped but not a pseudomanifold (the endpoint
/// vertices are ridges lying in a single facet).
inline Realization path_realization() {
    SimplicialComplex c = closure_lists({{1, 2}, {2, 3}}, 3);
    return Realization(c, {{q(1), q(0)}, {q(0), q(1)}, {q(-1), q(0)}});
}

/// Two disjoint triangle boundaries: pure, every ridge in two facets, but
/// the facet graph has two components.
inline SimplicialComplex two_triangles_complex() {
    return closure_lists({{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}}, 6);
}

inline FundamentalSet two_triangles_fundamental_set() {
    return fundamental_set_from_facet_complements(two_triangles_complex());
}

/// The square's dual pair: complements of the square's facets with the
/// square's Gale vectors. Satisfies gen, SE, Imb, SEU, SEU-minimality.
inline StudiableSystem square_system() {
    Realization r = square_realization();
    GaleTransform gt = gale_transform(VectorConfiguration(2, r.points));
    return StudiableSystem(fundamental_set_from_facet_complements(r.complex), gt.vectors);
}

/// Type (1,2) system with opposite rays: gen holds, the two cone interiors
/// are disjoint, so imbrication fails with a strict separation margin.
inline StudiableSystem opposite_rays_system() {
    FundamentalSet e = FundamentalSet::from_lists(1, 2, {{1}, {2}});
    return StudiableSystem(e, {{q(1)}, {q(-1)}});
}

/// Nonconvex pentagon with every coordinate perturbed by +-10^-6, the
/// rationalization test input. Exact rationals standing for the decimal
/// strings in the JSON fixture.
inline std::vector<RationalVector> perturbed_pentagon_points() {
    std::vector<RationalVector> pts = nonconvex_pentagon().points;
    const Rational noise = q(1, 1000000);
    int parity = 0;
    for (auto& p : pts)
        for (auto& coord : p) coord += (parity++ % 2 == 0) ? noise : -noise;
    return pts;
}

// ---- corpus generators ----

/// Star polygon on n vertices: distinct rational directions in angular
/// order with random positive radii, so the boundary cycle is starshaped at
/// the origin by construction.
inline Realization star_polygon(Rng& rng, int n) {
    // Eight fixed unit-ish directions around the circle; scale by radius.
    static const std::vector<std::pair<long, long>> dirs = {
        {5, 0}, {4, 3}, {0, 5}, {-3, 4}, {-5, 0}, {-4, -3}, {0, -5}, {3, -4}};
    std::vector<std::vector<int>> facets;
    std::vector<RationalVector> pts;
    for (int i = 0; i < n; ++i) {
        Rational radius = q(rng.pick(1, 4));
        const auto& d = dirs[static_cast<std::size_t>(i) * dirs.size() / n];
        pts.push_back({radius * d.first, radius * d.second});
        facets.push_back({i + 1, (i % n) + 1 == n ? 1 : i + 2});
    }
    return Realization(closure_lists(facets, n), pts);
}

/// Configuration (x_1..x_r, e_1..e_dim) in Q^dim: the given columns followed
/// by the full standard basis, so the result always spans.
inline VectorConfiguration basis_extended_configuration(const std::vector<RationalVector>& xs,
                                                        std::size_t dim) {
    std::vector<RationalVector> pts = xs;
    for (std::size_t i = 0; i < dim; ++i) {
        RationalVector e(dim, Rational(0));
        e[i] = 1;
        pts.push_back(std::move(e));
    }
    return VectorConfiguration(dim, std::move(pts));
}

/// Hand-built dual of basis_extended_configuration: (e_1..e_r, -x^1..-x^dim)
/// in Q^r, where x^i is the i-th coordinate row across the given columns.
/// Independently constructed, so it serves as an oracle for the computed
/// transform: both must induce the same independence pattern.
inline VectorConfiguration basis_extension_dual(const std::vector<RationalVector>& xs,
                                                std::size_t dim) {
    std::size_t r = xs.size();
    std::vector<RationalVector> pts;
    for (std::size_t j = 0; j < r; ++j) {
        RationalVector e(r, Rational(0));
        e[j] = 1;
        pts.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        RationalVector row(r);
        for (std::size_t j = 0; j < r; ++j) row[j] = -xs[j][i];
        pts.push_back(std::move(row));
    }
    return VectorConfiguration(r, std::move(pts));
}

/// Random spanning configuration: n integer points in [-4,4]^dim, retried
/// until the rank is full.
inline VectorConfiguration random_spanning_configuration(Rng& rng, std::size_t dim,
                                                         std::size_t n) {
    while (true) {
        std::vector<RationalVector> pts;
        for (std::size_t i = 0; i < n; ++i) {
            RationalVector p;
            for (std::size_t j = 0; j < dim; ++j) p.push_back(rng.rational(-4, 4));
            pts.push_back(std::move(p));
        }
        VectorConfiguration config(dim, pts);
        if (rank(configuration_matrix(config)) == dim) return config;
    }
}

/// Random pure complex: facet cardinality dim, several distinct random
/// facets. Vertices may go unused; the geometry handles ghosts.
inline SimplicialComplex random_pure_complex(Rng& rng, std::size_t n, std::size_t dim) {
    std::size_t want = static_cast<std::size_t>(rng.pick(1, 6));
    std::vector<Mask> facets;
    for (std::size_t tries = 0; facets.size() < want && tries < 200; ++tries) {
        Mask f = 0;
        while (mask_size(f) < dim)
            f = mask_with(f, static_cast<int>(rng.pick(1, static_cast<long>(n))));
        if (std::find(facets.begin(), facets.end(), f) == facets.end()) facets.push_back(f);
    }
    return closure(std::move(facets), n);
}

/// Random realization for the duality fuzz corpora: spanning integer
/// points, random pure complex of matching facet cardinality.
inline Realization random_realization(Rng& rng, std::size_t n, std::size_t ambient_dim) {
    VectorConfiguration config = random_spanning_configuration(rng, ambient_dim, n);
    SimplicialComplex complex = random_pure_complex(rng, n, ambient_dim);
    return Realization(complex, config.points);
}

/// Random fundamental set of type (M,n): a few distinct M-subsets.
inline FundamentalSet random_fundamental_set(Rng& rng, std::size_t M, std::size_t n) {
    std::size_t want = static_cast<std::size_t>(rng.pick(2, 6));
    std::vector<Mask> members;
    for (std::size_t tries = 0; members.size() < want && tries < 200; ++tries) {
        Mask m = 0;
        while (mask_size(m) < M) m = mask_with(m, static_cast<int>(rng.pick(1, static_cast<long>(n))));
        if (std::find(members.begin(), members.end(), m) == members.end()) members.push_back(m);
    }
    std::sort(members.begin(), members.end());
    return FundamentalSet(M, n, members);
}

/// Random gen-satisfying system of type (M,n), entries in [-5,5]; retries
/// the vectors until every member spans.
inline StudiableSystem random_gen_system(Rng& rng, std::size_t M, std::size_t n) {
    FundamentalSet e = random_fundamental_set(rng, M, n);
    while (true) {
        std::vector<RationalVector> lambda;
        for (std::size_t i = 0; i < n; ++i) {
            RationalVector v;
            for (std::size_t j = 0; j < M; ++j) v.push_back(rng.rational(-5, 5));
            lambda.push_back(std::move(v));
        }
        StudiableSystem s(e, std::move(lambda));
        if (check_gen(s).ok) return s;
    }
}

/// Every fundamental set of type (M,n) with at most max_members members.
inline std::vector<FundamentalSet> fundamental_set_census(std::size_t M, std::size_t n,
                                                          std::size_t max_members) {
    std::vector<Mask> subsets;
    Mask full = universe_mask(n);
    for (Mask m = 0; m <= full; ++m) {
        if (mask_size(m) == M) subsets.push_back(m);
        if (m == full) break;
    }
    std::vector<FundamentalSet> census;
    const std::size_t count = subsets.size();
    for (std::uint64_t pick = 1; pick < (1ull << count); ++pick) {
        if (static_cast<std::size_t>(__builtin_popcountll(pick)) > max_members) continue;
        std::vector<Mask> members;
        for (std::size_t i = 0; i < count; ++i)
            if (pick & (1ull << i)) members.push_back(subsets[i]);
        census.emplace_back(M, n, members);
    }
    return census;
}

}  // namespace stargale::testing
