#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stargale/rational.hpp"

namespace stargale {

/// Vertex subsets of {1..n} as bitmasks, vertex v at bit v-1.
using Mask = std::uint64_t;

inline constexpr std::size_t max_universe = 63;

inline Mask universe_mask(std::size_t n) {
    if (n > max_universe)
        throw InputError("vertex universe larger than " + std::to_string(max_universe) +
                         " is not supported");
    return n == 0 ? Mask(0) : ((Mask(1) << n) - 1);
}

inline std::size_t mask_size(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }
inline bool mask_contains(Mask m, int v) { return (m >> (v - 1)) & Mask(1); }
inline Mask mask_with(Mask m, int v) { return m | (Mask(1) << (v - 1)); }
inline Mask mask_without(Mask m, int v) { return m & ~(Mask(1) << (v - 1)); }

inline Mask mask_from_vertices(const std::vector<int>& verts, std::size_t n) {
    universe_mask(n);  // validates n itself
    Mask m = 0;
    for (int v : verts) {
        if (v < 1 || static_cast<std::size_t>(v) > n)
            throw InputError("vertex " + std::to_string(v) + " outside universe 1.." +
                             std::to_string(n));
        m = mask_with(m, v);
    }
    return m;
}

inline std::vector<int> mask_vertices(Mask m) {
    std::vector<int> out;
    for (int v = 1; m; ++v, m >>= 1)
        if (m & 1) out.push_back(v);
    return out;
}

inline std::string format_vertex_set(Mask m) {
    std::string out = "{";
    bool first = true;
    for (int v : mask_vertices(m)) {
        if (!first) out += ",";
        out += std::to_string(v);
        first = false;
    }
    return out + "}";
}

/// Facet-only representation: the faces are exactly the subsets of facets,
/// so storing the inclusion-maximal sets determines the whole complex.
struct SimplicialComplex {
    std::size_t n = 0;
    std::vector<Mask> facets;  // ascending mask order, mutually incomparable

    bool is_face(Mask f) const {
        for (Mask fac : facets)
            if ((f & ~fac) == 0) return true;
        return false;
    }

    /// Vertices of the universe that appear in no facet.
    Mask ghost_vertices() const {
        Mask used = 0;
        for (Mask f : facets) used |= f;
        return universe_mask(n) & ~used;
    }

    bool operator==(const SimplicialComplex& o) const { return n == o.n && facets == o.facets; }
};

/// Builds the complex generated by the given faces: keeps the
/// inclusion-maximal ones as facets.
inline SimplicialComplex closure(std::vector<Mask> faces, std::size_t n) {
    if (faces.empty()) throw InputError("closure: empty face list");
    Mask u = universe_mask(n);
    for (Mask f : faces)
        if ((f & ~u) != 0) throw InputError("closure: face has a vertex outside universe");
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    SimplicialComplex c;
    c.n = n;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < faces.size(); ++j)
            if (i != j && (faces[i] & ~faces[j]) == 0 && faces[i] != faces[j]) {
                maximal = false;
                break;
            }
        if (maximal) c.facets.push_back(faces[i]);
    }
    return c;
}

inline SimplicialComplex closure_lists(const std::vector<std::vector<int>>& lists, std::size_t n) {
    std::vector<Mask> faces;
    faces.reserve(lists.size());
    for (const auto& l : lists) faces.push_back(mask_from_vertices(l, n));
    return closure(std::move(faces), n);
}

inline bool is_pure(const SimplicialComplex& c) {
    for (Mask f : c.facets)
        if (mask_size(f) != mask_size(c.facets.front())) return false;
    return true;
}

/// Max facet cardinality minus one; -1 for the complex whose only facet is
/// the empty set.
inline long dimension(const SimplicialComplex& c) {
    std::size_t best = 0;
    for (Mask f : c.facets) best = std::max(best, mask_size(f));
    return static_cast<long>(best) - 1;
}

/// Family of equal-cardinality subsets of {1..n}: every member has exactly
/// M elements. Members are kept sorted and deduplicated.
struct FundamentalSet {
    std::size_t M = 0;
    std::size_t n = 0;
    std::vector<Mask> members;

    FundamentalSet(std::size_t m_card, std::size_t universe, std::vector<Mask> mem)
        : M(m_card), n(universe), members(std::move(mem)) {
        if (M > n) throw InputError("fundamental set: member cardinality exceeds universe size");
        if (members.empty()) throw InputError("fundamental set: no members");
        Mask u = universe_mask(n);
        for (Mask p : members) {
            if ((p & ~u) != 0) throw InputError("fundamental set: member outside universe");
            if (mask_size(p) != M)
                throw InputError("fundamental set: member " + format_vertex_set(p) +
                                 " does not have cardinality " + std::to_string(M));
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    static FundamentalSet from_lists(std::size_t m_card, std::size_t universe,
                                     const std::vector<std::vector<int>>& lists) {
        std::vector<Mask> mem;
        mem.reserve(lists.size());
        for (const auto& l : lists) mem.push_back(mask_from_vertices(l, universe));
        return FundamentalSet(m_card, universe, std::move(mem));
    }

    bool contains(Mask p) const {
        return std::binary_search(members.begin(), members.end(), p);
    }

    bool operator==(const FundamentalSet& o) const {
        return M == o.M && n == o.n && members == o.members;
    }
};

/// The pure complex whose facets are the member complements; a bijection,
/// inverted by fundamental_set_from_facet_complements.
inline SimplicialComplex associated_complex(const FundamentalSet& e) {
    if (e.M >= e.n)
        throw PreconditionError("associated_complex: member cardinality equals universe size, "
                                "complements are empty");
    Mask u = universe_mask(e.n);
    std::vector<Mask> facets;
    facets.reserve(e.members.size());
    for (Mask p : e.members) facets.push_back(u & ~p);
    std::sort(facets.begin(), facets.end());
    SimplicialComplex c;
    c.n = e.n;
    c.facets = std::move(facets);  // equal cardinalities, so already incomparable
    return c;
}

inline FundamentalSet fundamental_set_from_facet_complements(const SimplicialComplex& c) {
    if (!is_pure(c))
        throw PreconditionError("fundamental_set_from_facet_complements: complex is not pure");
    Mask u = universe_mask(c.n);
    std::vector<Mask> mem;
    mem.reserve(c.facets.size());
    for (Mask f : c.facets) mem.push_back(u & ~f);
    return FundamentalSet(c.n - mask_size(c.facets.front()), c.n, std::move(mem));
}

/// Intersection of all members; equals the ghost vertices of the associated
/// complex.
inline Mask indispensable_elements(const FundamentalSet& e) {
    Mask inter = universe_mask(e.n);
    for (Mask p : e.members) inter &= p;
    return inter;
}

struct SubstituteWitness {
    Mask member = 0;               // the set P that cannot absorb the element
    int element = 0;               // the k outside P
    std::vector<int> substitutes;  // every k' in P whose swap lands in the family;
                                   // empty = existence fails, >1 = uniqueness fails
};

struct SubstituteCheck {
    bool ok = true;
    std::optional<SubstituteWitness> violation;
};

namespace detail {

/// Substitute condition: every member P can absorb any element k of the
/// universe by dropping one of its own elements k' and staying in the family.
/// For k already in P the swap k' = k trivially works and cardinality rules
/// out any other k' (dropping k' != k yields an (M-1)-set), so only k
/// outside P needs examination; this also settles uniqueness for k in P.
inline SubstituteCheck substitute_check(const FundamentalSet& e, bool require_unique) {
    for (Mask p : e.members) {
        for (int k = 1; k <= static_cast<int>(e.n); ++k) {
            if (mask_contains(p, k)) continue;
            std::vector<int> subs;
            for (int kp : mask_vertices(p))
                if (e.contains(mask_with(mask_without(p, kp), k))) subs.push_back(kp);
            if (subs.empty() || (require_unique && subs.size() > 1))
                return {false, SubstituteWitness{p, k, std::move(subs)}};
        }
    }
    return {true, std::nullopt};
}

}  // namespace detail

inline SubstituteCheck check_SE(const FundamentalSet& e) {
    return detail::substitute_check(e, false);
}

inline SubstituteCheck check_SEU(const FundamentalSet& e) {
    return detail::substitute_check(e, true);
}

/// Members as nodes, an edge whenever two members differ by exactly one
/// element (symmetric difference of size two).
struct ReplacementGraph {
    std::vector<Mask> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // index pairs, i < j
    std::vector<std::vector<std::size_t>> adjacency;
};

inline ReplacementGraph replacement_graph(const FundamentalSet& e) {
    ReplacementGraph g;
    g.nodes = e.members;
    g.adjacency.resize(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < g.nodes.size(); ++j)
            if (mask_size(g.nodes[i] ^ g.nodes[j]) == 2) {
                g.edges.emplace_back(i, j);
                g.adjacency[i].push_back(j);
                g.adjacency[j].push_back(i);
            }
    return g;
}

inline std::vector<std::vector<std::size_t>> graph_components(const ReplacementGraph& g) {
    std::vector<std::vector<std::size_t>> comps;
    std::vector<bool> seen(g.nodes.size(), false);
    for (std::size_t s = 0; s < g.nodes.size(); ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp, stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (std::size_t w : g.adjacency[v])
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

struct PseudomanifoldCheck {
    bool ok = false;
    bool every_ridge_in_two_facets = false;
    bool facet_graph_connected = false;
    std::optional<Mask> witness_ridge;  // first ridge not lying in exactly two facets
    std::size_t witness_ridge_count = 0;
    std::vector<std::vector<std::size_t>> facet_components;  // indices into facets
};

/// Pure complex test: every ridge (facet minus one vertex) lies in exactly
/// two facets, and facets form one chain-connected piece under
/// ridge-sharing adjacency. For facet cardinality one the single ridge is
/// the empty set, lying in every facet, so exactly two facets are required.
inline PseudomanifoldCheck is_pseudomanifold(const SimplicialComplex& c) {
    if (!is_pure(c)) throw PreconditionError("is_pseudomanifold: complex is not pure");
    PseudomanifoldCheck r;
    std::size_t card = mask_size(c.facets.front());

    std::map<Mask, std::size_t> ridge_count;
    for (Mask f : c.facets)
        for (int v : mask_vertices(f)) ++ridge_count[mask_without(f, v)];
    r.every_ridge_in_two_facets = true;
    for (const auto& [ridge, cnt] : ridge_count) {
        if (cnt != 2) {
            r.every_ridge_in_two_facets = false;
            r.witness_ridge = ridge;
            r.witness_ridge_count = cnt;
            break;
        }
    }

    ReplacementGraph fg;  // reuse the plain-graph helpers for facet adjacency
    fg.nodes = c.facets;
    fg.adjacency.resize(fg.nodes.size());
    for (std::size_t i = 0; i < fg.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < fg.nodes.size(); ++j)
            if (mask_size(fg.nodes[i] & fg.nodes[j]) + 1 == card) {
                fg.edges.emplace_back(i, j);
                fg.adjacency[i].push_back(j);
                fg.adjacency[j].push_back(i);
            }
    r.facet_components = graph_components(fg);
    r.facet_graph_connected = r.facet_components.size() <= 1;

    r.ok = r.every_ridge_in_two_facets && r.facet_graph_connected;
    return r;
}

struct SeuMinimalityCheck {
    bool minimal = false;
    bool seu = false;
    bool graph_connected = false;
    PseudomanifoldCheck complex_route;  // independent derivation through the complement complex
};

/// Decides minimality two independent ways and insists they agree: the
/// unique-substitute condition plus replacement-graph connectivity on one
/// side, the pseudomanifold test on the complement complex on the other.
inline SeuMinimalityCheck seu_minimality(const FundamentalSet& e) {
    if (e.n <= e.M)
        throw PreconditionError("is_SEU_minimal: requires universe larger than member "
                                "cardinality");
    SeuMinimalityCheck r;
    r.seu = check_SEU(e).ok;
    ReplacementGraph g = replacement_graph(e);
    if (r.seu) {
        // Under unique substitution every member has exactly one neighbor
        // per outside element, so the graph is (n-M)-valent.
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            if (g.adjacency[i].size() != e.n - e.M)
                throw TheoremViolation(
                    "replacement graph of a unique-substitute family must be " +
                    std::to_string(e.n - e.M) + "-valent, node " +
                    format_vertex_set(g.nodes[i]) + " has degree " +
                    std::to_string(g.adjacency[i].size()));
    }
    r.graph_connected = graph_components(g).size() <= 1;
    r.complex_route = is_pseudomanifold(associated_complex(e));
    bool direct = r.seu && r.graph_connected;
    if (direct != r.complex_route.ok)
        throw TheoremViolation("substitute-minimality and pseudomanifold routes disagree on " +
                               std::to_string(e.members.size()) + " members over universe " +
                               std::to_string(e.n));
    r.minimal = direct;
    return r;
}

inline bool is_SEU_minimal(const FundamentalSet& e) { return seu_minimality(e).minimal; }

/// Splits a unique-substitute family into the connected components of its
/// replacement graph; each part is again a valid family and is minimal.
inline std::vector<FundamentalSet> decompose_SEU(const FundamentalSet& e) {
    auto chk = check_SEU(e);
    if (!chk.ok) {
        const auto& v = *chk.violation;
        throw PreconditionError(
            "decompose_SEU: unique-substitute condition fails at member " +
            format_vertex_set(v.member) + " with element " + std::to_string(v.element) +
            (v.substitutes.empty() ? " (no substitute)" : " (multiple substitutes)"));
    }
    ReplacementGraph g = replacement_graph(e);
    std::vector<FundamentalSet> parts;
    for (const auto& comp : graph_components(g)) {
        std::vector<Mask> mem;
        mem.reserve(comp.size());
        for (std::size_t i : comp) mem.push_back(g.nodes[i]);
        parts.emplace_back(e.M, e.n, std::move(mem));
    }
    return parts;
}

}  // namespace stargale
