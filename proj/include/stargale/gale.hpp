#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stargale/complexes.hpp"
#include "stargale/matrix.hpp"

namespace stargale {

/// Ordered list of n vectors in Q^dim, the columns of a dim x n matrix.
struct VectorConfiguration {
    std::size_t dim = 0;
    std::vector<RationalVector> points;

    VectorConfiguration() = default;
    VectorConfiguration(std::size_t d, std::vector<RationalVector> pts)
        : dim(d), points(std::move(pts)) {
        for (const auto& p : points)
            if (p.size() != dim)
                throw InputError("vector configuration: vector length does not match dimension");
    }

    std::size_t size() const { return points.size(); }
};

inline RationalMatrix configuration_matrix(const VectorConfiguration& x) {
    RationalMatrix m(x.dim, x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t i = 0; i < x.dim; ++i) m(i, j) = x.points[j][i];
    return m;
}

/// Dual configuration of n vectors in Q^(n - source_rank). A subset of the
/// source is independent exactly when the complementary dual subset spans.
struct GaleTransform {
    std::size_t dim = 0;  // n - source_rank
    std::size_t source_rank = 0;
    std::vector<RationalVector> vectors;  // one per source point, each of length dim
};

/// The canonical transform: rows of the canonical kernel basis of the
/// configuration matrix, read column-wise (dual vector j = coordinate j
/// across the kernel basis vectors). Deterministic because the kernel basis
/// is; any other valid transform differs from this one by an invertible map.
inline GaleTransform gale_transform(const VectorConfiguration& x) {
    RationalMatrix m = configuration_matrix(x);
    std::size_t r = rank(m);
    if (r != x.dim)
        throw PreconditionError("gale_transform: configuration does not span its space, rank " +
                                std::to_string(r) + " < dimension " + std::to_string(x.dim));
    RationalMatrix k = kernel_basis(m);  // (n - r) x n
    GaleTransform g;
    g.dim = k.rows();
    g.source_rank = r;
    g.vectors.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) g.vectors[j] = k.column(j);
    return g;
}

inline VectorConfiguration as_configuration(const GaleTransform& g) {
    return VectorConfiguration(g.dim, g.vectors);
}

namespace detail {

inline std::vector<std::size_t> mask_indices(Mask m) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; m; ++j, m >>= 1)
        if (m & 1) out.push_back(j);
    return out;
}

}  // namespace detail

/// All subsets I of the point index set (as 1-based vertex masks) whose
/// selected columns are linearly independent.
inline std::vector<Mask> independence_pattern(const VectorConfiguration& x,
                                              std::size_t max_exhaustive_n = 12) {
    if (x.size() > max_exhaustive_n)
        throw InputError("independence_pattern: too many points for exhaustive enumeration");
    RationalMatrix m = configuration_matrix(x);
    std::vector<Mask> out;
    for (Mask sub = 0; sub < (Mask(1) << x.size()); ++sub) {
        RationalMatrix cols = m.select_columns(detail::mask_indices(sub));
        if (rank(cols) == mask_size(sub)) out.push_back(sub);
    }
    return out;
}

struct DualityCheck {
    bool ok = true;
    std::optional<Mask> witness_subset;  // first index subset violating the equivalence
};

/// Exhaustive check over every index subset I: the source vectors of I are
/// independent iff the dual vectors of the complement span, and I is a
/// source basis iff the complement is a dual basis.
inline DualityCheck verify_gale_duality(const VectorConfiguration& x, const GaleTransform& g,
                                        std::size_t max_exhaustive_n = 12) {
    if (g.vectors.size() != x.size())
        throw InputError("verify_gale_duality: point counts differ");
    for (const auto& v : g.vectors)
        if (v.size() != g.dim)
            throw InputError("verify_gale_duality: dual vector length does not match dual dim");
    std::size_t n = x.size();
    if (n > max_exhaustive_n)
        throw InputError("verify_gale_duality: too many points for exhaustive enumeration");

    RationalMatrix xm = configuration_matrix(x);
    RationalMatrix gm = configuration_matrix(as_configuration(g));
    Mask full = n == 0 ? 0 : ((Mask(1) << n) - 1);
    for (Mask sub = 0; sub <= full && n > 0; ++sub) {
        Mask comp = full & ~sub;
        std::size_t k = mask_size(sub);
        bool indep = rank(xm.select_columns(detail::mask_indices(sub))) == k;
        bool spans = rank(gm.select_columns(detail::mask_indices(comp))) == g.dim;
        bool basis_src = indep && k == x.dim;
        bool basis_dual = spans && mask_size(comp) == g.dim;
        if (indep != spans || basis_src != basis_dual) return {false, sub};
        if (sub == full) break;  // avoid wrap-around at n = 64
    }
    return {true, std::nullopt};
}

}  // namespace stargale
