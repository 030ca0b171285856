#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stargale/geometry.hpp"

namespace stargale {

/// Axis-aligned viewport, kept rational so clipping stays exact.
struct ViewBox {
    Rational min_x, min_y, max_x, max_y;

    Rational width() const { return max_x - min_x; }
    Rational height() const { return max_y - min_y; }
};

/// Bounding box of the vertex set widened by 10% of the larger span on
/// every side. A degenerate span still gets a visible viewport.
inline ViewBox plot_viewport(const Realization& r) {
    if (r.ambient_dim() != 2) throw InputError("plotting needs a 2-dimensional realization");
    ViewBox box{r.points[0][0], r.points[0][1], r.points[0][0], r.points[0][1]};
    for (const auto& p : r.points) {
        box.min_x = std::min(box.min_x, p[0]);
        box.max_x = std::max(box.max_x, p[0]);
        box.min_y = std::min(box.min_y, p[1]);
        box.max_y = std::max(box.max_y, p[1]);
    }
    Rational span = std::max(box.width(), box.height());
    if (span == 0) span = 1;
    Rational margin = span / 10;
    box.min_x -= margin;
    box.max_x += margin;
    box.min_y -= margin;
    box.max_y += margin;
    return box;
}

namespace detail {

/// Sutherland-Hodgman step: keep the part of a convex polygon with
/// alpha . x + beta >= 0. Intersections are computed exactly.
inline std::vector<RationalVector> clip_by_halfplane(const std::vector<RationalVector>& poly,
                                                     const RationalVector& alpha,
                                                     const Rational& beta) {
    std::vector<RationalVector> out;
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        const RationalVector& cur = poly[i];
        const RationalVector& nxt = poly[(i + 1) % k];
        Rational fc = dot(alpha, cur) + beta;
        Rational fn = dot(alpha, nxt) + beta;
        if (fc >= 0) out.push_back(cur);
        if ((fc > 0 && fn < 0) || (fc < 0 && fn > 0)) {
            Rational t = fc / (fc - fn);
            out.push_back({cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])});
        }
    }
    // Collinear inputs can leave consecutive duplicates behind.
    std::vector<RationalVector> dedup;
    for (const auto& p : out)
        if (dedup.empty() || dedup.back() != p) dedup.push_back(p);
    if (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    return dedup;
}

}  // namespace detail

/// Exact vertices of the kernel region clipped to the viewport: start from
/// the viewport rectangle and clip by every oriented facet halfplane. The
/// kernel is open, so the result is the closure of the visible part; an
/// empty kernel yields an empty or lower-dimensional polygon.
inline std::vector<RationalVector> kernel_polygon(const KernelDescription& kd,
                                                  const ViewBox& box) {
    std::vector<RationalVector> poly = {{box.min_x, box.min_y},
                                        {box.max_x, box.min_y},
                                        {box.max_x, box.max_y},
                                        {box.min_x, box.max_y}};
    for (const auto& h : kd.halfspaces) {
        RationalVector alpha = h.form.alpha;
        Rational beta = h.form.beta;
        if (h.orientation < 0) {
            alpha = negated(alpha);
            beta = -beta;
        }
        poly = detail::clip_by_halfplane(poly, alpha, beta);
        if (poly.size() < 3) return {};
    }
    return poly;
}

namespace detail {

inline std::string svg_coord(const Rational& q) { return decimal_string(q, 6); }

}  // namespace detail

/// Deterministic standalone SVG: edges of the complex, labeled vertices,
/// the base point, and optionally the kernel region shaded. SVG's y axis
/// points down, so y coordinates are reflected inside the viewport.
inline std::string render_svg(const Realization& r,
                              const std::optional<KernelDescription>& kernel_region = {}) {
    ViewBox box = plot_viewport(r);
    const Rational flip_sum = box.min_y + box.max_y;
    auto sx = [&](const Rational& x) { return detail::svg_coord(x); };
    auto sy = [&](const Rational& y) { return detail::svg_coord(flip_sum - y); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << sx(box.min_x) << " "
        << sy(box.max_y) << " " << detail::svg_coord(box.width()) << " "
        << detail::svg_coord(box.height()) << "\" width=\"640\" height=\"640\">\n";
    svg << "  <rect x=\"" << sx(box.min_x) << "\" y=\"" << sy(box.max_y) << "\" width=\""
        << detail::svg_coord(box.width()) << "\" height=\"" << detail::svg_coord(box.height())
        << "\" fill=\"#ffffff\"/>\n";

    if (kernel_region) {
        std::vector<RationalVector> poly = kernel_polygon(*kernel_region, box);
        if (!poly.empty()) {
            svg << "  <polygon points=\"";
            for (std::size_t i = 0; i < poly.size(); ++i) {
                if (i) svg << " ";
                svg << sx(poly[i][0]) << "," << sy(poly[i][1]);
            }
            svg << "\" fill=\"#fde68a\" stroke=\"#d97706\" stroke-width=\"0.5%\"/>\n";
        }
    }

    const Rational stroke = box.width() / 200;
    for (Mask f : r.complex.facets) {
        std::vector<int> verts = mask_vertices(f);
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                const RationalVector& a = r.point(verts[i]);
                const RationalVector& b = r.point(verts[j]);
                svg << "  <line x1=\"" << sx(a[0]) << "\" y1=\"" << sy(a[1]) << "\" x2=\""
                    << sx(b[0]) << "\" y2=\"" << sy(b[1])
                    << "\" stroke=\"#1f2937\" stroke-width=\"" << detail::svg_coord(stroke)
                    << "\"/>\n";
            }
    }

    const Rational radius = box.width() / 80;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        const RationalVector& p = r.points[i];
        svg << "  <circle cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1]) << "\" r=\""
            << detail::svg_coord(radius) << "\" fill=\"#b91c1c\"/>\n";
        svg << "  <text x=\"" << sx(p[0] + 2 * radius) << "\" y=\"" << sy(p[1] + radius)
            << "\" font-size=\"" << detail::svg_coord(3 * radius)
            << "\" font-family=\"monospace\" fill=\"#111827\">" << (i + 1) << "</text>\n";
    }

    svg << "  <circle cx=\"" << sx(r.base_point[0]) << "\" cy=\"" << sy(r.base_point[1])
        << "\" r=\"" << detail::svg_coord(radius / 2) << "\" fill=\"#1d4ed8\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace stargale
