#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cctype>

#include "stargale/io.hpp"
#include "stargale/svg.hpp"
#include "support/fixtures.hpp"

using namespace stargale;
namespace st = stargale::testing;

TEST_CASE("exact number ingestion", "[io]") {
    CHECK(rational_from_json(Json(3)) == 3);
    CHECK(rational_from_json(Json(-17)) == -17);
    CHECK(rational_from_json(Json(std::uint64_t(18446744073709551615ull))) ==
          Rational(Integer("18446744073709551615")));
    CHECK(rational_from_json(Json("2/3")) == st::q(2, 3));
    CHECK(rational_from_json(Json("-1.25")) == st::q(-5, 4));
    CHECK(rational_from_json(Json(".5")) == st::q(1, 2));
    CHECK(rational_from_json(Json("123456789012345678901234567890")) ==
          Rational(Integer("123456789012345678901234567890")));

    CHECK_THROWS_AS(rational_from_json(Json(1.5)), InputError);
    CHECK_THROWS_WITH(rational_from_json(Json(1.5)),
                      Catch::Matchers::ContainsSubstring("floating-point"));
    CHECK_THROWS_AS(rational_from_json(Json(true)), InputError);
    CHECK_THROWS_AS(rational_from_json(Json::array()), InputError);
    CHECK_THROWS_AS(rational_from_json(Json("7/")), InputError);
}

TEST_CASE("document serialization of numbers", "[io]") {
    CHECK(rational_to_document_json(Rational(4)) == Json(4));
    CHECK(rational_to_document_json(st::q(-3, 7)) == Json("-3/7"));
    Rational big(Integer("123456789012345678901234567890"));
    CHECK(rational_to_document_json(big) == Json("123456789012345678901234567890"));
    CHECK(rational_to_report_json(Rational(4)) == Json("4"));
    CHECK(rational_to_report_json(st::q(1, 2)) == Json("1/2"));
    CHECK(mask_to_json(mask_from_vertices({3, 1}, 4)) == Json::array({1, 3}));
}

TEST_CASE("parsing the four document kinds", "[io]") {
    InputDocument r = parse_document(std::string(R"({
      "kind": "realization", "n": 3,
      "facets": [[1,2],[2,3],[1,3]],
      "points": [[1, 0], ["3", "1"], ["0.5", "3/2"]],
      "base_point": ["1/4", 0]
    })"));
    CHECK(r.kind == "realization");
    CHECK(r.n == 3);
    REQUIRE(r.points.has_value());
    CHECK((*r.points)[2] == RationalVector{st::q(1, 2), st::q(3, 2)});
    REQUIRE(r.base_point.has_value());
    CHECK((*r.base_point)[0] == st::q(1, 4));

    InputDocument c = parse_document(std::string(
        R"({"kind": "complex", "n": 4, "facets": [[1,2],[3,4]]})"));
    CHECK(to_complex(c).facets.size() == 2);

    InputDocument f = parse_document(std::string(
        R"({"kind": "fundamental_set", "n": 4, "M": 2, "members": [[1,2],[3,4]]})"));
    FundamentalSet fs = to_fundamental_set(f);
    CHECK(fs.M == 2);
    CHECK(fs.members.size() == 2);

    InputDocument s = parse_document(std::string(R"({
      "kind": "studiable_system", "n": 2, "M": 1,
      "members": [[1],[2]], "lambda": [[1],[-1]]
    })"));
    StudiableSystem sys = to_studiable_system(s);
    CHECK(sys.vector_of(2) == RationalVector{-1});
}

TEST_CASE("malformed documents are rejected with input errors", "[io]") {
    CHECK_THROWS_AS(parse_document(std::string("{not json")), InputError);
    CHECK_THROWS_WITH(parse_document(std::string("{not json")),
                      Catch::Matchers::ContainsSubstring("invalid JSON"));
    CHECK_THROWS_AS(parse_document(std::string("[1,2]")), InputError);
    CHECK_THROWS_AS(parse_document(std::string(R"({"kind": "octopus", "n": 3})")), InputError);
    CHECK_THROWS_AS(parse_document(std::string(R"({"n": 3})")), InputError);
    CHECK_THROWS_AS(parse_document(std::string(R"({"kind": "complex"})")), InputError);
    CHECK_THROWS_AS(parse_document(std::string(R"({"kind": "complex", "n": 3})")), InputError);
    CHECK_THROWS_AS(
        parse_document(std::string(R"({"kind": "fundamental_set", "n": 3, "M": 2})")),
        InputError);
    CHECK_THROWS_AS(
        parse_document(std::string(R"({"kind": "realization", "n": 1, "facets": [[1]]})")),
        InputError);
    CHECK_THROWS_AS(parse_document(std::string(
                        R"({"kind": "realization", "n": 1, "facets": [[1]], "points": [[1.5]]})")),
                    InputError);
    CHECK_THROWS_AS(parse_document(std::string(
                        R"({"kind": "complex", "n": 2, "facets": [[1, "2"]]})")),
                    InputError);
}

TEST_CASE("canonical serialization round-trips byte for byte", "[io]") {
    std::vector<std::string> raw = {
        R"({"kind": "complex", "n": 4, "facets": [[2,1],[1,2],[4,3],[1,4]]})",
        R"({"kind": "realization", "n": 4,
            "facets": [[1,2],[2,3],[3,4],[1,4]],
            "points": [[1,0],[0,1],[-1,0],[0,-1]],
            "base_point": ["1/3", "0.25"]})",
        R"({"kind": "fundamental_set", "n": 5, "M": 2, "members": [[5,2],[1,3],[2,5]]})",
        R"({"kind": "studiable_system", "n": 2, "M": 1, "members": [[1],[2]],
            "lambda": [["123456789012345678901234567890"], ["-2/3"]]})",
    };
    for (const std::string& text : raw) {
        std::string once = serialize_document(parse_document(text));
        std::string twice = serialize_document(parse_document(once));
        CHECK(once == twice);
        CHECK(once.back() == '\n');
    }
}

TEST_CASE("serialization orders vertex sets like their bitmasks", "[io]") {
    InputDocument doc = parse_document(std::string(
        R"({"kind": "complex", "n": 4, "facets": [[2,1],[1,2],[4,1],[3]]})"));
    std::string out;
    for (char ch : serialize_document(doc))  // drop the pretty-print whitespace
        if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    CHECK(out.find("[1,2]") != std::string::npos);
    CHECK(out.find("[1,2]") < out.find("[3]"));
    CHECK(out.find("[3]") < out.find("[1,4]"));
    CHECK(out.find("[2,1]") == std::string::npos);
}

TEST_CASE("kind gates on the converters", "[io]") {
    InputDocument c = parse_document(std::string(
        R"({"kind": "complex", "n": 2, "facets": [[1,2]]})"));
    CHECK_THROWS_AS(to_realization(c), InputError);
    CHECK_THROWS_AS(to_fundamental_set(c), InputError);
    CHECK_THROWS_AS(to_studiable_system(c), InputError);
    CHECK_THROWS_AS(to_configuration(c), InputError);

    InputDocument no_facets = parse_document(std::string(
        R"({"kind": "realization", "n": 2, "points": [[1,0],[0,1]]})"));
    CHECK_THROWS_AS(to_realization(no_facets), InputError);
    CHECK(to_configuration(no_facets).dim == 2);

    InputDocument fs = parse_document(std::string(
        R"({"kind": "fundamental_set", "n": 4, "M": 2, "members": [[1,2]]})"));
    CHECK_THROWS_AS(to_studiable_system(fs), InputError);
    CHECK(to_fundamental_set(fs).members.size() == 1);
}

TEST_CASE("documents from domain objects", "[io]") {
    Realization sq = st::square_realization();
    InputDocument doc = document_from_realization(sq);
    CHECK(doc.kind == "realization");
    CHECK(!doc.base_point.has_value());  // zero base point is left implicit
    Realization back = to_realization(doc);
    CHECK(back.complex == sq.complex);
    CHECK(back.points == sq.points);

    InputDocument moved = document_from_realization(translate(sq, {1, 2}));
    REQUIRE(moved.base_point.has_value());
    CHECK(*moved.base_point == RationalVector{1, 2});

    InputDocument cd = document_from_complex(st::two_triangles_complex());
    CHECK(to_complex(cd) == st::two_triangles_complex());

    InputDocument fd = document_from_fundamental_set(st::two_triangles_fundamental_set());
    CHECK(to_fundamental_set(fd) == st::two_triangles_fundamental_set());

    InputDocument sd = document_from_studiable_system(st::square_system());
    StudiableSystem sys = to_studiable_system(sd);
    CHECK(sys.lambda == st::square_system().lambda);

    // Construction then serialization is already canonical.
    std::string text = serialize_document(sd);
    CHECK(serialize_document(parse_document(text)) == text);
}

TEST_CASE("report structure", "[io]") {
    Report rep;
    rep.add_verdict("alpha", true);
    rep.add_verdict("beta", false, Json{{"facet", Json::array({1, 2})}});
    rep.add_certificate("count", 3);
    rep.add_theorem_check("sides", true, true);
    rep.add_theorem_check("legs", true, false);

    CHECK(!rep.all_verdicts_true());
    CHECK(!rep.all_theorem_checks_agree());

    Json j = rep.to_json();
    CHECK(j["verdicts"]["alpha"]["value"] == true);
    CHECK(!j["verdicts"]["alpha"].contains("witness"));
    CHECK(j["verdicts"]["beta"]["witness"]["facet"] == Json::array({1, 2}));
    CHECK(j["certificates"]["count"] == 3);
    CHECK(j["theorem_checks"][0]["agree"] == true);
    CHECK(j["theorem_checks"][1]["agree"] == false);

    Report empty;
    empty.add_verdict("only", true);
    CHECK(empty.all_verdicts_true());
    CHECK(empty.all_theorem_checks_agree());
    CHECK(!empty.to_json().contains("certificates"));
    CHECK(!empty.to_json().contains("theorem_checks"));
}

TEST_CASE("viewport construction", "[svg]") {
    ViewBox box = plot_viewport(st::square_realization());
    CHECK(box.min_x == st::q(-6, 5));
    CHECK(box.max_x == st::q(6, 5));
    CHECK(box.min_y == st::q(-6, 5));
    CHECK(box.max_y == st::q(6, 5));

    // Coincident points still produce a visible window.
    Realization dot(closure_lists({{1, 2}}, 2), {{1, 1}, {1, 1}});
    ViewBox tiny = plot_viewport(dot);
    CHECK(tiny.width() == st::q(1, 5));

    CHECK_THROWS_AS(plot_viewport(st::octahedron_boundary()), InputError);
}

TEST_CASE("kernel polygon of the square is the exact diamond", "[svg]") {
    Realization sq = st::square_realization();
    KernelDescription k = kernel(sq, {0, 0});
    std::vector<RationalVector> poly = kernel_polygon(k, plot_viewport(sq));
    REQUIRE(poly.size() == 4);
    std::sort(poly.begin(), poly.end());
    std::vector<RationalVector> expect = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::sort(expect.begin(), expect.end());
    CHECK(poly == expect);
}

TEST_CASE("kernel polygons lie on the bounding hyperplanes", "[svg]") {
    Realization convex = st::convex_pentagon();
    KernelDescription kc = kernel(convex, {0, 0});
    std::vector<RationalVector> conv_poly = kernel_polygon(kc, plot_viewport(convex));
    std::vector<RationalVector> sorted_points = convex.points;
    std::sort(conv_poly.begin(), conv_poly.end());
    std::sort(sorted_points.begin(), sorted_points.end());
    CHECK(conv_poly == sorted_points);  // a convex region is its own kernel

    Realization star = st::nonconvex_pentagon();
    KernelDescription ks = kernel(star, {0, 0});
    std::vector<RationalVector> poly = kernel_polygon(ks, plot_viewport(star));
    REQUIRE(poly.size() >= 3);
    for (const auto& v : poly) {
        CHECK(kernel_slack(ks, v) >= 0);
        int tight = 0;
        for (const auto& h : ks.halfspaces)
            if (h.form.eval(v) == 0) ++tight;
        CHECK(tight >= 2);
    }
}

TEST_CASE("svg rendering is deterministic and well-formed", "[svg]") {
    Realization sq = st::square_realization();
    std::string bare = render_svg(sq);
    CHECK(render_svg(sq) == bare);
    CHECK(bare.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
    CHECK(bare.find("viewBox=\"-1.2 -1.2 2.4 2.4\"") != std::string::npos);
    CHECK(bare.find("<polygon") == std::string::npos);
    CHECK(bare.rfind("</svg>\n") == bare.size() - 7);

    std::string shaded = render_svg(sq, kernel(sq, {0, 0}));
    CHECK(shaded.find("<polygon") != std::string::npos);
    CHECK(shaded.find("fill=\"#fde68a\"") != std::string::npos);

    // One circle per vertex plus the base point marker.
    std::size_t circles = 0;
    for (std::size_t at = bare.find("<circle"); at != std::string::npos;
         at = bare.find("<circle", at + 1))
        ++circles;
    CHECK(circles == sq.points.size() + 1);
}
