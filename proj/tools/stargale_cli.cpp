// stargale: exact decision procedures for starshaped simplicial spheres,
// Gale duality, and substitute conditions on fundamental sets.
//
// Subcommands read one JSON document (file argument or stdin) and write a
// machine-readable report to stdout. Exit codes: 0 when every requested
// predicate is true, 1 when some predicate is decided false, 2 when the
// question could not be posed (parse error, kind mismatch, precondition).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stargale/stargale.hpp"

namespace {

using namespace stargale;

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int unposable(const std::string& what) {
    Json j = Json::object();
    j["error"] = what;
    emit(j);
    std::cerr << "error: " << what << "\n";
    return 2;
}

RationalVector parse_point_arg(const std::string& text) {
    RationalVector out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string tok = comma == std::string::npos ? text.substr(start)
                                                     : text.substr(start, comma - start);
        std::size_t a = tok.find_first_not_of(" \t");
        std::size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) throw InputError("empty coordinate in point argument");
        out.push_back(parse_rational(tok.substr(a, b - a + 1)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Integer parse_integer_arg(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("expected a positive integer, got '" + text + "'");
    return Integer(text);
}

// ---- witness serialization ----

Json json_of_substitute(const SubstituteWitness& w) {
    Json j = Json::object();
    j["member"] = mask_to_json(w.member);
    j["element"] = w.element;
    j["substitutes"] = w.substitutes;
    return j;
}

Json json_of_sep(const SepWitness& w) {
    Json j = Json::object();
    j["face_p"] = mask_to_json(w.face_p);
    j["face_q"] = mask_to_json(w.face_q);
    j["point"] = vector_to_report_json(w.point);
    j["coefficients_p"] = vector_to_report_json(w.coefficients_p);
    j["coefficients_q"] = vector_to_report_json(w.coefficients_q);
    return j;
}

Json json_of_imb(const ImbWitness& w) {
    Json j = Json::object();
    j["member_p"] = mask_to_json(w.member_p);
    j["member_q"] = mask_to_json(w.member_q);
    if (w.separating_functional)
        j["separating_functional"] = vector_to_report_json(*w.separating_functional);
    return j;
}

Json json_of_pseudomanifold(const PseudomanifoldCheck& c) {
    Json j = Json::object();
    if (c.witness_ridge) {
        j["ridge"] = mask_to_json(*c.witness_ridge);
        j["facet_count"] = c.witness_ridge_count;
    }
    if (!c.facet_graph_connected) j["component_count"] = c.facet_components.size();
    return j;
}

// ---- document -> domain objects with kind gating ----

FundamentalSet need_fundamental_set(const InputDocument& doc, const std::string& flag) {
    if (doc.kind == "fundamental_set" || doc.kind == "studiable_system")
        return to_fundamental_set(doc);
    throw InputError(flag + " needs a fundamental_set or studiable_system document, got kind '" +
                     doc.kind + "'");
}

StudiableSystem need_system(const InputDocument& doc, const std::string& flag) {
    if (doc.kind != "studiable_system")
        throw InputError(flag + " needs a studiable_system document, got kind '" + doc.kind + "'");
    return to_studiable_system(doc);
}

Realization need_realization(const InputDocument& doc, const std::string& flag) {
    if (doc.kind != "realization")
        throw InputError(flag + " needs a realization document, got kind '" + doc.kind + "'");
    return to_realization(doc);
}

SimplicialComplex complex_for_pseudomanifold(const InputDocument& doc) {
    if (doc.kind == "complex" || doc.kind == "realization") return to_complex(doc);
    return associated_complex(to_fundamental_set(doc));
}

// ---- subcommand bodies ----

int run_gale(const std::string& input) {
    InputDocument doc = parse_document(read_all(input));
    VectorConfiguration config = to_configuration(doc);
    GaleTransform gt = gale_transform(config);

    Report rep;
    Json vecs = Json::array();
    for (const auto& v : gt.vectors) vecs.push_back(vector_to_report_json(v));
    rep.add_certificate("source_dim", config.dim);
    rep.add_certificate("source_rank", gt.source_rank);
    rep.add_certificate("gale_dim", gt.dim);
    rep.add_certificate("gale_vectors", vecs);

    bool checked = config.size() <= 12;
    rep.add_certificate("duality_checked_exhaustively", checked);
    bool ok = true;
    if (checked) {
        DualityCheck dc = verify_gale_duality(config, gt);
        Json witness = nullptr;
        if (!dc.ok && dc.witness_subset) witness = mask_to_json(*dc.witness_subset);
        rep.add_verdict("duality", dc.ok, witness);
        ok = dc.ok;
    }

    if (doc.facets && is_pure(to_complex(doc))) {
        FundamentalSet e = fundamental_set_from_facet_complements(to_complex(doc));
        Json fs = Json::parse(serialize_document(document_from_fundamental_set(e)));
        rep.add_certificate("facet_complement_fundamental_set", fs);
    }

    emit(rep.to_json());
    return ok ? 0 : 1;
}

struct CheckFlags {
    bool se = false, seu = false, seu_minimal = false, pseudomanifold = false;
    bool gen = false, imb = false, imb_tilde = false, bosio = false;
    bool simpl = false, sep = false, weakly_starshaped = false, starshaped = false;
    bool crosscheck = false;

    bool any() const {
        return se || seu || seu_minimal || pseudomanifold || gen || imb || imb_tilde || bosio ||
               simpl || sep || weakly_starshaped || starshaped || crosscheck;
    }
};

void add_bosio_report(Report& rep, const BosioReport& b) {
    rep.add_verdict("gen", b.gen, b.gen_witness ? mask_to_json(*b.gen_witness) : Json(nullptr));
    rep.add_verdict("SE", b.se.ok,
                    b.se.violation ? json_of_substitute(*b.se.violation) : Json(nullptr));
    if (b.imb_evaluated)
        rep.add_verdict("Imb", b.imb.ok,
                        b.imb.witness ? json_of_imb(*b.imb.witness) : Json(nullptr));
    rep.add_verdict("bosio", b.bosio);
    rep.add_verdict("SEU", b.seu);
    if (b.seu_minimal_evaluated) rep.add_verdict("SEU_minimal", b.seu_minimal);
    if (b.bosio) {
        rep.add_theorem_check("studiable_implies_SEU", b.bosio && b.seu, b.bosio);
        if (b.seu_minimal_evaluated)
            rep.add_theorem_check("studiable_implies_SEU_minimal", b.bosio && b.seu_minimal,
                                  b.bosio);
    }
    if (b.theorem_violation) rep.add_certificate("violation_detail", b.violation_detail);
}

void add_crosscheck_report(Report& rep, const MainTheoremReport& m) {
    rep.add_certificate("starshaped", m.primal.ok);
    rep.add_certificate("gale_side", m.gale_side);
    rep.add_theorem_check("starshaped_equals_gale_side", m.starshaped, m.gale_side);
    rep.add_theorem_check("gen_equals_simpl", m.gen, m.primal.weak.simpl.ok);
    bool primal_weak = m.primal.weak.simpl.ok && m.primal.weak.sep && m.primal.weak.sep->ok;
    rep.add_theorem_check("gen_and_imb_equals_simpl_and_sep", m.gen && m.imb, primal_weak);
    rep.add_verdict("crosscheck", m.ok);
}

int run_check(const std::string& input, CheckFlags f) {
    InputDocument doc = parse_document(read_all(input));
    Report rep;

    if (!f.any()) {
        // Default battery: everything posable for the document's kind.
        if (doc.kind == "complex") {
            f.pseudomanifold = true;
        } else if (doc.kind == "fundamental_set") {
            FundamentalSet e = to_fundamental_set(doc);
            f.se = f.seu = true;
            if (e.n > e.M) f.seu_minimal = f.pseudomanifold = true;
        } else if (doc.kind == "studiable_system") {
            StudiableSystem s = to_studiable_system(doc);
            add_bosio_report(rep, check_bosio(s));
        } else {
            Realization r = to_realization(doc);
            StarshapedCheck sc = is_starshaped_at_origin(r);
            rep.add_verdict("simpl", sc.weak.simpl.ok,
                            sc.weak.simpl.witness_facet
                                ? mask_to_json(*sc.weak.simpl.witness_facet)
                                : Json(nullptr));
            if (sc.weak.sep)
                rep.add_verdict("Sep", sc.weak.sep->ok,
                                sc.weak.sep->witness ? json_of_sep(*sc.weak.sep->witness)
                                                     : Json(nullptr));
            rep.add_verdict("pseudomanifold", sc.pseudomanifold.ok,
                            sc.pseudomanifold.ok ? Json(nullptr)
                                                 : json_of_pseudomanifold(sc.pseudomanifold));
            rep.add_verdict("weakly_starshaped", sc.weak.ok);
            rep.add_verdict("starshaped", sc.ok);
        }
    }

    if (f.se) {
        SubstituteCheck c = check_SE(need_fundamental_set(doc, "--se"));
        rep.add_verdict("SE", c.ok, c.violation ? json_of_substitute(*c.violation) : Json(nullptr));
    }
    if (f.seu) {
        SubstituteCheck c = check_SEU(need_fundamental_set(doc, "--seu"));
        rep.add_verdict("SEU", c.ok,
                        c.violation ? json_of_substitute(*c.violation) : Json(nullptr));
    }
    if (f.seu_minimal) {
        SeuMinimalityCheck c = seu_minimality(need_fundamental_set(doc, "--seu-minimal"));
        Json witness = nullptr;
        if (!c.minimal) {
            witness = Json::object();
            witness["SEU"] = c.seu;
            witness["replacement_graph_connected"] = c.graph_connected;
        }
        rep.add_verdict("SEU_minimal", c.minimal, witness);
    }
    if (f.pseudomanifold) {
        PseudomanifoldCheck c = is_pseudomanifold(complex_for_pseudomanifold(doc));
        rep.add_verdict("pseudomanifold", c.ok,
                        c.ok ? Json(nullptr) : json_of_pseudomanifold(c));
    }
    if (f.gen) {
        GenCheck c = check_gen(need_system(doc, "--gen"));
        rep.add_verdict("gen", c.ok,
                        c.witness_member ? mask_to_json(*c.witness_member) : Json(nullptr));
    }
    if (f.imb) {
        ImbCheck c = check_imb(need_system(doc, "--imb"));
        rep.add_verdict("Imb", c.ok, c.witness ? json_of_imb(*c.witness) : Json(nullptr));
    }
    if (f.imb_tilde) {
        ImbCheck c = check_imb_tilde(need_system(doc, "--imb-tilde"));
        rep.add_verdict("Imb_tilde", c.ok, c.witness ? json_of_imb(*c.witness) : Json(nullptr));
    }
    if (f.bosio) add_bosio_report(rep, check_bosio(need_system(doc, "--bosio")));
    if (f.simpl) {
        SimplCheck c = check_simpl(need_realization(doc, "--simpl"));
        rep.add_verdict("simpl", c.ok,
                        c.witness_facet ? mask_to_json(*c.witness_facet) : Json(nullptr));
    }
    if (f.sep) {
        SepCheck c = check_Sep(need_realization(doc, "--sep"));
        rep.add_verdict("Sep", c.ok, c.witness ? json_of_sep(*c.witness) : Json(nullptr));
    }
    if (f.weakly_starshaped) {
        WeaklyStarshapedCheck c = check_weakly_starshaped(need_realization(doc, "--weakly-starshaped"));
        Json witness = nullptr;
        if (!c.ok) {
            if (!c.simpl.ok && c.simpl.witness_facet)
                witness = mask_to_json(*c.simpl.witness_facet);
            else if (c.sep && c.sep->witness)
                witness = json_of_sep(*c.sep->witness);
        }
        rep.add_verdict("weakly_starshaped", c.ok, witness);
    }
    if (f.starshaped) {
        StarshapedCheck c = is_starshaped_at_origin(need_realization(doc, "--starshaped"));
        Json witness = nullptr;
        if (!c.ok) {
            witness = Json::object();
            witness["failing_condition"] = c.failing_leg();
            if (c.failing_leg() == "simpl" && c.weak.simpl.witness_facet)
                witness["facet"] = mask_to_json(*c.weak.simpl.witness_facet);
            if (c.failing_leg() == "Sep" && c.weak.sep && c.weak.sep->witness)
                witness["sep"] = json_of_sep(*c.weak.sep->witness);
            if (c.failing_leg() == "pseudomanifold")
                witness["pseudomanifold"] = json_of_pseudomanifold(c.pseudomanifold);
        }
        rep.add_verdict("starshaped", c.ok, witness);
    }
    if (f.crosscheck)
        add_crosscheck_report(rep, main_theorem_crosscheck(need_realization(doc, "--crosscheck")));

    emit(rep.to_json());
    return rep.all_verdicts_true() && rep.all_theorem_checks_agree() ? 0 : 1;
}

int run_center(const std::string& input, const std::optional<std::string>& seed_text) {
    InputDocument doc = parse_document(read_all(input));
    Realization r = need_realization(doc, "center");
    KernelDescription k =
        seed_text ? kernel(r, parse_point_arg(*seed_text)) : kernel(r);

    Report rep;
    rep.add_verdict("kernel_nonempty", true);
    Json halfspaces = Json::array();
    for (const auto& h : k.halfspaces) {
        Json entry = Json::object();
        entry["facet"] = mask_to_json(h.facet);
        entry["alpha"] = vector_to_report_json(h.form.alpha);
        entry["beta"] = rational_to_report_json(h.form.beta);
        entry["orientation"] = h.orientation;
        halfspaces.push_back(std::move(entry));
    }
    rep.add_certificate("halfspaces", halfspaces);
    if (k.witness) {
        rep.add_certificate("witness", vector_to_report_json(*k.witness));
        rep.add_certificate("witness_margin", rational_to_report_json(k.witness_margin));
        rep.add_certificate("validated", kernel_contains(k, *k.witness));
    }
    emit(rep.to_json());
    return 0;
}

int run_rationalize(const std::string& input, const std::string& max_den_text) {
    InputDocument doc = parse_document(read_all(input));
    if (doc.kind != "realization")
        throw InputError("rationalize needs a realization document, got kind '" + doc.kind + "'");
    SimplicialComplex complex = to_complex(doc);
    try {
        RationalizeResult res =
            rationalize(complex, *doc.points, parse_integer_arg(max_den_text));
        std::cout << serialize_document(document_from_realization(res.realization));
        return 0;
    } catch (const RationalizeBudgetError& e) {
        Json j = Json::object();
        j["error"] = e.what();
        j["best_margin"] = format_rational(e.best_margin);
        j["best_margin_bound"] = e.best_margin_bound.str();
        j["max_denominator"] = e.max_denominator.str();
        emit(j);
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_decompose(const std::string& input) {
    InputDocument doc = parse_document(read_all(input));
    FundamentalSet e = (doc.kind == "complex" || doc.kind == "realization")
                           ? fundamental_set_from_facet_complements(to_complex(doc))
                           : to_fundamental_set(doc);

    Report rep;
    SubstituteCheck seu = check_SEU(e);
    rep.add_verdict("SEU", seu.ok,
                    seu.violation ? json_of_substitute(*seu.violation) : Json(nullptr));
    if (!seu.ok) {
        emit(rep.to_json());
        return 1;
    }
    std::vector<FundamentalSet> parts = decompose_SEU(e);
    rep.add_certificate("part_count", parts.size());
    Json docs = Json::array();
    for (const auto& part : parts)
        docs.push_back(Json::parse(serialize_document(document_from_fundamental_set(part))));
    rep.add_certificate("parts", docs);
    rep.add_certificate("already_minimal", parts.size() == 1);
    emit(rep.to_json());
    // A decomposable (non-minimal) input still decomposed successfully.
    return 0;
}

int run_plot(const std::string& input, const std::optional<std::string>& seed_text) {
    InputDocument doc = parse_document(read_all(input));
    Realization r = need_realization(doc, "plot");
    if (r.ambient_dim() != 2)
        throw InputError("plot needs a 2-dimensional realization, got dimension " +
                         std::to_string(r.ambient_dim()));
    std::optional<KernelDescription> k;
    try {
        k = seed_text ? kernel(r, parse_point_arg(*seed_text)) : kernel(r);
    } catch (const PreconditionError&) {
        // No kernel to shade: the seed is not a center of this realization.
    }
    std::cout << render_svg(r, k);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision procedures for starshaped simplicial spheres"};
    app.require_subcommand(1);

    std::string gale_input = "-";
    CLI::App* gale_cmd =
        app.add_subcommand("gale", "Gale transform with exhaustive duality verification");
    gale_cmd->add_option("input", gale_input, "JSON document (- for stdin)");

    std::string check_input = "-";
    CheckFlags flags;
    CLI::App* check_cmd = app.add_subcommand("check", "decide predicates and report witnesses");
    check_cmd->add_option("input", check_input, "JSON document (- for stdin)");
    check_cmd->add_flag("--se", flags.se, "substitute existence");
    check_cmd->add_flag("--seu", flags.seu, "substitute existence and uniqueness");
    check_cmd->add_flag("--seu-minimal", flags.seu_minimal, "SEU plus replacement-graph connectivity");
    check_cmd->add_flag("--pseudomanifold", flags.pseudomanifold,
                        "every ridge in exactly two facets, facet graph connected");
    check_cmd->add_flag("--gen", flags.gen, "every member's vectors form a basis");
    check_cmd->add_flag("--imb", flags.imb, "member cone interiors pairwise intersecting");
    check_cmd->add_flag("--imb-tilde", flags.imb_tilde, "open-simplex variant of --imb");
    check_cmd->add_flag("--bosio", flags.bosio, "gen + SE + Imb combined");
    check_cmd->add_flag("--simpl", flags.simpl, "every facet's points form a basis");
    check_cmd->add_flag("--sep", flags.sep, "face cone relative interiors pairwise disjoint");
    check_cmd->add_flag("--weakly-starshaped", flags.weakly_starshaped,
                        "every ray from the origin meets the realization at most once");
    check_cmd->add_flag("--starshaped", flags.starshaped,
                        "every ray from the origin meets the realization exactly once");
    check_cmd->add_flag("--crosscheck", flags.crosscheck,
                        "verify the primal and Gale-side characterizations agree");

    std::string center_input = "-";
    std::optional<std::string> center_seed;
    CLI::App* center_cmd =
        app.add_subcommand("center", "kernel halfspaces and an interior witness point");
    center_cmd->add_option("input", center_input, "JSON document (- for stdin)");
    center_cmd->add_option("--seed", center_seed,
                           "candidate center as comma-separated rationals (default: base point)");

    std::string rat_input = "-";
    std::string rat_max_den = "1000000000000";
    CLI::App* rat_cmd = app.add_subcommand(
        "rationalize", "round a decimal realization to integer coordinates, preserving all facet signs");
    rat_cmd->add_option("input", rat_input, "JSON document (- for stdin)");
    rat_cmd->add_option("--max-denominator", rat_max_den, "largest rounding denominator to try");

    std::string dec_input = "-";
    CLI::App* dec_cmd =
        app.add_subcommand("decompose", "split a fundamental set into SEU-minimal parts");
    dec_cmd->add_option("input", dec_input, "JSON document (- for stdin)");

    std::string plot_input = "-";
    std::optional<std::string> plot_seed;
    CLI::App* plot_cmd = app.add_subcommand("plot", "SVG of a planar realization, kernel shaded");
    plot_cmd->add_option("input", plot_input, "JSON document (- for stdin)");
    plot_cmd->add_option("--seed", plot_seed,
                         "center seed as comma-separated rationals (default: base point)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gale_cmd->parsed()) return run_gale(gale_input);
        if (check_cmd->parsed()) return run_check(check_input, flags);
        if (center_cmd->parsed()) return run_center(center_input, center_seed);
        if (rat_cmd->parsed()) return run_rationalize(rat_input, rat_max_den);
        if (dec_cmd->parsed()) return run_decompose(dec_input);
        if (plot_cmd->parsed()) return run_plot(plot_input, plot_seed);
    } catch (const InputError& e) {
        return unposable(e.what());
    } catch (const PreconditionError& e) {
        return unposable(e.what());
    } catch (const BudgetError& e) {
        return unposable(e.what());
    } catch (const TheoremViolation& e) {
        return unposable(std::string("internal consistency failure: ") + e.what());
    } catch (const std::exception& e) {
        return unposable(std::string("internal error: ") + e.what());
    }
    return 2;
}
