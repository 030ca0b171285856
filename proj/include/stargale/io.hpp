#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stargale/bosio.hpp"
#include "stargale/complexes.hpp"
#include "stargale/gale.hpp"
#include "stargale/geometry.hpp"

namespace stargale {

using Json = nlohmann::ordered_json;

/// Exact JSON number ingestion: integers, "a/b" strings, or decimal strings
/// like "1.25" (read as 125/100). Raw JSON floats are rejected outright so
/// no binary floating-point value ever enters the pipeline.
inline Rational rational_from_json(const Json& v) {
    if (v.is_number_float())
        throw InputError("floating-point JSON numbers are not accepted; quote the value as a "
                         "decimal string like \"1.25\"");
    if (v.is_number_unsigned()) return Rational(Integer(v.get<std::uint64_t>()));
    if (v.is_number_integer()) return Rational(Integer(v.get<std::int64_t>()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw InputError("expected an integer or a rational string, got " + std::string(v.type_name()));
}

/// Canonical document form: plain JSON integer when the value is integral
/// and fits, "a/b" string otherwise.
inline Json rational_to_document_json(const Rational& q) {
    if (den(q) == 1 && num(q) >= std::numeric_limits<std::int64_t>::min() &&
        num(q) <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(num(q));
    return format_rational(q);
}

/// Report form: always the exact "a/b" string (plain "a" when integral),
/// never a decimal, so certificates are unambiguous.
inline Json rational_to_report_json(const Rational& q) { return format_rational(q); }

inline Json vector_to_report_json(const RationalVector& v) {
    Json arr = Json::array();
    for (const auto& c : v) arr.push_back(rational_to_report_json(c));
    return arr;
}

inline Json mask_to_json(Mask m) {
    Json arr = Json::array();
    for (int v : mask_vertices(m)) arr.push_back(v);
    return arr;
}

/// One schema for all four kinds:
/// {"kind": ..., "n": int, "M": int?, "facets"/"members": [[int]],
///  "points"/"lambda": [[rational]], "base_point": [rational]?}
struct InputDocument {
    std::string kind;
    std::size_t n = 0;
    std::optional<std::size_t> M;
    std::optional<std::vector<std::vector<int>>> facets;
    std::optional<std::vector<std::vector<int>>> members;
    std::optional<std::vector<RationalVector>> points;
    std::optional<std::vector<RationalVector>> lambda;
    std::optional<RationalVector> base_point;
};

namespace detail {

inline std::vector<std::vector<int>> vertex_lists_from_json(const Json& v, const char* field) {
    if (!v.is_array()) throw InputError(std::string(field) + " must be an array of arrays");
    std::vector<std::vector<int>> out;
    for (const auto& row : v) {
        if (!row.is_array()) throw InputError(std::string(field) + " entries must be arrays");
        std::vector<int> verts;
        for (const auto& x : row) {
            if (!x.is_number_integer() && !x.is_number_unsigned())
                throw InputError(std::string(field) + " entries must contain integers");
            verts.push_back(x.get<int>());
        }
        out.push_back(std::move(verts));
    }
    return out;
}

inline std::vector<RationalVector> vectors_from_json(const Json& v, const char* field) {
    if (!v.is_array()) throw InputError(std::string(field) + " must be an array of arrays");
    std::vector<RationalVector> out;
    for (const auto& row : v) {
        if (!row.is_array()) throw InputError(std::string(field) + " entries must be arrays");
        RationalVector vec;
        for (const auto& x : row) vec.push_back(rational_from_json(x));
        out.push_back(std::move(vec));
    }
    return out;
}

inline std::vector<std::vector<int>> normalized_vertex_lists(std::vector<std::vector<int>> lists) {
    for (auto& l : lists) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    // Sets sort as their bitmask values would: highest vertex decides first.
    std::sort(lists.begin(), lists.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
              });
    lists.erase(std::unique(lists.begin(), lists.end()), lists.end());
    return lists;
}

}  // namespace detail

inline InputDocument parse_document(const Json& j) {
    if (!j.is_object()) throw InputError("document must be a JSON object");
    InputDocument doc;
    if (!j.contains("kind") || !j["kind"].is_string())
        throw InputError("document needs a string \"kind\"");
    doc.kind = j["kind"].get<std::string>();
    if (doc.kind != "realization" && doc.kind != "fundamental_set" &&
        doc.kind != "studiable_system" && doc.kind != "complex")
        throw InputError("unknown kind '" + doc.kind + "'");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw InputError("document needs an integer \"n\"");
    doc.n = j["n"].get<std::size_t>();
    if (j.contains("M")) doc.M = j["M"].get<std::size_t>();
    if (j.contains("facets")) doc.facets = detail::vertex_lists_from_json(j["facets"], "facets");
    if (j.contains("members"))
        doc.members = detail::vertex_lists_from_json(j["members"], "members");
    if (j.contains("points")) doc.points = detail::vectors_from_json(j["points"], "points");
    if (j.contains("lambda")) doc.lambda = detail::vectors_from_json(j["lambda"], "lambda");
    if (j.contains("base_point")) {
        if (!j["base_point"].is_array()) throw InputError("base_point must be an array");
        RationalVector bp;
        for (const auto& x : j["base_point"]) bp.push_back(rational_from_json(x));
        doc.base_point = std::move(bp);
    }

    if (doc.kind == "complex" && !doc.facets) throw InputError("kind complex needs \"facets\"");
    if (doc.kind == "fundamental_set" && (!doc.members || !doc.M))
        throw InputError("kind fundamental_set needs \"members\" and \"M\"");
    if (doc.kind == "realization" && !doc.points)
        throw InputError("kind realization needs \"points\"");
    if (doc.kind == "studiable_system" && (!doc.members || !doc.M || !doc.lambda))
        throw InputError("kind studiable_system needs \"members\", \"M\" and \"lambda\"");
    return doc;
}

inline InputDocument parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return parse_document(j);
}

/// Canonical serialization: fixed key order, vertex lists sorted and
/// deduplicated, numbers in canonical form, two-space indentation, final
/// newline. Serializing a parsed canonical document is byte-identical.
inline std::string serialize_document(const InputDocument& doc) {
    Json j = Json::object();
    j["kind"] = doc.kind;
    j["n"] = doc.n;
    if (doc.M) j["M"] = *doc.M;
    if (doc.facets) {
        Json arr = Json::array();
        for (const auto& l : detail::normalized_vertex_lists(*doc.facets)) arr.push_back(l);
        j["facets"] = std::move(arr);
    }
    if (doc.members) {
        Json arr = Json::array();
        for (const auto& l : detail::normalized_vertex_lists(*doc.members)) arr.push_back(l);
        j["members"] = std::move(arr);
    }
    if (doc.points) {
        Json arr = Json::array();
        for (const auto& p : *doc.points) {
            Json row = Json::array();
            for (const auto& c : p) row.push_back(rational_to_document_json(c));
            arr.push_back(std::move(row));
        }
        j["points"] = std::move(arr);
    }
    if (doc.lambda) {
        Json arr = Json::array();
        for (const auto& p : *doc.lambda) {
            Json row = Json::array();
            for (const auto& c : p) row.push_back(rational_to_document_json(c));
            arr.push_back(std::move(row));
        }
        j["lambda"] = std::move(arr);
    }
    if (doc.base_point) {
        Json row = Json::array();
        for (const auto& c : *doc.base_point) row.push_back(rational_to_document_json(c));
        j["base_point"] = std::move(row);
    }
    return j.dump(2) + "\n";
}

// ---- document -> domain objects ----

inline SimplicialComplex to_complex(const InputDocument& doc) {
    if (!doc.facets) throw InputError("document has no \"facets\"");
    return closure_lists(*doc.facets, doc.n);
}

inline Realization to_realization(const InputDocument& doc) {
    if (doc.kind != "realization") throw InputError("kind '" + doc.kind + "' is not a realization");
    if (!doc.facets)
        throw InputError("realization document needs \"facets\" for this operation");
    RationalVector base;
    if (doc.base_point) base = *doc.base_point;
    return Realization(to_complex(doc), *doc.points, std::move(base));
}

inline VectorConfiguration to_configuration(const InputDocument& doc) {
    if (!doc.points) throw InputError("document has no \"points\"");
    if (doc.points->empty()) throw InputError("document has an empty point list");
    return VectorConfiguration((*doc.points)[0].size(), *doc.points);
}

inline FundamentalSet to_fundamental_set(const InputDocument& doc) {
    if (doc.kind != "fundamental_set" && doc.kind != "studiable_system")
        throw InputError("kind '" + doc.kind + "' carries no fundamental set");
    return FundamentalSet::from_lists(*doc.M, doc.n, *doc.members);
}

inline StudiableSystem to_studiable_system(const InputDocument& doc) {
    if (doc.kind != "studiable_system")
        throw InputError("kind '" + doc.kind + "' is not a studiable system");
    return StudiableSystem(to_fundamental_set(doc), *doc.lambda);
}

// ---- domain objects -> documents ----

inline InputDocument document_from_realization(const Realization& r) {
    InputDocument doc;
    doc.kind = "realization";
    doc.n = r.complex.n;
    std::vector<std::vector<int>> facets;
    for (Mask f : r.complex.facets) facets.push_back(mask_vertices(f));
    doc.facets = std::move(facets);
    doc.points = r.points;
    bool base_nonzero = false;
    for (const auto& c : r.base_point)
        if (c != 0) base_nonzero = true;
    if (base_nonzero) doc.base_point = r.base_point;
    return doc;
}

inline InputDocument document_from_complex(const SimplicialComplex& c) {
    InputDocument doc;
    doc.kind = "complex";
    doc.n = c.n;
    std::vector<std::vector<int>> facets;
    for (Mask f : c.facets) facets.push_back(mask_vertices(f));
    doc.facets = std::move(facets);
    return doc;
}

inline InputDocument document_from_fundamental_set(const FundamentalSet& e) {
    InputDocument doc;
    doc.kind = "fundamental_set";
    doc.n = e.n;
    doc.M = e.M;
    std::vector<std::vector<int>> members;
    for (Mask m : e.members) members.push_back(mask_vertices(m));
    doc.members = std::move(members);
    return doc;
}

inline InputDocument document_from_studiable_system(const StudiableSystem& s) {
    InputDocument doc = document_from_fundamental_set(s.fundamental_set);
    doc.kind = "studiable_system";
    doc.lambda = s.lambda;
    return doc;
}

/// Machine-readable verification report: named verdicts with witnesses,
/// echoed certificates, and asserted equivalences with both sides spelled
/// out. Every false verdict carries its witness.
struct Report {
    Json verdicts = Json::object();
    Json certificates = Json::object();
    Json theorem_checks = Json::array();

    void add_verdict(const std::string& name, bool value, Json witness = nullptr) {
        Json entry = Json::object();
        entry["value"] = value;
        if (!witness.is_null()) entry["witness"] = std::move(witness);
        verdicts[name] = std::move(entry);
    }

    void add_certificate(const std::string& name, Json value) {
        certificates[name] = std::move(value);
    }

    void add_theorem_check(const std::string& name, bool lhs, bool rhs) {
        Json entry = Json::object();
        entry["name"] = name;
        entry["lhs"] = lhs;
        entry["rhs"] = rhs;
        entry["agree"] = lhs == rhs;
        theorem_checks.push_back(std::move(entry));
    }

    bool all_verdicts_true() const {
        for (const auto& [name, entry] : verdicts.items()) {
            (void)name;
            if (!entry["value"].get<bool>()) return false;
        }
        return true;
    }

    bool all_theorem_checks_agree() const {
        for (const auto& entry : theorem_checks)
            if (!entry["agree"].get<bool>()) return false;
        return true;
    }

    Json to_json() const {
        Json j = Json::object();
        j["verdicts"] = verdicts;
        if (!certificates.empty()) j["certificates"] = certificates;
        if (!theorem_checks.empty()) j["theorem_checks"] = theorem_checks;
        return j;
    }
};

}  // namespace stargale
