#pragma once

// JSON encodings of graphs, vertex sets, elements, families and reports.
// Output is canonical (sorted ids, canonical term order, fixed key order), so
// emitting a parsed value reproduces the same bytes.

#include <charconv>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relgraph/algebra.hpp"
#include "relgraph/lattice.hpp"
#include "relgraph/norms.hpp"
#include "relgraph/rep.hpp"

namespace relgraph::io {

using json = nlohmann::ordered_json;

namespace detail {

inline const json& field(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        throw parse_error(std::string(where) + ": missing field '" + key + "'");
    }
    return j.at(key);
}

inline std::string as_string(const json& j, const char* where) {
    if (!j.is_string()) {
        throw parse_error(std::string(where) + ": expected a string");
    }
    return j.get<std::string>();
}

// Shortest round-trip decimal for a double, then exact conversion.
inline mpq_class rational_from_number(const json& j) {
    if (j.is_number_integer()) {
        return mpq_class(mpz_class(std::to_string(j.get<long long>())));
    }
    if (j.is_number_unsigned()) {
        return mpq_class(mpz_class(std::to_string(j.get<unsigned long long>())));
    }
    double d = j.get<double>();
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    if (ec != std::errc()) {
        throw parse_error("unrepresentable number");
    }
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(end - buf)));
}

inline mpq_class rational_from_json(const json& j) {
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number()) {
        return rational_from_number(j);
    }
    throw parse_error("expected a number or a fraction string");
}

} // namespace detail

// ---------------------------------------------------------------------------
// graphs and vertex sets

inline GraphSpec graph_spec_from_json(const json& j) {
    if (!j.is_object()) {
        throw parse_error("graph: expected an object");
    }
    GraphSpec spec;
    const json& vs = detail::field(j, "vertices", "graph");
    const json& es = detail::field(j, "edges", "graph");
    if (!vs.is_array() || !es.is_array()) {
        throw parse_error("graph: 'vertices' and 'edges' must be arrays");
    }
    for (const auto& v : vs) {
        spec.vertices.push_back(detail::as_string(v, "graph vertex"));
    }
    for (const auto& e : es) {
        spec.edges.push_back({detail::as_string(detail::field(e, "id", "edge"), "edge id"),
                              detail::as_string(detail::field(e, "src", "edge"), "edge src"),
                              detail::as_string(detail::field(e, "dst", "edge"), "edge dst")});
    }
    return spec;
}

inline GraphHandle graph_from_json(const json& j) { return make_graph(graph_spec_from_json(j)); }

inline json to_json(const Graph& g) {
    json out = json::object();
    out["vertices"] = json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out["vertices"].push_back(g.vertex_name(v));
    }
    out["edges"] = json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        json edge = json::object();
        edge["id"] = g.edge_name(e);
        edge["src"] = g.vertex_name(g.src(e));
        edge["dst"] = g.vertex_name(g.dst(e));
        out["edges"].push_back(std::move(edge));
    }
    return out;
}

inline VertexSet vertex_set_from_json(const Graph& g, const json& j) {
    if (!j.is_array()) {
        throw parse_error("vertex set: expected an array of vertex ids");
    }
    VertexSet s = g.empty_set();
    for (const auto& v : j) {
        s.set(g.vertex(detail::as_string(v, "vertex set")));
    }
    return s;
}

inline json to_json(const Graph& g, const VertexSet& s) {
    json out = json::array();
    for (auto& name : vertex_names(g, s)) {
        out.push_back(std::move(name));
    }
    return out;
}

// ---------------------------------------------------------------------------
// elements

inline json to_json(const mpq_class& q) { return rational_to_string(q); }

inline json to_json(const GaussianRational& z) {
    json out = json::object();
    out["re"] = rational_to_string(z.re());
    out["im"] = rational_to_string(z.im());
    return out;
}

inline GaussianRational coefficient_from_json(const json& j) {
    if (j.is_object()) {
        mpq_class re = j.contains("re") ? detail::rational_from_json(j.at("re")) : mpq_class(0);
        mpq_class im = j.contains("im") ? detail::rational_from_json(j.at("im")) : mpq_class(0);
        return {re, im};
    }
    return {detail::rational_from_json(j), 0};
}

inline json to_json(const Graph& g, const Path& p) {
    if (p.length() == 0) {
        json out = json::object();
        out["vertex"] = g.vertex_name(p.source());
        return out;
    }
    json out = json::array();
    for (EdgeId e : p.edges()) {
        out.push_back(g.edge_name(e));
    }
    return out;
}

inline Path path_from_json(const Graph& g, const json& j) {
    if (j.is_object()) {
        return Path::vertex(g, g.vertex(detail::as_string(detail::field(j, "vertex", "path"), "path vertex")));
    }
    if (!j.is_array() || j.empty()) {
        throw parse_error("path: expected a nonempty edge array or {\"vertex\": id}");
    }
    std::vector<std::string> names;
    for (const auto& e : j) {
        names.push_back(detail::as_string(e, "path edge"));
    }
    return Path::of_names(g, names);
}

inline json to_json(const Element& a) {
    json out = json::array();
    for (const auto& [t, c] : a.terms()) {
        json term = json::object();
        term["mu"] = to_json(a.graph(), t.mu);
        term["nu"] = to_json(a.graph(), t.nu);
        term["coeff"] = to_json(c);
        out.push_back(std::move(term));
    }
    return out;
}

inline Element element_from_json(const GraphHandle& g, const json& j) {
    if (!j.is_array()) {
        throw parse_error("element: expected an array of terms");
    }
    Element a(g);
    for (const auto& t : j) {
        Path mu = path_from_json(*g, detail::field(t, "mu", "term"));
        Path nu = path_from_json(*g, detail::field(t, "nu", "term"));
        GaussianRational c = t.contains("coeff") ? coefficient_from_json(t.at("coeff")) : GaussianRational(1);
        a.accumulate({mu, nu}, c);
    }
    return a;
}

// ---------------------------------------------------------------------------
// families

inline Matrix matrix_from_json(const json& j, std::size_t dim, const std::string& what) {
    if (!j.is_array() || j.size() != dim) {
        throw domain_error("shape_mismatch", what + " must have " + std::to_string(dim) + " rows");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != dim) {
            throw domain_error("shape_mismatch", what + " must have " + std::to_string(dim) + " columns");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = coefficient_from_json(row[static_cast<std::size_t>(c)]).to_complex();
        }
    }
    return m;
}

inline CKFamily family_from_json(const json& j) {
    if (!j.is_object()) {
        throw parse_error("family: expected an object");
    }
    const json& d = detail::field(j, "dim", "family");
    if (!d.is_number_integer() || d.get<long long>() <= 0) {
        throw parse_error("family: 'dim' must be a positive integer");
    }
    CKFamily fam;
    fam.dim = static_cast<std::size_t>(d.get<long long>());
    for (const char* key : {"P", "S"}) {
        const json& block = detail::field(j, key, "family");
        if (!block.is_object()) {
            throw parse_error(std::string("family: '") + key + "' must be an object");
        }
        auto& target = key[0] == 'P' ? fam.P : fam.S;
        for (const auto& [name, m] : block.items()) {
            target[name] = matrix_from_json(m, fam.dim, std::string(key) + "[" + name + "]");
        }
    }
    if (j.contains("D") && !j.at("D").is_null()) {
        fam.D = matrix_from_json(j.at("D"), fam.dim, "D");
    }
    return fam;
}

inline json to_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            json z = json::object();
            z["re"] = m(r, c).real();
            z["im"] = m(r, c).imag();
            row.push_back(std::move(z));
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline json to_json(const CKFamily& fam) {
    json out = json::object();
    out["dim"] = fam.dim;
    out["P"] = json::object();
    for (const auto& [k, m] : fam.P) {
        out["P"][k] = to_json(m);
    }
    out["S"] = json::object();
    for (const auto& [k, m] : fam.S) {
        out["S"][k] = to_json(m);
    }
    if (fam.D) {
        out["D"] = to_json(*fam.D);
    }
    return out;
}

// ---------------------------------------------------------------------------
// reports

inline json to_json(const Graph& g, const NormReport& r) {
    json out = json::object();
    out["norm"] = r.norm;
    if (r.certificate) {
        json c = json::object();
        c["kind"] = NormCertificate::kind_name(r.certificate->kind);
        c["level"] = r.certificate->level;
        c["vertex"] = g.vertex_name(r.certificate->vertex);
        out["certificate"] = std::move(c);
    } else {
        out["certificate"] = nullptr;
    }
    out["exact_zero"] = r.exact_zero;
    return out;
}

inline json to_json(const RelationCheck& r) {
    json out = json::object();
    out["relation"] = r.name;
    out["pass"] = r.pass;
    out["residual"] = r.residual;
    out["worst"] = r.worst;
    return out;
}

inline json to_json(const FamilyReport& r) {
    json out = json::object();
    out["pass"] = r.relations_ok();
    out["relations"] = json::array();
    for (const auto& x : r.relations) {
        out["relations"].push_back(to_json(x));
    }
    if (r.has_grading()) {
        out["grading_pass"] = r.grading_ok();
        out["grading"] = json::array();
        for (const auto& x : r.grading) {
            out["grading"].push_back(to_json(x));
        }
    } else {
        out["grading_pass"] = nullptr;
    }
    return out;
}

inline json to_json(const Graph& g, const UniquenessVerdict& v) {
    json out = json::object();
    out["verdict"] = v.summary();
    out["faithful"] = v.faithful();
    out["gauge_witness"] = v.gauge_witness;
    out["kernel_condition"] = v.kernel_condition;
    out["coisometricity_condition"] = v.coisometric_condition;
    out["vanishing"] = to_json(g, v.vanishing);
    out["expected_vanishing"] = to_json(g, v.expected_vanishing);
    out["coisometricity_set"] = to_json(g, v.coisometric);
    return out;
}

inline json to_json(const Classification& c) {
    json out = json::object();
    out["case_i"] = c.case_i;
    out["case_ii"] = c.case_ii;
    out["simple_bijection"] = c.simple_bijection;
    return out;
}

inline json to_json(const Graph& g, const TPair& p) {
    json out = json::object();
    out["F"] = to_json(g, p.kernel);
    out["Fp"] = to_json(g, p.coisometric);
    return out;
}

inline json to_json(const Graph& g, const LatticeReport& r) {
    json out = json::object();
    out["elements"] = json::array();
    for (const auto& p : r.elements) {
        out["elements"].push_back(to_json(g, p));
    }
    out["covers"] = json::array();
    for (const auto& [lo, hi] : r.covers) {
        out["covers"].push_back(json::array({lo, hi}));
    }
    out["simple_lattice"] = json::array();
    for (const auto& f : r.simple_lattice) {
        out["simple_lattice"].push_back(to_json(g, f));
    }
    out["classification"] = to_json(r.classification);
    return out;
}

// Hasse diagram; one node per T-pair, one edge per cover (lower -> upper).
inline std::string to_dot(const Graph& g, const LatticeReport& r) {
    auto label = [&](const VertexSet& s) {
        std::string out = "{";
        auto names = vertex_names(g, s);
        for (std::size_t k = 0; k < names.size(); ++k) {
            out += (k ? "," : "") + names[k];
        }
        return out + "}";
    };
    auto escape = [](std::string s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') {
                out += '\\';
            }
            out += c;
        }
        return out;
    };
    std::string dot = "digraph tpairs {\n  rankdir=BT;\n";
    for (std::size_t k = 0; k < r.elements.size(); ++k) {
        dot += "  n" + std::to_string(k) + " [label=\"" +
               escape("(" + label(r.elements[k].kernel) + ", " + label(r.elements[k].coisometric) + ")") +
               "\"];\n";
    }
    for (const auto& [lo, hi] : r.covers) {
        dot += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
    }
    return dot + "}\n";
}

} // namespace relgraph::io
