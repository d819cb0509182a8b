// relgraph: command-line front end. JSON on stdout, errors as JSON on stderr.
// Exit codes: 0 ok, 1 domain error, 2 parse / I/O / usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "relgraph/relgraph.hpp"

using namespace relgraph;
using io::json;

namespace {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim_left(const std::string& s) {
    auto k = s.find_first_not_of(" \t\r\n");
    return k == std::string::npos ? std::string() : s.substr(k);
}

// Inline text if it looks like JSON (starts with one of `openers`), else a file.
std::string inline_or_file(const std::string& arg, const char* openers) {
    std::string t = trim_left(arg);
    if (!t.empty() && std::string(openers).find(t[0]) != std::string::npos) {
        return t;
    }
    return slurp(arg);
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

struct Args {
    std::string graph;
    std::string ideal = "[]";
    std::string set = "[]";
    std::string element;
    std::string other;
    std::string family;
    std::size_t length = 0;
    std::size_t times = 1;
    bool dot = false;
    bool json_out = true;
    std::uint64_t seed = 0;

    GraphHandle g;

    GraphHandle load_graph() {
        if (!g) {
            g = io::graph_from_json(parse_json(inline_or_file(graph, "{")));
        }
        return g;
    }
    VertexSet load_set(const std::string& arg) {
        return io::vertex_set_from_json(*load_graph(), parse_json(inline_or_file(arg, "[")));
    }
    VertexSet V() { return load_set(ideal); }
    VertexSet F() { return load_set(set); }

    // JSON term list, or the expression sugar (inline or from a file)
    Element load_element(const std::string& arg) {
        std::string t = trim_left(arg);
        std::string text;
        if (!t.empty() && t[0] == '[') {
            text = t;
        } else if (std::ifstream(arg).good()) {
            text = trim_left(slurp(arg));
        } else {
            text = t;
        }
        if (!text.empty() && text[0] == '[') {
            return io::element_from_json(load_graph(), parse_json(text));
        }
        return parse_expression(load_graph(), text);
    }
    Element a() { return load_element(element); }
    Element b() { return load_element(other); }

    CheckedFamily checked() {
        return CheckedFamily::certify(io::family_from_json(parse_json(inline_or_file(family, "{"))), load_graph());
    }
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_error(const std::string& kind, const std::string& message) {
    json e = json::object();
    e["error"] = kind;
    e["message"] = message;
    std::cerr << e.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relative graph algebras: paths, ideals, norms and representations"};
    app.require_subcommand(1);
    Args args;

    auto graph_opt = [&](CLI::App* c) {
        c->add_option("-g,--graph", args.graph, "graph JSON file (or inline object)")->required();
    };
    auto ideal_opt = [&](CLI::App* c) {
        c->add_option("-V,--ideal", args.ideal, "vertex set JSON (inline or file)");
    };
    auto element_opt = [&](CLI::App* c) {
        c->add_option("-a,--element", args.element, "element JSON, expression, or file")->required();
    };
    auto family_opt = [&](CLI::App* c) {
        c->add_option("-f,--family", args.family, "family JSON file (or inline object)")->required();
    };
    app.add_flag("--json", args.json_out, "JSON output (default)");
    app.add_option("--seed", args.seed, "seed for randomized tooling (unused by library commands)");

    std::map<std::string, std::function<void()>> actions;
    auto cmd = [&](const std::string& name, const std::string& help, std::function<void()> run) {
        CLI::App* c = app.add_subcommand(name, help);
        actions[name] = std::move(run);
        return c;
    };

    auto* validate_cmd = cmd("validate", "validate a graph and print it canonically",
                             [&] { emit(io::to_json(*args.load_graph())); });
    graph_opt(validate_cmd);

    auto* paths_cmd = cmd("paths", "list the paths of a given length", [&] {
        auto g = args.load_graph();
        json out = json::array();
        for (const auto& p : paths_of_length(*g, args.length)) {
            out.push_back(io::to_json(*g, p));
        }
        emit(out);
    });
    graph_opt(paths_cmd);
    paths_cmd->add_option("-n,--length", args.length, "path length")->required();

    auto* hered_cmd = cmd("hereditary", "hereditary closure of a vertex set",
                          [&] {
                              auto g = args.load_graph();
                              emit(io::to_json(*g, hereditary_closure(*g, args.F())));
                          });
    graph_opt(hered_cmd);
    hered_cmd->add_option("-F,--set", args.set, "vertex set JSON")->required();

    auto* sat_cmd = cmd("saturate", "V-saturation of a vertex set", [&] {
        auto g = args.load_graph();
        emit(io::to_json(*g, v_saturation(*g, args.F(), args.V())));
    });
    graph_opt(sat_cmd);
    ideal_opt(sat_cmd);
    sat_cmd->add_option("-F,--set", args.set, "vertex set JSON")->required();

    auto* reduce_cmd = cmd("reduce", "remove the vertices forced to vanish", [&] {
        auto g = args.load_graph();
        Reduction r = reduction(*g, args.V());
        json out = json::object();
        out["removed"] = io::to_json(*g, r.removed);
        out["graph"] = io::to_json(r.graph);
        out["ideal"] = io::to_json(r.graph, r.ideal);
        emit(out);
    });
    graph_opt(reduce_cmd);
    ideal_opt(reduce_cmd);

    auto* ideals_cmd = cmd("ideals", "hereditary V-saturated vertex sets", [&] {
        auto g = args.load_graph();
        json out = json::array();
        for (const auto& f : enumerate_hereditary_saturated(*g, args.V())) {
            out.push_back(io::to_json(*g, f));
        }
        emit(out);
    });
    graph_opt(ideals_cmd);
    ideal_opt(ideals_cmd);

    auto* tpairs_cmd = cmd("tpairs", "gauge-invariant ideals as T-pairs", [&] {
        auto g = args.load_graph();
        LatticeReport r = enumerate_tpairs(*g, args.V());
        if (args.dot) {
            std::cout << io::to_dot(*g, r);
            return;
        }
        json out = json::array();
        for (const auto& p : r.elements) {
            out.push_back(io::to_json(*g, p));
        }
        emit(out);
    });
    graph_opt(tpairs_cmd);
    ideal_opt(tpairs_cmd);
    tpairs_cmd->add_flag("--dot", args.dot, "Hasse diagram in DOT instead of JSON");

    auto* classify_cmd = cmd("classify", "T-pair lattice with covers and classification", [&] {
        auto g = args.load_graph();
        LatticeReport r = enumerate_tpairs(*g, args.V());
        if (args.dot) {
            std::cout << io::to_dot(*g, r);
            return;
        }
        emit(io::to_json(*g, r));
    });
    graph_opt(classify_cmd);
    ideal_opt(classify_cmd);
    classify_cmd->add_flag("--dot", args.dot, "Hasse diagram in DOT instead of JSON");

    auto* decomp_cmd = cmd("decompose", "ideal and quotient pieces for a hereditary set", [&] {
        auto g = args.load_graph();
        StructureDecomposition d = structure_decomposition(*g, args.V(), args.F());
        json out = json::object();
        out["saturation"] = io::to_json(*g, d.saturation);
        out["ideal_graph"] = io::to_json(d.sub);
        out["ideal_relations"] = io::to_json(d.sub, d.sub_ideal);
        out["quotient_graph"] = io::to_json(d.quot);
        out["quotient_relations"] = io::to_json(d.quot, d.quot_ideal);
        emit(out);
    });
    graph_opt(decomp_cmd);
    ideal_opt(decomp_cmd);
    decomp_cmd->add_option("-F,--set", args.set, "hereditary vertex set JSON")->required();

    auto* mul_cmd = cmd("mul", "product a*b", [&] { emit(io::to_json(star_lambda(args.a(), args.b()))); });
    graph_opt(mul_cmd);
    element_opt(mul_cmd);
    mul_cmd->add_option("-b,--other", args.other, "right factor")->required();

    auto* adj_cmd = cmd("adjoint", "adjoint a*", [&] { emit(io::to_json(adjoint(args.a()))); });
    graph_opt(adj_cmd);
    element_opt(adj_cmd);

    auto* tensor_cmd = cmd("tensor", "right tensoring by the identity, t times",
                           [&] { emit(io::to_json(right_tensor(args.a(), args.times))); });
    graph_opt(tensor_cmd);
    element_opt(tensor_cmd);
    tensor_cmd->add_option("-t,--times", args.times, "number of steps (default 1)");

    auto* norm_cmd = cmd("norm", "norm of a homogeneous element with certificate", [&] {
        Element a = args.a();
        emit(io::to_json(a.graph(), seminorm_homogeneous(a, args.V())));
    });
    graph_opt(norm_cmd);
    ideal_opt(norm_cmd);
    element_opt(norm_cmd);

    auto* zero_cmd = cmd("zero", "exact zero test", [&] {
        Element a = args.a();
        json out = json::object();
        out["exact_zero"] = is_zero(a, args.V());
        emit(out);
    });
    graph_opt(zero_cmd);
    ideal_opt(zero_cmd);
    element_opt(zero_cmd);

    auto* bound_cmd = cmd("bound", "upper bound on the norm of any element", [&] {
        Element a = args.a();
        json out = json::object();
        out["bound"] = norm_upper_bound(a, args.V());
        emit(out);
    });
    graph_opt(bound_cmd);
    ideal_opt(bound_cmd);
    element_opt(bound_cmd);

    auto* check_cmd = cmd("check-family", "check the Toeplitz relations on matrices", [&] {
        auto g = args.load_graph();
        CKFamily fam = io::family_from_json(parse_json(inline_or_file(args.family, "{")));
        emit(io::to_json(check_family(fam, *g)));
    });
    graph_opt(check_cmd);
    family_opt(check_cmd);

    auto* coiso_cmd = cmd("coiso", "vertices where the family is coisometric",
                          [&] { emit(io::to_json(*args.load_graph(), coisometricity_set(args.checked()))); });
    graph_opt(coiso_cmd);
    family_opt(coiso_cmd);

    auto* eval_cmd = cmd("eval", "evaluate an element in a family", [&] {
        CheckedFamily fam = args.checked();
        emit(io::to_json(evaluate(fam, args.a())));
    });
    graph_opt(eval_cmd);
    family_opt(eval_cmd);
    element_opt(eval_cmd);

    auto* uniq_cmd = cmd("uniqueness", "check the uniqueness-theorem hypotheses", [&] {
        CheckedFamily fam = args.checked();
        emit(io::to_json(fam.graph(), uniqueness_check(fam, args.V())));
    });
    graph_opt(uniq_cmd);
    family_opt(uniq_cmd);
    ideal_opt(uniq_cmd);

    auto* dim_cmd = cmd("acyclic-dim", "linear dimension of the algebra of an acyclic graph", [&] {
        auto g = args.load_graph();
        json out = json::object();
        out["dimension"] = acyclic_dimension(g, args.V());
        emit(out);
    });
    graph_opt(dim_cmd);
    ideal_opt(dim_cmd);

    auto* ann_cmd = cmd("annihilator", "vertex set of the annihilator ideal",
                        [&] {
                            auto g = args.load_graph();
                            emit(io::to_json(*g, annihilator(*g, args.V())));
                        });
    graph_opt(ann_cmd);
    ideal_opt(ann_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage", e.what());
        return 2;
    }

    try {
        for (const auto* sub : app.get_subcommands()) {
            actions.at(sub->get_name())();
        }
    } catch (const domain_error& e) {
        emit_error(e.kind(), e.what());
        return 1;
    } catch (const parse_error& e) {
        emit_error("parse_error", e.what());
        return 2;
    } catch (const io_error& e) {
        emit_error("io_error", e.what());
        return 2;
    } catch (const json::exception& e) {
        emit_error("parse_error", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 3;
    }
    return 0;
}
