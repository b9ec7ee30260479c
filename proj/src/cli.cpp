#include "simgrav/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "simgrav/complex.hpp"
#include "simgrav/constraints.hpp"
#include "simgrav/geometry.hpp"
#include "simgrav/io.hpp"
#include "simgrav/measure.hpp"
#include "simgrav/verify.hpp"

namespace simgrav::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string complex_path;
    std::string lengths;
    std::optional<double> tolerance;
    std::string suite = "all";
    std::optional<double> coefficient;
    double newton_g = 1.0;
    std::string local_measure = "product-dl2";
    std::string output;
    std::string gen_kind;
    std::size_t gen_k = 3;
};

class ValidationFailure : public std::runtime_error {
public:
    ValidationFailure(std::string what, Json report) : std::runtime_error(std::move(what)), report(std::move(report)) {}
    Json report;
};

Json to_json(const Simplex& s) {
    Json a = Json::array();
    for (VertexId v : s) a.push_back(v);
    return a;
}

Json to_json(const Constraint& c) {
    Json j;
    j["face"] = to_json(c.face);
    j["edge"] = to_json(c.edge);
    return j;
}

Json counts_json(const SimplicialComplex& c) {
    Json j = Json::array();
    for (int d = 0; d <= 4; ++d) j.push_back(c.count(d));
    return j;
}

Json validation_json(const ValidationReport& v) {
    Json j;
    j["valid"] = v.valid;
    j["closed"] = v.closed;
    j["boundary_three_faces"] = v.boundary_three_faces;
    j["open_triangles"] = v.open_triangles;
    j["violations"] = v.violations;
    return j;
}

struct Loaded {
    ComplexFile file;
    SimplicialComplex complex;
};

Loaded load(const Options& o, bool require_valid) {
    if (o.complex_path.empty()) throw ParseError("--complex <path> is required");
    ComplexFile file = read_complex_file(o.complex_path);
    SimplicialComplex complex = [&] {
        try {
            return build_complex(file.simplices);
        } catch (const StructureError& e) {
            throw ParseError(e.what());
        }
    }();
    if (!o.lengths.empty()) apply_lengths_argument(file, o.lengths, complex);
    if (require_valid) {
        const auto v = validate(complex);
        if (!v.valid) {
            Json j;
            j["command"] = "validate";
            j["counts"] = counts_json(complex);
            j.update(validation_json(v));
            throw ValidationFailure("complex failed validation", j);
        }
    }
    return {std::move(file), std::move(complex)};
}

SquaredLengthMap require_global(const Loaded& l) {
    auto m = global_lengths(l.file, l.complex);
    if (!m) throw ParseError("squared lengths do not cover every edge (use length lines or --lengths)");
    return *m;
}

Json cmd_validate(const Options& o) {
    const auto l = load(o, false);
    const auto v = validate(l.complex);
    Json j;
    j["command"] = "validate";
    j["counts"] = counts_json(l.complex);
    j.update(validation_json(v));
    if (!v.valid) throw ValidationFailure("complex failed validation", j);
    return j;
}

Json cmd_info(const Options& o) {
    const auto l = load(o, false);
    Json j;
    j["command"] = "info";
    j["counts"] = counts_json(l.complex);
    j["interior_three_faces"] = l.complex.interior_three_faces().size();
    j["boundary_three_faces"] = l.complex.boundary_three_faces().size();

    Json tris = Json::array();
    std::map<std::size_t, std::size_t> closed_lengths;
    for (const auto& t : l.complex.faces(2)) {
        Json row;
        row["triangle"] = to_json(t);
        try {
            const auto s = triangle_star(l.complex, t);
            row["star_length"] = s.length();
            row["closed"] = s.closed;
            if (s.closed) ++closed_lengths[s.length()];
        } catch (const StructureError& e) {
            row["error"] = e.what();
        }
        tris.push_back(row);
    }
    Json hist = Json::object();
    for (auto [n, count] : closed_lengths) hist[std::to_string(n)] = count;
    j["closed_star_lengths"] = hist;
    j["triangles"] = tris;

    Json edges = Json::array();
    for (const auto& e : l.complex.faces(1)) {
        const auto g = edge_star_graph(l.complex, e);
        Json row;
        row["edge"] = to_json(e);
        row["nodes"] = g.nodes.size();
        row["arcs"] = g.arcs.size();
        row["dangling"] = g.dangling.size();
        row["components"] = g.components;
        row["cycle_rank"] = g.cycle_rank();
        row["sphere_link"] = edge_link_is_closed_sphere(l.complex, e);
        edges.push_back(row);
    }
    j["edges"] = edges;
    return j;
}

Json cmd_volumes(const Options& o) {
    const auto l = load(o, false);
    const auto lengths = require_global(l);
    Json j;
    j["command"] = "volumes";
    for (int d = 1; d <= 4; ++d) {
        Json list = Json::array();
        for (const auto& s : l.complex.faces(d)) {
            Json row;
            row["simplex"] = to_json(s);
            row["volume"] = simplex_volume(s, lengths);
            list.push_back(row);
        }
        j["dim" + std::to_string(d)] = list;
    }
    return j;
}

Json cmd_action(const Options& o) {
    const auto l = load(o, true);
    ActionParams params{o.newton_g, o.coefficient};
    Json j;
    j["command"] = "action";
    j["coefficient"] = params.overall_coefficient();
    const auto global = global_lengths(l.file, l.complex);
    const auto split_lengths = per_simplex_lengths(l.file, l.complex);
    if (!global && !split_lengths) throw ParseError("no squared lengths supplied");
    j["conformed"] = l.file.simplex_lengths.empty();
    if (global) {
        Json deficits = Json::array();
        for (const auto& t : l.complex.faces(2)) {
            if (!triangle_star(l.complex, t).closed) continue;
            const auto a = angle_data(l.complex, t, *global);
            Json row;
            row["triangle"] = to_json(t);
            row["deficit"] = a.deficit;
            row["area"] = a.area;
            deficits.push_back(row);
        }
        j["global"] = regge_action_global(l.complex, *global, params);
        j["deficits"] = deficits;
    }
    if (split_lengths) j["split"] = regge_action_split(l.complex, *split_lengths, params);
    return j;
}

Json cmd_constraints(const Options& o) {
    const auto l = load(o, true);
    const ExtendedVariables vars(l.complex);
    const auto all = enumerate_constraints(l.complex);
    const auto kept = select_kept(l.complex);
    const auto full = constraint_matrix(all, vars);
    const auto kept_matrix = constraint_matrix(kept.kept, vars);

    Json j;
    j["command"] = "constraints";
    j["variables"] = vars.size();
    j["global_edges"] = l.complex.count(1);
    j["constraints"] = all.size();
    j["kept"] = kept.kept.size();
    j["redundant"] = kept.redundant.size();
    j["rank"] = constraint_rank(full);
    j["rank_kept"] = constraint_rank(kept_matrix);
    j["rank_floating_check"] = floating_rank(full);

    Json per_edge = Json::array();
    for (const auto& sel : kept.per_edge) {
        Json row;
        row["edge"] = to_json(sel.edge);
        row["nodes"] = sel.graph.nodes.size();
        row["arcs"] = sel.graph.arcs.size();
        row["kept"] = sel.forest_arcs.size();
        row["redundant"] = sel.redundant_arcs.size();
        per_edge.push_back(row);
    }
    j["per_edge"] = per_edge;
    Json kl = Json::array(), rl = Json::array();
    for (const auto& c : kept.kept) kl.push_back(to_json(c));
    for (const auto& c : kept.redundant) rl.push_back(to_json(c));
    j["kept_list"] = kl;
    j["redundant_list"] = rl;
    return j;
}

Json cmd_measure(const Options& o) {
    const auto l = load(o, true);
    const auto kept = select_kept(l.complex);
    const auto ledger = delta_zero_ledger(l.complex);
    const auto report = assemble_measure_report(l.complex, kept, ledger, LocalMeasureRegistry::instance().get(o.local_measure));

    Json j;
    j["command"] = "measure";
    j["local_measure"] = {{"name", report.local_measure.name}, {"description", report.local_measure.description}};

    std::array<std::map<int, std::size_t>, 5> tally;
    Json exps = Json::array();
    for (const auto& v : report.volume_exponents) {
        ++tally[v.simplex.dim()][v.exponent];
        exps.push_back({{"simplex", to_json(v.simplex)}, {"exponent", v.exponent}});
    }
    Json summary = Json::array();
    for (int d = 3; d >= 1; --d)
        for (auto [e, n] : tally[d]) summary.push_back({{"dim", d}, {"exponent", e}, {"count", n}});
    j["exponent_summary"] = summary;
    j["volume_exponents"] = exps;
    j["kept_delta_count"] = report.kept_deltas.size();
    Json deltas = Json::array();
    for (const auto& c : report.kept_deltas) deltas.push_back(to_json(c));
    j["kept_deltas"] = deltas;
    j["notes"] = report.notes;

    if (const auto global = global_lengths(l.file, l.complex)) {
        j["log_volume_factor"] = evaluate_volume_factor(report, *global);
        ActionParams params{o.newton_g, o.coefficient};
        j["regge_action"] = regge_action_global(l.complex, *global, params);
    }
    return j;
}

Json suite_json(const verify::SuiteResult& r) {
    Json j;
    j["suite"] = r.name;
    j["passed"] = r.passed;
    if (r.tolerance > 0.0) j["tolerance"] = r.tolerance;
    Json m = Json::object();
    for (const auto& [k, v] : r.metrics) m[k] = v;
    j["metrics"] = m;
    j["failures"] = r.failures;
    return j;
}

Json cmd_verify(const Options& o, bool& all_passed) {
    std::vector<std::string> names;
    if (o.suite == "all")
        names = verify::suite_names();
    else
        names.push_back(o.suite);
    Json j;
    j["command"] = "verify";
    Json suites = Json::array();
    all_passed = true;
    for (const auto& n : names) {
        const auto r = verify::run_suite(n, o.tolerance);
        all_passed = all_passed && r.passed;
        suites.push_back(suite_json(r));
    }
    j["suites"] = suites;
    j["passed"] = all_passed;
    return j;
}

ComplexFile generate(const Options& o) {
    if (o.gen_kind == "boundary5") return fixtures::boundary5();
    if (o.gen_kind == "gluedpair") return fixtures::glued_pair();
    if (o.gen_kind == "chain") return fixtures::chain(o.gen_k);
    if (o.gen_kind == "flat") return fixtures::flat_subdivision();
    throw ParseError("unknown fixture '" + o.gen_kind + "' (boundary5, gluedpair, chain, flat)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simplicial gravity measure toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_complex = [&](CLI::App* sub) {
        sub->add_option("--complex", o.complex_path, "complex file")->required();
        sub->add_option("--lengths", o.lengths, "lengths file, uniform value, or i-j=x list");
    };
    auto add_action = [&](CLI::App* sub) {
        sub->add_option("--coefficient", o.coefficient, "overall action coefficient (default 1/(8 pi G))");
        sub->add_option("--newton-g", o.newton_g, "Newton constant G");
    };

    auto* validate_cmd = app.add_subcommand("validate", "check pseudomanifold conditions");
    add_complex(validate_cmd);
    auto* info_cmd = app.add_subcommand("info", "face counts, stars and edge-star graphs");
    add_complex(info_cmd);
    auto* volumes_cmd = app.add_subcommand("volumes", "volumes of all simplices");
    add_complex(volumes_cmd);
    auto* action_cmd = app.add_subcommand("action", "global and split Regge action");
    add_complex(action_cmd);
    add_action(action_cmd);
    auto* constraints_cmd = app.add_subcommand("constraints", "continuity constraints, kept set and ranks");
    add_complex(constraints_cmd);
    auto* measure_cmd = app.add_subcommand("measure", "assembled measure report");
    add_complex(measure_cmd);
    add_action(measure_cmd);
    measure_cmd->add_option("--local-measure", o.local_measure, "registered local measure name");
    auto* verify_cmd = app.add_subcommand("verify", "numeric verification suites");
    verify_cmd->add_option("--suite", o.suite, "detM, fresnel, rank, glue, flatness or all");
    verify_cmd->add_option("--tolerance", o.tolerance, "override the suite tolerance");
    auto* gen_cmd = app.add_subcommand("gen", "write a fixture complex file");
    gen_cmd->add_option("kind", o.gen_kind, "boundary5, gluedpair, chain or flat")->required();
    gen_cmd->add_option("k", o.gen_k, "number of 4-simplices for chain");
    gen_cmd->add_option("--output", o.output, "write to a file instead of standard output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseError;
    }

    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    try {
        Json report;
        int code = kOk;
        if (name == "validate") {
            report = cmd_validate(o);
        } else if (name == "info") {
            report = cmd_info(o);
        } else if (name == "volumes") {
            report = cmd_volumes(o);
        } else if (name == "action") {
            report = cmd_action(o);
        } else if (name == "constraints") {
            report = cmd_constraints(o);
        } else if (name == "measure") {
            report = cmd_measure(o);
        } else if (name == "verify") {
            bool passed = true;
            report = cmd_verify(o, passed);
            if (!passed) code = kSuiteFailure;
        } else if (name == "gen") {
            const auto file = generate(o);
            if (o.output.empty()) {
                write_complex_file(out, file);
            } else {
                std::ofstream f(o.output);
                if (!f) throw ParseError("cannot write " + o.output);
                write_complex_file(f, file);
            }
            return kOk;
        }
        out << report.dump(2) << '\n';
        return code;
    } catch (const ValidationFailure& e) {
        out << e.report.dump(2) << '\n';
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return kSuiteFailure;
    } catch (const MeasureError& e) {
        err << "error: " << e.what() << '\n';
        return kSuiteFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }
}

}  // namespace simgrav::cli
