#include "ultras/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ultras/equivalence.hpp"
#include "ultras/errors.hpp"
#include "ultras/export.hpp"
#include "ultras/model.hpp"
#include "ultras/statespace.hpp"
#include "ultras/testing.hpp"

namespace ultras::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UltrasError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DefinitionEnv load_model(const std::string& path, ModelRole role) {
    std::string text = read_file(path);
    try {
        return parse_model(text, role);
    } catch (const ParseError& e) {
        throw UltrasError(path + ":" + e.what());
    }
}

TermPtr load_term(DefinitionEnv& env, const std::string& flag, const std::string& text) {
    try {
        return parse_term(env, text);
    } catch (const ParseError& e) {
        throw UltrasError(flag + ": " + e.what());
    }
}

std::size_t resolve_budget(const std::optional<std::size_t>& flag) {
    if (flag) return *flag;
    if (const char* s = std::getenv("ULTRAS_MAX_STATES")) {
        std::string text(s);
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
            throw UltrasError("invalid ULTRAS_MAX_STATES value '" + text + "'");
        unsigned long long v = 0;
        try {
            v = std::stoull(text);
        } catch (const std::exception&) {
            throw UltrasError("invalid ULTRAS_MAX_STATES value '" + text + "'");
        }
        if (v == 0) throw UltrasError("ULTRAS_MAX_STATES must be at least 1");
        return static_cast<std::size_t>(v);
    }
    return 10000;
}

DeltaKind parse_delta(const std::string& name) {
    if (name == "conj" || name == "conjunction") return DeltaKind::conjunction;
    if (name == "prod" || name == "product") return DeltaKind::product;
    if (name == "min" || name == "minimum") return DeltaKind::minimum;
    throw UltrasError("unknown delta '" + name + "' (expected conj, prod or min)");
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UltrasError("cannot write file '" + out_path + "'");
    f << text;
    if (!f) throw UltrasError("cannot write file '" + out_path + "'");
}

struct CheckArgs {
    std::string file;
    std::string left;
    std::string right;
    int depth = 6;
    std::optional<std::size_t> max_states;
};

CLI::App* add_check_command(CLI::App& app, const std::string& name, const std::string& what,
                            CheckArgs& args) {
    CLI::App* sub = app.add_subcommand(name, what);
    sub->add_option("file", args.file, "model file")->required();
    sub->add_option("--left", args.left, "left process term")->required();
    sub->add_option("--right", args.right, "right process term")->required();
    sub->add_option("--depth", args.depth, "trace length bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-states", args.max_states, "state budget")->check(CLI::PositiveNumber);
    return sub;
}

struct Session {
    DefinitionEnv env;
    Exploration ex;
};

Session explore_pair(const CheckArgs& args) {
    DefinitionEnv env = load_model(args.file, ModelRole::system);
    TermPtr lt = load_term(env, "--left", args.left);
    TermPtr rt = load_term(env, "--right", args.right);
    ExplorationConfig cfg;
    cfg.max_states = resolve_budget(args.max_states);
    std::vector<TermPtr> roots{lt, rt};
    Exploration ex = explore(env, roots, cfg);
    return Session{std::move(env), std::move(ex)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"uniform process-calculus workbench (csp, pcsp, pepa)"};
    app.name("ultras");
    app.require_subcommand(1);

    std::string parse_file;
    CLI::App* cmd_parse = app.add_subcommand("parse", "parse a model and echo it canonically");
    cmd_parse->add_option("file", parse_file, "model file")->required();

    std::string space_file;
    std::optional<std::size_t> space_budget;
    CLI::App* cmd_space = app.add_subcommand("space", "explore the state space and report its size");
    cmd_space->add_option("file", space_file, "model file")->required();
    cmd_space->add_option("--max-states", space_budget, "state budget")->check(CLI::PositiveNumber);

    std::string export_file;
    std::string export_format;
    std::string export_out;
    std::optional<std::size_t> export_budget;
    CLI::App* cmd_export = app.add_subcommand("export", "write the state space as dot or tra");
    cmd_export->add_option("file", export_file, "model file")->required();
    cmd_export->add_option("--format", export_format, "output format: dot or tra")->required();
    cmd_export->add_option("-o,--output", export_out, "output file (default: stdout)");
    cmd_export->add_option("--max-states", export_budget, "state budget")->check(CLI::PositiveNumber);

    CheckArgs trace_args;
    CLI::App* cmd_trace =
        add_check_command(app, "check-trace", "compare two terms up to trace equivalence", trace_args);

    CheckArgs bisim_args;
    CLI::App* cmd_bisim =
        add_check_command(app, "check-bisim", "compare two terms up to bisimulation", bisim_args);

    CheckArgs testing_args;
    std::vector<std::string> testing_files;
    std::optional<int> testing_gen_depth;
    std::string testing_delta;
    CLI::App* cmd_testing = add_check_command(
        app, "check-testing", "compare two terms up to testing equivalence", testing_args);
    cmd_testing->add_option("--tests", testing_files, "observer model files");
    cmd_testing->add_option("--gen-depth", testing_gen_depth, "generate a canonical battery")
        ->check(CLI::Range(1, 4));
    cmd_testing->add_option("--delta", testing_delta,
                            "interaction combinator: conj, prod or min (default by calculus)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cmd_parse->parsed()) {
            DefinitionEnv env = load_model(parse_file, ModelRole::system);
            out << "calculus " << to_string(env.calculus()) << "\n";
            for (const Definition& def : env.definitions())
                out << "const " << def.name << " = " << def.body->text() << "\n";
            out << "init " << env.init()->text() << "\n";
            return 0;
        }

        if (cmd_space->parsed()) {
            DefinitionEnv env = load_model(space_file, ModelRole::system);
            ExplorationConfig cfg;
            cfg.max_states = resolve_budget(space_budget);
            Exploration ex = explore(env, cfg);
            out << "STATES " << ex.graph.state_count() << "\n";
            out << "TRANSITIONS " << ex.graph.transition_count() << "\n";
            return 0;
        }

        if (cmd_export->parsed()) {
            if (export_format != "dot" && export_format != "tra")
                throw UltrasError("unknown format '" + export_format + "' (expected dot or tra)");
            DefinitionEnv env = load_model(export_file, ModelRole::system);
            ExplorationConfig cfg;
            cfg.max_states = resolve_budget(export_budget);
            Exploration ex = explore(env, cfg);
            std::string text =
                export_format == "dot" ? export_dot(ex.graph) : export_tra(ex.graph);
            write_output(text, export_out, out);
            return 0;
        }

        if (cmd_trace->parsed()) {
            Session s = explore_pair(trace_args);
            TraceVerdict v =
                trace_equiv(s.ex.graph, s.ex.roots[0], s.ex.roots[1], trace_args.depth);
            out << format_verdict(v) << "\n";
            return v.equivalent ? 0 : 1;
        }

        if (cmd_bisim->parsed()) {
            Session s = explore_pair(bisim_args);
            Partition partition = bisim_refine(s.ex.graph);
            BisimVerdict v = bisim_check_bounded(s.ex.graph, s.ex.roots[0], s.ex.roots[1],
                                                 partition, bisim_args.depth);
            out << format_verdict(v, s.ex.graph, partition) << "\n";
            return v.equivalent ? 0 : 1;
        }

        if (cmd_testing->parsed()) {
            Session s = explore_pair(testing_args);
            DomainKind kind = s.env.kind();
            DeltaKind delta =
                testing_delta.empty() ? default_delta(kind) : parse_delta(testing_delta);
            try {
                validate_delta(delta, kind);
            } catch (const ContractViolation& e) {
                throw UltrasError(e.what());
            }
            ExplorationConfig cfg;
            cfg.max_states = resolve_budget(testing_args.max_states);
            std::vector<ObservationSystem> battery;
            for (const std::string& path : testing_files) {
                DefinitionEnv oenv = load_model(path, ModelRole::observer);
                if (oenv.calculus() != s.env.calculus())
                    throw UltrasError("observer '" + path + "' is a " +
                                      to_string(oenv.calculus()) + " model but the system is " +
                                      to_string(s.env.calculus()));
                battery.push_back(make_observation_system(path, oenv, cfg));
            }
            if (testing_gen_depth) {
                auto generated = generate_battery(s.env.alphabet(), *testing_gen_depth,
                                                  s.env.calculus());
                for (auto& obs : generated) battery.push_back(std::move(obs));
            }
            if (battery.empty())
                throw UltrasError("no observers given: use --tests and/or --gen-depth");
            TestingVerdict v = testing_equiv(s.ex.graph, s.ex.roots[0], s.ex.roots[1], battery,
                                             delta, testing_args.depth, cfg);
            out << format_verdict(v) << "\n";
            return v.equivalent ? 0 : 1;
        }

        err << "error: no command\n";
        return 2;
    } catch (const BudgetExceededError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const UltrasError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ultras::cli
