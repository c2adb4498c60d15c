#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "dataset.hpp"
#include "redist/redist.hpp"
#include "report.hpp"

namespace redist::cli {

namespace {

struct Options {
    std::string rule;
    std::string rules;
    std::string axioms = "all";
    std::string input;
    std::string format;
    std::string output = "-";
    std::uint64_t seed = 42;
    std::size_t samples = 1000;
    double tol = kDefaultTolerance;
    std::string grid;
    bool no_timestamp = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

const std::string& require(const std::string& value, const char* flag, const std::string& command) {
    if (value.empty()) throw UsageError(command + " requires " + flag);
    return value;
}

SampleConfig sample_config(const Options& o) {
    SampleConfig cfg;
    cfg.seed = o.seed;
    cfg.trials = o.samples;
    return cfg;
}

Dataset read_input(const Options& o, const std::string& command) {
    const std::filesystem::path path = require(o.input, "--input", command);
    const Format format = o.format.empty() ? infer_format(path) : parse_format(o.format);
    return load_dataset(path, format);
}

ordered_json input_json(const Dataset& data) {
    return {{"source", data.source}, {"format", std::string(to_string(data.format))},
            {"agents", data.records.size()}};
}

ordered_json cmd_apply(const Options& o, ordered_json report) {
    const auto rule = parse_rule(require(o.rule, "--rule", "apply"));
    const auto data = read_input(o, "apply");
    const auto problem = data.problem();
    const auto x = evaluate(rule, problem);
    report["rule"] = rule.to_string();
    report["input"] = input_json(data);
    report["allocations"] = allocation_rows(problem, x);
    report["summary"] = allocation_summary(problem, x);
    return report;
}

ordered_json cmd_check(const Options& o, ordered_json report, std::ostream& err, int& code) {
    const auto rule = parse_rule(require(o.rule, "--rule", "check"));
    const auto axioms = parse_axiom_list(o.axioms);
    const auto reports = axiom_suite(rule, axioms, sample_config(o), o.tol);
    report["rule"] = rule.to_string();
    report["axioms"] = ordered_json::array();
    std::vector<std::string> failed;
    for (const auto& r : reports) {
        report["axioms"].push_back(axiom_report_json(r));
        if (!r.passed) failed.emplace_back(to_string(r.axiom));
    }
    report["summary"] = {{"checked", reports.size()},
                         {"passed", reports.size() - failed.size()},
                         {"failed", failed},
                         {"all_passed", failed.empty()}};
    if (!failed.empty()) {
        std::string list;
        for (const auto& name : failed) list += (list.empty() ? "" : ", ") + name;
        err << "check: " << rule.to_string() << " violates " << list << "\n";
        code = kCheckFailed;
    }
    return report;
}

ordered_json cmd_dual(const Options& o, ordered_json report) {
    const auto rule = parse_rule(require(o.rule, "--rule", "dual"));
    const auto dual = Rule::dual(rule);
    report["rule"] = rule.to_string();
    report["dual"] = dual.to_string();
    if (const auto form = ab_form(rule); form && form->first.is_catalog() && form->second.is_catalog()) {
        const auto [a, b] = dual_ab(form->first, form->second, true);
        report["closed_form"] = Rule::ab(a, b).to_string();
    } else {
        report["closed_form"] = nullptr;
    }
    const auto grid = o.grid.empty() ? default_classification_grid() : parse_grid(o.grid);
    const auto cls = classify(dual, grid, sample_config(o), o.tol);
    report["classification"] = std::string(to_string(cls.label));
    report["dual_classification"] = classification_json(cls);
    report["self_dual"] = dual_report_json(check_self_dual(rule, sample_config(o), o.tol));
    if (!o.input.empty()) {
        const auto data = read_input(o, "dual");
        const auto problem = data.problem();
        const auto x = evaluate(dual, problem);
        report["input"] = input_json(data);
        report["allocations"] = allocation_rows(problem, x);
        report["summary"] = allocation_summary(problem, x);
    }
    return report;
}

ordered_json cmd_extract(const Options& o, ordered_json report) {
    constexpr std::size_t kAgents = 4;
    constexpr double kBaseNeed = 1.0;
    const auto rule = parse_rule(require(o.rule, "--rule", "extract"));
    const auto grid = parse_grid(o.grid.empty() ? "-2:2:0.5" : o.grid);
    report["rule"] = rule.to_string();
    report["agents"] = kAgents;
    report["base_need"] = kBaseNeed;
    report["profile"] = profile_json(profile_rule(rule, grid, kAgents, kBaseNeed));
    return report;
}

ordered_json cmd_classify(const Options& o, ordered_json report) {
    const auto rule = parse_rule(require(o.rule, "--rule", "classify"));
    const auto grid = o.grid.empty() ? default_classification_grid() : parse_grid(o.grid);
    report["rule"] = rule.to_string();
    report["classification"] = classification_json(classify(rule, grid, sample_config(o), o.tol));
    return report;
}

ordered_json cmd_compare(const Options& o, ordered_json report) {
    const auto rules = parse_rule_list(require(o.rules, "--rules", "compare"));
    const auto data = read_input(o, "compare");
    const auto problem = data.problem();
    std::vector<Allocation> results;
    for (const auto& rule : rules) results.push_back(evaluate(rule, problem));

    report["rules"] = ordered_json::array();
    for (const auto& rule : rules) report["rules"].push_back(rule.to_string());
    report["input"] = input_json(data);
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < problem.size(); ++i) {
        ordered_json row{{"id", problem.ids()[i]}, {"income", problem.incomes()[i]}, {"need", problem.needs()[i]}};
        ordered_json columns = ordered_json::array();
        for (const auto& x : results) columns.push_back(x[i]);
        row["allocations"] = std::move(columns);
        rows.push_back(std::move(row));
    }
    report["agents"] = std::move(rows);
    ordered_json per_rule = ordered_json::array();
    for (std::size_t k = 0; k < rules.size(); ++k) {
        auto summary = allocation_summary(problem, results[k]);
        summary["rule"] = rules[k].to_string();
        per_rule.push_back(std::move(summary));
    }
    const double n = static_cast<double>(problem.size());
    report["summary"] = {{"agents", problem.size()},
                         {"total_income", problem.total_income()},
                         {"total_need", problem.total_need()},
                         {"mean_income", problem.total_income() / n},
                         {"mean_need", problem.total_need() / n},
                         {"per_rule", std::move(per_rule)}};
    return report;
}

int write_report(const ordered_json& report, const Options& o, std::ostream& out, std::ostream& err) {
    const auto text = report.dump(2) + "\n";
    if (o.output == "-") {
        out << text;
        return kOk;
    }
    std::ofstream file(o.output, std::ios::binary);
    if (!(file << text)) {
        err << "error: cannot write report to " << o.output << "\n";
        return kInternalError;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Redistribution rules: apply, check axioms, dualize, extract and classify."};
    app.name("redist");
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--rule", o.rule, "Rule spec, e.g. prop or \"convex(lf;prop;0.5)\"");
    app.add_option("--rules", o.rules, "Comma-separated rule specs (compare)");
    app.add_option("--axioms", o.axioms, "Comma-separated axioms, 'core' or 'all' (check)");
    app.add_option("--input", o.input, "Dataset path");
    app.add_option("--format", o.format, "Dataset format: csv or json (default: from extension)");
    app.add_option("--output", o.output, "Report path, or - for stdout");
    app.add_option("--seed", o.seed, "Sampling seed");
    app.add_option("--samples", o.samples, "Sampled instances per check");
    app.add_option("--tol", o.tol, "Tolerance, relative to max(1, |Y|, Z)");
    app.add_option("--grid", o.grid, "Grid lo:hi:step over t = Y/Z");
    app.add_flag("--no-timestamp", o.no_timestamp, "Omit generated_at from the report");
    for (const auto& [name, help] : std::initializer_list<std::pair<const char*, const char*>>{
             {"apply", "Allocate a dataset with one rule"},
             {"check", "Check axioms by seeded sampling"},
             {"dual", "Dual of a rule: closed form, classification, self-duality"},
             {"extract", "Recover a(t), b(t) on a grid"},
             {"classify", "Classify a rule against the characterised families"},
             {"compare", "Allocate a dataset with several rules"}}) {
        app.add_subcommand(name, help);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    int code = kOk;
    try {
        if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
        if (o.samples == 0) throw UsageError("--samples must be positive");
        ordered_json report;
        report["schema_version"] = kSchemaVersion;
        report["command"] = command;
        report["arguments"] = args;
        report["settings"] = {{"seed", o.seed}, {"samples", o.samples}, {"tol", o.tol}};
        if (!o.no_timestamp) report["generated_at"] = utc_timestamp();

        if (command == "apply") report = cmd_apply(o, std::move(report));
        else if (command == "check") report = cmd_check(o, std::move(report), err, code);
        else if (command == "dual") report = cmd_dual(o, std::move(report));
        else if (command == "extract") report = cmd_extract(o, std::move(report));
        else if (command == "classify") report = cmd_classify(o, std::move(report));
        else report = cmd_compare(o, std::move(report));

        const int written = write_report(report, o, out, err);
        return written != kOk ? written : code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DatasetError& e) {
        err << "error: " << e.what() << "\n";
        return kDatasetError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::ParseError:
            case ErrorCode::UnknownAxiom:
            case ErrorCode::InvalidWeight:
            case ErrorCode::InvalidArgument:
            case ErrorCode::NonFinite: return kUsageError;
            default: return kInternalError;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInternalError;
    }
}

}  // namespace redist::cli
