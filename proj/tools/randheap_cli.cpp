#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "randheap/adversary.hpp"
#include "randheap/errors.hpp"
#include "randheap/experiment.hpp"
#include "randheap/fit.hpp"
#include "randheap/heap.hpp"
#include "randheap/metrics.hpp"
#include "randheap/oracle.hpp"
#include "randheap/trace.hpp"

namespace {

using namespace randheap;

int cmd_gen(const std::string& adversary, std::size_t ops, std::size_t n, std::uint64_t seed,
            const std::string& mix, const std::string& out_path) {
    Trace trace;
    try {
        if (adversary == "random") {
            double a = 0.4, b = 0.3, c = 0.3;
            if (!mix.empty()) {
                std::istringstream is(mix);
                char comma1 = 0, comma2 = 0;
                if (!(is >> a >> comma1 >> b >> comma2 >> c) || comma1 != ',' || comma2 != ',') {
                    std::cerr << "gen: bad --mix, expected a,b,c\n";
                    return 3;
                }
            }
            if (ops == 0) {
                std::cerr << "gen: --ops required for random\n";
                return 3;
            }
            trace = gen_random(ops, seed, a, b, c);
        } else if (adversary == "sqrtn") {
            if (n == 0) {
                std::cerr << "gen: --n required for sqrtn\n";
                return 3;
            }
            trace = gen_sqrt_n(n);
        } else if (adversary == "logsq") {
            if (ops == 0) {
                std::cerr << "gen: --ops required for logsq\n";
                return 3;
            }
            trace = gen_logsq(ops, n);
        } else {
            std::cerr << "gen: unknown adversary '" << adversary << "'\n";
            return 3;
        }
    } catch (const Error& e) {
        std::cerr << "gen: " << e.what() << "\n";
        return 3;
    }
    try {
        write_trace_file(out_path, trace);
    } catch (const Error& e) {
        std::cerr << "gen: " << e.what() << "\n";
        return 4;
    }
    std::cout << "wrote " << trace.ops.size() << " ops to " << out_path << "\n";
    return 0;
}

int cmd_run(const std::string& trace_path, const std::string& policy_name, std::uint64_t seed,
            const std::string& csv_path) {
    Trace trace;
    try {
        trace = parse_trace_file(trace_path);
    } catch (const Error& e) {
        std::cerr << "run: " << e.what() << "\n";
        return 3;
    }
    auto violations = validate_trace(trace);
    if (!violations.empty()) {
        std::cerr << "run: invalid trace, line " << violations.front().line << ": "
                  << violations.front().kind << ": " << violations.front().detail << "\n";
        return 3;
    }
    auto policy = parse_cut_policy(policy_name);
    if (!policy) {
        std::cerr << "run: unknown policy '" << policy_name << "'\n";
        return 3;
    }

    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) {
        std::cerr << "run: cannot open " << csv_path << "\n";
        return 4;
    }
    RunResult result;
    try {
        result = run_trace(trace, *policy, seed, &csv);
    } catch (const Error& e) {
        std::cerr << "run: replay failed: " << e.what() << "\n";
        return 1;
    }

    const auto& summary = result.summary;
    static const OpKind kinds[] = {OpKind::Insert, OpKind::DeleteMin, OpKind::DecreaseKey,
                                   OpKind::Meld};
    std::cout << "policy=" << policy_name << " seed=" << seed << " ops=" << summary.total_ops
              << " final_n=" << summary.final_n << " max_degree=" << summary.max_degree_observed
              << "\n";
    for (OpKind k : kinds) {
        const auto& ks = summary.stats(k);
        if (ks.count == 0) continue;
        std::cout << "  " << op_kind_code(k) << ": count=" << ks.count
                  << " mean_cost=" << ks.mean_cost() << " max_cost=" << ks.max_cost << "\n";
    }
    const double wmean = windowed_mean(result.delete_min_costs, trace.measured_window());
    if (!result.delete_min_costs.empty())
        std::cout << "  windowed mean delete-min cost: " << wmean << "\n";
    return 0;
}

int cmd_diff(const std::string& trace_path, const std::string& policy_name, std::uint64_t seed) {
    Trace trace;
    try {
        trace = parse_trace_file(trace_path);
    } catch (const Error& e) {
        std::cerr << "diff: " << e.what() << "\n";
        return 3;
    }
    auto violations = validate_trace(trace);
    if (!violations.empty()) {
        std::cerr << "diff: invalid trace, line " << violations.front().line << ": "
                  << violations.front().kind << "\n";
        return 3;
    }
    auto policy = parse_cut_policy(policy_name);
    if (!policy) {
        std::cerr << "diff: unknown policy '" << policy_name << "'\n";
        return 3;
    }
    auto divergence = diff_run(trace, *policy, seed);
    if (!divergence) {
        std::cout << "no divergence\n";
        return 0;
    }
    std::cout << "divergence at op " << divergence->op_index << ": " << divergence->detail
              << " (expected " << divergence->expected.first << "/" << divergence->expected.second
              << ", got " << divergence->actual.first << "/" << divergence->actual.second << ")\n";
    const std::string shrunk_path = trace_path + ".shrunk";
    Trace shrunk = shrink(trace, *policy, seed);
    write_trace_file(shrunk_path, shrunk);
    std::cout << "shrunk reproducer (" << shrunk.ops.size() << " ops): " << shrunk_path << "\n";
    return 2;
}

int cmd_fit(const std::string& model_name, std::uint64_t window,
            const std::vector<std::string>& inputs) {
    auto model = parse_fit_model(model_name);
    if (!model) {
        std::cerr << "fit: unknown model '" << model_name << "'\n";
        return 3;
    }
    std::vector<std::pair<double, double>> points;
    for (const auto& arg : inputs) {
        std::string path = arg;
        double size = 0;
        if (auto comma = arg.rfind(','); comma != std::string::npos) {
            path = arg.substr(0, comma);
            size = std::stod(arg.substr(comma + 1));
        }
        std::ifstream in(path);
        if (!in) {
            std::cerr << "fit: cannot open " << path << "\n";
            return 3;
        }
        auto records = read_csv(in);
        std::vector<std::uint64_t> dm_costs;
        std::uint64_t max_n = 0;
        for (const auto& rec : records) {
            if (rec.kind == OpKind::DeleteMin) dm_costs.push_back(rec.cost);
            max_n = std::max(max_n, rec.n_before);
        }
        if (size == 0) size = static_cast<double>(max_n);
        const double mean = windowed_mean(
            dm_costs, window ? std::optional<std::uint64_t>(window) : std::nullopt);
        points.emplace_back(size, mean);
    }
    if (points.size() < 4) {
        std::cerr << "fit: need at least 4 points, got " << points.size() << "\n";
        return 3;
    }
    const FitResult fit = fit_points(*model, points);
    std::cout << "model=" << fit_model_name(fit.model) << " points=" << fit.points
              << " coeff=" << fit.exponent_or_coeff << " intercept=" << fit.intercept
              << " r2=" << fit.r2 << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Instrumented randomized Fibonacci heap workbench"};
    app.require_subcommand(1);

    std::string adversary, mix, out_path, trace_path, policy_name, csv_path, model_name;
    std::size_t ops = 0, n = 0;
    std::uint64_t seed = 0, window = 0;
    std::vector<std::string> fit_inputs;

    auto* gen = app.add_subcommand("gen", "generate a trace");
    gen->add_option("--adversary", adversary, "random|sqrtn|logsq")->required();
    gen->add_option("--ops", ops, "operation count (random: exact, logsq: target s)");
    gen->add_option("--n", n, "element bound (sqrtn: required; logsq: optional cap)");
    gen->add_option("--seed", seed, "generator seed (random only)");
    gen->add_option("--mix", mix, "insert,delete,decrease probabilities");
    gen->add_option("--out", out_path, "output trace path")->required();

    auto* run = app.add_subcommand("run", "replay a trace with metrics");
    run->add_option("--trace", trace_path)->required();
    run->add_option("--policy", policy_name, "markbit|random|naive|fixed")->required();
    run->add_option("--seed", seed)->required();
    run->add_option("--csv", csv_path, "cost record CSV output")->required();

    auto* diff = app.add_subcommand("diff", "differential run against the oracle");
    diff->add_option("--trace", trace_path)->required();
    diff->add_option("--policy", policy_name)->required();
    diff->add_option("--seed", seed)->required();

    auto* fit = app.add_subcommand("fit", "fit a growth model to run CSVs");
    fit->add_option("--model", model_name, "power|loglinear|logsq")->required();
    fit->add_option("--window", window, "trailing delete-min window (0 = last 25%)");
    fit->add_option("inputs", fit_inputs, "CSV paths, optionally PATH,SIZE")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(adversary, ops, n, seed, mix, out_path);
        if (run->parsed()) return cmd_run(trace_path, policy_name, seed, csv_path);
        if (diff->parsed()) return cmd_diff(trace_path, policy_name, seed);
        if (fit->parsed()) return cmd_fit(model_name, window, fit_inputs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
