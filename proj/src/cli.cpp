#include "tw/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tw/distributions.hpp"
#include "tw/ecdf.hpp"
#include "tw/errors.hpp"
#include "tw/goe.hpp"
#include "tw/painleve.hpp"
#include "tw/proof_checks.hpp"
#include "tw/tasep.hpp"

namespace tw::cli {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::vector<double> grid(const RunConfig& config) {
    if (!std::isfinite(config.s_min) || !std::isfinite(config.s_max))
        throw parameter_error("s range must be finite");
    if (!(config.s_step > 0.0) || !std::isfinite(config.s_step)) throw parameter_error("s step must be positive");
    if (config.s_max < config.s_min) throw parameter_error("s_max must not be below s_min");
    std::vector<double> out;
    if (config.s_max == config.s_min) return out;
    for (long k = 0;; ++k) {
        const double s = config.s_min + static_cast<double>(k) * config.s_step;
        if (s > config.s_max + 1e-9 * config.s_step) break;
        out.push_back(s);
    }
    return out;
}

namespace {

using nlohmann::json;

// Rounded through the 12-digit text so CSV and JSON carry the same numbers.
double rounded(double x) {
    if (!std::isfinite(x)) return x;
    return std::stod(format_number(x));
}

std::string join_csv(std::initializer_list<std::string> cells) {
    std::string line;
    for (const auto& c : cells) {
        if (!line.empty()) line += ',';
        line += c;
    }
    return line + '\n';
}

struct Sample {
    std::size_t run_index;
    std::uint64_t seed;
    double xi;
};

struct SampleSummary {
    double ks = std::nan("");
    bool passed = false;
};

SampleSummary summarize(const std::vector<double>& xi) {
    SampleSummary s;
    if (xi.empty()) return s;
    s.ks = ks_distance(EmpiricalCdf(xi), f1_reference);
    s.passed = s.ks < kKsTolerance;
    return s;
}

std::string render_samples(const RunConfig& config, const std::vector<std::pair<std::string, std::string>>& meta,
                           const std::vector<Sample>& rows, const SampleSummary& summary) {
    if (config.format == Format::json) {
        json j;
        for (const auto& [k, v] : meta) j["metadata"][k] = v;
        j["samples"] = json::array();
        for (const auto& r : rows)
            j["samples"].push_back({{"run_index", r.run_index}, {"seed", r.seed}, {"xi_hat", rounded(r.xi)}});
        j["ks"] = std::isnan(summary.ks) ? json(nullptr) : json(rounded(summary.ks));
        j["tolerance"] = kKsTolerance;
        j["passed"] = summary.passed;
        return j.dump(2) + '\n';
    }
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + "=" + v + '\n';
    out += "run_index,seed,xi_hat\n";
    for (const auto& r : rows) out += join_csv({std::to_string(r.run_index), std::to_string(r.seed), format_number(r.xi)});
    out += "# ks=" + format_number(summary.ks) + " tolerance=" + format_number(kKsTolerance) +
           " passed=" + (summary.passed ? "true" : "false") + '\n';
    return out;
}

void check_nodes(const RunConfig& config) {
    if (config.n_nodes < 16 || config.n_nodes > 512) throw parameter_error("--nodes must lie in [16, 512]");
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw io_error("cannot open '" + path + "' for writing");
    file << text;
    file.close();
    if (!file) throw io_error("failed writing '" + path + "'");
}

}  // namespace

int cmd_tabulate(const RunConfig& config, std::string& out) {
    check_nodes(config);
    const std::vector<double> points = grid(config);
    for (double s : points)
        if (s < -10.0 || s > 10.0) throw parameter_error("tabulate: s = " + format_number(s) + " outside [-10, 10]");

    std::optional<PainleveSolution> sol;
    if (!points.empty()) {
        const double s0 = std::max(8.0, points.back());
        sol = painleve_solve(std::min(points.front(), s0 - 1.0), s0);
    }

    const int n = config.n_nodes;
    json rows = json::array();
    std::string csv = "s,F1,F2,F4,F1_painleve,F_SA\n";
    for (double s : points) {
        const double v[] = {f1(s, n), f2(s, n), f4(s, n), f1_painleve(*sol, s, n), f_sa_direct(s, n)};
        csv += join_csv({format_number(s), format_number(v[0]), format_number(v[1]), format_number(v[2]),
                         format_number(v[3]), format_number(v[4])});
        rows.push_back({{"s", rounded(s)},
                        {"F1", rounded(v[0])},
                        {"F2", rounded(v[1])},
                        {"F4", rounded(v[2])},
                        {"F1_painleve", rounded(v[3])},
                        {"F_SA", rounded(v[4])}});
    }
    out = config.format == Format::json ? rows.dump(2) + '\n' : csv;
    return kSuccess;
}

int cmd_verify(const RunConfig& config, std::string& out) {
    check_nodes(config);
    SuiteConfig suite;
    suite.grid = grid(config);
    if (config.checks) suite.checks = *config.checks;
    suite.h = config.fd_step;
    suite.options.nodes = config.n_nodes;
    suite.options.kernel_perturbation = config.perturb_kernel;
    const std::vector<IdentityReport> reports = run_suite(suite);

    bool all = true;
    for (const auto& r : reports) all = all && r.passed;
    if (config.format == Format::json) {
        out = json(reports).dump(2) + '\n';
    } else {
        out = "name,s,lhs,rhs,abs_diff,tolerance,passed\n";
        for (const auto& r : reports)
            out += join_csv({r.name, format_number(r.s), format_number(r.lhs), format_number(r.rhs),
                             format_number(r.abs_diff), format_number(r.tolerance), r.passed ? "true" : "false"});
    }
    return all ? kSuccess : kFailure;
}

int cmd_sample_goe(const RunConfig& config, std::string& out) {
    const std::vector<std::pair<std::string, std::string>> meta = {
        {"command", "sample-goe"},
        {"dim", std::to_string(config.dim)},
        {"count", std::to_string(config.count)},
        {"seed", std::to_string(config.seed)},
        {"statistic", "(E1 - 2N) / N^(1/3)"},
        {"reference", "F1"}};
    std::vector<Sample> rows;
    std::vector<double> xi;
    if (config.count > 0) {
        xi = sample_goe_xi({config.dim, config.count, config.seed});
        for (std::size_t i = 0; i < xi.size(); ++i) rows.push_back({i, substream_seed(config.seed, i), xi[i]});
    } else if (config.dim < 2) {
        throw parameter_error("GOE dimension must be at least 2");
    }
    const SampleSummary summary = summarize(xi);
    out = render_samples(config, meta, rows, summary);
    return summary.passed ? kSuccess : kFailure;
}

int cmd_sample_tasep(const RunConfig& config, std::string& out) {
    const TasepSpec spec = tasep_spec(config.time, config.seed, config.phase);
    validate(spec);
    const TasepBatch batch = tasep_batch(spec, config.count);
    const std::vector<std::pair<std::string, std::string>> meta = {
        {"command", "sample-tasep"},
        {"time", format_number(config.time)},
        {"count", std::to_string(config.count)},
        {"seed", std::to_string(config.seed)},
        {"phase", std::to_string(config.phase)},
        {"window", "[" + std::to_string(-spec.left) + "," + std::to_string(spec.right) + "]"},
        {"statistic", "(t - 2 h(-3t/2, t)) / t^(1/3)"},
        {"reference", "F1"},
        {"invalid_runs", std::to_string(batch.invalid)}};
    std::vector<Sample> rows;
    for (std::size_t k = 0; k < batch.xi.size(); ++k) rows.push_back({batch.run_index[k], batch.seeds[k], batch.xi[k]});
    SampleSummary summary = summarize(batch.xi);
    const bool too_many_invalid = batch.invalid_fraction() > 0.01;
    if (too_many_invalid) summary.passed = false;
    out = render_samples(config, meta, rows, summary);
    if (too_many_invalid)
        throw window_error(std::to_string(batch.invalid) + " of " + std::to_string(batch.runs) +
                           " runs touched the window boundary (limit 1%)");
    return summary.passed ? kSuccess : kFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tracy-Widom distributions: tabulation, identity checks and Monte Carlo samplers"};
    app.require_subcommand(1);

    const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
    auto common = [&](CLI::App* sub, RunConfig& c) {
        sub->add_option("--nodes", c.n_nodes, "quadrature nodes")->capture_default_str();
        sub->add_option("--out", c.output_path, "output file (default: stdout)");
        sub->add_option("--format", c.format, "csv or json")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };
    auto s_range = [](CLI::App* sub, RunConfig& c) {
        sub->add_option("--s-min", c.s_min)->capture_default_str();
        sub->add_option("--s-max", c.s_max)->capture_default_str();
        sub->add_option("--s-step", c.s_step)->capture_default_str();
    };

    RunConfig tab;
    tab.command = "tabulate";
    tab.s_min = -8.0;
    tab.s_max = 8.0;
    tab.s_step = 0.5;
    auto* tab_cmd = app.add_subcommand("tabulate", "F1, F2, F4, F1 via Painleve II and F_SA on a grid");
    common(tab_cmd, tab);
    s_range(tab_cmd, tab);

    RunConfig ver;
    ver.command = "verify";
    ver.s_min = -8.0;
    ver.s_max = 6.0;
    ver.s_step = 2.0;
    ver.format = Format::json;
    std::string checks;
    auto* ver_cmd = app.add_subcommand("verify", "run the operator identity checks");
    common(ver_cmd, ver);
    s_range(ver_cmd, ver);
    auto* checks_opt = ver_cmd->add_option("--checks", checks, "comma-separated subset of checks (may be empty)");
    ver_cmd->add_option("--fd-step", ver.fd_step, "finite-difference step")->capture_default_str();
    ver_cmd->add_option("--perturb-kernel", ver.perturb_kernel, "test hook: add eps*exp(-x-y) to the kernel");

    RunConfig goe;
    goe.command = "sample-goe";
    auto* goe_cmd = app.add_subcommand("sample-goe", "edge-scaled largest GOE eigenvalues");
    common(goe_cmd, goe);
    goe_cmd->add_option("--count", goe.count)->capture_default_str();
    goe_cmd->add_option("--dim", goe.dim, "matrix dimension N")->capture_default_str();
    goe_cmd->add_option("--seed", goe.seed)->capture_default_str();

    RunConfig tasep;
    tasep.command = "sample-tasep";
    auto* tasep_cmd = app.add_subcommand("sample-tasep", "scaled TASEP heights from half-flat initial data");
    common(tasep_cmd, tasep);
    tasep_cmd->add_option("--count", tasep.count)->capture_default_str();
    tasep_cmd->add_option("--time", tasep.time, "final time t (3t/2 must be an integer)")->capture_default_str();
    tasep_cmd->add_option("--seed", tasep.seed)->capture_default_str();
    tasep_cmd->add_option("--phase", tasep.phase, "0: rightmost particle at 0, 1: at -1")
        ->check(CLI::IsMember({0, 1}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    RunConfig* config = nullptr;
    int (*command)(const RunConfig&, std::string&) = nullptr;
    if (tab_cmd->parsed()) {
        config = &tab;
        command = cmd_tabulate;
    } else if (ver_cmd->parsed()) {
        config = &ver;
        command = cmd_verify;
        if (checks_opt->count() > 0) {
            std::vector<std::string> names;
            std::stringstream ss(checks);
            for (std::string name; std::getline(ss, name, ',');)
                if (!name.empty()) names.push_back(name);
            ver.checks = names;
        }
    } else if (goe_cmd->parsed()) {
        config = &goe;
        command = cmd_sample_goe;
    } else {
        config = &tasep;
        command = cmd_sample_tasep;
    }

    std::string text;
    try {
        const int code = command(*config, text);
        write_output(config->output_path, text, out);
        return code;
    } catch (const parameter_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const window_error& e) {
        // The sample file is still useful for diagnosing the window.
        try {
            if (!text.empty()) write_output(config->output_path, text, out);
        } catch (const io_error& io) {
            err << "error: " << io.what() << '\n';
            return kIo;
        }
        err << "error: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace tw::cli
