// Command-line front end for the long-range Kitaev chain QFI library.
//
// Subcommands:
//   sweep            evaluate QFI over a list of chain sizes
//   fit              fit a scaling model to a sweep CSV
//   oracle-check     compare the momentum-space QFI against the exact
//                    many-body computation on randomized small instances
//   predict          evaluate the closed-form scaling surrogate
//   validate-kernel  check a decay kernel against the admissibility
//                    conditions
//
// Exit codes: 0 success, 1 invalid input, 2 I/O failure, 3 fit failure,
// 4 tolerance failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrk/asymptotics.hpp"
#include "lrk/chain.hpp"
#include "lrk/errors.hpp"
#include "lrk/fit.hpp"
#include "lrk/kernel.hpp"
#include "lrk/oracle.hpp"
#include "lrk/qfi.hpp"
#include "lrk/sweep.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Shared option plumbing
// ---------------------------------------------------------------------------

struct CliOptions {
    std::string channel = "delta";
    std::string kernel = "power";
    double alpha = 0.0;
    int regularity_order = 1;
    std::string n_text;
    double J = 1.0;
    double mu = 1.0;
    double delta = 1.0;
    double T = 1.0;
    bool controlled = false;
    std::string out;
    std::string format = "csv";
    std::string config_path;
    std::string in_path;
    std::string model = "power";
    // oracle-check specifics
    std::uint64_t seed = 1;
    int trials = 50;
    double tol = 1e-8;
    std::vector<int> n_list_config;  // from config "N_list"
};

// Parses a size specification: either a comma list "4,8,16" or an
// inclusive range "start:stop:step".
std::vector<int> parse_n_values(const std::string& text) {
    if (text.empty())
        throw lrk::domain_error("N: empty size specification");
    std::vector<int> out;
    const auto parse_int = [&](const std::string& tok) {
        try {
            std::size_t pos = 0;
            const long v = std::stol(tok, &pos);
            if (pos != tok.size())
                throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw lrk::domain_error("N: cannot parse '" + tok +
                                    "' as an integer");
        }
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() != 3)
            throw lrk::domain_error(
                "N: range form must be start:stop:step (got '" + text + "')");
        const long a = parse_int(parts[0]);
        const long b = parse_int(parts[1]);
        const long step = parse_int(parts[2]);
        if (step <= 0)
            throw lrk::domain_error("N: range step must be positive");
        if (a > b)
            throw lrk::domain_error("N: range start exceeds stop");
        for (long v = a; v <= b; v += step) out.push_back(static_cast<int>(v));
    } else {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) out.push_back(static_cast<int>(parse_int(tok)));
        }
        if (out.empty())
            throw lrk::domain_error("N: empty size specification");
    }
    return out;
}

// Builds a decay kernel from the --kernel / --alpha / --regularity-order
// options.  "table:<path>" loads whitespace-separated magnitudes from a file.
lrk::DecayKernel make_kernel(const CliOptions& opt) {
    if (opt.kernel == "power") {
        auto k = lrk::DecayKernel::power_law(opt.alpha, opt.regularity_order);
        return k;
    }
    if (opt.kernel == "log") {
        auto k = lrk::DecayKernel::log_law(opt.alpha, opt.regularity_order);
        return k;
    }
    const std::string prefix = "table:";
    if (opt.kernel.rfind(prefix, 0) == 0) {
        const std::string path = opt.kernel.substr(prefix.size());
        std::ifstream is(path);
        if (!is)
            throw lrk::io_error("cannot open kernel table '" + path + "'");
        std::vector<double> values;
        double v = 0.0;
        while (is >> v) values.push_back(v);
        if (!is.eof())
            throw lrk::domain_error("kernel table '" + path +
                                    "' contains a non-numeric token");
        return lrk::DecayKernel::custom_table(values, opt.regularity_order);
    }
    throw lrk::domain_error(
        "kernel: expected power, log, or table:<path> (got '" + opt.kernel +
        "')");
}

// Writes `content` to the path in --out, or to stdout when none is given.
void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os)
        throw lrk::io_error("cannot open '" + out_path + "' for writing");
    os << content;
    os.flush();
    if (!os)
        throw lrk::io_error("failed while writing '" + out_path + "'");
}

json load_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw lrk::io_error("cannot open config '" + path + "'");
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw lrk::domain_error("config '" + path + "': " + e.what());
    }
    return j;
}

// Fills option fields from a config file for every key whose flag was not
// given on the command line.  Precedence: flag > config > default.
void apply_config(const CLI::App& cmd, CliOptions& opt) {
    if (opt.config_path.empty()) return;
    const json cfg = load_json_file(opt.config_path);
    if (!cfg.is_object())
        throw lrk::domain_error("config '" + opt.config_path +
                                "': top-level value must be an object");

    const auto unset = [&](const std::string& flag) {
        const CLI::Option* o = cmd.get_option_no_throw(flag);
        return o != nullptr && o->count() == 0;
    };
    const auto take = [&](const std::string& flag, const char* key,
                          auto& field) {
        if (cfg.contains(key) && unset(flag)) {
            try {
                cfg.at(key).get_to(field);
            } catch (const json::exception& e) {
                throw lrk::domain_error("config key '" + std::string(key) +
                                        "': " + e.what());
            }
        }
    };

    take("--channel", "channel", opt.channel);
    take("--kernel", "kernel", opt.kernel);
    take("--alpha", "alpha", opt.alpha);
    take("--regularity-order", "regularity_order", opt.regularity_order);
    take("--N", "N", opt.n_text);
    take("--J", "J", opt.J);
    take("--mu", "mu", opt.mu);
    take("--delta", "delta", opt.delta);
    take("--T", "T", opt.T);
    take("--controlled", "controlled", opt.controlled);
    take("--out", "out", opt.out);
    take("--format", "format", opt.format);
    take("--in", "in", opt.in_path);
    take("--model", "model", opt.model);
    take("--seed", "seed", opt.seed);
    take("--trials", "trials", opt.trials);
    take("--tol", "tol", opt.tol);
    if (cfg.contains("N_list") && unset("--N")) {
        try {
            cfg.at("N_list").get_to(opt.n_list_config);
        } catch (const json::exception& e) {
            throw lrk::domain_error(std::string("config key 'N_list': ") +
                                    e.what());
        }
    }
}

std::vector<int> resolve_n_values(const CliOptions& opt) {
    if (!opt.n_text.empty()) return parse_n_values(opt.n_text);
    if (!opt.n_list_config.empty()) return opt.n_list_config;
    throw lrk::domain_error("N: no chain sizes given (use --N or a config)");
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(const CLI::App& cmd, CliOptions& opt) {
    apply_config(cmd, opt);
    lrk::SweepSpec spec;
    spec.channel = lrk::parse_channel(opt.channel);
    spec.N_values = resolve_n_values(opt);
    spec.kernel = make_kernel(opt);
    spec.J = opt.J;
    spec.mu = opt.mu;
    spec.delta = opt.delta;
    spec.T = opt.T;
    spec.controlled = opt.controlled;

    const std::vector<lrk::RunRecord> records = lrk::run_sweep(spec);
    if (opt.format == "json") {
        write_output(opt.out, lrk::to_json(records));
    } else {
        write_output(opt.out, lrk::to_csv(records));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

int cmd_fit(const CLI::App& cmd, CliOptions& opt) {
    apply_config(cmd, opt);
    if (opt.in_path.empty())
        throw lrk::domain_error("fit: --in is required (sweep CSV path)");
    if (opt.model != "power" && opt.model != "polylog")
        throw lrk::domain_error("fit: model must be power or polylog (got '" +
                                opt.model + "')");

    const std::vector<lrk::RunRecord> records = lrk::parse_csv(opt.in_path);
    if (records.empty())
        throw lrk::domain_error("fit: input '" + opt.in_path +
                                "' contains no data rows");

    std::vector<std::pair<double, double>> points;
    points.reserve(records.size());
    for (const auto& r : records) {
        const double x = static_cast<double>(r.N);
        if (opt.model == "polylog") {
            points.emplace_back(x, r.qfi / (x * x * r.T * r.T));
        } else {
            points.emplace_back(x, r.qfi);
        }
    }

    if (opt.model == "polylog") {
        double lo = points.front().first, hi = points.front().first;
        for (const auto& [x, y] : points) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (lo > 0.0 && hi / lo < 20.0)
            std::cerr << "warning: N spans less than a factor of 20; the "
                         "polylog amplitude, exponent, and offset are nearly "
                         "degenerate on this range\n";
    }

    ordered_json doc;
    try {
        if (opt.model == "power") {
            const lrk::ScalingFit fit = lrk::fit_power(points);
            doc["model"] = "power";
            doc["parameters"] = ordered_json{{"e", fit.exponent}};
            doc["residual"] = fit.residual;
            doc["n_points"] = fit.n_points;
        } else {
            const lrk::ScalingFit fit = lrk::fit_polylog(points);
            doc["model"] = "polylog";
            doc["parameters"] =
                ordered_json{{"A", fit.A}, {"c", fit.c}, {"B", fit.B}};
            doc["residual"] = fit.residual;
            doc["n_points"] = fit.n_points;
            doc["normalization"] = "qfi/(N^2*T^2)";
        }
    } catch (const lrk::fit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    write_output(opt.out, doc.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// oracle-check
// ---------------------------------------------------------------------------

// Deterministic uniform double in [0, 1): implementation-pinned so reports
// are reproducible independent of the standard library's distribution code.
class UniformSource {
  public:
    explicit UniformSource(std::uint64_t seed) : rng_(seed) {}
    double next() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }
    double range(double lo, double hi) { return lo + (hi - lo) * next(); }

  private:
    std::mt19937_64 rng_;
};

struct TrialCase {
    int N = 0;
    lrk::Channel channel = lrk::Channel::Delta;
    lrk::DecayKernel kernel;
    double J = 0.0, mu = 0.0, delta = 0.0, T = 1.0;
};

double min_dispersion(const lrk::ChainParams& p) {
    const lrk::MomentumGrid grid = lrk::make_grid(p.N);
    double lo = std::numeric_limits<double>::infinity();
    for (const double k : grid.momenta)
        lo = std::min(lo, lrk::dispersion(k, p));
    return lo;
}

int cmd_oracle_check(const CLI::App& cmd, CliOptions& opt) {
    apply_config(cmd, opt);
    std::vector<int> n_list;
    if (!opt.n_text.empty())
        n_list = parse_n_values(opt.n_text);
    else if (!opt.n_list_config.empty())
        n_list = opt.n_list_config;
    else
        n_list = {2, 4, 6, 8};

    for (const int N : n_list) {
        if (N > 14)
            throw lrk::resource_error(
                "oracle-check: N = " + std::to_string(N) +
                " exceeds the exact-diagonalization cap of 14 sites");
    }
    if (opt.trials <= 0)
        throw lrk::domain_error("oracle-check: trials must be positive");
    if (!(opt.tol > 0.0))
        throw lrk::domain_error("oracle-check: tol must be positive");

    UniformSource uni(opt.seed);
    const lrk::Channel channels[3] = {lrk::Channel::J, lrk::Channel::Mu,
                                      lrk::Channel::Delta};
    const double probe_times[3] = {0.3, 1.0, 2.0};

    int total = 0;
    double max_rel_err = 0.0;
    ordered_json failures = ordered_json::array();

    for (const int N : n_list) {
        for (int t = 0; t < opt.trials; ++t) {
            // Draw parameters, resampling until the spectrum is safely
            // gapped so the two computations are both well conditioned.
            TrialCase c;
            c.N = N;
            c.channel = channels[t % 3];
            c.T = probe_times[t % 3];
            bool found = false;
            for (int attempt = 0; attempt < 200 && !found; ++attempt) {
                const double alpha = uni.range(0.0, 2.5);
                c.kernel = (t % 2 == 0) ? lrk::DecayKernel::power_law(alpha)
                                        : lrk::DecayKernel::log_law(alpha);
                c.J = uni.range(-2.0, 2.0);
                c.mu = uni.range(-2.0, 2.0);
                c.delta = uni.range(-2.0, 2.0);
                lrk::ChainParams p{c.J, c.mu, c.delta, c.N, c.kernel};
                found = min_dispersion(p) > 1e-6;
            }
            if (!found)
                throw lrk::numeric_error(
                    "oracle-check: failed to draw a gapped instance after "
                    "200 attempts at N = " +
                    std::to_string(N));

            const lrk::ChainParams p{c.J, c.mu, c.delta, c.N, c.kernel};
            const lrk::ProbeSpec probe{c.channel, c.T};
            const double momentum = lrk::qfi_uncontrolled(p, probe).value;
            const double exact =
                lrk::exact_qfi(p, probe, lrk::ParitySector::Even).qfi;
            const double rel =
                std::abs(momentum - exact) /
                std::max({std::abs(momentum), std::abs(exact), 1e-12});
            max_rel_err = std::max(max_rel_err, rel);
            ++total;
            if (rel > opt.tol) {
                failures.push_back(ordered_json{
                    {"N", c.N},
                    {"channel", std::string(lrk::channel_label(c.channel))},
                    {"kernel", c.kernel.label()},
                    {"alpha", c.kernel.alpha},
                    {"J", c.J},
                    {"mu", c.mu},
                    {"delta", c.delta},
                    {"T", c.T},
                    {"qfi_momentum", momentum},
                    {"qfi_exact", exact},
                    {"rel_err", rel}});
            }
        }
    }

    ordered_json report;
    report["trials"] = total;
    report["seed"] = opt.seed;
    report["tol"] = opt.tol;
    report["N_list"] = n_list;
    report["max_rel_err"] = max_rel_err;
    report["failures"] = failures;
    write_output(opt.out, report.dump(2) + "\n");
    return max_rel_err <= opt.tol ? 0 : 4;
}

// ---------------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------------

int cmd_predict(const CLI::App& cmd, CliOptions& opt) {
    apply_config(cmd, opt);
    const std::vector<int> n_values = resolve_n_values(opt);
    const lrk::DecayKernel kernel = make_kernel(opt);

    if (opt.format == "json") {
        ordered_json doc;
        doc["schema"] = "lrk-predict/1";
        ordered_json records = ordered_json::array();
        for (const int N : n_values) {
            records.push_back(
                ordered_json{{"N", N},
                             {"alpha", kernel.alpha},
                             {"kernel", kernel.label()},
                             {"prediction", lrk::predict_delta_scaling(
                                                kernel, N)}});
        }
        doc["records"] = records;
        write_output(opt.out, doc.dump(2) + "\n");
    } else {
        std::string text = "N,alpha,kernel,prediction\n";
        for (const int N : n_values) {
            text += std::to_string(N);
            text += ',';
            text += lrk::format_double(kernel.alpha);
            text += ',';
            text += kernel.label();
            text += ',';
            text += lrk::format_double(lrk::predict_delta_scaling(kernel, N));
            text += '\n';
        }
        write_output(opt.out, text);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// validate-kernel
// ---------------------------------------------------------------------------

int cmd_validate_kernel(const CLI::App& cmd, CliOptions& opt) {
    apply_config(cmd, opt);
    const std::vector<int> n_values = resolve_n_values(opt);
    const int N = *std::max_element(n_values.begin(), n_values.end());
    const lrk::DecayKernel kernel = make_kernel(opt);
    const lrk::KernelConditionReport report = lrk::validate_kernel(kernel, N);

    ordered_json doc;
    doc["kernel"] = kernel.label();
    doc["alpha"] = kernel.alpha;
    doc["N"] = N;
    doc["derivatives_bounded"] = report.derivatives_bounded;
    if (report.failing_order >= 0) {
        doc["failing_order"] = report.failing_order;
        doc["witness_l"] = report.witness_l;
    } else {
        doc["failing_order"] = nullptr;
        doc["witness_l"] = nullptr;
    }
    doc["tail_summable"] = report.tail_summable;
    doc["tail_fraction"] = report.tail_fraction;
    doc["orders_checked"] = report.orders_checked;
    doc["pass"] = report.pass();
    write_output(opt.out, doc.dump(2) + "\n");
    return report.pass() ? 0 : 4;
}

// ---------------------------------------------------------------------------
// wiring
// ---------------------------------------------------------------------------

void add_common_options(CLI::App* cmd, CliOptions& opt, bool with_params) {
    cmd->add_option("--kernel", opt.kernel,
                    "Decay kernel: power, log, or table:<path>");
    cmd->add_option("--alpha", opt.alpha, "Kernel decay exponent");
    cmd->add_option("--regularity-order", opt.regularity_order,
                    "Kernel regularity order Q");
    cmd->add_option("--N", opt.n_text,
                    "Chain sizes: comma list (4,8,16) or start:stop:step");
    cmd->add_option("--out", opt.out, "Output path (default: stdout)");
    cmd->add_option("--config", opt.config_path,
                    "JSON config file (flags take precedence)");
    if (with_params) {
        cmd->add_option("--channel", opt.channel,
                        "Estimated parameter: J, mu, or delta");
        cmd->add_option("--J", opt.J, "Tunneling amplitude");
        cmd->add_option("--mu", opt.mu, "Chemical potential");
        cmd->add_option("--delta", opt.delta, "Pairing strength");
        cmd->add_option("--T", opt.T, "Probe time");
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{
        "Quantum Fisher information for the long-range Kitaev chain"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Evaluate QFI over a list of chain sizes");
    add_common_options(sweep, opt, true);
    sweep->add_flag("--controlled", opt.controlled,
                    "Report the controlled-protocol bound instead");
    sweep->add_option("--format", opt.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* fit = app.add_subcommand(
        "fit", "Fit a scaling model to a sweep CSV");
    fit->add_option("--in", opt.in_path, "Input sweep CSV");
    fit->add_option("--model", opt.model, "Scaling model: power or polylog")
        ->check(CLI::IsMember({"power", "polylog"}));
    fit->add_option("--out", opt.out, "Output path (default: stdout)");
    fit->add_option("--config", opt.config_path,
                    "JSON config file (flags take precedence)");

    CLI::App* oracle = app.add_subcommand(
        "oracle-check",
        "Compare momentum-space QFI against exact diagonalization");
    add_common_options(oracle, opt, false);
    oracle->add_option("--seed", opt.seed, "Random seed");
    oracle->add_option("--trials", opt.trials, "Trials per chain size");
    oracle->add_option("--tol", opt.tol, "Relative-error tolerance");

    CLI::App* predict = app.add_subcommand(
        "predict", "Evaluate the closed-form scaling surrogate");
    add_common_options(predict, opt, false);
    predict->add_option("--format", opt.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* validate = app.add_subcommand(
        "validate-kernel", "Check a kernel against admissibility conditions");
    add_common_options(validate, opt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (sweep->parsed()) return cmd_sweep(*sweep, opt);
    if (fit->parsed()) return cmd_fit(*fit, opt);
    if (oracle->parsed()) return cmd_oracle_check(*oracle, opt);
    if (predict->parsed()) return cmd_predict(*predict, opt);
    return cmd_validate_kernel(*validate, opt);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const lrk::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lrk::fit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lrk::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const lrk::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
