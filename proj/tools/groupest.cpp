// Command-line front end: protocol scans, custom-cost optimization, and the
// oracle cross-check suite, emitting plot-ready JSON or CSV tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "groupest/dense.hpp"
#include "groupest/protocols.hpp"
#include "groupest/serialize.hpp"

namespace {

using namespace groupest;

struct Range {
    int lo = 0;
    int hi = 0;
    int step = 1;
};

Range parse_range(const std::string& text) {
    Range r;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = std::stoi(text);
        return r;
    }
    r.lo = std::stoi(text.substr(0, dots));
    std::string rest = text.substr(dots + 2);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
        r.step = std::stoi(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
    }
    r.hi = std::stoi(rest);
    if (r.step < 1 || r.hi < r.lo)
        throw std::invalid_argument("bad range \"" + text + "\" (want A, A..B or A..B:STEP)");
    return r;
}

std::string fmt15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

struct ScanOptions {
    std::string range;
    int quad_nodes = 1024;
    std::string format = "json";
    std::string output;
    bool no_coefficients = false;
};

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    file << text;
}

template <class Label>
nlohmann::json flat_record(const ProtocolReport<Label>& p, bool with_coefficients) {
    nlohmann::json rec{{"N", p.n},
                       {"min_cost", p.result.min_cost},
                       {"asymptote", p.asymptote},
                       {"ratio", p.ratio}};
    rec["fidelity"] =
        p.result.fidelity ? nlohmann::json(*p.result.fidelity) : nlohmann::json(nullptr);
    if (with_coefficients) {
        nlohmann::json labels = nlohmann::json::array();
        nlohmann::json coeffs = nlohmann::json::array();
        for (std::size_t i = 0; i < p.result.coefficients.set.size(); ++i) {
            labels.push_back(label_json_value(p.result.coefficients.set.labels[i]));
            coeffs.push_back(p.result.coefficients.values[static_cast<Eigen::Index>(i)]);
        }
        rec["labels"] = labels;
        rec["coefficients"] = coeffs;
    }
    return rec;
}

template <class Label>
void emit_scan(const std::vector<ProtocolReport<Label>>& reports, const ScanOptions& opts) {
    if (opts.format == "csv") {
        std::ostringstream out;
        out << "N,min_cost,fidelity,asymptote,ratio\n";
        for (const auto& p : reports) {
            out << p.n << ',' << fmt15(p.result.min_cost) << ','
                << (p.result.fidelity ? fmt15(*p.result.fidelity) : "") << ','
                << fmt15(p.asymptote) << ',' << fmt15(p.ratio) << '\n';
        }
        write_out(opts.output, out.str());
        return;
    }
    nlohmann::json records = nlohmann::json::array();
    for (const auto& p : reports) records.push_back(flat_record(p, !opts.no_coefficients));
    write_out(opts.output, records.dump(2) + "\n");
}

int run_refframe(const ScanOptions& opts, bool include_top) {
    std::vector<ProtocolReport<Su2::Label>> reports;
    const Range r = parse_range(opts.range);
    for (int n = r.lo; n <= r.hi; n += r.step)
        reports.push_back(refframe_protocol(n, {include_top, opts.quad_nodes}));
    emit_scan(reports, opts);
    return 0;
}

int run_maxent(const ScanOptions& opts) {
    std::vector<ProtocolReport<Su2::Label>> reports;
    const Range r = parse_range(opts.range);
    for (int n = r.lo; n <= r.hi; n += r.step)
        reports.push_back(maxent_estimation(n, opts.quad_nodes));
    emit_scan(reports, opts);
    return 0;
}

int run_phase(const ScanOptions& opts, int modulus) {
    std::vector<ProtocolReport<Cyclic::Label>> reports;
    const Range r = parse_range(opts.range);
    for (int n = r.lo; n <= r.hi; n += r.step)
        reports.push_back(phase_protocol(modulus, n, opts.quad_nodes));
    emit_scan(reports, opts);
    return 0;
}

struct OptimizeOptions {
    std::string cost_file;
    std::string group = "su2";
    int modulus = 0;
    std::string labels;
    int tensor_power = 0;
    bool drop_top = false;
    int quad_nodes = 1024;
    std::string output;
};

std::vector<int> parse_label_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw std::invalid_argument("empty label list");
    return out;
}

template <group_model G>
int run_optimize_for(const G& g, const nlohmann::json& cost_json,
                     const IrrepSet<typename G::Label>& s, const OptimizeOptions& opts) {
    const auto spec = cost_spec_from_json(g, cost_json);
    const auto report = validate_holevo(g, spec);
    if (!report.ok()) {
        std::cerr << "cost spec rejected:\n";
        for (const auto& m : report.messages) std::cerr << "  " << m << "\n";
        return 1;
    }
    const auto result = optimize_coefficients(g, spec, s, opts.quad_nodes);
    write_out(opts.output, estimation_result_to_json(result).dump(2) + "\n");
    return 0;
}

int run_optimize(const OptimizeOptions& opts) {
    std::ifstream file(opts.cost_file);
    if (!file) {
        std::cerr << "cannot read cost file " << opts.cost_file << "\n";
        return 1;
    }
    nlohmann::json cost_json;
    try {
        file >> cost_json;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "cost file is not valid JSON: " << e.what() << "\n";
        return 1;
    }

    if (opts.group == "su2") {
        const Su2 g;
        IrrepSet<Su2::Label> s;
        if (opts.tensor_power > 0) {
            s = su2::irrep_set_for_tensor_power(opts.tensor_power, !opts.drop_top);
        } else {
            std::vector<Su2::Label> labels;
            for (int t : parse_label_list(opts.labels)) labels.push_back(Su2::Label{t});
            s = make_irrep_set(g, std::move(labels));
        }
        return run_optimize_for(g, cost_json, s, opts);
    }
    if (opts.group == "zm") {
        if (opts.modulus < 1) throw std::invalid_argument("--group zm needs --m");
        const Cyclic g(opts.modulus);
        std::vector<Cyclic::Label> labels;
        for (int k : parse_label_list(opts.labels)) labels.push_back(Cyclic::Label{k});
        return run_optimize_for(g, cost_json, make_irrep_set(g, std::move(labels)), opts);
    }
    throw std::invalid_argument("unknown group \"" + opts.group + "\" (want su2 or zm)");
}

// ---------------------------------------------------------------------------
// check: the oracle cross-check suite

struct CheckState {
    std::ostringstream out;
    bool all_ok = true;

    void report(const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) out << " (" << detail << ")";
        out << "\n";
        all_ok = all_ok && ok;
    }
};

int run_check(int n_max, std::uint64_t seed, const std::string& output) {
    const Su2 g;
    CheckState state;
    std::mt19937 rng(static_cast<std::uint32_t>(seed ^ 0x9e3779b9));

    {
        const auto rule = g.class_rule(512);
        double worst = 0.0;
        for (int a = 0; a <= 12; ++a) {
            for (int b = a; b <= 12; ++b) {
                if ((a + b) % 2 != 0) continue;
                double ip = 0.0;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                    ip += rule.weights[i] * g.character({a}, rule.nodes[i]) *
                          g.character({b}, rule.nodes[i]);
                worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
            }
        }
        state.report("character orthonormality (j <= 6)", worst < 1e-10,
                     "max deviation " + fmt15(worst));
    }

    {
        double worst = 0.0;
        for (int n = 4; n <= std::max(4, n_max); n += 2)
            worst = std::max(worst, refframe_protocol(n).result.diagnostics.at("oracle_gap"));
        state.report("refframe matrix route vs quadrature", worst < 1e-8,
                     "max gap " + fmt15(worst));
    }

    {
        double worst = 0.0;
        for (int n = 1; n <= std::max(2, n_max); ++n)
            worst = std::max(worst, maxent_estimation(n).result.diagnostics.at("oracle_gap"));
        state.report("maxent matrix route vs quadrature", worst < 1e-8,
                     "max gap " + fmt15(worst));
    }

    {
        bool ok = true;
        for (int n = 1; n <= std::min(10, std::max(2, n_max)); ++n) {
            std::map<int, int> counts;
            for (const auto& b : dense::schur_decompose(n).blocks) counts[b.twice_j] += 1;
            for (int t = n % 2; t <= n; t += 2)
                ok = ok && counts[t] == int(su2::tensor_power_multiplicity(n, {t}));
        }
        state.report("Schur block counts vs multiplicity formula", ok, "");
    }

    {
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst = 0.0;
        for (int n : {4, 6}) {
            if (n > std::max(4, n_max)) continue;
            const auto basis = dense::schur_decompose(n);
            const auto s = su2::irrep_set_for_tensor_power(n, false);
            for (int rep = 0; rep < 10; ++rep) {
                Eigen::VectorXd raw(static_cast<Eigen::Index>(s.size()));
                for (Eigen::Index i = 0; i < raw.size(); ++i)
                    raw[i] = std::abs(gauss(rng)) + 1e-3;
                raw /= raw.norm();
                const auto v = make_coefficient_vector(s, raw);
                std::array<double, 3> axis{gauss(rng), gauss(rng), gauss(rng)};
                const double theta = angle(rng);
                worst = std::max(worst,
                                 std::abs(dense::dense_povm_probability(basis, v, axis, theta) -
                                          likelihood_density(g, v, {theta})));
            }
        }
        state.report("dense Born rule vs likelihood density", worst < 1e-8,
                     "max deviation " + fmt15(worst));
    }

    {
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst = 0.0;
        for (int n = 1; n <= std::min(4, std::max(1, n_max)); ++n) {
            for (int rep = 0; rep < 5; ++rep) {
                std::array<double, 3> axis{gauss(rng), gauss(rng), gauss(rng)};
                const double theta = angle(rng);
                worst = std::max(worst, std::abs(dense::dense_maxent_overlap(n, axis, theta) -
                                                 std::pow(std::cos(0.5 * theta), n)));
            }
        }
        state.report("dense N-copy overlap vs cos^N(theta/2)", worst < 1e-10,
                     "max deviation " + fmt15(worst));
    }

    write_out(output, state.out.str());
    return state.all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian-optimal estimation of group transformations"};
    app.require_subcommand(1);

    ScanOptions scan;
    bool include_top = false;
    int modulus = 0;

    auto add_scan_flags = [&](CLI::App* sub) {
        sub->add_option("--n", scan.range, "N or N_lo..N_hi or N_lo..N_hi:step")->required();
        sub->add_option("--quad-nodes", scan.quad_nodes, "quadrature nodes (>= 64)")
            ->check(CLI::Range(64, 1 << 20));
        sub->add_option("--format", scan.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output", scan.output, "output path (default: stdout)");
        sub->add_flag("--no-coefficients", scan.no_coefficients,
                      "omit coefficient arrays from JSON records");
    };

    auto* refframe = app.add_subcommand("refframe", "reference-frame alignment scan");
    add_scan_flags(refframe);
    refframe->add_flag("--include-top", include_top, "keep the top-spin sector");

    auto* maxent = app.add_subcommand("maxent", "N-copy entangled-state estimation scan");
    add_scan_flags(maxent);

    auto* phase = app.add_subcommand("phase", "abelian phase estimation scan");
    add_scan_flags(phase);
    phase->add_option("--m", modulus, "cyclic group order M")->required();

    OptimizeOptions opt;
    auto* optimize = app.add_subcommand("optimize", "optimize a custom cost over an irrep set");
    optimize->add_option("--cost-file", opt.cost_file, "CostSpec JSON file")->required();
    optimize->add_option("--group", opt.group, "su2 or zm")
        ->check(CLI::IsMember({"su2", "zm"}));
    optimize->add_option("--m", opt.modulus, "cyclic group order (zm only)");
    optimize->add_option("--labels", opt.labels,
                         "comma-separated labels (twice_j for su2, residues for zm)");
    optimize->add_option("--tensor-power", opt.tensor_power,
                         "use the N-qubit tensor-power irrep set (su2)");
    optimize->add_flag("--drop-top", opt.drop_top,
                       "drop the top spin of the tensor-power set");
    optimize->add_option("--quad-nodes", opt.quad_nodes)->check(CLI::Range(64, 1 << 20));
    optimize->add_option("--output", opt.output, "output path (default: stdout)");

    int n_max = 6;
    std::uint64_t seed = 0;
    std::string check_output;
    auto* check = app.add_subcommand("check", "run the oracle cross-check suite");
    check->add_option("--n-max", n_max, "largest N exercised")->check(CLI::Range(2, 10));
    check->add_option("--seed", seed, "seed for the random probes");
    check->add_option("--output", check_output, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (refframe->parsed()) return run_refframe(scan, include_top);
        if (maxent->parsed()) return run_maxent(scan);
        if (phase->parsed()) return run_phase(scan, modulus);
        if (optimize->parsed()) return run_optimize(opt);
        if (check->parsed()) return run_check(n_max, seed, check_output);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
