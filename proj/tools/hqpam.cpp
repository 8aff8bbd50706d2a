// Command-line frontend: denoise / segment / bench / verify.
//
// Exit codes: 0 ok, 1 usage error, 2 runtime failure, 3 verification failure.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hq/bench.hpp"
#include "hq/driver.hpp"
#include "hq/imageio.hpp"
#include "hq/metrics.hpp"
#include "hq/presets.hpp"
#include "hq/verify.hpp"

namespace {

struct SolverOpts {
    std::string input;
    std::string output;
    std::string trace_path;
    std::string reference_path;
    std::string preset;
    std::string model = "hl";
    std::string scheme = "nffd";
    bool iso = false;
    bool aniso = false;
    double mu = 0.005;
    double lambda = 0.001;
    double kappa = 0.0;
    double eta = 1e-5;
    int sweeps = 10;
    int max_iters = 300;
    double tol = 1e-8;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    // segment extras
    double alpha = 1000.0;
    double epsilon = 0.02;
    double gamma_prox = 1e-5;
    std::string edges;

    CLI::App* cmd = nullptr;
};

void add_shared_flags(CLI::App* cmd, SolverOpts& o) {
    o.cmd = cmd;
    cmd->add_option("input", o.input, "input image (PGM P5 or 8-bit grayscale PNG)");
    cmd->add_option("--output", o.output, "output image path (.pgm or .png)");
    cmd->add_option("--scheme", o.scheme, "finite-difference scheme")
        ->check(CLI::IsMember({"nffd", "sffd"}));
    cmd->add_option("--eta", o.eta, "proximal shift of the inner sweeps");
    cmd->add_option("--sweeps", o.sweeps, "inner SRBGS cycles per proximal step");
    cmd->add_option("--max-iters", o.max_iters, "outer iteration cap");
    cmd->add_option("--tol", o.tol, "relative energy-change stopping tolerance");
    cmd->add_option("--noise-sigma", o.noise_sigma, "add seeded Gaussian noise before solving");
    cmd->add_option("--seed", o.seed, "noise generator seed");
    cmd->add_option("--trace", o.trace_path, "write per-iteration trace CSV");
    cmd->add_option("--reference", o.reference_path, "clean image for PSNR reporting");
    cmd->set_config("--config", "", "key=value config file (flags override it)");
}

void add_denoise_flags(CLI::App* cmd, SolverOpts& o) {
    add_shared_flags(cmd, o);
    cmd->add_option("--model", o.model, "regularization model")
        ->check(CLI::IsMember({"gr", "gy", "gm", "hl"}));
    cmd->add_flag("--iso", o.iso, "isotropic coupling of the two gradient components");
    cmd->add_flag("--aniso", o.aniso, "per-component (anisotropic) regularization [default]");
    cmd->add_option("--mu", o.mu, "data/regularization weight mu");
    cmd->add_option("--lambda", o.lambda, "model parameter lambda");
    cmd->add_option("--kappa", o.kappa, "gy proximal weight (defaults to mu)");
    cmd->add_option("--preset", o.preset, "named parameter preset (see --list-presets)");
}

hq::Model parse_model(const std::string& name) {
    if (name == "gr") return hq::Model::gr;
    if (name == "gy") return hq::Model::gy;
    if (name == "gm") return hq::Model::gm;
    if (name == "hl") return hq::Model::hl;
    if (name == "ms") return hq::Model::ms;
    throw std::invalid_argument("unknown model '" + name + "'");
}

// Builds the model configuration: preset first (if any), explicit flags on
// top of it.
hq::ModelConfig build_config(const SolverOpts& o, bool segment) {
    hq::ModelConfig cfg;
    if (!o.preset.empty()) {
        const hq::Preset* p = hq::find_preset(o.preset);
        if (!p) throw std::invalid_argument("unknown preset '" + o.preset + "'");
        cfg = p->config;
    } else if (segment) {
        cfg.model = hq::Model::ms;
        cfg.isotropy = hq::Isotropy::iso;
        cfg.mu = 1.0;
    }

    auto given = [&](const char* flag) { return o.cmd->count(flag) > 0; };

    if (!segment) {
        if (given("--model")) cfg.model = parse_model(o.model);
        if (o.iso && o.aniso) throw std::invalid_argument("--iso and --aniso are exclusive");
        if (o.iso) cfg.isotropy = hq::Isotropy::iso;
        if (o.aniso) cfg.isotropy = hq::Isotropy::aniso;
        if (o.preset.empty() && !o.iso && !o.aniso) cfg.isotropy = hq::Isotropy::aniso;
        if (given("--mu")) cfg.mu = o.mu;
        if (given("--lambda")) cfg.lambda = o.lambda;
        if (given("--kappa")) cfg.kappa = o.kappa;
    } else {
        if (given("--alpha")) cfg.alpha = o.alpha;
        else if (o.preset.empty()) cfg.alpha = o.alpha;
        if (given("--lambda") || o.preset.empty()) cfg.lambda = o.lambda;
        if (given("--epsilon") || o.preset.empty()) cfg.epsilon = o.epsilon;
        if (given("--gamma-prox")) cfg.gamma_prox = o.gamma_prox;
    }
    if (given("--eta")) cfg.sweep.eta = o.eta;
    if (given("--sweeps")) cfg.sweep.cycles = o.sweeps;
    if (given("--scheme")) cfg.sweep.scheme = o.scheme == "sffd" ? hq::Scheme::sffd : hq::Scheme::nffd;
    cfg.validate();
    return cfg;
}

void write_trace_csv(const std::string& path, const hq::SolverTrace& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace to '" + path + "'");
    out << "outer_iter,energy,psnr,step_norm_u,step_norm_aux,work_units\n";
    char line[256];
    for (const hq::TraceRow& r : trace.rows) {
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.iter, r.energy,
                      r.psnr, r.step_norm_u, r.step_norm_aux, r.work_units);
        out << line;
    }
}

struct LoadedProblem {
    hq::ScalarField u0;
    std::optional<hq::ScalarField> reference;
};

LoadedProblem load_problem(const SolverOpts& o) {
    if (o.input.empty()) throw std::invalid_argument("missing input image path");
    LoadedProblem p;
    p.u0 = hq::read_image(o.input);
    if (o.noise_sigma > 0.0)
        p.u0 = hq::add_gaussian_noise(p.u0, {o.noise_sigma, o.seed});
    if (!o.reference_path.empty()) p.reference = hq::read_image(o.reference_path);
    return p;
}

int run_solver_command(const SolverOpts& o, bool segment) {
    const hq::ModelConfig cfg = build_config(o, segment);
    LoadedProblem prob = load_problem(o);

    hq::RunConfig rc;
    rc.model = cfg;
    rc.max_outer_iters = o.max_iters;
    rc.energy_rel_tol = o.tol;
    rc.reference = std::move(prob.reference);

    auto [state, trace] = hq::run(rc, prob.u0);

    if (!o.output.empty()) hq::write_image(o.output, state.u);
    if (segment) {
        std::string edges = o.edges;
        if (edges.empty() && !o.output.empty()) {
            const auto dotpos = o.output.rfind('.');
            edges = o.output.substr(0, dotpos) + "_edges" + o.output.substr(dotpos);
        }
        if (!edges.empty())
            hq::write_image(edges, std::get<hq::ScalarField>(state.aux));
    }
    if (!o.trace_path.empty()) write_trace_csv(o.trace_path, trace);

    const double final_energy =
        trace.rows.empty() ? trace.initial_energy : trace.rows.back().energy;
    std::printf("model=%s iterations=%zu energy=%.10g\n", hq::to_string(cfg.model),
                trace.rows.size(), final_energy);
    if (rc.reference) {
        const double p = trace.rows.empty() ? trace.initial_psnr : trace.rows.back().psnr;
        std::printf("psnr=%.4f dB\n", p);
    }
    return 0;
}

std::vector<std::pair<int, int>> parse_sizes(const std::string& arg) {
    std::vector<std::pair<int, int>> sizes;
    std::size_t pos = 0;
    while (pos < arg.size()) {
        std::size_t comma = arg.find(',', pos);
        if (comma == std::string::npos) comma = arg.size();
        const std::string tok = arg.substr(pos, comma - pos);
        const std::size_t x = tok.find('x');
        if (x == std::string::npos)
            throw std::invalid_argument("bad --sizes entry '" + tok + "' (expected MxN)");
        sizes.emplace_back(std::stoi(tok.substr(0, x)), std::stoi(tok.substr(x + 1)));
        pos = comma + 1;
    }
    if (sizes.empty()) throw std::invalid_argument("--sizes is empty");
    return sizes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preconditioned alternating minimization for half-quadratic denoising and "
                 "Mumford-Shah segmentation"};
    app.require_subcommand(1);

    SolverOpts dn;
    CLI::App* denoise = app.add_subcommand("denoise", "denoise with gr/gy/gm/hl");
    add_denoise_flags(denoise, dn);
    bool list_presets = false;
    denoise->add_flag("--list-presets", list_presets, "print available presets and exit");

    SolverOpts sg;
    CLI::App* segment = app.add_subcommand("segment", "piecewise-smooth segmentation (ms)");
    add_shared_flags(segment, sg);
    segment->add_option("--alpha", sg.alpha, "smoothing weight");
    segment->add_option("--lambda", sg.lambda, "edge-length weight");
    segment->add_option("--epsilon", sg.epsilon, "edge band width");
    segment->add_option("--gamma-prox", sg.gamma_prox, "s-step proximal weight");
    segment->add_option("--preset", sg.preset, "named parameter preset");
    segment->add_option("--edges", sg.edges, "edge-indicator output image");

    SolverOpts bn;
    CLI::App* bench = app.add_subcommand("bench", "compare srbgs / cg-prox / cg-noprox");
    add_denoise_flags(bench, bn);
    int bench_outer = 100;
    std::vector<double> bench_cg_tols = {1e-3, 1e-6};
    bench->add_option("--outer", bench_outer, "outer iterations per variant");
    bench->add_option("--cg-tols", bench_cg_tols, "cg-prox relative tolerances");

    CLI::App* verify = app.add_subcommand("verify", "run the dense-oracle invariant suite");
    std::string sizes_arg = "3x3,4x5,7x7";
    std::uint64_t verify_seed = 20240901;
    verify->add_option("--sizes", sizes_arg, "comma-separated grid sizes, e.g. 3x3,4x5");
    verify->add_option("--seed", verify_seed, "random generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (denoise->parsed()) {
            if (list_presets) {
                for (const hq::Preset& p : hq::presets()) {
                    std::printf("%-20s model=%s mu=%g lambda=%g", std::string(p.name).c_str(),
                                hq::to_string(p.config.model), p.config.mu, p.config.lambda);
                    if (p.config.model == hq::Model::ms)
                        std::printf(" alpha=%g epsilon=%g", p.config.alpha, p.config.epsilon);
                    std::printf("\n");
                }
                return 0;
            }
            return run_solver_command(dn, false);
        }
        if (segment->parsed()) return run_solver_command(sg, true);
        if (bench->parsed()) {
            const hq::ModelConfig cfg = build_config(bn, false);
            const LoadedProblem prob = load_problem(bn);

            std::vector<hq::BenchVariant> variants;
            variants.push_back({hq::SolverKind::srbgs, cfg.sweep.cycles, 0.0});
            for (double t : bench_cg_tols) variants.push_back({hq::SolverKind::cg_prox, 0, t});
            variants.push_back({hq::SolverKind::cg_noprox, 0, bench_cg_tols.front()});

            const auto points =
                hq::run_bench(cfg, prob.u0, prob.reference ? &*prob.reference : nullptr,
                              bench_outer, variants);

            std::ofstream file;
            std::ostream* out = &std::cout;
            if (!bn.output.empty()) {
                file.open(bn.output);
                if (!file) throw std::runtime_error("cannot write '" + bn.output + "'");
                out = &file;
            }
            *out << "variant,outer_iter,energy,psnr,work_units,seconds\n";
            char line[256];
            for (const hq::BenchPoint& p : points) {
                std::snprintf(line, sizeof line, "%s,%d,%.17g,%.17g,%.17g,%.17g\n",
                              p.variant.c_str(), p.outer_iter, p.energy, p.psnr, p.work_units,
                              p.seconds);
                *out << line;
            }
            return 0;
        }
        if (verify->parsed()) {
            const auto results = hq::run_verification(parse_sizes(sizes_arg), verify_seed);
            bool all_ok = true;
            for (const hq::CheckResult& r : results) {
                std::printf("%s %-38s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                            r.detail.c_str());
                all_ok = all_ok && r.passed;
            }
            return all_ok ? 0 : 3;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
