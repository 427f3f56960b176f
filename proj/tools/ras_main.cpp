#include "ras/errors.hpp"
#include "ras/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace ras;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitQuadrature = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw PreconditionError("failed writing '" + path + "'");
}

struct Options {
    std::string family = "translation";
    std::string signature;
    std::string alphas;
    std::vector<double> window;
    std::string out;
    std::string csv;
    RunConfig cfg;
};

void add_run_options(CLI::App* cmd, Options& o, bool verify) {
    cmd->add_option("--family", o.family, "translation, radial or warped")->capture_default_str();
    cmd->add_option("--profile", o.cfg.profile, "catalog name or expression in xi or r")->capture_default_str();
    cmd->add_option("--n", o.cfg.n, "base dimension")->capture_default_str();
    cmd->add_option("--m", o.cfg.m, "fiber dimension (warped)");
    cmd->add_option("--signature", o.signature, "string of + and -, length n");
    cmd->add_option("--alphas", o.alphas, "comma-separated direction coefficients");
    cmd->add_option("--c", o.cfg.c, "integration constant c")->capture_default_str();
    cmd->add_option("--k", o.cfg.k, "integration constant k")->capture_default_str();
    cmd->add_option("--base", o.cfg.base, "lower limit of the integrals");
    cmd->add_option("--window", o.window, "sampling window lo hi")->expected(2);
    cmd->add_option("--samples", o.cfg.samples, "samples of the invariant")->capture_default_str();
    cmd->add_option("--grid", o.cfg.grid, "grid points per axis for coordinate checks");
    cmd->add_option("--tol-system", o.cfg.tol_system, "reduced-system tolerance")->capture_default_str();
    cmd->add_option("--tol-pde", o.cfg.tol_pde, "coordinate PDE tolerance")->capture_default_str();
    cmd->add_option("--tol-tensor", o.cfg.tol_tensor, "full tensor tolerance")->capture_default_str();
    cmd->add_option("--tol-quadrature", o.cfg.tol_quadrature, "antiderivative tolerance")->capture_default_str();
    cmd->add_option("--out", o.out, "write the JSON report here");
    cmd->add_option("--csv", o.csv, "write the samples table here");
    if (verify) {
        cmd->set_help_flag("--help", "print this help message and exit");
        cmd->add_option("--f", o.cfg.f, "potential f, or the warping function for the warped family");
        cmd->add_option("--h", o.cfg.h, "potential h (warped)");
        cmd->add_option("--rho", o.cfg.rho, "soliton function rho");
        cmd->add_option("--lambda-f", o.cfg.lambda_F, "Einstein constant of the fiber (warped)")->capture_default_str();
    }
}

RunConfig finish(Options& o) {
    RunConfig cfg = o.cfg;
    cfg.family = parse_family(o.family);
    if (!o.signature.empty()) cfg.signature = o.signature;
    if (!o.alphas.empty()) cfg.alphas = parse_real_list(o.alphas);
    if (!o.window.empty()) cfg.window = Interval(o.window[0], o.window[1]);
    return cfg;
}

int emit(const RunOutcome& outcome, const std::string& out, const std::string& csv) {
    if (!out.empty()) write_file(out, outcome.report.dump(2) + "\n");
    if (!csv.empty()) write_file(csv, outcome.csv);
    print_summary(outcome.report, std::cout);
    return outcome.pass ? 0 : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct and verify gradient Ricci almost solitons"};
    app.require_subcommand(1);

    Options construct_opts, verify_opts;
    auto* construct = app.add_subcommand("construct", "build f (or h) and rho from a profile and verify them");
    add_run_options(construct, construct_opts, false);
    auto* verify = app.add_subcommand("verify", "verify hand-written phi, f, h, rho without construction");
    add_run_options(verify, verify_opts, true);

    GalleryConfig gallery_cfg;
    std::string gallery_signature, gallery_alphas, gallery_out;
    auto* gallery = app.add_subcommand("gallery", "run the built-in example cases A, B and C");
    gallery->add_option("--tol", gallery_cfg.tol, "override every check tolerance");
    gallery->add_option("--signature", gallery_signature, "signature for case A");
    gallery->add_option("--alphas", gallery_alphas, "direction for case A");
    gallery->add_option("--out", gallery_out, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*construct) {
            const RunConfig cfg = finish(construct_opts);
            return emit(run_construct(cfg), construct_opts.out, construct_opts.csv);
        }
        if (*verify) {
            const RunConfig cfg = finish(verify_opts);
            return emit(run_verify(cfg), verify_opts.out, verify_opts.csv);
        }
        if (!gallery_signature.empty()) gallery_cfg.signature = gallery_signature;
        if (!gallery_alphas.empty()) gallery_cfg.alphas = parse_real_list(gallery_alphas);
        return emit(run_gallery(gallery_cfg), gallery_out, std::string());
    } catch (const QuadratureFailure& e) {
        std::cerr << "error: quadrature failed: " << e.what() << '\n';
        return kExitQuadrature;
    } catch (const ParseError& e) {
        std::cerr << "error: parse error at offset " << e.offset() << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
