#pragma once

#include "ras/verifier.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ras {

using Json = nlohmann::ordered_json;

/// Everything a `construct` or `verify` run needs. Unset optionals take the
/// family defaults.
struct RunConfig {
    Family family = Family::translation;
    std::string profile = "paperA";
    int n = 3;
    std::optional<int> m;
    std::optional<std::string> signature;
    std::optional<std::vector<double>> alphas;
    double c = 1.0;
    double k = 0.0;
    std::optional<double> base;
    std::optional<Interval> window;
    int samples = 256;
    std::optional<int> grid;
    double tol_system = kSystemTol;
    double tol_pde = 10 * kSystemTol;
    double tol_tensor = kTensorTol;
    double tol_quadrature = kDefaultQuadratureTol;
    double lambda_F = 0.0;

    // verify only
    std::optional<std::string> f;
    std::optional<std::string> h;
    std::optional<std::string> rho;
};

struct RunOutcome {
    Json report;
    std::string csv;
    bool pass = false;
};

struct GalleryConfig {
    std::optional<double> tol;
    std::optional<std::string> signature;
    std::optional<std::vector<double>> alphas;
};

/// Default sampling window of a family: [-3,3], [0.1,4] (radial), [-2,2] (warped).
Interval default_window(Family family);

/// Comma-separated reals; throws ParseError.
std::vector<double> parse_real_list(std::string_view text);
/// Shortest decimal that reads back to the same double.
std::string format_real(double v);

RunOutcome run_construct(const RunConfig& cfg);
RunOutcome run_verify(const RunConfig& cfg);
RunOutcome run_gallery(const GalleryConfig& cfg);

/// Human-readable summary of a construct/verify report or a gallery report.
void print_summary(const Json& report, std::ostream& out);

} // namespace ras
