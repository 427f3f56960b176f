#pragma once

#include "ras/fields.hpp"
#include "ras/profile.hpp"
#include "ras/soliton.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ras {

inline constexpr double kSystemTol = 1e-8;
inline constexpr double kTensorTol = 1e-5;
/// Points where |phi| or the warping function is at or below this are skipped.
inline constexpr double kSkipThreshold = 1e-6;

struct SampleRecord {
    std::vector<double> location;    // invariant value, or coordinates of a point
    std::vector<double> components;  // residual components at this sample
    double norm = 0.0;               // max |component|
};

/// Residuals of one check. sup is the max |component| over all samples and
/// decides pass/fail; rms is over all components and is diagnostic only.
class ResidualReport {
public:
    ResidualReport(std::string name, double tol);

    void add(std::vector<double> location, std::vector<double> components);
    void skip() { ++skipped_; }

    const std::string& name() const noexcept { return name_; }
    const std::vector<SampleRecord>& samples() const noexcept { return samples_; }
    double sup() const noexcept { return sup_; }
    double rms() const;
    double tol() const noexcept { return tol_; }
    bool pass() const noexcept { return sup_ <= tol_; }
    int skipped() const noexcept { return skipped_; }

private:
    std::string name_;
    double tol_;
    std::vector<SampleRecord> samples_;
    double sup_ = 0.0;
    double sum_sq_ = 0.0;
    std::size_t count_ = 0;
    int skipped_ = 0;
};

/// Warped product description: base dimension n, fiber dimension m and the
/// fiber's Einstein constant. The full-tensor check needs a flat fiber.
struct WarpedSpec {
    int n = 3;
    int m = 1;
    double lambda_F = 0.0;
    bool flat_fiber = true;

    void validate() const;
    void require_full_tensor_mode() const;
};

/// R1 = (n-2) phi'' + 2 phi' f' + phi f'',  R2 = eps_i0 [phi phi'' - (n-1) phi'^2 - phi phi' f'] - rho.
ResidualReport residual_system_translation(const SolitonData& sd, const std::vector<double>& samples,
                                           double tol = kSystemTol);

/// R1 as above in r, R2 = 4(n-1) phi phi' + 4 r phi phi'' - 4(n-1) r phi'^2 - 4 r phi phi' f' + 2 phi^2 f' - rho.
ResidualReport residual_system_radial(const SolitonData& sd, const std::vector<double>& samples, double tol = kSystemTol);

/// Three-row reduced system of the warped product (h potential, f warping).
ResidualReport residual_system_warped(const SolitonData& sd, const WarpedSpec& spec, const std::vector<double>& samples,
                                      double tol = kSystemTol);

/// Difference between rho solved from the second and from the third row of the
/// warped reduced system.
ResidualReport rho_consistency_warped(const SolitonData& sd, const WarpedSpec& spec, const std::vector<double>& samples,
                                      double tol = kSystemTol);

/// Coordinate PDE system of a conformal metric g/phi^2: one component per
/// pair i < j followed by one per diagonal index i.
ResidualReport residual_pde_conformal(const ScalarField& phi, const ScalarField& f, const ScalarField& rho,
                                      const Signature& sig, const std::vector<Point>& points, double tol = 10 * kSystemTol);

/// Coordinate PDE system of the warped product: pairs i < j, then each i, then
/// the fiber equation.
ResidualReport residual_pde_warped(const ScalarField& phi, const ScalarField& f, const ScalarField& h,
                                   const ScalarField& rho, const Signature& sig, const WarpedSpec& spec,
                                   const std::vector<Point>& points, double tol = 10 * kSystemTol);

/// sup over points of max |Ric + Hess(potential) - rho g| computed by the curvature oracle.
/// Warped data needs a spec with a flat fiber and lambda_F = 0, and points in R^(n+m).
ResidualReport residual_full_tensor(const SolitonData& sd, const std::vector<Point>& points,
                                    const std::optional<WarpedSpec>& spec = std::nullopt, double tol = kTensorTol);

/// Oracle-level residual for arbitrary fields; `skip` may veto points.
ResidualReport residual_tensor_fields(const MetricField& metric, const ScalarField& potential, const ScalarField& rho,
                                      const std::vector<Point>& points, double tol = kTensorTol,
                                      const std::function<bool(const Point&)>& skip = nullptr);

struct CompletenessProbe {
    bool bounded;
    double bound;
    bool positive;
    double min_abs;
};

/// Samples |phi| on the window. positive: no sample vanishes and phi keeps
/// one sign; min_abs is reported so callers can apply their own threshold. bound: the max.
/// bounded: the max is finite and |phi| is not growing outward at a window
/// end where the max is attained. Evidence only, not a proof.
CompletenessProbe completeness_probe(const Profile& p, const Interval& window, int samples);

/// Uniform grid with `per_axis` points per coordinate on [lo, hi]^dim.
std::vector<Point> cube_grid(int dim, double lo, double hi, int per_axis);
/// Points of cube_grid(dim, -r_max, r_max, per_axis) with r_min <= |x| <= r_max.
std::vector<Point> shell_grid(int dim, double r_min, double r_max, int per_axis);

} // namespace ras
