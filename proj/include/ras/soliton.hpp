#pragma once

#include "ras/antiderivative.hpp"
#include "ras/fields.hpp"
#include "ras/profile.hpp"

#include <memory>
#include <optional>
#include <string_view>

namespace ras {

enum class Family { translation, radial, warped };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// c and k of the recipes, plus the common lower limit of every antiderivative.
struct IntegrationConstants {
    double c = 1.0;
    double k = 0.0;
    double base = 0.0;
};

/// 0 for the translation and warped families; for the radial family 1 when
/// the window excludes the origin, else 0.
double default_base(Family family, const Interval& window);

/// Potential, soliton function and (warped family) warping function built
/// over a profile, all expressed in the invariant (xi or r) and liftable to
/// coordinate space.
///
/// For the warped family `potential` is h, `warping` is f = 1/phi and the
/// total space is R^(n+m) with a flat Euclidean fiber.
struct SolitonData {
    Family family = Family::translation;
    Signature signature{std::vector<int>{1, 1, 1}};
    int n = 3;
    int m = 0;
    std::optional<TranslationDirection> direction;

    Profile phi;
    Profile potential;
    Profile rho;
    std::optional<Profile> warping;

    IntegrationConstants constants;
    /// Interval of the invariant on which all profiles may be evaluated.
    Interval window;

    /// Integral of phi*phi'' from base and the outer integral giving the
    /// potential; empty for hand-assembled data.
    std::shared_ptr<const Antiderivative> inner;
    std::shared_ptr<const Antiderivative> outer;

    int total_dim() const noexcept { return n + m; }
    /// eps_i0 of the direction; 1 for the radial family (Euclidean).
    double eps_i0() const;
    /// Value of the invariant (xi or r) at a base point.
    double invariant(const Point& base_point) const;

    /// Profiles lifted to R^n through the family's invariant.
    ScalarField lift(const Profile& p) const;
    ScalarField phi_field() const { return lift(phi); }
    ScalarField potential_field() const { return lift(potential); }
    ScalarField rho_field() const { return lift(rho); }
    ScalarField warping_field() const;

    /// g/phi^2 on R^n, or diag(g/phi^2, f^2 I_m) on R^(n+m).
    MetricField metric() const;

    /// Hand-assembled data for checking candidate solutions without construction.
    static SolitonData assemble_conformal(Family family, Profile phi, Profile potential, Profile rho, const Signature& sig,
                                          std::optional<TranslationDirection> direction, Interval window);
    static SolitonData assemble_warped(Profile phi, Profile warping, Profile potential, Profile rho,
                                       const TranslationDirection& direction, int m, Interval window);
};

/// Working interval used by the recipes: the window padded by 5% on each
/// side, widened to contain the base.
Interval working_interval(const Interval& window, double base);

/// f' = [c - (n-2) I] / phi^2 with I = int_base phi phi'', f = int_base f' + k,
/// rho = eps_i0 [phi phi'' - (n-1) phi'^2 - phi phi' f'].
SolitonData construct_translation(const Profile& phi, int n, const TranslationDirection& d,
                                  const IntegrationConstants& ic, const Interval& window,
                                  double tol = kDefaultQuadratureTol);

/// Same potential in the variable r = |x|^2, with
/// rho = 4(n-1) phi phi' + 4 r phi phi'' - 4(n-1) r phi'^2 - 4 c r phi'/phi + 2c
///       - 2(n-2)(1 - 2 r phi'/phi) I.
SolitonData construct_radial(const Profile& phi, int n, const IntegrationConstants& ic, const Interval& window,
                             double tol = kDefaultQuadratureTol);

/// Warped family with f phi = 1 over a Ricci-flat fiber of dimension m:
/// h' = [k - (m+n-2) I] / phi^2 with h(base) = c - k/phi(base),
/// rho = eps_i0 {phi phi'' - (m+n-1) phi'^2 - k phi'/phi + (m+n-2)(phi'/phi) I}.
SolitonData construct_warped(const Profile& phi, int n, int m, const TranslationDirection& d,
                             const IntegrationConstants& ic, const Interval& window,
                             double tol = kDefaultQuadratureTol);

} // namespace ras
