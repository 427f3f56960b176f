#pragma once

#include "ras/dual2.hpp"
#include "ras/expression.hpp"
#include "ras/fields.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ras {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_);

    double width() const noexcept { return hi - lo; }
    bool contains(double t) const noexcept { return t >= lo && t <= hi; }
    /// Widened by frac * width() on both sides.
    Interval padded(double frac) const { return {lo - frac * width(), hi + frac * width()}; }
    Interval hull(double t) const { return {std::min(lo, t), std::max(hi, t)}; }
    /// `count` uniformly spaced points including both ends (count >= 2), or the midpoint if count == 1.
    std::vector<double> grid(int count) const;
};

/// Number of points used when scanning a profile for zeros.
inline constexpr int kProfileScanPoints = 1024;

/// Smooth one-variable function with exact first and second derivatives.
/// Evaluation takes a Dual2 so profiles compose; eval2(t) seeds dt/dt = 1.
class Profile {
public:
    using Fn = std::function<Dual2(const Dual2&)>;

    Profile(Fn fn, std::string label, Variable variable = Variable::none);

    static Profile from_expression(const Expression& e, std::string label = {});
    /// Parses an expression; throws ParseError.
    static Profile parse(std::string_view text);
    static Profile constant(double value);
    /// Value-only function; derivatives by central differences with step max(1,|t|)*1e-4.
    static Profile from_values(std::function<double(double)> fn, std::string label);

    Dual2 eval(const Dual2& t) const { return fn_(t); }
    Dual2 eval2(double t) const { return fn_(Dual2::variable(t)); }
    double operator()(double t) const { return fn_(Dual2{t}).value; }

    const std::string& label() const noexcept { return label_; }
    Variable variable() const noexcept { return variable_; }
    const std::optional<Interval>& domain() const noexcept { return domain_; }

    /// Scans |phi| on kProfileScanPoints points of the window; throws
    /// DomainViolation if it ever drops to kConformalThreshold or below, or changes sign between neighbours.
    /// Returns a copy whose declared domain is the window.
    Profile validated_on(const Interval& window) const;

private:
    Fn fn_;
    std::string label_;
    Variable variable_;
    std::optional<Interval> domain_;
};

/// Built-in profiles: paperA = 1/(1+xi^2), paperB = exp(-cosh xi),
/// paperC = exp(-r^2), linear = t, const(a).
std::optional<Profile> catalog_profile(std::string_view name);
/// Catalog name, or else an expression.
Profile resolve_profile(std::string_view text);

/// sum_i eps_i alpha_i^2
double eps_i0(const Signature& sig, const std::vector<double>& alphas);

/// xi = sum_i alpha_i x_i, together with the signature it lives in.
class TranslationDirection {
public:
    TranslationDirection(std::vector<double> alphas, Signature sig);

    int dim() const noexcept { return sig_.dim(); }
    const std::vector<double>& alphas() const noexcept { return alphas_; }
    const Signature& signature() const noexcept { return sig_; }
    double eps_i0() const noexcept { return eps_i0_; }
    bool is_null() const noexcept { return eps_i0_ == 0.0; }
    double xi(const Point& p) const;

private:
    std::vector<double> alphas_;
    Signature sig_;
    double eps_i0_;
};

/// r = sum_i x_i^2 on Euclidean R^n.
class RadialCoordinate {
public:
    explicit RadialCoordinate(int n);
    explicit RadialCoordinate(const Signature& sig);

    int dim() const noexcept { return n_; }
    double r(const Point& p) const;

private:
    int n_;
};

/// x -> phi(sum alpha_i x_i); s_,i = alpha_i phi', s_,ij = alpha_i alpha_j phi''.
ScalarField lift_translation(const Profile& p, const TranslationDirection& d);
/// x -> phi(sum x_i^2); s_,i = 2 x_i phi', s_,ij = 4 x_i x_j phi'' + 2 delta_ij phi'.
ScalarField lift_radial(const Profile& p, const RadialCoordinate& rc);

} // namespace ras
