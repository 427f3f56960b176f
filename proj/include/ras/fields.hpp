#pragma once

#include "ras/jet.hpp"

#include <Eigen/Dense>

#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ras {

/// Nondegeneracy threshold on |det g|.
inline constexpr double kDetThreshold = 1e-12;
/// Conformal factors with |phi| at or below this are outside the validity domain.
inline constexpr double kConformalThreshold = 1e-9;

/// Diagonal flat metric data g_ij = delta_ij eps_i with eps_i in {-1, +1}.
class Signature {
public:
    explicit Signature(std::vector<int> eps);
    /// Parses a string of '+' and '-' characters, e.g. "-+++".
    static Signature parse(std::string_view spec);
    static Signature euclidean(int n);

    int dim() const noexcept { return static_cast<int>(eps_.size()); }
    int operator[](int i) const { return eps_.at(static_cast<std::size_t>(i)); }
    const std::vector<int>& epsilons() const noexcept { return eps_; }
    bool is_euclidean() const noexcept;
    std::string to_string() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<int> eps_;
};

/// A point of coordinate space; entries are always finite.
class Point {
public:
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    int dim() const noexcept { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    std::span<const double> coords() const noexcept { return coords_; }

private:
    std::vector<double> coords_;
};

/// Smooth function R^n -> R exposing value, gradient and Hessian through jets.
class ScalarField {
public:
    using JetFn = std::function<Jet(const Point&)>;

    ScalarField(int dim, JetFn fn);

    static ScalarField constant(int dim, double value);
    /// Black-box field; derivatives come from central finite differences
    /// with step max(1, |x_a|) * 1e-4 per axis.
    static ScalarField from_function(int dim, std::function<double(const Point&)> fn);

    int dim() const noexcept { return dim_; }
    Jet jet(const Point& p) const;
    double value(const Point& p) const { return jet(p).value(); }

    /// Same field viewed on R^total_dim, depending only on the first dim() coordinates.
    ScalarField extended(int total_dim) const;

private:
    int dim_;
    JetFn fn_;
};

/// Metric values and coordinate derivatives at one point:
/// g(i,j), dg[a](i,j) = d_a g_ij, ddg[a*n+b](i,j) = d_a d_b g_ij.
struct MetricJet {
    int n = 0;
    Eigen::MatrixXd g;
    std::vector<Eigen::MatrixXd> dg;
    std::vector<Eigen::MatrixXd> ddg;

    /// Assemble from per-entry jets; entry(i, j) is only called for i <= j
    /// and mirrored, so the result is symmetric exactly.
    static MetricJet from_entries(int n, const std::function<Jet(int, int)>& entry);
    const Eigen::MatrixXd& second(int a, int b) const { return ddg[static_cast<std::size_t>(a * n + b)]; }
};

/// Symmetric matrix-valued field R^n -> Sym(n) with derivative access.
class MetricField {
public:
    using JetFn = std::function<MetricJet(const Point&)>;

    MetricField(int dim, JetFn fn);

    /// Constant pseudo-Euclidean metric diag(eps).
    static MetricField flat(const Signature& sig);
    /// g / phi^2 for the flat metric g of the given signature.
    static MetricField conformal(const Signature& sig, ScalarField phi);
    /// Warped product (R^n, g/phi^2) x_f (R^m, identity): block diag(g/phi^2, f^2 I_m)
    /// on R^(n+m). phi and warping are fields on R^n.
    static MetricField warped(const Signature& base, ScalarField phi, ScalarField warping, int fiber_dim);
    /// (1/phi^2)(g_E + g_F) on R^(n+m) with a flat Euclidean fiber.
    static MetricField conformal_product(const Signature& base, ScalarField phi, int fiber_dim);
    /// Black-box metric; derivatives by central finite differences. fn must
    /// return an exactly symmetric matrix.
    static MetricField from_function(int dim, std::function<Eigen::MatrixXd(const Point&)> fn);

    int dim() const noexcept { return dim_; }
    MetricJet jet(const Point& p) const;

private:
    int dim_;
    JetFn fn_;
};

} // namespace ras
