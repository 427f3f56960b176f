#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace ras {

/// Second-order truncated Taylor expansion of a scalar function of n
/// variables at a point: value, gradient and Hessian. Arithmetic propagates
/// all three exactly (forward mode), so composing jets yields exact second
/// derivatives up to rounding.
class Jet {
public:
    Jet() = default;
    explicit Jet(int dim, double value = 0.0);
    Jet(double value, Eigen::VectorXd gradient, Eigen::MatrixXd hessian);

    /// Jet of the coordinate function x_index.
    static Jet variable(int dim, int index, double value);
    static std::vector<Jet> coordinates(std::span<const double> x);

    int dim() const noexcept { return static_cast<int>(grad_.size()); }
    double value() const noexcept { return value_; }
    const Eigen::VectorXd& gradient() const noexcept { return grad_; }
    const Eigen::MatrixXd& hessian() const noexcept { return hess_; }
    double d(int i) const { return grad_(i); }
    double dd(int i, int j) const { return hess_(i, j); }

    /// Re-express in a larger space whose first dim() coordinates are ours.
    Jet embedded(int total_dim) const;

    /// Apply a scalar function given its value and first two derivatives at value().
    Jet chain(double f0, double f1, double f2) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator*=(double s);
    Jet& operator+=(double s);

private:
    double value_ = 0.0;
    Eigen::VectorXd grad_;
    Eigen::MatrixXd hess_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(Jet a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(const Jet& a, double s);
Jet operator/(double s, const Jet& a);

Jet recip(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double p);

} // namespace ras
