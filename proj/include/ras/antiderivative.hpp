#pragma once

#include "ras/profile.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace ras {

inline constexpr double kDefaultQuadratureTol = 1e-10;
inline constexpr std::size_t kQuadratureNodeBudget = std::size_t{1} << 18;

/// Cumulative table of t -> integral of fn from base to t over a fixed span.
///
/// Built by adaptive Simpson with a Richardson-corrected panel sum. A panel
/// is accepted when both the Simpson error estimate and the cubic Hermite
/// midpoint defect stay below tol * |panel| * max(1, |fn| on the panel), so
/// the interpolated table carries the same accuracy as the nodes. Between
/// nodes the table is interpolated by cubic Hermite using the integrand values
/// as exact slopes. Queries outside the span throw DomainViolation.
class Antiderivative {
public:
    using Integrand = std::function<double(double)>;

    Antiderivative(Integrand fn, double base, Interval span, double tol = kDefaultQuadratureTol,
                   std::size_t node_budget = kQuadratureNodeBudget);

    /// Integral from base to t; exactly 0 at t == base.
    double operator()(double t) const;
    /// Integral from a to b.
    double between(double a, double b) const { return (*this)(b) - (*this)(a); }

    double base() const noexcept { return base_; }
    const Interval& span() const noexcept { return span_; }
    double tol() const noexcept { return tol_; }
    std::size_t node_count() const noexcept { return t_.size(); }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    struct Node {
        double t;
        double value;
        double slope;
    };
    void integrate_side(const Integrand& fn, double from, double to, std::vector<Node>& out, std::size_t budget);

    double base_;
    Interval span_;
    double tol_;
    std::size_t evaluations_ = 0;
    std::vector<double> t_;
    std::vector<double> value_;
    std::vector<double> slope_;
};

} // namespace ras
