#include "ras/jet.hpp"

#include "ras/errors.hpp"

#include <cmath>

namespace ras {

Jet::Jet(int dim, double value)
    : value_(value), grad_(Eigen::VectorXd::Zero(dim)), hess_(Eigen::MatrixXd::Zero(dim, dim)) {}

Jet::Jet(double value, Eigen::VectorXd gradient, Eigen::MatrixXd hessian)
    : value_(value), grad_(std::move(gradient)), hess_(std::move(hessian)) {
    if (hess_.rows() != grad_.size() || hess_.cols() != grad_.size())
        throw PreconditionError("Jet: Hessian shape does not match gradient length");
}

Jet Jet::variable(int dim, int index, double value) {
    Jet j(dim, value);
    j.grad_(index) = 1.0;
    return j;
}

std::vector<Jet> Jet::coordinates(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    std::vector<Jet> out;
    out.reserve(x.size());
    for (int i = 0; i < n; ++i) out.push_back(variable(n, i, x[i]));
    return out;
}

Jet Jet::embedded(int total_dim) const {
    const int n = dim();
    if (total_dim < n) throw PreconditionError("Jet::embedded: target dimension too small");
    Jet out(total_dim, value_);
    out.grad_.head(n) = grad_;
    out.hess_.topLeftCorner(n, n) = hess_;
    return out;
}

Jet Jet::chain(double f0, double f1, double f2) const {
    Jet out;
    out.value_ = f0;
    out.grad_ = f1 * grad_;
    out.hess_ = f1 * hess_ + f2 * (grad_ * grad_.transpose());
    return out;
}

Jet& Jet::operator+=(const Jet& o) {
    value_ += o.value_;
    grad_ += o.grad_;
    hess_ += o.hess_;
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    value_ -= o.value_;
    grad_ -= o.grad_;
    hess_ -= o.hess_;
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    // (ab)_ij = a b_ij + b a_ij + a_i b_j + a_j b_i
    Eigen::MatrixXd cross = grad_ * o.grad_.transpose();
    hess_ = value_ * o.hess_ + o.value_ * hess_ + cross + cross.transpose();
    grad_ = value_ * o.grad_ + o.value_ * grad_;
    value_ *= o.value_;
    return *this;
}

Jet& Jet::operator*=(double s) {
    value_ *= s;
    grad_ *= s;
    hess_ *= s;
    return *this;
}

Jet& Jet::operator+=(double s) {
    value_ += s;
    return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(Jet a, const Jet& b) { return a *= b; }
Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
Jet operator-(const Jet& a) { return a * -1.0; }
Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a += -s; }
Jet operator-(double s, const Jet& a) { return -a + s; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
Jet operator/(double s, const Jet& a) { return s * recip(a); }

Jet recip(const Jet& a) {
    const double v = a.value();
    if (v == 0.0) throw EvalDomainError("reciprocal of zero");
    const double r = 1.0 / v;
    return a.chain(r, -r * r, 2.0 * r * r * r);
}

Jet exp(const Jet& a) {
    const double e = std::exp(a.value());
    return a.chain(e, e, e);
}

Jet log(const Jet& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw EvalDomainError("ln of a non-positive value");
    return a.chain(std::log(v), 1.0 / v, -1.0 / (v * v));
}

Jet sin(const Jet& a) {
    const double s = std::sin(a.value());
    return a.chain(s, std::cos(a.value()), -s);
}

Jet cos(const Jet& a) {
    const double c = std::cos(a.value());
    return a.chain(c, -std::sin(a.value()), -c);
}

Jet sinh(const Jet& a) {
    const double s = std::sinh(a.value());
    return a.chain(s, std::cosh(a.value()), s);
}

Jet cosh(const Jet& a) {
    const double c = std::cosh(a.value());
    return a.chain(c, std::sinh(a.value()), c);
}

Jet sqrt(const Jet& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw EvalDomainError("sqrt of a non-positive value");
    const double s = std::sqrt(v);
    return a.chain(s, 0.5 / s, -0.25 / (s * v));
}

Jet pow(const Jet& a, double p) {
    if (p == std::floor(p) && std::abs(p) <= 64.0) {
        // Repeated multiplication keeps x^0, x^1 and x^2 well defined at x = 0.
        const int e = static_cast<int>(std::abs(p));
        Jet base = p < 0.0 ? recip(a) : a;
        Jet out(a.dim(), 1.0);
        for (int i = 0; i < e; ++i) out *= base;
        return out;
    }
    const double v = a.value();
    if (v < 0.0 && p != std::floor(p)) throw EvalDomainError("non-integer power of a negative value");
    return a.chain(std::pow(v, p), p * std::pow(v, p - 1.0), p * (p - 1.0) * std::pow(v, p - 2.0));
}

} // namespace ras
