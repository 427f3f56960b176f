#include "ras/dual2.hpp"

#include "ras/errors.hpp"

#include <cmath>

namespace ras {

Dual2 recip(const Dual2& a) {
    if (a.value == 0.0) throw EvalDomainError("division by zero");
    const double r = 1.0 / a.value;
    return a.chain(r, -r * r, 2.0 * r * r * r);
}

Dual2 exp(const Dual2& a) {
    const double e = std::exp(a.value);
    return a.chain(e, e, e);
}

Dual2 log(const Dual2& a) {
    if (!(a.value > 0.0)) throw EvalDomainError("ln of a non-positive value");
    return a.chain(std::log(a.value), 1.0 / a.value, -1.0 / (a.value * a.value));
}

Dual2 sin(const Dual2& a) {
    const double s = std::sin(a.value);
    return a.chain(s, std::cos(a.value), -s);
}

Dual2 cos(const Dual2& a) {
    const double c = std::cos(a.value);
    return a.chain(c, -std::sin(a.value), -c);
}

Dual2 sinh(const Dual2& a) {
    const double s = std::sinh(a.value);
    return a.chain(s, std::cosh(a.value), s);
}

Dual2 cosh(const Dual2& a) {
    const double c = std::cosh(a.value);
    return a.chain(c, std::sinh(a.value), c);
}

Dual2 sqrt(const Dual2& a) {
    if (!(a.value > 0.0)) throw EvalDomainError("sqrt of a non-positive value");
    const double s = std::sqrt(a.value);
    return a.chain(s, 0.5 / s, -0.25 / (s * a.value));
}

Dual2 pow(const Dual2& a, double p) {
    if (p == std::floor(p) && std::abs(p) <= 64.0) {
        const int e = static_cast<int>(std::abs(p));
        const Dual2 base = p < 0.0 ? recip(a) : a;
        Dual2 out{1.0};
        for (int i = 0; i < e; ++i) out = out * base;
        return out;
    }
    if (a.value < 0.0) throw EvalDomainError("non-integer power of a negative value");
    if (a.value == 0.0 && p < 2.0) throw EvalDomainError("derivative of a fractional power at zero");
    return a.chain(std::pow(a.value, p), p * std::pow(a.value, p - 1.0), p * (p - 1.0) * std::pow(a.value, p - 2.0));
}

Dual2 pow(const Dual2& a, const Dual2& b) {
    if (b.d1 == 0.0 && b.d2 == 0.0) return pow(a, b.value);
    if (!(a.value > 0.0)) throw EvalDomainError("variable exponent requires a positive base");
    return exp(b * log(a));
}

} // namespace ras
