#pragma once

namespace ras {

/// Univariate second-order Taylor number: value, first and second derivative
/// with respect to a single seed variable.
struct Dual2 {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    constexpr Dual2() = default;
    constexpr Dual2(double v, double first = 0.0, double second = 0.0) : value(v), d1(first), d2(second) {}

    static constexpr Dual2 variable(double t) { return {t, 1.0, 0.0}; }

    /// Compose with g where (g0, g1, g2) are g and its derivatives at value.
    constexpr Dual2 chain(double g0, double g1, double g2) const { return {g0, g1 * d1, g1 * d2 + g2 * d1 * d1}; }
};

constexpr Dual2 operator+(const Dual2& a, const Dual2& b) { return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2}; }
constexpr Dual2 operator-(const Dual2& a, const Dual2& b) { return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2}; }
constexpr Dual2 operator-(const Dual2& a) { return {-a.value, -a.d1, -a.d2}; }
constexpr Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.value * b.value, a.d1 * b.value + a.value * b.d1, a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}
constexpr Dual2 operator*(double s, const Dual2& a) { return {s * a.value, s * a.d1, s * a.d2}; }
constexpr Dual2 operator*(const Dual2& a, double s) { return s * a; }

Dual2 recip(const Dual2& a);
inline Dual2 operator/(const Dual2& a, const Dual2& b) { return a * recip(b); }

Dual2 exp(const Dual2& a);
Dual2 log(const Dual2& a);
Dual2 sin(const Dual2& a);
Dual2 cos(const Dual2& a);
Dual2 sinh(const Dual2& a);
Dual2 cosh(const Dual2& a);
Dual2 sqrt(const Dual2& a);
/// a^p for a constant exponent; integer exponents allow negative bases.
Dual2 pow(const Dual2& a, double p);
/// a^b with both sides varying; requires a > 0.
Dual2 pow(const Dual2& a, const Dual2& b);

} // namespace ras
