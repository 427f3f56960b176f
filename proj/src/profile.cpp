#include "ras/profile.hpp"

#include "ras/errors.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace ras {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
        throw PreconditionError("Interval: need finite lo <= hi");
}

std::vector<double> Interval::grid(int count) const {
    if (count < 1) throw PreconditionError("Interval::grid: count must be positive");
    if (count == 1) return {0.5 * (lo + hi)};
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    out.back() = hi;
    return out;
}

// ------------------------------------------------------------------ Profile

Profile::Profile(Fn fn, std::string label, Variable variable)
    : fn_(std::move(fn)), label_(std::move(label)), variable_(variable) {}

Profile Profile::from_expression(const Expression& e, std::string label) {
    if (label.empty()) label = e.to_string();
    return Profile([e](const Dual2& t) { return e.eval(t); }, std::move(label), e.variable());
}

Profile Profile::parse(std::string_view text) { return from_expression(Expression::parse(text), std::string(text)); }

Profile Profile::constant(double value) {
    return Profile([value](const Dual2&) { return Dual2{value}; }, "const(" + std::to_string(value) + ")");
}

Profile Profile::from_values(std::function<double(double)> fn, std::string label) {
    return Profile(
        [fn = std::move(fn)](const Dual2& t) {
            const double x = t.value;
            if (t.d1 == 0.0 && t.d2 == 0.0) return Dual2{fn(x)};
            const double h = std::max(1.0, std::abs(x)) * 1e-4;
            const double f0 = fn(x);
            const double fp = fn(x + h);
            const double fm = fn(x - h);
            return t.chain(f0, (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h));
        },
        std::move(label));
}

Profile Profile::validated_on(const Interval& window) const {
    double previous = 0.0;
    for (double t : window.grid(kProfileScanPoints)) {
        const double v = (*this)(t);
        if (!(std::abs(v) > kConformalThreshold) || v * previous < 0.0)
            throw DomainViolation("profile '" + label_ + "' vanishes near t = " + std::to_string(t));
        previous = v;
    }
    Profile out = *this;
    out.domain_ = window;
    return out;
}

std::optional<Profile> catalog_profile(std::string_view name) {
    if (name == "paperA")
        return Profile([](const Dual2& t) { return recip(Dual2{1.0} + t * t); }, "paperA", Variable::xi);
    if (name == "paperB") return Profile([](const Dual2& t) { return exp(-cosh(t)); }, "paperB", Variable::xi);
    if (name == "paperC") return Profile([](const Dual2& t) { return exp(-(t * t)); }, "paperC", Variable::r);
    if (name == "linear") return Profile([](const Dual2& t) { return t; }, "linear");
    if (name.starts_with("const(") && name.ends_with(")")) {
        const std::string_view arg = name.substr(6, name.size() - 7);
        double v = 0.0;
        const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), v);
        if (res.ec != std::errc() || res.ptr != arg.data() + arg.size())
            throw ParseError(6, {"number"}, "const(a): malformed constant");
        return Profile([v](const Dual2&) { return Dual2{v}; }, std::string(name));
    }
    return std::nullopt;
}

Profile resolve_profile(std::string_view text) {
    if (auto p = catalog_profile(text)) return *p;
    return Profile::parse(text);
}

// ---------------------------------------------------------------- invariants

double eps_i0(const Signature& sig, const std::vector<double>& alphas) {
    if (static_cast<int>(alphas.size()) != sig.dim())
        throw PreconditionError("eps_i0: alphas and signature lengths differ");
    double s = 0.0;
    for (int i = 0; i < sig.dim(); ++i) s += sig[i] * alphas[static_cast<std::size_t>(i)] * alphas[static_cast<std::size_t>(i)];
    return s;
}

TranslationDirection::TranslationDirection(std::vector<double> alphas, Signature sig)
    : alphas_(std::move(alphas)), sig_(std::move(sig)), eps_i0_(ras::eps_i0(sig_, alphas_)) {
    bool any = false;
    for (double a : alphas_) {
        if (!std::isfinite(a)) throw PreconditionError("TranslationDirection: alphas must be finite");
        any = any || a != 0.0;
    }
    if (!any) throw PreconditionError("TranslationDirection: alphas must not all vanish");
}

double TranslationDirection::xi(const Point& p) const {
    if (p.dim() != dim()) throw PreconditionError("TranslationDirection: point dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) s += alphas_[static_cast<std::size_t>(i)] * p[i];
    return s;
}

RadialCoordinate::RadialCoordinate(int n) : n_(n) {
    if (n_ < 1) throw PreconditionError("RadialCoordinate: dimension must be positive");
}

RadialCoordinate::RadialCoordinate(const Signature& sig) : n_(sig.dim()) {
    if (!sig.is_euclidean()) throw PreconditionError("RadialCoordinate: the radial invariant needs a Euclidean signature");
}

double RadialCoordinate::r(const Point& p) const {
    if (p.dim() != n_) throw PreconditionError("RadialCoordinate: point dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += p[i] * p[i];
    return s;
}

// ------------------------------------------------------------------ lifting

ScalarField lift_translation(const Profile& p, const TranslationDirection& d) {
    const int n = d.dim();
    return ScalarField(n, [p, d, n](const Point& x) {
        const Dual2 v = p.eval2(d.xi(x));
        Eigen::Map<const Eigen::VectorXd> a(d.alphas().data(), n);
        return Jet(v.value, v.d1 * a, v.d2 * (a * a.transpose()));
    });
}

ScalarField lift_radial(const Profile& p, const RadialCoordinate& rc) {
    const int n = rc.dim();
    return ScalarField(n, [p, rc, n](const Point& x) {
        const Dual2 v = p.eval2(rc.r(x));
        Eigen::Map<const Eigen::VectorXd> xv(x.coords().data(), n);
        Eigen::MatrixXd h = 4.0 * v.d2 * (xv * xv.transpose());
        h.diagonal().array() += 2.0 * v.d1;
        return Jet(v.value, 2.0 * v.d1 * xv, std::move(h));
    });
}

} // namespace ras
