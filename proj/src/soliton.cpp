#include "ras/soliton.hpp"

#include "ras/errors.hpp"

#include <cmath>

namespace ras {

std::string_view family_name(Family f) {
    switch (f) {
    case Family::translation: return "translation";
    case Family::radial: return "radial";
    case Family::warped: return "warped";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "translation") return Family::translation;
    if (name == "radial") return Family::radial;
    if (name == "warped") return Family::warped;
    throw PreconditionError("unknown family '" + std::string(name) + "' (expected translation, radial or warped)");
}

double default_base(Family family, const Interval& window) {
    if (family == Family::radial && !window.contains(0.0)) return 1.0;
    return 0.0;
}

Interval working_interval(const Interval& window, double base) { return window.padded(0.05).hull(base); }

// -------------------------------------------------------------- SolitonData

double SolitonData::eps_i0() const { return direction ? direction->eps_i0() : 1.0; }

double SolitonData::invariant(const Point& base_point) const {
    if (family == Family::radial) return RadialCoordinate(n).r(base_point);
    return direction->xi(base_point);
}

ScalarField SolitonData::lift(const Profile& p) const {
    if (family == Family::radial) return lift_radial(p, RadialCoordinate(signature));
    if (!direction) throw PreconditionError("SolitonData: translation-invariant data needs a direction");
    return lift_translation(p, *direction);
}

ScalarField SolitonData::warping_field() const {
    if (!warping) throw PreconditionError("SolitonData: only the warped family has a warping function");
    return lift(*warping);
}

MetricField SolitonData::metric() const {
    if (family == Family::warped) return MetricField::warped(signature, phi_field(), warping_field(), m);
    return MetricField::conformal(signature, phi_field());
}

SolitonData SolitonData::assemble_conformal(Family family, Profile phi, Profile potential, Profile rho,
                                            const Signature& sig, std::optional<TranslationDirection> direction,
                                            Interval window) {
    if (family == Family::warped) throw PreconditionError("assemble_conformal: use assemble_warped for the warped family");
    if (family == Family::translation && (!direction || direction->signature() != sig))
        throw PreconditionError("assemble_conformal: translation data needs a direction in the given signature");
    if (family == Family::radial) {
        if (!sig.is_euclidean()) throw PreconditionError("assemble_conformal: radial family needs a Euclidean signature");
        direction.reset();
    }
    return SolitonData{.family = family,
                       .signature = sig,
                       .n = sig.dim(),
                       .m = 0,
                       .direction = std::move(direction),
                       .phi = std::move(phi),
                       .potential = std::move(potential),
                       .rho = std::move(rho),
                       .warping = std::nullopt,
                       .constants = {},
                       .window = window,
                       .inner = nullptr,
                       .outer = nullptr};
}

SolitonData SolitonData::assemble_warped(Profile phi, Profile warping, Profile potential, Profile rho,
                                         const TranslationDirection& direction, int m, Interval window) {
    if (m < 1) throw PreconditionError("assemble_warped: fiber dimension must be at least 1");
    return SolitonData{.family = Family::warped,
                       .signature = direction.signature(),
                       .n = direction.dim(),
                       .m = m,
                       .direction = direction,
                       .phi = std::move(phi),
                       .potential = std::move(potential),
                       .rho = std::move(rho),
                       .warping = std::move(warping),
                       .constants = {},
                       .window = window,
                       .inner = nullptr,
                       .outer = nullptr};
}

// --------------------------------------------------------------- recipes

namespace {

void require_base_dim(int n) {
    if (n < 3) throw PreconditionError("construction needs n >= 3");
}

std::shared_ptr<const Antiderivative> inner_integral(const Profile& phi, double base, const Interval& span, double tol) {
    return std::make_shared<const Antiderivative>(
        [phi](double t) {
            const Dual2 p = phi.eval2(t);
            return p.value * p.d2;
        },
        base, span, tol);
}

/// y with phi^2 y = q, q = q0 - w I, and its exact derivative using I' = phi phi''.
struct LinearOdeSolution {
    double y;
    double dy;
};

LinearOdeSolution solve_first_order(const Dual2& p, double q0, double weight, double inner) {
    const double q = q0 - weight * inner;
    const double y = q / (p.value * p.value);
    const double dy = (-weight * p.value * p.d2 * p.value - 2.0 * p.d1 * q) / (p.value * p.value * p.value);
    return {y, dy};
}

Profile zero_profile() { return Profile([](const Dual2&) { return Dual2{0.0}; }, "0"); }

} // namespace

SolitonData construct_translation(const Profile& phi_in, int n, const TranslationDirection& d,
                                  const IntegrationConstants& ic, const Interval& window, double tol) {
    require_base_dim(n);
    if (d.dim() != n) throw PreconditionError("construct_translation: direction dimension differs from n");
    const Interval span = working_interval(window, ic.base);
    const Profile phi = phi_in.validated_on(span);

    auto inner = inner_integral(phi, ic.base, span, tol);
    const double c = ic.c;
    const double w = n - 2.0;
    auto slope = [phi, inner, c, w](double t) { return solve_first_order(phi.eval2(t), c, w, (*inner)(t)); };
    auto outer = std::make_shared<const Antiderivative>([slope](double t) { return slope(t).y; }, ic.base, span, tol);

    Profile potential(
        [slope, outer, k = ic.k](const Dual2& t) {
            const auto s = slope(t.value);
            return t.chain((*outer)(t.value) + k, s.y, s.dy);
        },
        "f");

    const double eps = d.eps_i0();
    Profile rho = eps == 0.0 ? zero_profile()
                             : Profile::from_values(
                                   [phi, slope, eps, n](double t) {
                                       const Dual2 p = phi.eval2(t);
                                       const double fp = slope(t).y;
                                       return eps * (p.value * p.d2 - (n - 1) * p.d1 * p.d1 - p.value * p.d1 * fp);
                                   },
                                   "rho");

    return SolitonData{.family = Family::translation,
                       .signature = d.signature(),
                       .n = n,
                       .m = 0,
                       .direction = d,
                       .phi = phi,
                       .potential = std::move(potential),
                       .rho = std::move(rho),
                       .warping = std::nullopt,
                       .constants = ic,
                       .window = span,
                       .inner = std::move(inner),
                       .outer = std::move(outer)};
}

SolitonData construct_radial(const Profile& phi_in, int n, const IntegrationConstants& ic, const Interval& window,
                             double tol) {
    require_base_dim(n);
    const Interval span = working_interval(window, ic.base);
    const Profile phi = phi_in.validated_on(span);

    auto inner = inner_integral(phi, ic.base, span, tol);
    const double c = ic.c;
    const double w = n - 2.0;
    auto slope = [phi, inner, c, w](double t) { return solve_first_order(phi.eval2(t), c, w, (*inner)(t)); };
    auto outer = std::make_shared<const Antiderivative>([slope](double t) { return slope(t).y; }, ic.base, span, tol);

    Profile potential(
        [slope, outer, k = ic.k](const Dual2& t) {
            const auto s = slope(t.value);
            return t.chain((*outer)(t.value) + k, s.y, s.dy);
        },
        "f");

    Profile rho = Profile::from_values(
        [phi, inner, c, n](double r) {
            const Dual2 p = phi.eval2(r);
            const double ratio = p.d1 / p.value;
            return 4.0 * (n - 1) * p.value * p.d1 + 4.0 * r * p.value * p.d2 - 4.0 * (n - 1) * r * p.d1 * p.d1 -
                   4.0 * c * r * ratio + 2.0 * c - 2.0 * (n - 2) * (1.0 - 2.0 * r * ratio) * (*inner)(r);
        },
        "rho");

    return SolitonData{.family = Family::radial,
                       .signature = Signature::euclidean(n),
                       .n = n,
                       .m = 0,
                       .direction = std::nullopt,
                       .phi = phi,
                       .potential = std::move(potential),
                       .rho = std::move(rho),
                       .warping = std::nullopt,
                       .constants = ic,
                       .window = span,
                       .inner = std::move(inner),
                       .outer = std::move(outer)};
}

SolitonData construct_warped(const Profile& phi_in, int n, int m, const TranslationDirection& d,
                             const IntegrationConstants& ic, const Interval& window, double tol) {
    require_base_dim(n);
    if (m < 1) throw PreconditionError("construct_warped: fiber dimension must be at least 1");
    if (d.dim() != n) throw PreconditionError("construct_warped: direction dimension differs from n");
    const Interval span = working_interval(window, ic.base);
    const Profile phi = phi_in.validated_on(span);
    for (double t : span.grid(kProfileScanPoints))
        if (!(phi(t) > 0.0)) throw DomainViolation("warped family needs phi > 0 (warping f = 1/phi must be positive)");

    auto inner = inner_integral(phi, ic.base, span, tol);
    const double k = ic.k;
    const double w = n + m - 2.0;
    auto slope = [phi, inner, k, w](double t) { return solve_first_order(phi.eval2(t), k, w, (*inner)(t)); };
    auto outer = std::make_shared<const Antiderivative>([slope](double t) { return slope(t).y; }, ic.base, span, tol);

    const double h_base = ic.c - ic.k / phi(ic.base);
    Profile potential(
        [slope, outer, h_base](const Dual2& t) {
            const auto s = slope(t.value);
            return t.chain(h_base + (*outer)(t.value), s.y, s.dy);
        },
        "h");
    Profile warping([phi](const Dual2& t) { return recip(phi.eval(t)); }, "f");

    const double eps = d.eps_i0();
    Profile rho = eps == 0.0 ? zero_profile()
                             : Profile::from_values(
                                   [phi, inner, eps, k, N = n + m](double t) {
                                       const Dual2 p = phi.eval2(t);
                                       const double ratio = p.d1 / p.value;
                                       return eps * (p.value * p.d2 - (N - 1) * p.d1 * p.d1 - k * ratio +
                                                     (N - 2) * ratio * (*inner)(t));
                                   },
                                   "rho");

    return SolitonData{.family = Family::warped,
                       .signature = d.signature(),
                       .n = n,
                       .m = m,
                       .direction = d,
                       .phi = phi,
                       .potential = std::move(potential),
                       .rho = std::move(rho),
                       .warping = std::move(warping),
                       .constants = ic,
                       .window = span,
                       .inner = std::move(inner),
                       .outer = std::move(outer)};
}

} // namespace ras
