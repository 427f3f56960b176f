#include "ras/verifier.hpp"

#include "ras/curvature.hpp"
#include "ras/errors.hpp"

#include <cmath>
#include <limits>

namespace ras {

// ----------------------------------------------------------- ResidualReport

ResidualReport::ResidualReport(std::string name, double tol) : name_(std::move(name)), tol_(tol) {
    if (!(tol >= 0.0)) throw PreconditionError("ResidualReport: tolerance must be non-negative");
}

void ResidualReport::add(std::vector<double> location, std::vector<double> components) {
    double norm = 0.0;
    for (double c : components) {
        const double a = std::isnan(c) ? std::numeric_limits<double>::infinity() : std::abs(c);
        norm = std::max(norm, a);
        sum_sq_ += c * c;
    }
    count_ += components.size();
    sup_ = std::max(sup_, norm);
    samples_.push_back({std::move(location), std::move(components), norm});
}

double ResidualReport::rms() const { return count_ ? std::sqrt(sum_sq_ / static_cast<double>(count_)) : 0.0; }

// --------------------------------------------------------------- WarpedSpec

void WarpedSpec::validate() const {
    if (n < 3) throw PreconditionError("WarpedSpec: base dimension must be at least 3");
    if (m < 1) throw PreconditionError("WarpedSpec: fiber dimension must be at least 1");
}

void WarpedSpec::require_full_tensor_mode() const {
    validate();
    if (lambda_F != 0.0 || !flat_fiber)
        throw PreconditionError("WarpedSpec: full-tensor checks need a flat fiber with lambda_F = 0");
}

// ------------------------------------------------------------------ helpers

namespace {

void require_samples(const ResidualReport& r) {
    if (r.samples().empty()) throw DomainViolation(r.name() + ": every sample was skipped");
}

void require_in_window(const SolitonData& sd, double t) {
    if (!sd.window.contains(t))
        throw DomainViolation("sample " + std::to_string(t) + " lies outside the data's window [" +
                              std::to_string(sd.window.lo) + ", " + std::to_string(sd.window.hi) + "]");
}

void require_family(const SolitonData& sd, Family f, const char* who) {
    if (sd.family != f)
        throw PreconditionError(std::string(who) + ": data belongs to the " + std::string(family_name(sd.family)) +
                                " family");
}

double sum_eps(const Signature& sig, const std::function<double(int)>& term) {
    double s = 0.0;
    for (int k = 0; k < sig.dim(); ++k) s += sig[k] * term(k);
    return s;
}

} // namespace

// ------------------------------------------------------------ ODE systems

ResidualReport residual_system_translation(const SolitonData& sd, const std::vector<double>& samples, double tol) {
    require_family(sd, Family::translation, "residual_system_translation");
    ResidualReport rep("system_translation", tol);
    const double n = sd.n;
    const double eps = sd.eps_i0();
    for (double t : samples) {
        require_in_window(sd, t);
        const Dual2 p = sd.phi.eval2(t);
        if (std::abs(p.value) <= kSkipThreshold) {
            rep.skip();
            continue;
        }
        const Dual2 f = sd.potential.eval2(t);
        const double rho = sd.rho(t);
        const double r1 = (n - 2) * p.d2 + 2 * p.d1 * f.d1 + p.value * f.d2;
        const double r2 = eps * (p.value * p.d2 - (n - 1) * p.d1 * p.d1 - p.value * p.d1 * f.d1) - rho;
        rep.add({t}, {r1, r2});
    }
    require_samples(rep);
    return rep;
}

ResidualReport residual_system_radial(const SolitonData& sd, const std::vector<double>& samples, double tol) {
    require_family(sd, Family::radial, "residual_system_radial");
    ResidualReport rep("system_radial", tol);
    const double n = sd.n;
    for (double r : samples) {
        require_in_window(sd, r);
        const Dual2 p = sd.phi.eval2(r);
        if (std::abs(p.value) <= kSkipThreshold) {
            rep.skip();
            continue;
        }
        const Dual2 f = sd.potential.eval2(r);
        const double rho = sd.rho(r);
        const double r1 = (n - 2) * p.d2 + 2 * p.d1 * f.d1 + p.value * f.d2;
        const double r2 = 4 * (n - 1) * p.value * p.d1 + 4 * r * p.value * p.d2 - 4 * (n - 1) * r * p.d1 * p.d1 -
                          4 * r * p.value * p.d1 * f.d1 + 2 * p.value * p.value * f.d1 - rho;
        rep.add({r}, {r1, r2});
    }
    require_samples(rep);
    return rep;
}

namespace {

struct WarpedRows {
    double row1;       // first row, equal to 0
    double row2_lhs;   // second row, equal to rho f
    double row3_lhs;   // third row, equal to rho f^2 - lambda_F
    double f;
};

WarpedRows warped_rows(const SolitonData& sd, const WarpedSpec& spec, double t) {
    const double n = spec.n;
    const double m = spec.m;
    const double eps = sd.eps_i0();
    const Dual2 p = sd.phi.eval2(t);
    const Dual2 f = sd.warping->eval2(t);
    const Dual2 h = sd.potential.eval2(t);
    const double row1 = f.value * ((n - 2) * p.d2 + 2 * p.d1 * h.d1 + p.value * h.d2) - m * p.value * f.d2 -
                        2 * m * p.d1 * f.d1;
    const double row2 = eps * (f.value * p.value * p.d2 - (n - 1) * f.value * p.d1 * p.d1 + m * p.value * p.d1 * f.d1 -
                               f.value * p.value * p.d1 * h.d1);
    const double pp = p.value * p.value;
    const double row3 = eps * (-f.value * pp * f.d2 + (n - 2) * f.value * p.value * f.d1 * p.d1 -
                               (m - 1) * pp * f.d1 * f.d1 + f.value * pp * f.d1 * h.d1);
    return {row1, row2, row3, f.value};
}

void check_warped_data(const SolitonData& sd, const WarpedSpec& spec, const char* who) {
    require_family(sd, Family::warped, who);
    spec.validate();
    if (spec.n != sd.n || spec.m != sd.m) throw PreconditionError(std::string(who) + ": spec does not match the data");
    if (!sd.warping) throw PreconditionError(std::string(who) + ": warped data lacks a warping function");
}

} // namespace

ResidualReport residual_system_warped(const SolitonData& sd, const WarpedSpec& spec, const std::vector<double>& samples,
                                      double tol) {
    check_warped_data(sd, spec, "residual_system_warped");
    ResidualReport rep("system_warped", tol);
    for (double t : samples) {
        require_in_window(sd, t);
        if (std::abs(sd.phi(t)) <= kSkipThreshold || (*sd.warping)(t) <= kSkipThreshold) {
            rep.skip();
            continue;
        }
        const WarpedRows w = warped_rows(sd, spec, t);
        const double rho = sd.rho(t);
        rep.add({t}, {w.row1, w.row2_lhs - rho * w.f, w.row3_lhs - rho * w.f * w.f + spec.lambda_F});
    }
    require_samples(rep);
    return rep;
}

ResidualReport rho_consistency_warped(const SolitonData& sd, const WarpedSpec& spec, const std::vector<double>& samples,
                                      double tol) {
    check_warped_data(sd, spec, "rho_consistency_warped");
    ResidualReport rep("rho_consistency", tol);
    for (double t : samples) {
        require_in_window(sd, t);
        if (std::abs(sd.phi(t)) <= kSkipThreshold || (*sd.warping)(t) <= kSkipThreshold) {
            rep.skip();
            continue;
        }
        const WarpedRows w = warped_rows(sd, spec, t);
        const double from_row2 = w.row2_lhs / w.f;
        const double from_row3 = (w.row3_lhs + spec.lambda_F) / (w.f * w.f);
        rep.add({t}, {from_row2 - from_row3});
    }
    require_samples(rep);
    return rep;
}

// ------------------------------------------------------------ PDE systems

ResidualReport residual_pde_conformal(const ScalarField& phi, const ScalarField& f, const ScalarField& rho,
                                      const Signature& sig, const std::vector<Point>& points, double tol) {
    const int n = sig.dim();
    if (n < 3) throw PreconditionError("residual_pde_conformal: needs n >= 3");
    if (phi.dim() != n || f.dim() != n || rho.dim() != n)
        throw PreconditionError("residual_pde_conformal: fields must live on R^n");
    ResidualReport rep("pde_conformal", tol);
    for (const Point& x : points) {
        const Jet P = phi.jet(x);
        if (std::abs(P.value()) <= kSkipThreshold) {
            rep.skip();
            continue;
        }
        const Jet F = f.jet(x);
        const double r = rho.value(x);
        const double p = P.value();
        const double lap = sum_eps(sig, [&](int k) { return P.dd(k, k); });
        const double grad2 = sum_eps(sig, [&](int k) { return P.d(k) * P.d(k); });
        const double cross = sum_eps(sig, [&](int k) { return F.d(k) * P.d(k); });

        std::vector<double> comps;
        comps.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                comps.push_back((n - 2) * P.dd(i, j) + P.d(i) * F.d(j) + P.d(j) * F.d(i) + p * F.dd(i, j));
        for (int i = 0; i < n; ++i)
            comps.push_back((n - 2) * p * P.dd(i, i) + (p * lap - (n - 1) * grad2) * sig[i] + 2 * p * P.d(i) * F.d(i) +
                            p * p * F.dd(i, i) - p * sig[i] * cross - r * sig[i]);
        rep.add({x.coords().begin(), x.coords().end()}, std::move(comps));
    }
    require_samples(rep);
    return rep;
}

ResidualReport residual_pde_warped(const ScalarField& phi, const ScalarField& f, const ScalarField& h,
                                   const ScalarField& rho, const Signature& sig, const WarpedSpec& spec,
                                   const std::vector<Point>& points, double tol) {
    spec.validate();
    const int n = sig.dim();
    if (n != spec.n) throw PreconditionError("residual_pde_warped: signature does not match spec.n");
    if (phi.dim() != n || f.dim() != n || h.dim() != n || rho.dim() != n)
        throw PreconditionError("residual_pde_warped: fields must live on the base R^n");
    const double m = spec.m;
    ResidualReport rep("pde_warped", tol);
    for (const Point& x : points) {
        const Jet P = phi.jet(x);
        const Jet F = f.jet(x);
        if (std::abs(P.value()) <= kSkipThreshold || F.value() <= kSkipThreshold) {
            rep.skip();
            continue;
        }
        const Jet H = h.jet(x);
        const double r = rho.value(x);
        const double p = P.value();
        const double fv = F.value();

        std::vector<double> comps;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                comps.push_back((n - 2) * fv * P.dd(i, j) + fv * p * H.dd(i, j) - m * p * F.dd(i, j) -
                                m * P.d(i) * F.d(j) - m * P.d(j) * F.d(i) + fv * P.d(i) * H.d(j) +
                                fv * P.d(j) * H.d(i));
        const double trace = sum_eps(sig, [&](int k) {
            return fv * p * P.dd(k, k) - (n - 1) * fv * P.d(k) * P.d(k) + m * p * P.d(k) * F.d(k) -
                   fv * p * P.d(k) * H.d(k);
        });
        for (int i = 0; i < n; ++i)
            comps.push_back(p * ((n - 2) * fv * P.dd(i, i) + fv * p * H.dd(i, i) - m * p * F.dd(i, i) -
                                 2 * m * P.d(i) * F.d(i) + 2 * fv * P.d(i) * H.d(i)) +
                            sig[i] * trace - sig[i] * r * fv);
        const double fiber = sum_eps(sig, [&](int k) {
            return -fv * p * p * F.dd(k, k) + (n - 2) * fv * p * F.d(k) * P.d(k) - (m - 1) * p * p * F.d(k) * F.d(k) +
                   fv * p * p * F.d(k) * H.d(k);
        });
        comps.push_back(fiber - r * fv * fv + spec.lambda_F);
        rep.add({x.coords().begin(), x.coords().end()}, std::move(comps));
    }
    require_samples(rep);
    return rep;
}

// -------------------------------------------------------------- full tensor

ResidualReport residual_tensor_fields(const MetricField& metric, const ScalarField& potential, const ScalarField& rho,
                                      const std::vector<Point>& points, double tol,
                                      const std::function<bool(const Point&)>& skip) {
    ResidualReport rep("full_tensor", tol);
    for (const Point& x : points) {
        if (skip && skip(x)) {
            rep.skip();
            continue;
        }
        const SymTensor2 res = soliton_residual_at(metric, potential, rho, x);
        const int d = res.dim();
        std::vector<double> comps;
        comps.reserve(static_cast<std::size_t>(d * (d + 1) / 2));
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) comps.push_back(res(i, j));
        rep.add({x.coords().begin(), x.coords().end()}, std::move(comps));
    }
    require_samples(rep);
    return rep;
}

ResidualReport residual_full_tensor(const SolitonData& sd, const std::vector<Point>& points,
                                    const std::optional<WarpedSpec>& spec, double tol) {
    const int total = sd.total_dim();
    for (const Point& x : points)
        if (x.dim() != total)
            throw PreconditionError("residual_full_tensor: points must have dimension " + std::to_string(total));

    if (sd.family == Family::warped) {
        if (!spec) throw PreconditionError("residual_full_tensor: warped data needs a WarpedSpec");
        spec->require_full_tensor_mode();
        if (spec->n != sd.n || spec->m != sd.m) throw PreconditionError("residual_full_tensor: spec does not match the data");
    }

    const ScalarField phi = sd.phi_field();
    std::optional<ScalarField> warp;
    if (sd.family == Family::warped) warp = sd.warping_field();
    auto base_point = [n = sd.n](const Point& x) {
        return Point(std::vector<double>(x.coords().begin(), x.coords().begin() + n));
    };
    auto skip = [&](const Point& x) {
        const Point b = base_point(x);
        require_in_window(sd, sd.invariant(b));
        if (std::abs(phi.value(b)) <= kSkipThreshold) return true;
        return warp && warp->value(b) <= kSkipThreshold;
    };
    return residual_tensor_fields(sd.metric(), sd.potential_field().extended(total), sd.rho_field().extended(total),
                                  points, tol, skip);
}

// --------------------------------------------------------------- probe

CompletenessProbe completeness_probe(const Profile& p, const Interval& window, int samples) {
    if (samples < 2) throw PreconditionError("completeness_probe: needs at least 2 samples");
    const std::vector<double> ts = window.grid(samples);
    std::vector<double> a(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) a[i] = std::abs(p(ts[i]));

    double lo = a.front();
    double hi = a.front();
    std::size_t argmax = 0;
    bool one_sign = true;
    double previous = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double v = p(ts[i]);
        one_sign = one_sign && v * previous >= 0.0;
        previous = v;
        lo = std::min(lo, a[i]);
        if (a[i] > hi) {
            hi = a[i];
            argmax = i;
        }
    }
    bool bounded = std::isfinite(hi);
    auto outward_slope = [&](double t, double dir) {
        const Dual2 v = p.eval2(t);
        return dir * (v.value < 0.0 ? -v.d1 : v.d1);
    };
    constexpr double kFlat = 1e-12;
    if (bounded && argmax == 0) bounded = outward_slope(ts.front(), -1.0) <= kFlat;
    if (bounded && argmax + 1 == a.size()) bounded = outward_slope(ts.back(), 1.0) <= kFlat;
    return {bounded, hi, one_sign && lo > 0.0, lo};
}

// ---------------------------------------------------------------- grids

std::vector<Point> cube_grid(int dim, double lo, double hi, int per_axis) {
    if (dim < 1 || per_axis < 1) throw PreconditionError("cube_grid: dimension and count must be positive");
    const std::vector<double> axis = Interval(lo, hi).grid(per_axis);
    std::vector<Point> out;
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    for (;;) {
        std::vector<double> c(static_cast<std::size_t>(dim));
        for (int d = 0; d < dim; ++d) c[static_cast<std::size_t>(d)] = axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
        out.emplace_back(std::move(c));
        int d = dim - 1;
        while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == per_axis) idx[static_cast<std::size_t>(d--)] = 0;
        if (d < 0) break;
    }
    return out;
}

std::vector<Point> shell_grid(int dim, double r_min, double r_max, int per_axis) {
    std::vector<Point> out;
    for (Point& p : cube_grid(dim, -r_max, r_max, per_axis)) {
        double s = 0.0;
        for (double c : p.coords()) s += c * c;
        const double len = std::sqrt(s);
        if (len >= r_min && len <= r_max) out.push_back(std::move(p));
    }
    return out;
}

} // namespace ras
