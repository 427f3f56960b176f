#include "ras/antiderivative.hpp"

#include "ras/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ras {

namespace {

constexpr int kInitialPanels = 16;
constexpr int kMaxDepth = 48;

struct Panel {
    double a, b;
    double fa, fm, fb;
    int depth;
};

} // namespace

Antiderivative::Antiderivative(Integrand fn, double base, Interval span, double tol, std::size_t node_budget)
    : base_(base), span_(span.hull(base)), tol_(tol) {
    if (!(tol > 0.0)) throw PreconditionError("Antiderivative: tolerance must be positive");
    if (!std::isfinite(base)) throw PreconditionError("Antiderivative: base must be finite");

    std::vector<Node> right{{base, 0.0, 0.0}};
    std::vector<Node> left;
    right.front().slope = fn(base);
    ++evaluations_;
    if (span_.hi > base) integrate_side(fn, base, span_.hi, right, node_budget);
    if (span_.lo < base) integrate_side(fn, base, span_.lo, left, node_budget);

    t_.reserve(left.size() + right.size());
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        t_.push_back(it->t);
        value_.push_back(it->value);
        slope_.push_back(it->slope);
    }
    for (const Node& nd : right) {
        t_.push_back(nd.t);
        value_.push_back(nd.value);
        slope_.push_back(nd.slope);
    }
}

void Antiderivative::integrate_side(const Integrand& fn, double from, double to, std::vector<Node>& out,
                                    std::size_t budget) {
    auto eval = [&](double t) {
        if (++evaluations_ > budget)
            throw QuadratureFailure("antiderivative: node budget of " + std::to_string(budget) + " exhausted");
        const double v = fn(t);
        if (!std::isfinite(v)) throw QuadratureFailure("antiderivative: integrand is not finite at t = " + std::to_string(t));
        return v;
    };

    double cumulative = 0.0;
    double fa = out.empty() ? eval(from) : out.back().slope;
    const double width = (to - from) / kInitialPanels;

    for (int p = 0; p < kInitialPanels; ++p) {
        const double a = from + p * width;
        const double b = p + 1 == kInitialPanels ? to : from + (p + 1) * width;
        const double fb = eval(b);
        // Depth-first, nearest-to-base half first, so nodes come out ordered.
        std::vector<Panel> stack{{a, b, fa, eval(0.5 * (a + b)), fb, 0}};
        while (!stack.empty()) {
            const Panel pn = stack.back();
            stack.pop_back();
            const double h = pn.b - pn.a;
            const double m = 0.5 * (pn.a + pn.b);
            const double flm = eval(0.5 * (pn.a + m));
            const double frm = eval(0.5 * (m + pn.b));
            const double whole = h / 6.0 * (pn.fa + 4.0 * pn.fm + pn.fb);
            const double left = h / 12.0 * (pn.fa + 4.0 * flm + pn.fm);
            const double right = h / 12.0 * (pn.fm + 4.0 * frm + pn.fb);
            const double err = left + right - whole;

            const double scale = std::max({1.0, std::abs(pn.fa), std::abs(pn.fm), std::abs(pn.fb), std::abs(flm),
                                           std::abs(frm)});
            const double eps = tol_ * std::abs(h) * scale;
            const double total = left + right + err / 15.0;
            const double half = left + err / 30.0;
            const double hermite_mid = 0.5 * total + h * (pn.fa - pn.fb) / 8.0;
            const bool converged = std::abs(err) <= 15.0 * eps && std::abs(hermite_mid - half) <= eps;

            if (converged) {
                out.push_back({m, cumulative + half, pn.fm});
                cumulative += total;
                out.push_back({pn.b, cumulative, pn.fb});
                continue;
            }
            if (pn.depth >= kMaxDepth)
                throw QuadratureFailure("antiderivative: cannot meet tolerance near t = " + std::to_string(m));
            stack.push_back({m, pn.b, pn.fm, frm, pn.fb, pn.depth + 1});
            stack.push_back({pn.a, m, pn.fa, flm, pn.fm, pn.depth + 1});
        }
        fa = fb;
    }
}

double Antiderivative::operator()(double t) const {
    if (!(t >= t_.front() && t <= t_.back()))
        throw DomainViolation("antiderivative queried at t = " + std::to_string(t) + " outside its table [" +
                              std::to_string(t_.front()) + ", " + std::to_string(t_.back()) + "]");
    if (t == base_) return 0.0;
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    if (it == t_.end()) return value_.back();
    const std::size_t i1 = static_cast<std::size_t>(it - t_.begin());
    const std::size_t i0 = i1 - 1;
    const double h = t_[i1] - t_[i0];
    const double s = (t - t_[i0]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * value_[i0] + (s3 - 2 * s2 + s) * h * slope_[i0] + (-2 * s3 + 3 * s2) * value_[i1] +
           (s3 - s2) * h * slope_[i1];
}

} // namespace ras
