#include "ras/fields.hpp"

#include "ras/errors.hpp"

#include <cmath>
#include <utility>

namespace ras {

namespace {

Point head(const Point& p, int n) {
    auto c = p.coords();
    return Point(std::vector<double>(c.begin(), c.begin() + n));
}

void require_dim(const Point& p, int dim, const char* who) {
    if (p.dim() != dim)
        throw PreconditionError(std::string(who) + ": point has dimension " + std::to_string(p.dim()) +
                                ", field expects " + std::to_string(dim));
}

double fd_step(double x) { return std::max(1.0, std::abs(x)) * 1e-4; }

// Central-difference value/first/second derivatives of a black-box map.
template <typename V, typename Fn>
struct FdStencil {
    V value;
    std::vector<V> d1;
    std::vector<V> d2;  // row-major a*n+b
};

template <typename V, typename Fn>
FdStencil<V, Fn> finite_differences(const Point& p, int n, const Fn& fn) {
    std::vector<double> x(p.coords().begin(), p.coords().end());
    auto at = [&](int a, double sa, int b, double sb) {
        std::vector<double> y = x;
        if (a >= 0) y[static_cast<std::size_t>(a)] += sa;
        if (b >= 0) y[static_cast<std::size_t>(b)] += sb;
        return V(fn(Point(std::move(y))));
    };
    FdStencil<V, Fn> s{V(fn(p)), {}, {}};
    s.d1.resize(static_cast<std::size_t>(n), s.value);
    s.d2.resize(static_cast<std::size_t>(n * n), s.value);
    for (int a = 0; a < n; ++a) {
        const double ha = fd_step(x[static_cast<std::size_t>(a)]);
        const V plus = at(a, ha, -1, 0.0);
        const V minus = at(a, -ha, -1, 0.0);
        s.d1[static_cast<std::size_t>(a)] = (plus - minus) / (2.0 * ha);
        s.d2[static_cast<std::size_t>(a * n + a)] = (plus - 2.0 * s.value + minus) / (ha * ha);
        for (int b = a + 1; b < n; ++b) {
            const double hb = fd_step(x[static_cast<std::size_t>(b)]);
            const V mixed = (at(a, ha, b, hb) - at(a, ha, b, -hb) - at(a, -ha, b, hb) + at(a, -ha, b, -hb)) /
                            (4.0 * ha * hb);
            s.d2[static_cast<std::size_t>(a * n + b)] = mixed;
            s.d2[static_cast<std::size_t>(b * n + a)] = mixed;
        }
    }
    return s;
}

Jet conformal_weight(const Jet& phi) {
    if (!(std::abs(phi.value()) > kConformalThreshold))
        throw DomainViolation("conformal factor vanishes (|phi| = " + std::to_string(std::abs(phi.value())) + ")");
    const Jet inv = recip(phi);
    return inv * inv;
}

} // namespace

// ---------------------------------------------------------------- Signature

Signature::Signature(std::vector<int> eps) : eps_(std::move(eps)) {
    if (eps_.empty()) throw PreconditionError("Signature: dimension must be at least 1");
    for (int e : eps_)
        if (e != 1 && e != -1) throw PreconditionError("Signature: entries must be -1 or +1");
}

Signature Signature::parse(std::string_view spec) {
    std::vector<int> eps;
    for (char ch : spec) {
        if (ch == '+') eps.push_back(1);
        else if (ch == '-') eps.push_back(-1);
        else throw PreconditionError("Signature: expected '+' or '-', got '" + std::string(1, ch) + "'");
    }
    return Signature(std::move(eps));
}

Signature Signature::euclidean(int n) {
    if (n < 1) throw PreconditionError("Signature: dimension must be at least 1");
    return Signature(std::vector<int>(static_cast<std::size_t>(n), 1));
}

bool Signature::is_euclidean() const noexcept {
    for (int e : eps_)
        if (e != 1) return false;
    return true;
}

std::string Signature::to_string() const {
    std::string s;
    for (int e : eps_) s.push_back(e > 0 ? '+' : '-');
    return s;
}

// -------------------------------------------------------------------- Point

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    for (double c : coords_)
        if (!std::isfinite(c)) throw PreconditionError("Point: coordinates must be finite");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

// -------------------------------------------------------------- ScalarField

ScalarField::ScalarField(int dim, JetFn fn) : dim_(dim), fn_(std::move(fn)) {
    if (dim_ < 1) throw PreconditionError("ScalarField: dimension must be positive");
}

ScalarField ScalarField::constant(int dim, double value) {
    return ScalarField(dim, [dim, value](const Point&) { return Jet(dim, value); });
}

ScalarField ScalarField::from_function(int dim, std::function<double(const Point&)> fn) {
    return ScalarField(dim, [dim, fn = std::move(fn)](const Point& p) {
        auto s = finite_differences<double>(p, dim, fn);
        Eigen::VectorXd g(dim);
        Eigen::MatrixXd h(dim, dim);
        for (int a = 0; a < dim; ++a) {
            g(a) = s.d1[static_cast<std::size_t>(a)];
            for (int b = 0; b < dim; ++b) h(a, b) = s.d2[static_cast<std::size_t>(a * dim + b)];
        }
        return Jet(s.value, std::move(g), std::move(h));
    });
}

Jet ScalarField::jet(const Point& p) const {
    require_dim(p, dim_, "ScalarField");
    return fn_(p);
}

ScalarField ScalarField::extended(int total_dim) const {
    if (total_dim < dim_) throw PreconditionError("ScalarField::extended: target dimension too small");
    if (total_dim == dim_) return *this;
    return ScalarField(total_dim, [inner = *this, total_dim](const Point& p) {
        return inner.jet(head(p, inner.dim())).embedded(total_dim);
    });
}

// ---------------------------------------------------------------- MetricJet

MetricJet MetricJet::from_entries(int n, const std::function<Jet(int, int)>& entry) {
    MetricJet m;
    m.n = n;
    m.g = Eigen::MatrixXd::Zero(n, n);
    m.dg.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
    m.ddg.assign(static_cast<std::size_t>(n * n), Eigen::MatrixXd::Zero(n, n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const Jet e = entry(i, j);
            if (e.dim() != n) throw PreconditionError("MetricJet: entry jet has wrong dimension");
            m.g(i, j) = m.g(j, i) = e.value();
            for (int a = 0; a < n; ++a) {
                m.dg[static_cast<std::size_t>(a)](i, j) = m.dg[static_cast<std::size_t>(a)](j, i) = e.d(a);
                for (int b = 0; b < n; ++b) {
                    auto& slot = m.ddg[static_cast<std::size_t>(a * n + b)];
                    slot(i, j) = slot(j, i) = e.dd(a, b);
                }
            }
        }
    }
    return m;
}

// -------------------------------------------------------------- MetricField

MetricField::MetricField(int dim, JetFn fn) : dim_(dim), fn_(std::move(fn)) {
    if (dim_ < 1) throw PreconditionError("MetricField: dimension must be positive");
}

MetricJet MetricField::jet(const Point& p) const {
    require_dim(p, dim_, "MetricField");
    return fn_(p);
}

MetricField MetricField::flat(const Signature& sig) {
    const int n = sig.dim();
    return MetricField(n, [sig, n](const Point&) {
        return MetricJet::from_entries(n, [&](int i, int j) { return Jet(n, i == j ? sig[i] : 0.0); });
    });
}

MetricField MetricField::conformal(const Signature& sig, ScalarField phi) {
    const int n = sig.dim();
    if (phi.dim() != n) throw PreconditionError("MetricField::conformal: phi dimension mismatch");
    return MetricField(n, [sig, n, phi = std::move(phi)](const Point& p) {
        const Jet w = conformal_weight(phi.jet(p));
        const Jet zero(n);
        return MetricJet::from_entries(n, [&](int i, int j) { return i == j ? sig[i] * w : zero; });
    });
}

MetricField MetricField::warped(const Signature& base, ScalarField phi, ScalarField warping, int fiber_dim) {
    const int n = base.dim();
    if (fiber_dim < 1) throw PreconditionError("MetricField::warped: fiber dimension must be at least 1");
    if (phi.dim() != n || warping.dim() != n)
        throw PreconditionError("MetricField::warped: base fields must live on R^n");
    const int total = n + fiber_dim;
    return MetricField(total, [base, n, total, phi = std::move(phi), warping = std::move(warping)](const Point& p) {
        const Point x = head(p, n);
        const Jet w = conformal_weight(phi.jet(x)).embedded(total);
        const Jet f = warping.jet(x);
        if (!(f.value() > kConformalThreshold))
            throw DomainViolation("warping function must be positive (f = " + std::to_string(f.value()) + ")");
        const Jet f2 = (f * f).embedded(total);
        const Jet zero(total);
        return MetricJet::from_entries(total, [&](int i, int j) {
            if (i != j) return zero;
            return i < n ? base[i] * w : f2;
        });
    });
}

MetricField MetricField::conformal_product(const Signature& base, ScalarField phi, int fiber_dim) {
    const int n = base.dim();
    if (fiber_dim < 1) throw PreconditionError("MetricField::conformal_product: fiber dimension must be at least 1");
    if (phi.dim() != n) throw PreconditionError("MetricField::conformal_product: phi must live on R^n");
    const int total = n + fiber_dim;
    return MetricField(total, [base, n, total, phi = std::move(phi)](const Point& p) {
        const Jet w = conformal_weight(phi.jet(head(p, n))).embedded(total);
        const Jet zero(total);
        return MetricJet::from_entries(total, [&](int i, int j) {
            if (i != j) return zero;
            return i < n ? base[i] * w : w;
        });
    });
}

MetricField MetricField::from_function(int dim, std::function<Eigen::MatrixXd(const Point&)> fn) {
    return MetricField(dim, [dim, fn = std::move(fn)](const Point& p) {
        const Eigen::MatrixXd g0 = fn(p);
        if (g0.rows() != dim || g0.cols() != dim)
            throw PreconditionError("MetricField::from_function: wrong matrix shape");
        if (g0 != g0.transpose()) throw PreconditionError("MetricField::from_function: matrix is not symmetric");
        auto s = finite_differences<Eigen::MatrixXd>(p, dim, fn);
        MetricJet m;
        m.n = dim;
        m.g = std::move(s.value);
        m.dg = std::move(s.d1);
        m.ddg = std::move(s.d2);
        return m;
    });
}

} // namespace ras
