#include "ras/curvature.hpp"

#include "ras/errors.hpp"

#include <cmath>

namespace ras {

// --------------------------------------------------------------- SymTensor2

SymTensor2::SymTensor2(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_ != m_.transpose()) throw PreconditionError("SymTensor2: matrix is not symmetric");
}

SymTensor2 SymTensor2::from_upper(int n, const std::function<double(int, int)>& entry) {
    SymTensor2 t;
    t.m_.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) t.m_(i, j) = t.m_(j, i) = entry(i, j);
    return t;
}

SymTensor2 SymTensor2::zero(int n) {
    SymTensor2 t;
    t.m_ = Eigen::MatrixXd::Zero(n, n);
    return t;
}

SymTensor2 operator+(const SymTensor2& a, const SymTensor2& b) {
    SymTensor2 t;
    t.m_ = a.m_ + b.m_;
    return t;
}

SymTensor2 operator-(const SymTensor2& a, const SymTensor2& b) {
    SymTensor2 t;
    t.m_ = a.m_ - b.m_;
    return t;
}

SymTensor2 operator*(double s, const SymTensor2& a) {
    SymTensor2 t;
    t.m_ = s * a.m_;
    return t;
}

double Christoffel::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

// ----------------------------------------------------------------- geometry

namespace {

struct Geometry {
    MetricJet jet;
    Eigen::MatrixXd ginv;
    // first kind: gamma1[l](i,j) = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    std::vector<Eigen::MatrixXd> gamma1;
    Christoffel gamma2{1};
};

Geometry geometry_at(const MetricField& m, const Point& p) {
    Geometry geo;
    geo.jet = m.jet(p);
    const int n = geo.jet.n;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(geo.jet.g);
    const double det = lu.determinant();
    if (!(std::abs(det) > kDetThreshold))
        throw DegenerateMetric("metric is degenerate (|det g| = " + std::to_string(std::abs(det)) + ")");
    geo.ginv = lu.inverse();

    const auto& dg = geo.jet.dg;
    geo.gamma1.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double v = 0.5 * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                                        dg[static_cast<std::size_t>(l)](i, j));
                geo.gamma1[static_cast<std::size_t>(l)](i, j) = geo.gamma1[static_cast<std::size_t>(l)](j, i) = v;
            }

    geo.gamma2 = Christoffel(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double v = 0.0;
                for (int l = 0; l < n; ++l) v += geo.ginv(k, l) * geo.gamma1[static_cast<std::size_t>(l)](i, j);
                geo.gamma2.at(k, i, j) = v;
                geo.gamma2.at(k, j, i) = v;
            }
    return geo;
}

SymTensor2 ricci_from(const Geometry& geo) {
    const int n = geo.jet.n;
    const auto& ginv = geo.ginv;
    const auto& G = geo.gamma2;

    // d_a g^{kl} = -g^{kp} d_a g_pq g^{ql}
    std::vector<Eigen::MatrixXd> dginv(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) dginv[static_cast<std::size_t>(a)] = -ginv * geo.jet.dg[static_cast<std::size_t>(a)] * ginv;

    // dG(a, k, i, j) = d_a Gamma^k_ij
    auto d_gamma1 = [&](int a, int l, int i, int j) {
        return 0.5 * (geo.jet.second(a, i)(j, l) + geo.jet.second(a, j)(i, l) - geo.jet.second(a, l)(i, j));
    };
    auto d_gamma2 = [&](int a, int k, int i, int j) {
        double v = 0.0;
        for (int l = 0; l < n; ++l)
            v += dginv[static_cast<std::size_t>(a)](k, l) * geo.gamma1[static_cast<std::size_t>(l)](i, j) +
                 ginv(k, l) * d_gamma1(a, l, i, j);
        return v;
    };

    return SymTensor2::from_upper(n, [&](int i, int j) {
        double r = 0.0;
        for (int k = 0; k < n; ++k) {
            r += d_gamma2(k, k, i, j) - d_gamma2(j, k, i, k);
            for (int l = 0; l < n; ++l) r += G(k, k, l) * G(l, i, j) - G(k, j, l) * G(l, i, k);
        }
        return r;
    });
}

SymTensor2 hessian_from(const Geometry& geo, const Jet& s) {
    const int n = geo.jet.n;
    if (s.dim() != n) throw PreconditionError("hessian: scalar field and metric dimensions differ");
    return SymTensor2::from_upper(n, [&](int i, int j) {
        double h = s.dd(i, j);
        for (int k = 0; k < n; ++k) h -= geo.gamma2(k, i, j) * s.d(k);
        return h;
    });
}

} // namespace

// --------------------------------------------------------------- operations

SymTensor2 metric_at(const MetricField& m, const Point& p) {
    MetricJet j = m.jet(p);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(j.g);
    if (!(std::abs(lu.determinant()) > kDetThreshold)) throw DegenerateMetric("metric is degenerate");
    return SymTensor2(std::move(j.g));
}

Christoffel christoffel_at(const MetricField& m, const Point& p) { return geometry_at(m, p).gamma2; }

SymTensor2 ricci_at(const MetricField& m, const Point& p) { return ricci_from(geometry_at(m, p)); }

SymTensor2 hessian_at(const MetricField& m, const ScalarField& s, const Point& p) {
    return hessian_from(geometry_at(m, p), s.jet(p));
}

FlatGradientData flat_gradient_data(const Signature& sig, const ScalarField& s, const Point& p) {
    if (sig.dim() != s.dim()) throw PreconditionError("flat_gradient_data: signature and field dimensions differ");
    const Jet j = s.jet(p);
    FlatGradientData out{0.0, 0.0};
    for (int k = 0; k < sig.dim(); ++k) {
        out.grad_norm2 += sig[k] * j.d(k) * j.d(k);
        out.laplacian += sig[k] * j.dd(k, k);
    }
    return out;
}

SymTensor2 soliton_residual_at(const MetricField& m, const ScalarField& f, const ScalarField& rho, const Point& p) {
    if (f.dim() != m.dim() || rho.dim() != m.dim())
        throw PreconditionError("soliton_residual_at: fields must share the metric dimension");
    const Geometry geo = geometry_at(m, p);
    const double rho_p = rho.value(p);
    const SymTensor2 ric = ricci_from(geo);
    const SymTensor2 hess = hessian_from(geo, f.jet(p));
    const int n = geo.jet.n;
    return SymTensor2::from_upper(n, [&](int i, int j) { return ric(i, j) + hess(i, j) - rho_p * geo.jet.g(i, j); });
}

CurvatureSample curvature_at(const MetricField& m, const Point& p) {
    Geometry geo = geometry_at(m, p);
    CurvatureSample out;
    out.ricci = ricci_from(geo);
    out.metric = SymTensor2(geo.jet.g);
    out.christoffel = std::move(geo.gamma2);
    return out;
}

} // namespace ras
