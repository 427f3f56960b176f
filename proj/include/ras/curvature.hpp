#pragma once

#include "ras/fields.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace ras {

/// Symmetric rank-2 tensor in coordinate components. Only the upper
/// triangle is ever computed; the lower one is a copy.
class SymTensor2 {
public:
    SymTensor2() = default;
    /// Throws PreconditionError unless m is exactly symmetric.
    explicit SymTensor2(Eigen::MatrixXd m);
    static SymTensor2 from_upper(int n, const std::function<double(int, int)>& entry);
    static SymTensor2 zero(int n);

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    double operator()(int i, int j) const { return m_(i, j); }
    const Eigen::MatrixXd& matrix() const noexcept { return m_; }
    double max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

    friend SymTensor2 operator+(const SymTensor2& a, const SymTensor2& b);
    friend SymTensor2 operator-(const SymTensor2& a, const SymTensor2& b);
    friend SymTensor2 operator*(double s, const SymTensor2& a);

private:
    Eigen::MatrixXd m_;
};

/// Christoffel symbols of the second kind, Gamma^k_ij, stored [k][i][j].
class Christoffel {
public:
    explicit Christoffel(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n), 0.0) {}

    int dim() const noexcept { return n_; }
    double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
    double& at(int k, int i, int j) { return data_[index(k, i, j)]; }
    double max_abs() const;

private:
    std::size_t index(int k, int i, int j) const { return static_cast<std::size_t>((k * n_ + i) * n_ + j); }
    int n_;
    std::vector<double> data_;
};

struct FlatGradientData {
    double grad_norm2;  // sum_k eps_k (s_,k)^2
    double laplacian;   // sum_k eps_k s_,kk
};

SymTensor2 metric_at(const MetricField& m, const Point& p);
Christoffel christoffel_at(const MetricField& m, const Point& p);

/// Ric_ij = d_k G^k_ij - d_j G^k_ik + G^k_kl G^l_ij - G^k_jl G^l_ik.
/// With this convention hyperbolic space has Ric = -(n-1) g.
SymTensor2 ricci_at(const MetricField& m, const Point& p);

/// Hess_ij = s_,ij - G^k_ij s_,k
SymTensor2 hessian_at(const MetricField& m, const ScalarField& s, const Point& p);

/// Gradient norm and Laplacian of s with respect to the flat metric diag(eps).
FlatGradientData flat_gradient_data(const Signature& sig, const ScalarField& s, const Point& p);

/// Ric + Hess(f) - rho * g at p.
SymTensor2 soliton_residual_at(const MetricField& m, const ScalarField& f, const ScalarField& rho, const Point& p);

/// All curvature quantities at one point from a single metric evaluation.
struct CurvatureSample {
    SymTensor2 metric;
    Christoffel christoffel{1};
    SymTensor2 ricci;
};

CurvatureSample curvature_at(const MetricField& m, const Point& p);

} // namespace ras
