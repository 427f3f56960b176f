#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ras/curvature.hpp"
#include "ras/errors.hpp"
#include "ras/verifier.hpp"

#include <Eigen/QR>

#include <cmath>

using namespace ras;

namespace {

const Signature e3 = Signature::euclidean(3);
const TranslationDirection x1(std::vector<double>{1, 0, 0}, e3);

Profile shifted(const Profile& p, double delta) {
    return Profile([p, delta](const Dual2& t) { return p.eval(t) + delta; }, p.label() + "+delta");
}

Profile plus_quadratic(const Profile& p, double a) {
    return Profile([p, a](const Dual2& t) { return p.eval(t) + a * t * t; }, p.label() + "+a t^2");
}

std::vector<Point> points_in_slab(int n, int count, double lo, double hi, std::mt19937& rng) {
    return oracle::random_points(n, count, lo, hi, rng);
}

ScalarField plus(const ScalarField& a, double delta) {
    return ScalarField(a.dim(), [a, delta](const Point& p) { return a.jet(p) + delta; });
}

SolitonData paperA() { return construct_translation(*catalog_profile("paperA"), 3, x1, {}, {-3, 3}); }
SolitonData paperB() { return construct_warped(*catalog_profile("paperB"), 3, 2, x1, {}, {-2, 2}); }
SolitonData paperC() { return construct_radial(*catalog_profile("paperC"), 3, {.c = 1, .k = 0, .base = 1}, {0.1, 4}); }

} // namespace

TEST_CASE("residual reports") {
    ResidualReport r("demo", 0.5);
    r.add({0.0}, {0.1, -0.4});
    r.add({1.0}, {0.3});
    CHECK(r.sup() == 0.4);
    CHECK(r.rms() == doctest::Approx(std::sqrt((0.01 + 0.16 + 0.09) / 3)));
    CHECK(r.sup() >= r.rms());
    CHECK(r.pass());
    r.add({2.0}, {std::nan("")});
    CHECK_FALSE(r.pass());
    CHECK_THROWS_AS(ResidualReport("bad", -1.0), PreconditionError);
}

TEST_CASE("residual_system_translation") {
    SUBCASE("constructed paperA data") {
        const auto rep = residual_system_translation(paperA(), Interval(-3, 3).grid(256));
        CHECK(rep.samples().size() == 256);
        CHECK(rep.sup() <= 1e-8);
        CHECK(rep.pass());
    }
    SUBCASE("exact pair phi = 1, f = c xi, rho = 0") {
        const double c = 0.7;
        auto sd = SolitonData::assemble_conformal(Family::translation, Profile::constant(1.0), Profile::parse("0.7*xi"),
                                                  Profile::constant(0.0), e3, x1, {-2, 2});
        const auto rep = residual_system_translation(sd, Interval(-2, 2).grid(33));
        CHECK(rep.sup() == 0.0);
        sd.rho = Profile::constant(0.1);
        const auto off = residual_system_translation(sd, Interval(-2, 2).grid(33));
        for (const auto& s : off.samples()) {
            CHECK(s.components[0] == 0.0);
            CHECK(std::abs(s.components[1]) == 0.1);
        }
        (void)c;
    }
    SUBCASE("window and family preconditions") {
        CHECK_THROWS_AS(residual_system_translation(paperA(), {3.5}), DomainViolation);
        CHECK_THROWS_AS(residual_system_translation(paperB(), {0.0}), PreconditionError);
    }
}

TEST_CASE("residual_system_radial") {
    SUBCASE("Gaussian: phi = 1, f = c r, rho = 2c") {
        const auto sd = SolitonData::assemble_conformal(Family::radial, Profile::constant(1.0), Profile::parse("0.5*r"),
                                                        Profile::constant(1.0), e3, std::nullopt, {0, 4});
        CHECK(residual_system_radial(sd, Interval(0, 4).grid(20)).sup() == 0.0);
    }
    SUBCASE("constructed paperC data") {
        const auto rep = residual_system_radial(paperC(), Interval(0.1, 4).grid(256));
        CHECK(rep.sup() <= 1e-8);
    }
    SUBCASE("constant potential with paperC is not a solution") {
        const auto phi = *catalog_profile("paperC");
        const auto sd = SolitonData::assemble_conformal(Family::radial, phi, Profile::constant(2.0), Profile::constant(0.0), e3,
                                                        std::nullopt, {0.1, 2});
        const auto rep = residual_system_radial(sd, {0.5, 1.2});
        for (const auto& s : rep.samples()) CHECK(s.components[0] == doctest::Approx(phi.eval2(s.location[0]).d2));
        CHECK_FALSE(rep.pass());
    }
}

TEST_CASE("residual_system_warped") {
    const WarpedSpec spec{.n = 3, .m = 2, .lambda_F = 0.0, .flat_fiber = true};
    SUBCASE("constructed paperB data and rho consistency") {
        const auto sd = paperB();
        const auto samples = Interval(-2, 2).grid(256);
        CHECK(residual_system_warped(sd, spec, samples).sup() <= 1e-8);
        CHECK(rho_consistency_warped(sd, spec, samples).sup() <= 1e-8);
    }
    SUBCASE("trivial product and a perturbed fiber constant") {
        const auto sd = SolitonData::assemble_warped(Profile::constant(1.0), Profile::constant(1.0), Profile::constant(0.3),
                                                     Profile::constant(0.0), x1, 2, {-1, 1});
        CHECK(residual_system_warped(sd, spec, Interval(-1, 1).grid(11)).sup() == 0.0);
        WarpedSpec bent = spec;
        bent.lambda_F = 0.05;
        const auto rep = residual_system_warped(sd, bent, Interval(-1, 1).grid(11));
        for (const auto& s : rep.samples()) {
            CHECK(s.components[0] == 0.0);
            CHECK(s.components[1] == 0.0);
            CHECK(std::abs(s.components[2]) == 0.05);
        }
    }
    SUBCASE("spec preconditions") {
        WarpedSpec bad = spec;
        bad.m = 0;
        CHECK_THROWS_AS(bad.validate(), PreconditionError);
        CHECK_THROWS_AS(residual_system_warped(paperB(), bad, {0.0}), PreconditionError);
        bad = spec;
        bad.lambda_F = 0.1;
        CHECK_NOTHROW(bad.validate());
        CHECK_THROWS_AS(bad.require_full_tensor_mode(), PreconditionError);
    }
}

TEST_CASE("residual_pde_conformal") {
    std::mt19937 rng(42);
    SUBCASE("lifted paperA solution") {
        const auto sd = paperA();
        const auto rep = residual_pde_conformal(sd.phi_field(), sd.potential_field(), sd.rho_field(), e3,
                                                points_in_slab(3, 50, -2.5, 2.5, rng));
        CHECK(rep.sup() <= 1e-8);
    }
    SUBCASE("Gaussian soliton is exact") {
        const ScalarField f(3, [](const Point& p) {
            auto x = Jet::coordinates(p.coords());
            return 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        });
        const auto rep = residual_pde_conformal(ScalarField::constant(3, 1.0), f, ScalarField::constant(3, 1.0), e3,
                                                oracle::random_points(3, 10, -3, 3, rng));
        CHECK(rep.sup() == 0.0);
    }
    SUBCASE("unrelated fields fail") {
        const ScalarField phi(3, [](const Point& p) { return 1.0 + pow(Jet::variable(3, 0, p[0]), 2.0); });
        const ScalarField f(3, [](const Point& p) { return Jet::variable(3, 1, p[1]); });
        const auto rep = residual_pde_conformal(phi, f, ScalarField::constant(3, 0.0), e3, oracle::random_points(3, 10, -1, 1, rng));
        CHECK(rep.sup() > 1e-2);
    }
    SUBCASE("components are phi^2 times the curvature residual") {
        for (const char* s : {"+++", "-++", "+-++"}) {
            const Signature sig = Signature::parse(s);
            const int n = sig.dim();
            const auto phi = oracle::SmoothPhi::random(n, rng);
            const auto f = oracle::SmoothPhi::random(n, rng).field();
            const auto rho = oracle::SmoothPhi::random(n, rng).field();
            const auto metric = MetricField::conformal(sig, phi.field());
            for (const Point& p : oracle::random_points(n, 5, -1, 1, rng)) {
                const auto rep = residual_pde_conformal(phi.field(), f, rho, sig, {p}, 1.0);
                const auto& c = rep.samples().front().components;
                const auto res = soliton_residual_at(metric, f, rho, p);
                const double ph = phi.value(oracle::to_vec(p));
                std::size_t idx = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) CHECK(std::abs(c[idx++] - ph * res(i, j)) < 1e-10);
                for (int i = 0; i < n; ++i) CHECK(std::abs(c[idx++] - ph * ph * res(i, i)) < 1e-10);
            }
        }
    }
    SUBCASE("needs n >= 3") {
        const Signature e2 = Signature::euclidean(2);
        CHECK_THROWS_AS(residual_pde_conformal(ScalarField::constant(2, 1), ScalarField::constant(2, 0), ScalarField::constant(2, 0), e2,
                                               {Point{0, 0}}),
                        PreconditionError);
    }
}

TEST_CASE("residual_pde_warped") {
    std::mt19937 rng(77);
    const WarpedSpec spec{.n = 3, .m = 2, .lambda_F = 0.0, .flat_fiber = true};
    SUBCASE("lifted paperB solution") {
        const auto sd = paperB();
        const auto rep = residual_pde_warped(sd.phi_field(), sd.warping_field(), sd.potential_field(), sd.rho_field(), e3, spec,
                                             oracle::random_points(3, 50, -1.8, 1.8, rng));
        CHECK(rep.sup() <= 1e-8);
    }
    SUBCASE("unit warping reduces to the conformal system plus -rho on the fiber") {
        const auto phi = oracle::SmoothPhi::random(3, rng).field();
        const auto h = oracle::SmoothPhi::random(3, rng).field();
        const auto rho = oracle::SmoothPhi::random(3, rng).field();
        for (const Point& p : oracle::random_points(3, 5, -1, 1, rng)) {
            const auto w = residual_pde_warped(phi, ScalarField::constant(3, 1.0), h, rho, e3, spec, {p}, 1.0);
            const auto c = residual_pde_conformal(phi, h, rho, e3, {p}, 1.0);
            const auto& wc = w.samples().front().components;
            const auto& cc = c.samples().front().components;
            REQUIRE(wc.size() == cc.size() + 1);
            for (std::size_t i = 0; i < cc.size(); ++i) CHECK(std::abs(wc[i] - cc[i]) < 1e-12);
            CHECK(std::abs(wc.back() + rho.value(p)) < 1e-15);
        }
    }
    SUBCASE("components against the curvature residual of the warped metric") {
        for (const char* s : {"+++", "-++"}) {
            const Signature sig = Signature::parse(s);
            const auto phi = oracle::SmoothPhi::random(3, rng);
            const auto warp = oracle::SmoothPhi::random(3, rng);
            const auto h = oracle::SmoothPhi::random(3, rng).field();
            const auto rho = oracle::SmoothPhi::random(3, rng).field();
            const auto metric = MetricField::warped(sig, phi.field(), warp.field(), spec.m);
            for (const Point& p : oracle::random_points(3, 5, -1, 1, rng)) {
                const auto rep = residual_pde_warped(phi.field(), warp.field(), h, rho, sig, spec, {p}, 1.0);
                const auto& c = rep.samples().front().components;
                const Point q{p[0], p[1], p[2], 0.3, -0.7};
                const auto res = soliton_residual_at(metric, h.extended(5), rho.extended(5), q);
                const double ph = phi.value(oracle::to_vec(p));
                const double fv = warp.value(oracle::to_vec(p));
                std::size_t idx = 0;
                for (int i = 0; i < 3; ++i)
                    for (int j = i + 1; j < 3; ++j) CHECK(std::abs(c[idx++] - fv * ph * res(i, j)) < 1e-10);
                for (int i = 0; i < 3; ++i) CHECK(std::abs(c[idx++] - fv * ph * ph * res(i, i)) < 1e-10);
                CHECK(std::abs(c[idx] - res(3, 3)) < 1e-10);
                CHECK(res(3, 3) == doctest::Approx(res(4, 4)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("empty fiber is rejected") {
        WarpedSpec bad = spec;
        bad.m = 0;
        const auto one = ScalarField::constant(3, 1.0);
        CHECK_THROWS_AS(residual_pde_warped(one, one, one, one, e3, bad, {Point{0, 0, 0}}), PreconditionError);
    }
}

TEST_CASE("residual_full_tensor") {
    SUBCASE("paperA on a 5^3 grid") {
        const auto rep = residual_full_tensor(paperA(), cube_grid(3, -1, 1, 5));
        CHECK(rep.samples().size() == 125);
        CHECK(rep.sup() <= 1e-5);
    }
    SUBCASE("Gaussian soliton") {
        const auto sd = construct_radial(Profile::constant(1.0), 3, {.c = 0.5, .k = 0, .base = 0}, {0, 4});
        CHECK(residual_full_tensor(sd, cube_grid(3, -1, 1, 4)).sup() <= 1e-10);
    }
    SUBCASE("paperB on a grid in R^5") {
        const WarpedSpec spec{.n = 3, .m = 2, .lambda_F = 0.0, .flat_fiber = true};
        const auto rep = residual_full_tensor(paperB(), cube_grid(5, -1, 1, 3), spec);
        CHECK(rep.sup() <= 1e-5);
        CHECK_THROWS_AS(residual_full_tensor(paperB(), cube_grid(5, -1, 1, 2)), PreconditionError);
        CHECK_THROWS_AS(residual_full_tensor(paperB(), cube_grid(3, -1, 1, 2), spec), PreconditionError);
        WarpedSpec curved = spec;
        curved.lambda_F = 1.0;
        CHECK_THROWS_AS(residual_full_tensor(paperB(), cube_grid(5, -1, 1, 2), curved), PreconditionError);
    }
    SUBCASE("points outside the window") {
        CHECK_THROWS_AS(residual_full_tensor(paperA(), {Point{3.5, 0, 0}}), DomainViolation);
    }
    SUBCASE("paperC on a shell") {
        CHECK(residual_full_tensor(paperC(), shell_grid(3, 0.3, 1.5, 9)).sup() <= 1e-5);
    }
}

TEST_CASE("system and coordinate levels agree") {
    std::mt19937 rng(5);
    const auto sd = paperA();
    const auto pts = points_in_slab(3, 30, -2.5, 2.5, rng);
    const auto sys = residual_system_translation(sd, Interval(-3, 3).grid(256));
    REQUIRE(sys.pass());
    const auto pde = residual_pde_conformal(sd.phi_field(), sd.potential_field(), sd.rho_field(), e3, pts, 10 * sys.tol());
    CHECK(pde.pass());
    CHECK(residual_full_tensor(sd, pts).pass());

    auto bad = sd;
    bad.potential = plus_quadratic(sd.potential, 0.01);
    CHECK_FALSE(residual_system_translation(bad, Interval(-3, 3).grid(256)).pass());
    CHECK_FALSE(residual_pde_conformal(bad.phi_field(), bad.potential_field(), bad.rho_field(), e3, pts).pass());
    CHECK_FALSE(residual_full_tensor(bad, pts).pass());
}

TEST_CASE("PDE and full-tensor checks pass and fail together") {
    std::mt19937 rng(6);
    const auto pts = oracle::random_points(3, 20, -0.9, 0.9, rng);
    std::vector<SolitonData> fixtures{paperA(), paperC()};
    auto broken = paperA();
    broken.rho = shifted(broken.rho, 1e-3);
    fixtures.push_back(broken);
    auto broken_c = paperC();
    broken_c.potential = plus_quadratic(broken_c.potential, 0.02);
    fixtures.push_back(broken_c);
    for (const auto& sd : fixtures) {
        const auto pde = residual_pde_conformal(sd.phi_field(), sd.potential_field(), sd.rho_field(), sd.signature, pts);
        const auto full = residual_full_tensor(sd, pts);
        CHECK(pde.pass() == full.pass());
    }
}

TEST_CASE("Lorentzian signatures") {
    const Signature lor = Signature::parse("-++");
    std::mt19937 rng(13);
    const auto pts = oracle::random_points(3, 25, -0.9, 0.9, rng);
    SUBCASE("spacelike direction") {
        const TranslationDirection d({0, 1, 0}, lor);
        const auto sd = construct_translation(*catalog_profile("paperA"), 3, d, {}, {-3, 3});
        CHECK(residual_system_translation(sd, Interval(-3, 3).grid(256)).pass());
        CHECK(residual_pde_conformal(sd.phi_field(), sd.potential_field(), sd.rho_field(), lor, pts).pass());
        CHECK(residual_full_tensor(sd, pts).pass());
        const auto euclid = paperA();
        for (double t : Interval(-3, 3).grid(20)) CHECK(sd.rho(t) == euclid.rho(t));
    }
    SUBCASE("null direction is steady") {
        const TranslationDirection d({1, 1, 0}, lor);
        const auto sd = construct_translation(*catalog_profile("paperA"), 3, d, {}, {-2, 2});
        for (double t : Interval(-2, 2).grid(20)) CHECK(sd.rho(t) == 0.0);
        CHECK(residual_system_translation(sd, Interval(-2, 2).grid(256)).pass());
        CHECK(residual_full_tensor(sd, oracle::random_points(3, 25, -0.9, 0.9, rng)).pass());
    }
    SUBCASE("warped over a Lorentzian base") {
        const TranslationDirection d({0, 0.5, 0.5}, lor);
        const auto sd = construct_warped(*catalog_profile("paperB"), 3, 2, d, {.c = 0.5, .k = 0.2, .base = 0}, {-2, 2});
        const WarpedSpec spec{.n = 3, .m = 2, .lambda_F = 0.0, .flat_fiber = true};
        CHECK(residual_system_warped(sd, spec, Interval(-2, 2).grid(256)).pass());
        CHECK(residual_full_tensor(sd, cube_grid(5, -1, 1, 3), spec).pass());
    }
}

TEST_CASE("rotation covariance of the radial family") {
    const auto sd = paperC();
    const auto metric = sd.metric();
    const auto f = sd.potential_field();
    const auto rho = sd.rho_field();
    std::mt19937 rng(99);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::Matrix3d a;
        for (int i = 0; i < 9; ++i) a.data()[i] = nd(rng);
        const Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(a).householderQ();
        for (const Point& p : shell_grid(3, 0.3, 1.5, 5)) {
            const Eigen::Vector3d x(p[0], p[1], p[2]);
            const Eigen::Vector3d qx = q * x;
            const auto rx = soliton_residual_at(metric, f, rho, p).matrix();
            const auto rqx = soliton_residual_at(metric, f, rho, Point{qx(0), qx(1), qx(2)}).matrix();
            CHECK((rqx - q * rx * q.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}

TEST_CASE("rho enters affinely") {
    std::mt19937 rng(21);
    const double delta = 0.125;
    for (const auto& sd : {paperA(), paperC()}) {
        const auto metric = sd.metric();
        for (const Point& p : oracle::random_points(3, 10, -0.9, 0.9, rng)) {
            const auto a = soliton_residual_at(metric, sd.potential_field(), sd.rho_field(), p).matrix();
            const auto b = soliton_residual_at(metric, sd.potential_field(), plus(sd.rho_field(), delta), p).matrix();
            const auto g = metric_at(metric, p).matrix();
            CHECK((b - a + delta * g).cwiseAbs().maxCoeff() <= 1e-13 * std::max(1.0, a.cwiseAbs().maxCoeff()));
        }
    }
    const WarpedSpec spec{.n = 3, .m = 2, .lambda_F = 0.0, .flat_fiber = true};
    const auto sd = paperB();
    for (const Point& p : cube_grid(5, -1, 1, 2)) {
        const auto a = soliton_residual_at(sd.metric(), sd.potential_field().extended(5), sd.rho_field().extended(5), p).matrix();
        const auto b = soliton_residual_at(sd.metric(), sd.potential_field().extended(5), plus(sd.rho_field(), delta).extended(5), p).matrix();
        CHECK((b - a + delta * metric_at(sd.metric(), p).matrix()).cwiseAbs().maxCoeff() <= 1e-13);
    }
    (void)spec;
}

TEST_CASE("completeness_probe") {
    const auto a = completeness_probe(*catalog_profile("paperA"), {-10, 10}, 2001);
    CHECK(a.bounded);
    CHECK(a.bound == 1.0);
    CHECK(a.positive);
    const auto lin = completeness_probe(*catalog_profile("linear"), {-1, 1}, 201);
    CHECK_FALSE(lin.positive);
    const auto c = completeness_probe(*catalog_profile("paperC"), {0, 25}, 2001);
    CHECK(c.bounded);
    CHECK(c.bound == 1.0);
    CHECK(c.positive);
    CHECK(c.min_abs < 1e-9);
    CHECK_FALSE(completeness_probe(*catalog_profile("linear"), {-1, 1}, 200).positive);
    CHECK_FALSE(completeness_probe(Profile::parse("exp(xi)"), {0, 5}, 100).bounded);
    CHECK_FALSE(completeness_probe(Profile::parse("exp(-xi)"), {0, 5}, 100).bounded);
    CHECK(completeness_probe(Profile::parse("exp(-xi^2)"), {-5, 5}, 100).bounded);
    CHECK(completeness_probe(Profile::parse("2+sin(xi)"), {-1.5707963267948966, 20}, 1000).bounded);
    CHECK_THROWS_AS(completeness_probe(Profile::constant(1.0), {0, 1}, 1), PreconditionError);
    CHECK_THROWS_AS(completeness_probe(Profile::parse("ln(xi)"), {-1, 1}, 10), EvalDomainError);
}

TEST_CASE("grids") {
    CHECK(cube_grid(3, -1, 1, 5).size() == 125);
    for (const Point& p : shell_grid(3, 0.3, 1.5, 9)) {
        const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        CHECK(r >= 0.3);
        CHECK(r <= 1.5);
    }
}
