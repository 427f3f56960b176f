#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ras/errors.hpp"
#include "ras/profile.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

using namespace ras;

TEST_CASE("parse_profile examples") {
    SUBCASE("1/(1+xi^2)") {
        const auto d = Profile::parse("1/(1+xi^2)").eval2(0.0);
        CHECK(d.value == 1.0);
        CHECK(d.d1 == 0.0);
        CHECK(d.d2 == -2.0);
    }
    SUBCASE("exp(-cosh(xi))") {
        const auto d = Profile::parse("exp(-cosh(xi))").eval2(0.0);
        CHECK(d.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
        CHECK(d.d1 == 0.0);
        CHECK(d.d2 == doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));
    }
    SUBCASE("malformed input reports the offset") {
        try {
            (void)Expression::parse("1+(");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.offset() == 3);
            CHECK_FALSE(e.expected().empty());
        }
    }
    SUBCASE("unknown identifiers and mixed variables are rejected") {
        CHECK_THROWS_AS(Expression::parse("x+1"), ParseError);
        CHECK_THROWS_AS(Expression::parse("tan(xi)"), ParseError);
        CHECK_THROWS_AS(Expression::parse("xi*r"), ParseError);
        CHECK_THROWS_AS(Expression::parse(""), ParseError);
        CHECK_THROWS_AS(Expression::parse("2 3"), ParseError);
        CHECK_THROWS_AS(Expression::parse("sin xi"), ParseError);
    }
    SUBCASE("evaluation-time domain errors") {
        const auto p = Profile::parse("ln(xi)");
        CHECK_THROWS_AS(p(-1.0), EvalDomainError);
        CHECK_THROWS_AS(Profile::parse("sqrt(xi)")(-0.5), EvalDomainError);
        CHECK_THROWS_AS(Profile::parse("1/xi")(0.0), EvalDomainError);
    }
}

TEST_CASE("grammar precedence") {
    CHECK(Expression::parse("-2^2").eval(0.0) == -4.0);
    CHECK(Expression::parse("2^3^2").eval(0.0) == 512.0);
    CHECK(Expression::parse("2^-1").eval(0.0) == 0.5);
    CHECK(Expression::parse("1-2-3").eval(0.0) == -4.0);
    CHECK(Expression::parse("8/4/2").eval(0.0) == 1.0);
    CHECK(Expression::parse("1+2*3").eval(0.0) == 7.0);
    CHECK(Expression::parse("-xi*xi").eval(3.0) == -9.0);
    CHECK(Expression::parse("2.5e-1*r").eval(4.0) == 1.0);
    CHECK(Expression::parse("xi").variable() == Variable::xi);
    CHECK(Expression::parse("r^2").variable() == Variable::r);
    CHECK(Expression::parse("3").variable() == Variable::none);
}

TEST_CASE("printing and re-parsing yields an identical tree") {
    for (const char* text : {"1/(1+xi^2)", "exp(-cosh(xi))", "exp(-r^2)", "-2^2", "2^3^2", "1-2-3", "sqrt(1+r)*ln(2+r)/3",
                             "sin(xi)^2+cos(xi)^2", "0.1+1e-300*xi", "sinh(-(-xi))", "(xi)^(xi)", "1/3"}) {
        const auto e = Expression::parse(text);
        const auto again = Expression::parse(e.to_string());
        CHECK_MESSAGE(e == again, text);
        CHECK(again.to_string() == e.to_string());
    }
    CHECK_FALSE(Expression::parse("1+xi") == Expression::parse("xi+1"));
}

TEST_CASE("catalog profiles match central finite differences") {
    std::mt19937 rng(1234);
    struct Case {
        const char* name;
        double lo, hi;
    };
    for (const Case& c : {Case{"paperA", -5, 5}, Case{"paperB", -3, 3}, Case{"paperC", 0, 3}, Case{"linear", -4, 4}, Case{"const(2.5)", -1, 1}}) {
        const auto p = catalog_profile(c.name);
        REQUIRE(p.has_value());
        std::uniform_real_distribution<double> u(c.lo, c.hi);
        const double h = 1e-5;
        for (int i = 0; i < 100; ++i) {
            const double t = u(rng);
            const auto d = p->eval2(t);
            const double fp = (*p)(t + h), fm = (*p)(t - h);
            CHECK(d.value == (*p)(t));
            CHECK(std::abs(d.d1 - (fp - fm) / (2 * h)) < 1e-6);
            CHECK(std::abs(d.d2 - (p->eval2(t + h).d1 - p->eval2(t - h).d1) / (2 * h)) < 1e-6);
        }
    }
    CHECK_FALSE(catalog_profile("paperD").has_value());
    CHECK(catalog_profile("paperC")->variable() == Variable::r);
}

TEST_CASE("catalog closed forms") {
    const auto a = *catalog_profile("paperA");
    const auto b = *catalog_profile("paperB");
    const auto c = *catalog_profile("paperC");
    for (double t : {-1.3, 0.2, 2.7}) {
        const double s = 1 + t * t;
        const auto da = a.eval2(t);
        CHECK(da.value == doctest::Approx(1 / s).epsilon(1e-15));
        CHECK(da.d1 == doctest::Approx(-2 * t / (s * s)).epsilon(1e-14));
        CHECK(da.d2 == doctest::Approx((6 * t * t - 2) / (s * s * s)).epsilon(1e-13));

        const auto db = b.eval2(t);
        const double eb = std::exp(-std::cosh(t));
        CHECK(db.d1 == doctest::Approx(-std::sinh(t) * eb).epsilon(1e-14));
        CHECK(db.d2 == doctest::Approx((std::sinh(t) * std::sinh(t) - std::cosh(t)) * eb).epsilon(1e-13));

        const auto dc = c.eval2(std::abs(t));
        const double r = std::abs(t), ec = std::exp(-r * r);
        CHECK(dc.d1 == doctest::Approx(-2 * r * ec).epsilon(1e-14));
        CHECK(dc.d2 == doctest::Approx((4 * r * r - 2) * ec).epsilon(1e-13));
    }
}

TEST_CASE("profile validation scan") {
    CHECK_NOTHROW(catalog_profile("paperA")->validated_on({-3, 3}));
    CHECK(catalog_profile("paperA")->validated_on({-3, 3}).domain()->hi == 3.0);
    CHECK_THROWS_AS(catalog_profile("linear")->validated_on({-1, 1}), DomainViolation);
    CHECK_THROWS_AS(Profile::parse("xi-0.5").validated_on({0, 1}), DomainViolation);
}

TEST_CASE("eps_i0") {
    CHECK(eps_i0(Signature::parse("+++"), {1, 0, 0}) == 1.0);
    CHECK(eps_i0(Signature::parse("-++"), {1, 1, 0}) == 0.0);
    CHECK(eps_i0(Signature::parse("-+++"), {0, 2, 0, 0}) == 4.0);
    CHECK_THROWS_AS(eps_i0(Signature::parse("+++"), {1, 0}), PreconditionError);

    SUBCASE("invariant under permuting (eps_i, alpha_i) pairs") {
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> u(-2, 2);
        std::vector<int> eps{-1, 1, 1, -1, 1};
        std::vector<double> alpha(5);
        for (auto& a : alpha) a = u(rng);
        const double ref = eps_i0(Signature(eps), alpha);
        std::vector<int> perm{0, 1, 2, 3, 4};
        while (std::next_permutation(perm.begin(), perm.end())) {
            std::vector<int> e2;
            std::vector<double> a2;
            for (int i : perm) {
                e2.push_back(eps[static_cast<std::size_t>(i)]);
                a2.push_back(alpha[static_cast<std::size_t>(i)]);
            }
            CHECK(eps_i0(Signature(e2), a2) == doctest::Approx(ref).epsilon(1e-15));
        }
    }
    SUBCASE("direction caches the recomputed value exactly") {
        const TranslationDirection d({0.3, -1.7, 2.2}, Signature::parse("-+-"));
        CHECK(d.eps_i0() == eps_i0(d.signature(), d.alphas()));
        CHECK_THROWS_AS(TranslationDirection({0, 0, 0}, Signature::euclidean(3)), PreconditionError);
        CHECK(TranslationDirection({1, 1, 0}, Signature::parse("-++")).is_null());
    }
}

TEST_CASE("lift_translation") {
    const auto e3 = Signature::euclidean(3);
    SUBCASE("identity profile is a coordinate function") {
        const auto s = lift_translation(*catalog_profile("linear"), TranslationDirection({1, 0, 0}, e3));
        const Jet j = s.jet(Point{0.7, 3.0, -1.0});
        CHECK(j.value() == 0.7);
        CHECK(j.gradient() == Eigen::Vector3d(1, 0, 0));
        CHECK(j.hessian().isZero(0.0));
    }
    SUBCASE("t^2 along (1,1,0)") {
        const auto s = lift_translation(Profile::parse("xi^2"), TranslationDirection({1, 1, 0}, e3));
        const Jet j = s.jet(Point{1, 2, 5});
        CHECK(j.value() == 9.0);
        CHECK(j.dd(0, 1) == 2.0);
        CHECK(j.dd(2, 2) == 0.0);
    }
    SUBCASE("parsed paperA at xi = 0") {
        const auto s = lift_translation(Profile::parse("1/(1+xi^2)"), TranslationDirection({1, 0, 0}, e3));
        CHECK(s.jet(Point{0, 4, -2}).dd(0, 0) == -2.0);
    }
    SUBCASE("derivative identities at random points") {
        std::mt19937 rng(17);
        const auto p = *catalog_profile("paperB");
        const TranslationDirection d({0.4, -1.1, 0.8, 0.3}, Signature::parse("-+++"));
        const auto s = lift_translation(p, d);
        for (const Point& x : oracle::random_points(4, 30, -1, 1, rng)) {
            const Jet j = s.jet(x);
            const auto v = p.eval2(d.xi(x));
            CHECK(j.value() == v.value);
            for (int i = 0; i < 4; ++i) {
                const double ai = d.alphas()[static_cast<std::size_t>(i)];
                CHECK(std::abs(j.d(i) - ai * v.d1) <= 1e-14 * std::max(1.0, std::abs(v.d1)));
                for (int k = 0; k < 4; ++k)
                    CHECK(std::abs(j.dd(i, k) - ai * d.alphas()[static_cast<std::size_t>(k)] * v.d2) <= 1e-14 * std::max(1.0, std::abs(v.d2)));
            }
        }
    }
}

TEST_CASE("lift_radial") {
    SUBCASE("r itself") {
        const auto s = lift_radial(Profile::parse("r"), RadialCoordinate(3));
        const Jet j = s.jet(Point{1, 1, 1});
        CHECK(j.value() == 3.0);
        CHECK(j.hessian() == 2.0 * Eigen::Matrix3d::Identity());
    }
    SUBCASE("exp(-r) at the origin") {
        const auto s = lift_radial(Profile::parse("exp(-r)"), RadialCoordinate(3));
        const Jet j = s.jet(Point{0, 0, 0});
        CHECK(j.value() == 1.0);
        CHECK(j.gradient().isZero(0.0));
        CHECK(j.dd(1, 1) == -2.0);
    }
    SUBCASE("exp(-r^2) against a hand chain rule at r = 1") {
        const auto s = lift_radial(Profile::parse("exp(-r^2)"), RadialCoordinate(3));
        const double a = 1 / std::sqrt(3.0);
        const Point x{a, -a, a};
        const Jet j = s.jet(x);
        const double r = 1.0, e = std::exp(-r * r);
        const double p1 = -2 * r * e, p2 = (4 * r * r - 2) * e;
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(j.d(i) - 2 * x[i] * p1) < 1e-12);
            for (int k = 0; k < 3; ++k) {
                const double ref = 4 * x[i] * x[k] * p2 + (i == k ? 2 * p1 : 0.0);
                CHECK(std::abs(j.dd(i, k) - ref) < 1e-12);
            }
        }
    }
    SUBCASE("requires a Euclidean signature") {
        CHECK_THROWS_AS(RadialCoordinate(Signature::parse("-++")), PreconditionError);
        CHECK(RadialCoordinate(Signature::euclidean(4)).dim() == 4);
    }
}

TEST_CASE("profiles evaluate concurrently") {
    const auto p = Profile::parse("exp(-cosh(xi))*sin(xi)");
    std::vector<double> out(64);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < out.size(); i += 4) out[i] = p.eval2(0.05 * static_cast<double>(i)).d2;
        });
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == p.eval2(0.05 * static_cast<double>(i)).d2);
}
