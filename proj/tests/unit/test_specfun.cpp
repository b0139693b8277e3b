#include "fracadapt/errors.hpp"
#include "fracadapt/l1.hpp"
#include "fracadapt/mesh.hpp"
#include "fracadapt/specfun.hpp"
#include "oracles/oracles.hpp"

#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace fracadapt;
namespace sf = fracadapt::specfun;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("gamma and reciprocal gamma") {
    CHECK(sf::gamma(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
    CHECK(sf::rgamma(0.0) == 0.0);
    CHECK(sf::rgamma(-3.0) == 0.0);
    CHECK(sf::rgamma(2.5) == doctest::Approx(1.0 / std::tgamma(2.5)).epsilon(1e-15));
    int sign = 0;
    CHECK(sf::log_abs_gamma(-0.5, &sign) == doctest::Approx(std::lgamma(-0.5)));
    CHECK(sign == -1);
}

TEST_CASE("ml_two_param") {
    CHECK(sf::ml_two_param(1.0, 1.0, -1.0) == doctest::Approx(0.3678794412).epsilon(1e-10));
    CHECK(sf::ml_two_param(0.5, 1.0, 0.0) == 1.0);
    // 50-digit series, frozen.
    CHECK(rel(sf::ml_two_param(0.4, 1.0, -1.0), 0.44206335968522350534) < 1e-13);
    CHECK(rel(oracle::ml_two_param(0.4, 1.0, -1.0), 0.44206335968522350534) < 1e-15);

    SUBCASE("agrees with the high-precision series across regimes") {
        // The alternating series peaks near exp(|x|^{1/a}) while the sum can
        // be as small as its reciprocal; keep both within 50 digits.
        for (double a : {0.2, 0.5, 0.8, 1.0})
            for (double b : {0.5, 1.0, 1.6}) {
                const double reach = std::pow(25.0, a);
                for (double x : {-reach, -0.3 * reach, -0.01, 0.7, 3.0}) {
                    const double want = oracle::ml_two_param(a, b, x, 4000);
                    INFO("a=" << a << " b=" << b << " x=" << x);
                    CHECK(rel(sf::ml_two_param(a, b, x), want) < 1e-9);
                }
            }
    }
    SUBCASE("large negative arguments against exp(x^2) erfc(x)") {
        for (double x : {8.0, 30.0, 100.0}) {
            const oracle::mp mx = x;
            const double want = static_cast<double>(exp(mx * mx) * boost::math::erfc(mx));
            CHECK(rel(sf::ml_two_param(0.5, 1.0, -x), want) < 1e-9);
        }
    }
    SUBCASE("complete monotonicity shows as decay on the negative axis") {
        double prev = 1.0;
        for (int k = 1; k <= 50; ++k) {
            const double v = sf::ml_two_param(0.6, 1.0, -0.5 * k);
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
    CHECK_THROWS_AS(sf::ml_two_param(1.5, 1.0, 1.0), DomainError);
}

TEST_CASE("mml_series") {
    sf::MLParams zero{1.3, {0.5, 0.2}, {0.0, 0.0}};
    CHECK(rel(sf::mml_series(zero), 1.0 / std::tgamma(1.3)) < 1e-15);

    sf::MLParams two{1.0, {0.6, 0.4}, {-0.5, -0.25}};
    CHECK(rel(sf::mml_series(two), 0.50494649436558925291) < 1e-13);
    CHECK(rel(oracle::mml_two(1.0, 0.6, 0.4, -0.5, -0.25), 0.50494649436558925291) < 1e-15);

    sf::MLParams one{0.7, {0.3}, {-2.0}};
    CHECK(rel(sf::mml_series(one), sf::ml_two_param(0.3, 0.7, -2.0)) < 1e-12);

    SUBCASE("two orders against the 50-digit double sum") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> ord(0.3, 1.0), beta(0.2, 1.9), arg(-1.5, 0.3);
        for (int k = 0; k < 12; ++k) {
            const double b = beta(rng), a1 = ord(rng), a2 = ord(rng), z1 = arg(rng), z2 = arg(rng);
            INFO(b << " " << a1 << " " << a2 << " " << z1 << " " << z2);
            CHECK(rel(sf::mml_series({b, {a1, a2}, {z1, z2}}), oracle::mml_two(b, a1, a2, z1, z2)) < 1e-11);
        }
    }
    SUBCASE("detailed record") {
        const auto d = sf::mml_series_detailed(two);
        CHECK(d.outer_terms > 3);
        CHECK(d.max_abs_term >= 1.0);
    }
    CHECK_THROWS_AS(sf::mml_series({2.5, {0.5}, {1.0}}), DomainError);
    CHECK_THROWS_AS(sf::mml_series({1.0, {0.5, 0.2}, {1.0}}), DomainError);
    CHECK_THROWS_AS(sf::mml_series({1.0, {1.2}, {1.0}}), DomainError);
}

TEST_CASE("f_kernel") {
    CHECK(rel(sf::f_kernel({{1.0}, 1.0, {1.0}, 2.0}), 0.13533528323661269189) < 1e-13);
    CHECK(rel(sf::f_kernel({{0.5}, 1.0, {1.0}, 1.0}), sf::ml_two_param(0.5, 1.0, -1.0)) < 1e-12);
    const double v = sf::f_kernel({{0.4, 0.1}, 0.4, {1.0, 1.0}, 0.5});
    CHECK(v > 0.0);
    CHECK(rel(v, 0.15722176250756893317) < 1e-11);
}

TEST_CASE("gauss_2f1") {
    CHECK(sf::gauss_2f1(0.3, 0.0, 0.7, 0.9) == 1.0);
    CHECK(rel(sf::gauss_2f1(0.3, -0.6, 0.4, 0.5), 0.74735703973872978181) < 1e-13);
    for (auto [ai, a1] : {std::pair{0.2, 0.6}, {0.3, 0.9}, {0.1, 0.4}}) {
        const double want = oracle::hyp2f1_at_one(ai, a1 - 1.0, a1);
        CHECK(rel(sf::gauss_2f1(ai, a1 - 1.0, a1, 1.0), want) < 1e-10);
    }
    SUBCASE("interior points against the series") {
        for (double s : {0.05, 0.3, 0.6, 0.85, 0.97, 0.999})
            for (auto [ai, a1] : {std::pair{0.2, 0.6}, {0.45, 0.9}}) {
                INFO("s=" << s << " ai=" << ai);
                CHECK(rel(sf::gauss_2f1(ai, a1 - 1.0, a1, s), oracle::hyp2f1(ai, a1 - 1.0, a1, s, 200000)) <
                      1e-10);
            }
    }
    CHECK_THROWS_AS(sf::gauss_2f1(0.3, -0.6, 0.4, 1.2), DomainError);
}

TEST_CASE("rho") {
    for (int k = 1; k <= 9; ++k) {
        const double s = 0.1 * k;
        CHECK(rel(sf::rho(0.6, 0.6, s), std::pow(1.0 - s, 0.4)) < 1e-10);
    }
    CHECK(sf::rho(0.3, 0.6, 1.7) == 0.0);
    CHECK(sf::rho(0.3, 0.6, 1.0) == 0.0);
    CHECK(sf::rho(0.3, 0.6, 0.0) == doctest::Approx(1.0));

    SUBCASE("integral representation") {
        // s^{-beta} rho(s) = beta int_s^1 x^{-beta-1} (1-x)^{-alpha_i} dx,
        // frozen from an independent 50-digit quadrature.
        CHECK(rel(sf::rho(0.25, 0.6, 0.5), 0.36046317310229771868) < 1e-10);
        const double beta = 0.4, s = 0.2, ai = 0.35;
        auto g = [&](double x) { return std::pow(x, -beta - 1.0) * std::pow(1.0 - x, -ai); };
        const double integral = boost::math::quadrature::tanh_sinh<double>().integrate(g, s, 1.0, 1e-15);
        CHECK(rel(sf::rho(ai, 0.6, s), beta * integral * std::pow(s, beta)) < 1e-8);
    }
    SUBCASE("bounds") {
        for (double ai : {0.1, 0.3, 0.5})
            for (int k = 0; k <= 20; ++k) {
                const double s = 0.05 * k;
                const double r = sf::rho(ai, 0.5, s);
                CHECK(r >= 0.0);
                CHECK(r <= std::pow(1.0 - s, ai) * (1.0 + 1e-14) + 1e-300);
            }
    }
}

TEST_CASE("mml_contour") {
    const std::vector<double> alphas{0.5, 0.2}, lower{1.0};
    const double c = sf::mml_contour(1.0, 1.3, 1.0, lower, alphas);
    CHECK(c >= 0.0);
    CHECK(rel(c, sf::mml_series({1.3, {0.5, 0.3}, {-1.0, -1.0}})) < 1e-6);
    CHECK(rel(c, oracle::mml_two(1.3, 0.5, 0.3, -1.0, -1.0)) < 1e-6);
    // The value tends to 1/Gamma(beta) like t^{alpha_1 - alpha_2}.
    CHECK(sf::mml_contour(1e-30, 1.2, 1.0, lower, alphas) == doctest::Approx(1.0 / std::tgamma(1.2)).epsilon(1e-8));
    SUBCASE("large t stays positive") {
        for (double t : {10.0, 50.0, 200.0}) CHECK(sf::mml_contour(t, 1.1, 1.0, lower, alphas) > 0.0);
    }
    CHECK_THROWS_AS(sf::mml_contour(1.0, 0.9, 1.0, lower, alphas), DomainError);
    CHECK_THROWS_AS(sf::mml_contour(1.0, 1.6, 1.0, lower, alphas), DomainError);
    CHECK_THROWS_AS(sf::mml_contour(1.0, 1.3, 0.0, lower, alphas), DomainError);
}

TEST_CASE("sign_change_root") {
    CHECK(sf::sign_change_root({{0.0, 1.0}, {1.0, -1.0}}) == doctest::Approx(1.0).epsilon(1e-14));
    // 2 - sqrt(s) - s vanishes at s = 1.
    CHECK(sf::sign_change_root({{0.0, 0.5, 1.0}, {2.0, -1.0, -1.0}}) == doctest::Approx(1.0).epsilon(1e-12));

    const sf::SignedPowerSum S{{0.0, 0.3, 0.8}, {1.0, 1.0, -3.0}};
    const double r = sf::sign_change_root(S);
    // 10^4-point scan on (0, 100 r].
    int changes = 0;
    double prev = S(r * 1e-6);
    CHECK(prev > 0.0);
    for (int k = 1; k <= 10000; ++k) {
        const double x = 100.0 * r * k / 10000.0;
        const double v = S(x);
        if ((v > 0.0) != (prev > 0.0)) ++changes;
        if (std::abs(x - r) > 1e-9 * r) CHECK((v > 0.0) == (x < r));
        prev = v;
    }
    CHECK(changes == 1);

    CHECK_THROWS_AS(sf::sign_change_root({{0.0, 0.5}, {1.0, 2.0}}), DomainError);
    CHECK_THROWS_AS(sf::sign_change_root({{0.1, 0.5}, {1.0, -2.0}}), DomainError);
    CHECK_THROWS_AS(sf::sign_change_root({{0.0, 0.5, 0.7}, {1.0, -2.0, 1.0}}), DomainError);
}

TEST_CASE("homogeneous_solution") {
    const std::vector<double> alphas{0.6, 0.2}, qs{1.0, 1.0};
    CHECK(sf::homogeneous_solution(0.7, 0.0, qs, alphas) == 1.0);
    CHECK(sf::homogeneous_solution(0.0, 1.0, qs, alphas) == 1.0);
    const std::vector<double> one_a{0.7}, one_q{1.0};
    for (double t : {0.1, 1.0, 3.0})
        CHECK(rel(sf::homogeneous_solution(t, 2.0, one_q, one_a), oracle::ml_two_param(0.7, 1.0, -2.0 * std::pow(t, 0.7))) <
              1e-9);

    SUBCASE("matches a fine L1 solve") {
        ProblemSpec p;
        p.alphas = alphas;
        p.q = {[](double) { return 1.0; }, [](double) { return 1.0; }};
        p.lambda = 1.0;
        p.f = [](double, double) { return 0.0; };
        p.u0 = [](double) { return 1.0; };
        const auto h = solve(p, mesh::graded(4096, (2.0 - 0.6) / 0.6, 1.0));
        CHECK(std::abs(sf::homogeneous_solution(1.0, 1.0, qs, alphas) - h.level(h.size() - 1)[0]) < 1e-3);
    }
    SUBCASE("range and lower bound") {
        double prev = 1.0;
        for (int k = 1; k <= 40; ++k) {
            const double t = 0.025 * k;
            const double y = sf::homogeneous_solution(t, 1.0, qs, alphas);
            CHECK(y >= 0.0);
            CHECK(y <= prev);
            CHECK(y >= sf::ml_lower_bound(t, 1.0, 1.0, qs, alphas));
            prev = y;
        }
    }
}

TEST_CASE("constant_coeff_inverse") {
    const std::vector<double> alphas{0.6, 0.2}, qs{1.0, 0.5};
    for (double t : {0.2, 1.0})
        CHECK(sf::constant_coeff_inverse([](double) { return 1.5; }, t, 1.5, qs, alphas, 1.0) ==
              doctest::Approx(1.0).epsilon(1e-10));
    const std::vector<double> one_a{0.5}, one_q{1.0};
    CHECK(rel(sf::constant_coeff_inverse([](double) { return 0.0; }, 0.8, 1.0, one_q, one_a, 2.0),
              2.0 * oracle::ml_two_param(0.5, 1.0, -std::pow(0.8, 0.5))) < 1e-9);
    // v = 1, w0 = 0, one order: w = 1 - E_{a,1}(-t^a) for lambda = 1.
    CHECK(rel(sf::constant_coeff_inverse([](double) { return 1.0; }, 0.8, 1.0, one_q, one_a, 0.0),
              1.0 - oracle::ml_two_param(0.5, 1.0, -std::pow(0.8, 0.5))) < 1e-9);

    SUBCASE("frozen Example 1 coefficients agree with L1") {
        // q_1 = q_2 = 1/2, alpha = (0.4, 4/15), lambda = 1, f = 1.
        const std::vector<double> a{0.4, 0.4 * 2.0 / 3.0}, q{0.5, 0.5};
        const double w = sf::constant_coeff_inverse([](double) { return 1.0; }, 1.0, 1.0, q, a, 0.0, 1e-10);
        const double tight = sf::constant_coeff_inverse([](double) { return 1.0; }, 1.0, 1.0, q, a, 0.0, 1e-13);
        CHECK(std::abs(w - tight) < 1e-9);
        ProblemSpec p;
        p.alphas = a;
        p.q = {[](double) { return 0.5; }, [](double) { return 0.5; }};
        p.lambda = 1.0;
        p.f = [](double, double) { return 1.0; };
        p.u0 = [](double) { return 0.0; };
        const auto h = solve(p, mesh::graded(2048, 4.0, 1.0));
        CHECK(std::abs(h.level(h.size() - 1)[0] - w) < 1e-5);
    }
}

TEST_CASE("ml_lower_bound") {
    const std::vector<double> alphas{1.0, 0.7, 0.3}, q{1.0, 1.0, 1.0}, zeros{0.0, 0.0, 0.0};
    CHECK(sf::ml_lower_bound(0.0, 2.0, 1.0, q, alphas) == 2.0);
    CHECK(sf::ml_lower_bound(0.5, 2.0, 1.0, zeros, alphas) == 0.0);
    // Near 0 the exponential term is largest; for large t the smallest
    // order decays slowest and takes over.
    auto argmax = [&](double t) {
        std::size_t best = 0;
        double value = -1.0;
        for (std::size_t j = 0; j < 3; ++j) {
            const double v = sf::ml_two_param(alphas[j], 1.0, -std::pow(t, alphas[j]));
            if (v > value) value = v, best = j;
        }
        CHECK(sf::ml_lower_bound(t, 1.0, 1.0, q, alphas) == doctest::Approx(value).epsilon(1e-14));
        return best;
    };
    CHECK(argmax(0.1) != argmax(10.0));
}

}  // TEST_SUITE
