#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fhb/grid.hpp"
#include "fhb/marchaud.hpp"
#include "fhb/special.hpp"

using namespace fhb;

TEST_CASE("gamma on the reference table") {
    struct Row {
        double x, want;
    };
    // 20-digit references
    const Row rows[] = {
        {0.01, 99.432585119150603714},    {0.25, 3.6256099082219083119},
        {0.5, 1.7724538509055160273},     {0.75, 1.2254167024651776451},
        {0.99, 1.0058719796441077919},    {1.25, 0.90640247705547707798},
        {1.5, 0.88622692545275801365},    {1.75, 0.91906252684888323385},
        {1.999, 0.99957762742372928934},  {-0.25, -4.9016668098607105805},
        {-0.5, -3.5449077018110320546},   {-0.75, -4.8341465442958777492},
        {-0.99, -100.43695466580869062},  {-0.01, -100.58719796441077919},
    };
    for (const Row& r : rows)
        CHECK(std::abs(gamma_lanczos(r.x) - r.want) <= 1e-13 * std::abs(r.want));
}

TEST_CASE("marchaud normalization constant") {
    // C_alpha = alpha / Gamma(1 - alpha)
    CHECK(std::abs(marchaud_constant(0.5) - 0.28209479177387814347) < 1e-15);
    CHECK(std::abs(marchaud_constant(0.99) - 0.00995649463215381209) < 1e-16);
    CHECK_THROWS_AS(marchaud_constant(0.0), std::invalid_argument);
    CHECK_THROWS_AS(marchaud_constant(1.0), std::invalid_argument);
}

TEST_CASE("quadrature spec validation") {
    QuadratureSpec ok;
    CHECK_NOTHROW(ok.validate());

    QuadratureSpec bad = ok;
    bad.y0 = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.y0 = 2.0 * bad.ymax;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.inner_nodes = 8;  // spec floor is 16
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.tail_nodes = 2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.requested_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("scalar symbol integral at k=1, alpha=1/2") {
    // int_0^inf (1 - e^{-iy}) y^{-3/2} dy = -Gamma(-1/2) (i)^{1/2}
    //   => re = im = sqrt(2 pi) = 2.5066282746310005024
    // the truncated oscillatory tail leaves ~ymax^{-3/2} = 1e-6 behind
    const cplx v = scalar_symbol_integral(1.0, 0.5);
    CHECK(std::abs(v.real() - 2.5066282746310005024) < 5e-6);
    CHECK(std::abs(v.imag() - 2.5066282746310005024) < 5e-6);

    QuadratureSpec far;
    far.ymax = 1.0e5;
    const cplx w = scalar_symbol_integral(1.0, 0.5, far);
    CHECK(std::abs(w.real() - 2.5066282746310005024) < 1e-7);
    CHECK(std::abs(w.imag() - 2.5066282746310005024) < 1e-7);
}

TEST_CASE("derivative of a constant vanishes identically") {
    const double xs[3] = {-1.0, 0.0, 2.5};
    QuadratureResult qr = marchaud_derivative(fn::constant(cplx{3.0, -1.0}), xs, 0.5);
    for (const cplx& v : qr.values) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("backward derivative of a gaussian matches the spectral form") {
    // big box so the periodic images sit below the comparison tolerance
    const double L = 30720.0;
    const std::size_t n = std::size_t(1) << 18;
    const double a = 0.5;
    GridFunction f = GridFunction::sample(L, n, [](double x) { return cplx{std::exp(-x * x), 0.0}; });
    GridFunction d = spectral_frac_derivative(f, FractionalOrder(a));

    std::vector<double> xs;
    std::vector<cplx> ref;
    const std::size_t mid = n / 2;
    for (std::size_t j = mid - 20; j <= mid + 20; j += 4) {
        xs.push_back(f.x(j));
        ref.push_back(d.values()[j]);
    }
    QuadratureResult qr = marchaud_derivative(fn::gaussian(), xs, a);
    CHECK(qr.quality_ok);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(qr.values[i] - ref[i]) < 1e-6);
}

TEST_CASE("forward derivative of a mode picks up the conjugate symbol") {
    const double a = 0.5;
    std::vector<double> xs;
    for (int i = 0; i < 8; ++i) xs.push_back(-2.0 + 0.5 * double(i));
    QuadratureResult qr = marchaud_derivative(fn::mode(1.0), xs, a, {}, ShiftDirection::forward);
    const cplx mult = std::polar(1.0, -a * std::numbers::pi / 2.0);  // (-i)^a
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const cplx want = mult * cplx{std::cos(xs[i]), std::sin(xs[i])};
        CHECK(std::abs(qr.values[i] - want) < 1e-6);
    }
}

TEST_CASE("backward derivative of a mode matches (ik)^a") {
    const double a = 0.5;
    const double xs[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    QuadratureResult qr = marchaud_derivative(fn::mode(2.0), xs, a);
    for (std::size_t i = 0; i < 5; ++i) {
        const cplx want = principal_power_ik(2.0, a) * cplx{std::cos(2.0 * xs[i]), std::sin(2.0 * xs[i])};
        CHECK(std::abs(qr.values[i] - want) < 1e-5);
    }
}

TEST_CASE("stable difference handles agree with plain subtraction") {
    for (const AnalyticFunction& f : {fn::gaussian(), fn::sech(), fn::x_gaussian(), fn::mode(1.5)}) {
        REQUIRE(bool(f.difference));
        for (double x : {-1.3, 0.0, 0.7}) {
            for (double y : {0.1, 1.0, -0.4}) {
                const cplx plain = f.eval(x) - f.eval(x - y);
                CHECK(std::abs(f.difference(x, y) - plain) < 1e-14);
            }
        }
    }
}

TEST_CASE("difference handles stay accurate at tiny shifts") {
    // against y f'(x) the stable difference leaves only the quadratic Taylor
    // term (~ y^2 f''/2, here 1e-20 and 5e-18); plain subtraction of two
    // nearly equal values would sit at the 1e-16 rounding floor instead
    const double y = 1e-9;
    const AnalyticFunction g = fn::gaussian();
    const double x = 0.7;
    const double fp = -2.0 * x * std::exp(-x * x);
    CHECK(std::abs(g.difference(x, y) - cplx{y * fp, 0.0}) < 1e-18);

    const AnalyticFunction m = fn::mode(3.0);
    const cplx mp = cplx{0.0, 3.0} * cplx{std::cos(3.0 * x), std::sin(3.0 * x)};
    CHECK(std::abs(m.difference(x, y) - y * mp) < 2e-17);
}

TEST_CASE("tail truncation is completed, not dropped") {
    // halving/doubling ymax must not move the value at the 1e-9 level even at
    // alpha = 0.25 where the raw truncated tail integral is ~0.08
    const double xs[1] = {0.0};
    QuadratureSpec s1, s2;
    s2.ymax = 2.0e4;
    const cplx v1 = marchaud_derivative(fn::gaussian(), xs, 0.25, s1).values[0];
    const cplx v2 = marchaud_derivative(fn::gaussian(), xs, 0.25, s2).values[0];
    CHECK(std::abs(v1 - v2) < 1e-9);
}

TEST_CASE("quality flag trips on an unreachable tolerance") {
    QuadratureSpec hard;
    hard.requested_tol = 1e-16;
    const double xs[2] = {0.0, 1.0};
    QuadratureResult qr = marchaud_derivative(fn::gaussian(), xs, 0.5, hard);
    CHECK_FALSE(qr.quality_ok);
    CHECK(qr.est_error > hard.requested_tol);

    QuadratureResult fine = marchaud_derivative(fn::gaussian(), xs, 0.5);
    CHECK(fine.quality_ok);
}

TEST_CASE("tail bound formula is attached") {
    const double xs[1] = {0.0};
    QuadratureSpec s;
    QuadratureResult qr = marchaud_derivative(fn::gaussian(), xs, 0.5, s);
    const double want = 2.0 * 1.0 * marchaud_constant(0.5) / (0.5 * std::pow(s.ymax, 0.5));
    CHECK(qr.tail_bound == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("alpha = 1 is rejected") {
    const double xs[1] = {0.0};
    CHECK_THROWS_AS(marchaud_derivative(fn::gaussian(), xs, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(marchaud_derivative(fn::gaussian(), xs, 0.0), std::invalid_argument);
}

TEST_CASE("combinators compose means and differences") {
    // adding a constant must not change the derivative
    const double xs[3] = {-0.5, 0.0, 1.0};
    AnalyticFunction shifted = fn::sum(fn::constant(cplx{2.0, 0.0}), fn::gaussian());
    QuadratureResult a = marchaud_derivative(shifted, xs, 0.5);
    QuadratureResult b = marchaud_derivative(fn::gaussian(), xs, 0.5);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a.values[i] - b.values[i]) < 1e-12);

    // scaling is linear
    AnalyticFunction sc = fn::scaled(cplx{0.0, 2.0}, fn::gaussian());
    QuadratureResult c = marchaud_derivative(sc, xs, 0.5);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(c.values[i] - cplx{0.0, 2.0} * b.values[i]) < 1e-12);

    // trig_sum = weighted modes
    const double ks[2] = {1.0, 2.0};
    const cplx cs[2] = {{0.5, 0.0}, {0.0, -1.0}};
    AnalyticFunction ts = fn::trig_sum(ks, cs);
    QuadratureResult d = marchaud_derivative(ts, xs, 0.5);
    for (std::size_t i = 0; i < 3; ++i) {
        cplx want{0.0, 0.0};
        for (int q = 0; q < 2; ++q)
            want += cs[q] * principal_power_ik(ks[q], 0.5) *
                    cplx{std::cos(ks[q] * xs[i]), std::sin(ks[q] * xs[i])};
        CHECK(std::abs(d.values[i] - want) < 1e-5);
    }
}

TEST_CASE("x gaussian derivative against the spectral form") {
    const double L = 30720.0;
    const std::size_t n = std::size_t(1) << 18;
    const double a = 0.75;
    GridFunction f = GridFunction::sample(L, n, [](double x) { return cplx{x * std::exp(-x * x), 0.0}; });
    GridFunction d = spectral_frac_derivative(f, FractionalOrder(a));
    std::vector<double> xs;
    std::vector<cplx> ref;
    const std::size_t mid = n / 2;
    for (std::size_t j = mid - 12; j <= mid + 12; j += 6) {
        xs.push_back(f.x(j));
        ref.push_back(d.values()[j]);
    }
    QuadratureResult qr = marchaud_derivative(fn::x_gaussian(), xs, a);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(qr.values[i] - ref[i]) < 1e-6);
}
