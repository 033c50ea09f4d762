#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fhb/kdv.hpp"

using namespace fhb;

namespace {

// (k^2/2) sech^2(theta/2) without overflow for large |theta|
double sech2_profile(double k, double theta) {
    const double e = std::exp(-std::abs(0.5 * theta));
    const double s = 2.0 * e / (1.0 + e * e);
    return 0.5 * k * k * s * s;
}

}  // namespace

TEST_CASE("space-time grid validation") {
    CHECK_NOTHROW(SpaceTimeGrid{}.validate());
    CHECK_THROWS_AS((SpaceTimeGrid{0.0, 1024, {0.0}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SpaceTimeGrid{30.0, 100, {0.0}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SpaceTimeGrid{30.0, 4, {0.0}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SpaceTimeGrid{30.0, 1024, {}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SpaceTimeGrid{30.0, 1024, {1.0, 0.0}}.validate()), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((SpaceTimeGrid{30.0, 1024, {nan}}.validate()), std::invalid_argument);
}

TEST_CASE("constant tau gives the zero field") {
    SpaceTimeGrid grid{5.0, 16, {-1.0, 0.0, 2.0}};
    Field f = u_from_tau(ExpSum::one(), grid);
    REQUIRE(f.u.size() == 48);
    for (const cplx& v : f.u) CHECK(v == cplx{0.0, 0.0});

    TauPointEval pe = tau_point_eval(ExpSum::one(), 0.3, -0.7);
    CHECK(pe.u == cplx{0.0, 0.0});
    CHECK(pe.uxxx == cplx{0.0, 0.0});
    CHECK(pe.ut == cplx{0.0, 0.0});
}

TEST_CASE("one-soliton point values at the crest") {
    ExpSum tau = one_soliton_tau(cplx{-1.0, 0.0}, cplx{0.0, 0.0}, FractionalOrder(1.0));
    TauPointEval pe = tau_point_eval(tau, 0.0, 0.0);
    CHECK(std::abs(pe.u - cplx{0.5, 0.0}) < 1e-15);
    // theta = 0 is the crest: odd derivatives vanish identically there
    CHECK(pe.ux == cplx{0.0, 0.0});
    CHECK(pe.uxxx == cplx{0.0, 0.0});
    CHECK(pe.ut == cplx{0.0, 0.0});
    CHECK(pe.uxx.real() == -0.25);
}

TEST_CASE("soliton profile matches the sech^2 law") {
    SpaceTimeGrid grid{30.0, 1024, {-1.0, 0.0, 1.0}};
    for (double k : {-1.0, -2.0}) {
        for (double a : {0.5, 1.0}) {
            ResidualReport rr = soliton_profile_check(k, 0.4, FractionalOrder(a), grid);
            CHECK(rr.pass);
            CHECK(rr.max_abs <= 1e-12);
        }
    }
    CHECK_THROWS_AS(soliton_profile_check(1.0, 0.0, FractionalOrder(1.0), SpaceTimeGrid{}),
                    std::invalid_argument);
}

TEST_CASE("delta only translates the profile") {
    const double k = -1.5, delta = 0.8;
    ExpSum shifted = one_soliton_tau(cplx{k, 0.0}, cplx{delta, 0.0}, FractionalOrder(0.5));
    ExpSum base = one_soliton_tau(cplx{k, 0.0}, cplx{0.0, 0.0}, FractionalOrder(0.5));
    for (double x : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
        for (double t : {-0.5, 0.0, 1.0}) {
            const cplx a = tau_point_eval(shifted, x, t).u;
            const cplx b = tau_point_eval(base, x + delta / k, t).u;
            CHECK(std::abs(a - b) <= 1e-12);
        }
    }
}

TEST_CASE("amplitude and speed laws") {
    for (double k : {-1.0, -2.0}) {
        for (double a : {0.5, 1.0}) {
            const double delta = 0.3;
            ExpSum tau = one_soliton_tau(cplx{k, 0.0}, cplx{delta, 0.0}, FractionalOrder(a));
            const double omega = dispersion_omega(cplx{k, 0.0}, FractionalOrder(a)).omega.real();

            const double x0 = find_peak(tau, -delta / k, 0.0);
            CHECK(std::abs(tau_point_eval(tau, x0, 0.0).u.real() - 0.5 * k * k) <= 1e-10);

            const double xp = find_peak(tau, -(omega + delta) / k, 1.0);
            const double xm = find_peak(tau, (omega - delta) / k, -1.0);
            CHECK(std::abs(0.5 * (xp - xm) - (-omega / k)) <= 1e-10);
        }
    }
}

TEST_CASE("real phases give an exactly real field") {
    TwoSolitonResult ts = two_soliton_tau(cplx{-1.0, 0.0}, cplx{-2.0, 0.0}, cplx{0.2, 0.0},
                                          cplx{-0.1, 0.0}, FractionalOrder(0.5));
    SpaceTimeGrid grid{20.0, 64, {-1.0, 0.0, 1.0}};
    Field f = u_from_tau(ts.tau, grid);
    for (const cplx& v : f.u) CHECK(v.imag() == 0.0);
}

TEST_CASE("vanishing tau is rejected with its location") {
    PhaseVector p;
    p.k = cplx{-1.0, 0.0};
    p.omega = cplx{1.0, 0.0};
    p.sigma = cplx{1.0, 0.0};
    ExpSum bad({Term{cplx{1.0, 0.0}, PhaseVector{}}, Term{cplx{-1.0, 0.0}, p}});
    CHECK_THROWS_WITH_AS(tau_point_eval(bad, 0.0, 0.0), doctest::Contains("vanishes"),
                         std::domain_error);
    SpaceTimeGrid grid{4.0, 8, {0.0}};
    CHECK_THROWS_AS(u_from_tau(bad, grid), std::domain_error);
}

TEST_CASE("classical pde residual vanishes on soliton solutions") {
    SpaceTimeGrid grid{30.0, 1024, {-2.0, -1.0, 0.0, 1.0, 2.0}};

    ExpSum one = one_soliton_tau(cplx{-1.0, 0.0}, cplx{0.0, 0.0}, FractionalOrder(1.0));
    ResidualReport r1 = pde_residual(one, FractionalOrder(1.0), grid);
    CHECK(r1.pass);
    CHECK(r1.max_abs <= 1e-8);
    CHECK(r1.tolerance == 1e-8);
    CHECK(r1.notes.find("classical") != std::string::npos);
    REQUIRE(r1.grid.has_value());
    CHECK(r1.grid->Nx == 1024);
    CHECK(r1.grid->Nt == 5);

    TwoSolitonResult ts = two_soliton_tau(cplx{-1.0, 0.0}, cplx{-2.0, 0.0}, cplx{0.0, 0.0},
                                          cplx{0.0, 0.0}, FractionalOrder(1.0));
    ResidualReport r2 = pde_residual(ts.tau, FractionalOrder(1.0), grid);
    CHECK(r2.pass);
    CHECK(r2.max_abs <= 1e-8);
}

TEST_CASE("fractional pde residual is reported as diagnostic only") {
    SpaceTimeGrid grid{30.0, 128, {-1.0, 0.0, 1.0}};
    ExpSum tau = one_soliton_tau(cplx{-1.0, 0.0}, cplx{0.0, 0.0}, FractionalOrder(0.5));
    ResidualReport rd = pde_residual(tau, FractionalOrder(0.5), grid);
    CHECK(rd.pass);
    CHECK(std::isinf(rd.tolerance));
    CHECK(rd.notes.find("formal regime") != std::string::npos);
    const std::string j = to_json(rd);
    CHECK(j.find("\"tolerance\": null") != std::string::npos);
    CHECK(j.find("\"max_abs\"") != std::string::npos);
}

TEST_CASE("two-soliton collision phase shifts") {
    const double k1 = -1.0, k2 = -2.0, T = 40.0;
    TwoSolitonResult ts = two_soliton_tau(cplx{k1, 0.0}, cplx{k2, 0.0}, cplx{0.0, 0.0},
                                          cplx{0.0, 0.0}, FractionalOrder(1.0));
    const double w1 = 1.0, w2 = 8.0;  // -k^3
    const double s1 = -w1 / k1, s2 = -w2 / k2;
    const double lnA = std::log(9.0);  // |ln a12|, a12 = 1/9

    const double x1p = find_peak(ts.tau, s1 * T, T);
    const double x1m = find_peak(ts.tau, -s1 * T, -T);
    const double x2p = find_peak(ts.tau, s2 * T, T);
    const double x2m = find_peak(ts.tau, -s2 * T, -T);

    const double shift1 = x1p - x1m - s1 * 2.0 * T;
    const double shift2 = x2p - x2m - s2 * 2.0 * T;

    // the slow soliton is dragged back, the fast one pushed forward, and
    // each displacement scales as |ln a12| / |k|
    CHECK(shift1 < 0.0);
    CHECK(shift2 > 0.0);
    CHECK(std::abs(std::abs(shift1 * k1) - lnA) <= 1e-6);
    CHECK(std::abs(std::abs(shift2 * k2) - lnA) <= 1e-6);

    // far from the collision the field is two clean sech^2 humps, with the
    // interaction reduced to those phase shifts
    const double logA = std::log(1.0 / 9.0);
    for (double t : {-T, T}) {
        for (double xc : {(t > 0 ? x1p : x1m), (t > 0 ? x2p : x2m)}) {
            for (double dx : {-3.0, -1.0, 0.0, 0.7, 2.5}) {
                const double x = xc + dx;
                const double th1 = k1 * x + w1 * t + (t > 0 ? logA : 0.0);
                const double th2 = k2 * x + w2 * t + (t > 0 ? 0.0 : logA);
                const double want = sech2_profile(k1, th1) + sech2_profile(k2, th2);
                CHECK(std::abs(tau_point_eval(ts.tau, x, t).u.real() - want) <= 1e-6);
            }
        }
    }
}

TEST_CASE("field csv layout") {
    SpaceTimeGrid grid{1.0, 8, {0.0}};
    Field f = u_from_tau(one_soliton_tau(cplx{-1.0, 0.0}, cplx{0.0, 0.0}, FractionalOrder(1.0)),
                         grid);
    std::ostringstream os;
    write_field_csv(os, f);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "x,t,u_re,u_im");
    std::vector<std::string> rows;
    while (std::getline(is, line)) rows.push_back(line);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].rfind("-1,0,", 0) == 0);
    CHECK(rows[4].rfind("0,0,0.5,", 0) == 0);  // the crest sits at x = 0

    // identical inputs serialize to identical bytes
    std::ostringstream os2;
    write_field_csv(os2, f);
    CHECK(os.str() == os2.str());
}
