#pragma once
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fhb/common.hpp"
#include "fhb/expsum.hpp"
#include "fhb/marchaud.hpp"
#include "fhb/report.hpp"

namespace fhb {

// Uniform x-grid on [-Lx, Lx) crossed with an explicit (not necessarily
// uniform) list of sample times.
struct SpaceTimeGrid {
    double Lx = 30.0;
    std::size_t nx = 1024;
    std::vector<double> ts{0.0};

    void validate() const;  // nx power of two >= 8, Lx > 0, ts finite and sorted
    double spacing() const { return 2.0 * Lx / double(nx); }
    double x(std::size_t j) const { return -Lx + spacing() * double(j); }
};

// Field samples in time-major order: u[it * grid.nx + jx].
struct Field {
    SpaceTimeGrid grid;
    std::vector<cplx> u;
};

// Pointwise field data derived from a tau function at one (x, t), computed
// from scaled exponential moments (largest exponent factored out, so phases
// of any magnitude are safe).
struct TauPointEval {
    cplx u, ux, uxx, uxxx, ut;
};

// u = 2 (F F_xx - F_x^2) / F^2 with F_x, F_xx from the exact multiplier
// rule; throws std::domain_error naming the location when F vanishes
// (relative magnitude below 1e-10 of the term sum).
Field u_from_tau(const ExpSum& F, const SpaceTimeGrid& grid);
TauPointEval tau_point_eval(const ExpSum& F, double x, double t);

// Max over the grid of |u_from_tau - (k^2/2) sech^2((k x + omega t + delta)/2)|,
// gated at 1e-12. The sech^2 prefactor is k^2/2: that is what
// 2 (d/dx)^2 ln(1 + e^theta) equals, and the only amplitude consistent with
// the classical PDE residual. Requires the real regime k < 0.
ResidualReport soliton_profile_check(double k, double delta, FractionalOrder alpha,
                                     const SpaceTimeGrid& grid);

// D_t^alpha u + u_xxx + 6 u u_x on the grid. u and its x-derivatives come
// from the exponential sum exactly; the fractional time derivative is the
// backward Marchaud quadrature on the analytic time slice u(x, .) for
// alpha < 1, and the exact analytic u_t at alpha = 1. The alpha = 1 report
// gates at 1e-8; alpha < 1 is diagnostic only (tolerance +inf, note
// "formal regime alpha < 1"). Requires every phase real (k, omega, delta).
ResidualReport pde_residual(const ExpSum& F, FractionalOrder alpha, const SpaceTimeGrid& grid,
                            const QuadratureSpec& quad = {});

// argmax_x u(x, t) near x0: coarse scan over x0 +/- 4 then Newton on u_x.
double find_peak(const ExpSum& F, double x0, double t);

// CSV rows x,t,u_re,u_im with %.17g formatting, header included.
void write_field_csv(std::ostream& os, const Field& f);

}  // namespace fhb
