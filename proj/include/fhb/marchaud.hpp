#pragma once
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "fhb/common.hpp"

namespace fhb {

// A scalar function on the real line, evaluable anywhere, with enough
// metadata for singular quadrature: a sup-norm bound and a decay window
// (|f| negligible outside center +/- radius; radius = inf marks
// non-decaying handles such as pure modes, which cost more in the tail).
//
// `difference` is optional and, when present, must equal f(x) - f(x - y)
// exactly (y of either sign). Built-ins supply cancellation-free closed
// forms (expm1 / sinh based); handles without one fall back to plain
// subtraction, whose rounding noise floors the achievable accuracy near
// alpha -> 1 at about eps^(1-alpha).
// `mean_at_infinity` is the constant component of f far from its support
// (nonzero only for handles with a constant part); the quadrature completes
// the truncated tail with the exact integral of f(xi) - mean, which is what
// the difference settles to (decaying handles) or oscillates around (modes).
struct AnalyticFunction {
    std::function<cplx(double)> eval;
    std::function<cplx(double, double)> difference;
    double sup_norm = 1.0;
    double support_center = 0.0;
    double support_radius = std::numeric_limits<double>::infinity();
    cplx mean_at_infinity{0.0, 0.0};
};

namespace fn {
AnalyticFunction constant(cplx c);
AnalyticFunction gaussian(double x0 = 0.0);      // exp(-(x-x0)^2)
AnalyticFunction x_gaussian();                   // x * exp(-x^2)
AnalyticFunction sech();
AnalyticFunction mode(double k);                 // exp(i k x)
AnalyticFunction trig_sum(std::span<const double> ks, std::span<const cplx> cs);
AnalyticFunction sum(AnalyticFunction a, AnalyticFunction b);
AnalyticFunction scaled(cplx s, AnalyticFunction a);
AnalyticFunction product(AnalyticFunction a, AnalyticFunction b);
}  // namespace fn

// Singular quadrature controls. The inner rule on (0, y0] runs on u = log y
// with geometrically growing panels down to u where the remaining mass is
// negligible; the tail on (y0, Ymax] integrates the assembled difference with
// panels sized to resolve the pullback of the decay window. Node counts are
// the Gauss-Legendre order per panel; an embedded half-order rule provides the
// error estimate behind the quality flag.
struct QuadratureSpec {
    double y0 = 1.0;
    double ymax = 1.0e4;
    int inner_nodes = 24;
    int tail_nodes = 16;
    double requested_tol = 1.0e-6;
    void validate() const;
};

enum class ShiftDirection { backward, forward };

struct QuadratureResult {
    std::vector<cplx> values;
    double tail_bound = 0.0;   // 2 M C_alpha / (alpha * Ymax^alpha)
    double est_error = 0.0;    // max over points of the embedded-rule discrepancy
    bool quality_ok = true;    // est_error <= spec.requested_tol
};

// Marchaud fractional derivative, 0 < alpha < 1 strictly:
//   backward: C_alpha * int_0^inf (f(x) - f(x-y)) / y^(1+alpha) dy
//   forward:  C_alpha * int_0^inf (f(x) - f(x+y)) / y^(1+alpha) dy
// truncated at Ymax with the generic tail bound attached. alpha = 1 throws;
// classical callers must branch to the exact derivative.
QuadratureResult marchaud_derivative(const AnalyticFunction& f, std::span<const double> xs,
                                     double alpha, const QuadratureSpec& spec = {},
                                     ShiftDirection dir = ShiftDirection::backward);

// int_0^Ymax (1 - exp(-i k y)) / y^(1+alpha) dy, the scalar identity behind
// the backward symbol (its exact value is -Gamma(-alpha) * (ik)^alpha).
cplx scalar_symbol_integral(double k, double alpha, const QuadratureSpec& spec = {});

namespace detail {
struct SingularIntegral {
    cplx value;
    double est_error;
};
// int_0^inf d(y) * y^(-1-alpha) dy for an assembled difference d (d(y) -> 0
// linearly as y -> 0). [bump_lo, bump_hi] marks tail ordinates needing unit
// panels; pass an empty window (lo > hi) when the shifted point never meets
// the support, or (y0, ymax) for non-decaying handles. d_inf is the constant
// the difference settles to beyond ymax; its tail integrates in closed form
// (d_inf / (alpha * ymax^alpha)), so truncation leaves only the decaying or
// oscillatory remainder.
SingularIntegral singular_integral(const std::function<cplx(double)>& d, double alpha,
                                   const QuadratureSpec& spec, double bump_lo, double bump_hi,
                                   cplx d_inf);
// Difference d(y) = f(xi) - f(xi - sgn*y) with the stable handle when present.
std::function<cplx(double)> directional_difference(const AnalyticFunction& f, double xi,
                                                   double sgn);
// Tail window for the shifted point xi - sgn*y against f's decay metadata.
void bump_window(const AnalyticFunction& f, double xi, double sgn, const QuadratureSpec& spec,
                 double& lo, double& hi);
}  // namespace detail

}  // namespace fhb
