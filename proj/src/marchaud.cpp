#include "fhb/marchaud.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fhb/quadrature.hpp"
#include "fhb/special.hpp"

namespace fhb {

namespace fn {

AnalyticFunction constant(cplx c) {
    AnalyticFunction f;
    f.eval = [c](double) { return c; };
    f.difference = [](double, double) { return cplx{0.0, 0.0}; };
    f.sup_norm = std::abs(c);
    f.mean_at_infinity = c;
    return f;
}

AnalyticFunction gaussian(double x0) {
    AnalyticFunction f;
    f.eval = [x0](double x) { return cplx{std::exp(-(x - x0) * (x - x0)), 0.0}; };
    f.difference = [x0](double x, double y) {
        const double a = x - x0;
        return cplx{-std::exp(-a * a) * std::expm1((2.0 * a - y) * y), 0.0};
    };
    f.sup_norm = 1.0;
    f.support_center = x0;
    f.support_radius = 7.0;
    return f;
}

AnalyticFunction x_gaussian() {
    // x * exp(-x^2) = x * gaussian; difference composed exactly:
    // (x f)(xi) - (x f)(xi - y) = xi * Df + y * f(xi - y)
    AnalyticFunction g = gaussian();
    AnalyticFunction f;
    f.eval = [g](double x) { return x * g.eval(x); };
    f.difference = [g](double x, double y) {
        return x * g.difference(x, y) + y * g.eval(x - y);
    };
    f.sup_norm = std::sqrt(0.5) * std::exp(-0.5);
    f.support_radius = 7.5;
    return f;
}

namespace {
double sech_stable(double x) {
    const double e = std::exp(-std::abs(x));
    return 2.0 * e / (1.0 + e * e);
}
}  // namespace

AnalyticFunction sech() {
    AnalyticFunction f;
    f.eval = [](double x) { return cplx{sech_stable(x), 0.0}; };
    f.difference = [](double x, double y) {
        if (std::abs(x) > 300.0 || std::abs(x - y) > 300.0)
            return cplx{sech_stable(x) - sech_stable(x - y), 0.0};
        const double num = -2.0 * std::sinh(x - 0.5 * y) * std::sinh(0.5 * y);
        return cplx{num / (std::cosh(x) * std::cosh(x - y)), 0.0};
    };
    f.sup_norm = 1.0;
    f.support_radius = 44.0;
    return f;
}

AnalyticFunction mode(double k) {
    AnalyticFunction f;
    f.eval = [k](double x) { return cplx{std::cos(k * x), std::sin(k * x)}; };
    f.difference = [k](double x, double y) {
        // exp(ikx) * (1 - exp(-iky)), with 1 - cos = 2 sin^2 kept stable
        const double s = std::sin(0.5 * k * y);
        const cplx one_minus{2.0 * s * s, std::sin(k * y)};
        return cplx{std::cos(k * x), std::sin(k * x)} * one_minus;
    };
    f.sup_norm = 1.0;
    return f;
}

AnalyticFunction trig_sum(std::span<const double> ks, std::span<const cplx> cs) {
    if (ks.size() != cs.size()) throw std::invalid_argument("trig_sum size mismatch");
    std::vector<double> k(ks.begin(), ks.end());
    std::vector<cplx> c(cs.begin(), cs.end());
    AnalyticFunction f;
    f.eval = [k, c](double x) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < k.size(); ++i)
            acc += c[i] * cplx{std::cos(k[i] * x), std::sin(k[i] * x)};
        return acc;
    };
    f.difference = [k, c](double x, double y) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < k.size(); ++i) {
            const double s = std::sin(0.5 * k[i] * y);
            const cplx one_minus{2.0 * s * s, std::sin(k[i] * y)};
            acc += c[i] * cplx{std::cos(k[i] * x), std::sin(k[i] * x)} * one_minus;
        }
        return acc;
    };
    double m = 0.0;
    for (const auto& ci : c) m += std::abs(ci);
    f.sup_norm = m;
    return f;
}

AnalyticFunction sum(AnalyticFunction a, AnalyticFunction b) {
    AnalyticFunction f;
    f.eval = [a, b](double x) { return a.eval(x) + b.eval(x); };
    if (a.difference && b.difference)
        f.difference = [a, b](double x, double y) {
            return a.difference(x, y) + b.difference(x, y);
        };
    f.sup_norm = a.sup_norm + b.sup_norm;
    const double alo = a.support_center - a.support_radius, ahi = a.support_center + a.support_radius;
    const double blo = b.support_center - b.support_radius, bhi = b.support_center + b.support_radius;
    const double lo = std::min(alo, blo), hi = std::max(ahi, bhi);
    f.support_center = std::isfinite(lo) && std::isfinite(hi) ? 0.5 * (lo + hi) : 0.0;
    f.support_radius = std::isfinite(lo) && std::isfinite(hi)
                           ? 0.5 * (hi - lo)
                           : std::numeric_limits<double>::infinity();
    f.mean_at_infinity = a.mean_at_infinity + b.mean_at_infinity;
    return f;
}

AnalyticFunction scaled(cplx s, AnalyticFunction a) {
    AnalyticFunction f;
    f.eval = [s, a](double x) { return s * a.eval(x); };
    if (a.difference)
        f.difference = [s, a](double x, double y) { return s * a.difference(x, y); };
    f.sup_norm = std::abs(s) * a.sup_norm;
    f.support_center = a.support_center;
    f.support_radius = a.support_radius;
    f.mean_at_infinity = s * a.mean_at_infinity;
    return f;
}

AnalyticFunction product(AnalyticFunction a, AnalyticFunction b) {
    AnalyticFunction f;
    f.eval = [a, b](double x) { return a.eval(x) * b.eval(x); };
    if (a.difference && b.difference)
        f.difference = [a, b](double x, double y) {
            // fg(xi) - fg(xi-y) = f(xi) Dg + g(xi-y) Df
            return a.eval(x) * b.difference(x, y) + b.eval(x - y) * a.difference(x, y);
        };
    f.sup_norm = a.sup_norm * b.sup_norm;
    // decay window: intersection when both decay, else the finite one
    const double alo = a.support_center - a.support_radius, ahi = a.support_center + a.support_radius;
    const double blo = b.support_center - b.support_radius, bhi = b.support_center + b.support_radius;
    const double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
    if (std::isfinite(lo) && std::isfinite(hi)) {
        f.support_center = 0.5 * (lo + hi);
        f.support_radius = std::max(0.5 * (hi - lo), 1.0);
    } else if (std::isfinite(ahi - alo)) {
        f.support_center = a.support_center;
        f.support_radius = a.support_radius;
    } else if (std::isfinite(bhi - blo)) {
        f.support_center = b.support_center;
        f.support_radius = b.support_radius;
    }
    // exact when either factor decays or both are constants; a product of
    // oscillations hiding a constant part is outside what the built-ins build
    f.mean_at_infinity = a.mean_at_infinity * b.mean_at_infinity;
    return f;
}

}  // namespace fn

void QuadratureSpec::validate() const {
    if (!(y0 > 0.0) || !(y0 <= ymax))
        throw std::invalid_argument("quadrature spec requires 0 < y0 <= ymax");
    if (inner_nodes < 16 || tail_nodes < 16)
        throw std::invalid_argument("quadrature node counts must be >= 16");
    if (!(requested_tol > 0.0))
        throw std::invalid_argument("requested_tol must be positive");
}

namespace detail {

namespace {

struct Panel {
    cplx value;
    double est;
};

template <class F>
Panel gl_panel(const F& g, double a, double b, int n) {
    const GaussRule& hi = gauss_legendre(n);
    const GaussRule& lo = gauss_legendre(std::max(6, n / 2));
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx shi{0.0, 0.0}, slo{0.0, 0.0};
    for (std::size_t i = 0; i < hi.x.size(); ++i) shi += hi.w[i] * g(mid + half * hi.x[i]);
    for (std::size_t i = 0; i < lo.x.size(); ++i) slo += lo.w[i] * g(mid + half * lo.x[i]);
    shi *= half;
    slo *= half;
    return {shi, std::abs(shi - slo)};
}

}  // namespace

std::function<cplx(double)> directional_difference(const AnalyticFunction& f, double xi,
                                                   double sgn) {
    if (f.difference) {
        auto d = f.difference;
        return [d, xi, sgn](double y) { return d(xi, sgn * y); };
    }
    auto ev = f.eval;
    const cplx fxi = ev(xi);
    return [ev, fxi, xi, sgn](double y) { return fxi - ev(xi - sgn * y); };
}

void bump_window(const AnalyticFunction& f, double xi, double sgn, const QuadratureSpec& spec,
                 double& lo, double& hi) {
    if (!std::isfinite(f.support_radius)) {
        lo = spec.y0;
        hi = spec.ymax;
        return;
    }
    const double r = f.support_radius + 2.0;
    const double center = sgn > 0 ? xi - f.support_center : f.support_center - xi;
    lo = std::max(spec.y0, center - r);
    hi = std::min(spec.ymax, center + r);
}

SingularIntegral singular_integral(const std::function<cplx(double)>& d, double alpha,
                                   const QuadratureSpec& spec, double bump_lo, double bump_hi,
                                   cplx d_inf) {
    cplx total{0.0, 0.0};
    double est = 0.0;

    // inner: y = e^u on (0, y0]; truncated where the remaining relative mass
    // (which scales like e^{(1-alpha) * (u - log y0)}) drops below e^-41
    const double utop = std::log(spec.y0);
    const double umin = std::max(-690.0, utop - 41.0 / (1.0 - alpha));
    auto inner = [&](double u) {
        const double y = std::exp(u);
        const cplx dv = d(y);
        if (dv == cplx{0.0, 0.0}) return cplx{0.0, 0.0};
        return dv * std::exp(-alpha * u);
    };
    double len = 1.0, hi_u = utop;
    while (hi_u > umin) {
        const double lo_u = std::max(umin, hi_u - len);
        const Panel p = gl_panel(inner, lo_u, hi_u, spec.inner_nodes);
        total += p.value;
        est += p.est;
        hi_u = lo_u;
        len *= 2.0;
    }
    // mass left below the truncation point, assuming d(y) ~ d(ymin) * y/ymin
    const double ymin = std::exp(umin);
    est += std::abs(d(ymin)) * std::pow(ymin, -alpha) / (1.0 - alpha);

    // tail: direct difference form on [y0, ymax]; unit panels across the bump
    // window, geometric growth elsewhere
    auto tail = [&](double y) { return d(y) * std::pow(y, -1.0 - alpha); };
    double y = spec.y0;
    while (y < spec.ymax * (1.0 - 1e-15)) {
        double ynext;
        if (y >= bump_lo - 1.0 && y <= bump_hi) {
            ynext = std::min({y + 1.0, bump_hi + 1.0, spec.ymax});
        } else {
            ynext = y + std::max(1.0, y);
            if (y < bump_lo && ynext > bump_lo) ynext = bump_lo;
            ynext = std::min(ynext, spec.ymax);
        }
        const Panel p = gl_panel(tail, y, ynext, spec.tail_nodes);
        total += p.value;
        est += p.est;
        y = ynext;
    }

    // closed-form completion of the constant part beyond ymax
    total += d_inf * (std::pow(spec.ymax, -alpha) / alpha);

    return {total, est};
}

}  // namespace detail

QuadratureResult marchaud_derivative(const AnalyticFunction& f, std::span<const double> xs,
                                     double alpha, const QuadratureSpec& spec,
                                     ShiftDirection dir) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument(
            "marchaud_derivative requires 0 < alpha < 1; the classical boundary must branch");
    spec.validate();
    if (!f.eval) throw std::invalid_argument("analytic function has no eval handle");

    const double C = marchaud_constant(alpha);
    const double sgn = dir == ShiftDirection::backward ? 1.0 : -1.0;

    QuadratureResult out;
    out.values.reserve(xs.size());
    double worst = 0.0;
    for (const double xi : xs) {
        auto d = detail::directional_difference(f, xi, sgn);
        double blo = 0.0, bhi = -1.0;
        detail::bump_window(f, xi, sgn, spec, blo, bhi);
        const cplx d_inf = f.eval(xi) - f.mean_at_infinity;
        const auto r = detail::singular_integral(d, alpha, spec, blo, bhi, d_inf);
        out.values.push_back(C * r.value);
        worst = std::max(worst, C * r.est_error);
    }
    out.est_error = worst;
    out.tail_bound = 2.0 * f.sup_norm * C / (alpha * std::pow(spec.ymax, alpha));
    out.quality_ok = worst <= spec.requested_tol;
    return out;
}

cplx scalar_symbol_integral(double k, double alpha, const QuadratureSpec& spec) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("scalar_symbol_integral requires 0 < alpha < 1");
    spec.validate();
    if (k == 0.0) return {0.0, 0.0};
    const AnalyticFunction m = fn::mode(k);
    auto d = detail::directional_difference(m, 0.0, 1.0);
    const auto r = detail::singular_integral(d, alpha, spec, spec.y0, spec.ymax, m.eval(0.0));
    return r.value;
}

}  // namespace fhb
