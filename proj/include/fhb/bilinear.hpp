#pragma once
#include <cstdint>
#include <span>

#include "fhb/grid.hpp"
#include "fhb/marchaud.hpp"
#include "fhb/rng.hpp"

namespace fhb {

// Pointwise product computed with 2x zero-padding: both spectra are embedded
// in a 2N grid (Nyquist split across +/-N/2), multiplied in physical space,
// and the result truncated back to the N-band.
GridFunction dealiased_product(const GridFunction& a, const GridFunction& b);

// Fractional bilinear derivative D^alpha f.g, three mutually validating forms.
//
// commutator: (D^alpha f) g - f (D^alpha g) with grid transforms.
GridFunction hirota_frac_commutator(const GridFunction& f, const GridFunction& g,
                                    FractionalOrder a);
// symbol: the same difference assembled from two multiplier-then-multiply
// passes inside the padded representation (distinct code path on purpose).
GridFunction hirota_frac_symbol(const GridFunction& f, const GridFunction& g, FractionalOrder a);
// kernel: C_alpha * int_0^inf [f(x) g(x-y) - f(x-y) g(x)] / y^(1+alpha) dy,
// assembled as g(x) Df - f(x) Dg so the integrand is an exact difference.
QuadratureResult hirota_frac_kernel(const AnalyticFunction& f, const AnalyticFunction& g,
                                    std::span<const double> xs, double alpha,
                                    const QuadratureSpec& spec = {});

// Classical Hirota operator D^n f.g = sum_m (-1)^m C(n,m) (d^(n-m) f)(d^m g).
GridFunction hirota_classical(const GridFunction& f, const GridFunction& g, int n);

// || D^alpha f.g ||_{H^{s-alpha}} / (||f||_{H^s} ||g||_{H^s}); requires s > 1/2.
double sobolev_ratio(const GridFunction& f, const GridFunction& g, double s, FractionalOrder a);

// Random band-limited family: Hermitian spectra supported on |k| <= band_fraction * N * pi / L
// with a Gaussian envelope, drawn from a seeded generator. The same continuous
// draw is synthesized on the base grid and on the 2N refinement.
struct ProbeFamily {
    double L = 20.0;
    std::size_t n = 1024;
    double band_fraction = 0.25;
    double envelope_width = 0.0;  // in k units; 0 -> band/2
    std::uint64_t seed = 42;
};

struct ProbeReport {
    std::size_t trials = 0;
    double max_ratio_base = 0.0;
    double max_ratio_refined = 0.0;
    double growth = 0.0;  // max_ratio_refined / max_ratio_base
    bool growth_ok = false;
};

// Empirical boundedness probe for the H^s x H^s -> H^{s-alpha} estimate: the
// constant is not quantified analytically, so the probe reports the max ratio
// over seeded trials and checks it does not grow (> 10%) under refinement.
ProbeReport sobolev_bound_probe(const ProbeFamily& fam, double s, FractionalOrder a, int trials);

// One coefficient draw (modes 1..band; the Hermitian mirror is implied) and
// its synthesis on an n-point grid, exposed so the same continuous draw can
// be placed on a grid and its refinement.
std::vector<cplx> family_coeffs(const ProbeFamily& fam, SplitMix64& rng);
GridFunction family_synthesize(const ProbeFamily& fam, std::size_t n, const std::vector<cplx>& c);

}  // namespace fhb
