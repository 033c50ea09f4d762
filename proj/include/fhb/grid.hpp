#pragma once
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fhb/common.hpp"

namespace fhb {

// Wavenumbers of a uniform grid on [-L, L) in FFT bin order:
// k_m = pi * m / L with m = 0, 1, ..., N/2-1, -N/2, ..., -1.
struct WavenumberGrid {
    double L;
    std::size_t n;
    double k(std::size_t bin) const;
    std::size_t nyquist_bin() const { return n / 2; }
};

// Complex samples on the uniform grid x_j = -L + j * 2L/N, N a power of two,
// N >= 8. Values are assumed to describe either a function decaying near the
// box edges or an exactly periodic one; the periodic tag (set by the mode
// factory) skips the boundary-decay assertion that spectral operators run.
class GridFunction {
  public:
    GridFunction(double L, std::vector<cplx> values, bool periodic = false);

    static GridFunction sample(double L, std::size_t n, const std::function<cplx(double)>& f);
    static GridFunction zeros(double L, std::size_t n);
    // exp(i * pi * m * x / L): exactly periodic on the box
    static GridFunction mode(double L, std::size_t n, long m);

    double L() const { return half_width_; }
    std::size_t size() const { return values_.size(); }
    double spacing() const { return 2.0 * half_width_ / double(size()); }
    double x(std::size_t j) const { return -half_width_ + spacing() * double(j); }
    std::vector<double> xs() const;

    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    bool periodic_tagged() const { return periodic_; }

    double max_abs() const;
    // Throws std::domain_error naming the boundary magnitude when the edge
    // samples are not negligible relative to the peak.
    void assert_boundary_decay(double rel_tol = 1e-12) const;

  private:
    double half_width_;
    std::vector<cplx> values_;
    bool periodic_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx s, const GridFunction& a);

// (ik)^alpha in the principal branch: |k|^alpha * exp(i * alpha * pi/2 * sign k),
// 0 at k = 0 by convention, exactly i*k at alpha = 1.
cplx principal_power_ik(double k, double alpha);

// Spectral multiplier with Fourier coefficients fhat_m -> (i k_m)^alpha fhat_m.
// The Nyquist bin is zeroed (sign-ambiguous mode).
GridFunction spectral_frac_derivative(const GridFunction& f, FractionalOrder a);

// fhat = h * DFT(values): trapezoid approximation of int f e^{-ikx} dx.
std::vector<cplx> spectrum(const GridFunction& f);

double l2_norm(const GridFunction& f);  // sqrt(h * sum |f|^2)
// Discrete H^s: sqrt( (1/2pi) * sum (1+k^2)^s |fhat|^2 * dk ), dk = pi/L.
double sobolev_norm(const GridFunction& f, double s);

// For each alpha, the H^{s-1} distance between the fractional bilinear
// commutator and its classical n = 1 counterpart. Requires s > 1/2 and each
// alpha in (0, 1].
std::vector<std::pair<double, double>> limit_convergence_check(
    const GridFunction& f, const GridFunction& g, double s, std::span<const double> alphas);

}  // namespace fhb
