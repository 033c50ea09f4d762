#include "fhb/bilinear.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fhb/fft.hpp"
#include "fhb/rng.hpp"
#include "fhb/special.hpp"

namespace fhb {

namespace {

void check_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.L() != b.L() || a.size() != b.size())
        throw std::invalid_argument("grid mismatch between operands");
}

// Embed a coarse unnormalized DFT into the 2N band. Regular bins scale by 2
// (the inverse transform divides by 2N instead of N); the coarse Nyquist
// coefficient splits evenly across +/-N/2, which keeps real signals real.
std::vector<cplx> pad2x(const std::vector<cplx>& A) {
    const std::size_t n = A.size();
    std::vector<cplx> F(2 * n, cplx{0.0, 0.0});
    F[0] = 2.0 * A[0];
    for (std::size_t m = 1; m < n / 2; ++m) {
        F[m] = 2.0 * A[m];
        F[2 * n - m] = 2.0 * A[n - m];
    }
    F[n / 2] = A[n / 2];
    F[3 * n / 2] = A[n / 2];
    return F;
}

// Inverse of pad2x after a physical-space product: keep the coarse band,
// fold the +/-N/2 pair back onto the coarse Nyquist bin, drop the rest.
std::vector<cplx> truncate2x(const std::vector<cplx>& F) {
    const std::size_t n = F.size() / 2;
    std::vector<cplx> A(n);
    A[0] = 0.5 * F[0];
    for (std::size_t m = 1; m < n / 2; ++m) {
        A[m] = 0.5 * F[m];
        A[n - m] = 0.5 * F[2 * n - m];
    }
    A[n / 2] = 0.5 * (F[n / 2] + F[3 * n / 2]);
    return A;
}

GridFunction int_derivative(const GridFunction& f, int order) {
    if (order == 0) return f;
    auto v = f.values();
    fft_forward(v);
    const WavenumberGrid kg{f.L(), f.size()};
    const std::size_t nyq = kg.nyquist_bin();
    for (std::size_t bin = 0; bin < v.size(); ++bin)
        v[bin] *= bin == nyq ? cplx{0.0, 0.0} : pow_int(cplx{0.0, kg.k(bin)}, order);
    fft_inverse(v);
    return GridFunction(f.L(), std::move(v), f.periodic_tagged());
}

}  // namespace

GridFunction dealiased_product(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    auto A = a.values();
    fft_forward(A);
    auto B = b.values();
    fft_forward(B);
    auto Fa = pad2x(A);
    auto Fb = pad2x(B);
    fft_inverse(Fa);
    fft_inverse(Fb);
    for (std::size_t j = 0; j < Fa.size(); ++j) Fa[j] *= Fb[j];
    fft_forward(Fa);
    auto C = truncate2x(Fa);
    fft_inverse(C);
    return GridFunction(a.L(), std::move(C), a.periodic_tagged() && b.periodic_tagged());
}

GridFunction hirota_frac_commutator(const GridFunction& f, const GridFunction& g,
                                    FractionalOrder a) {
    check_same_grid(f, g);
    const GridFunction df = spectral_frac_derivative(f, a);
    const GridFunction dg = spectral_frac_derivative(g, a);
    return dealiased_product(df, g) - dealiased_product(f, dg);
}

GridFunction hirota_frac_symbol(const GridFunction& f, const GridFunction& g, FractionalOrder a) {
    check_same_grid(f, g);
    if (!f.periodic_tagged()) f.assert_boundary_decay();
    if (!g.periodic_tagged()) g.assert_boundary_decay();

    auto A = f.values();
    fft_forward(A);
    auto B = g.values();
    fft_forward(B);
    auto Fa = pad2x(A);
    auto Fb = pad2x(B);

    const std::size_t n = f.size(), nf = 2 * n;
    const WavenumberGrid kg{f.L(), nf};
    std::vector<cplx> Da(nf), Db(nf);
    for (std::size_t bin = 0; bin < nf; ++bin) {
        const long m = bin < n ? long(bin) : long(bin) - long(nf);
        const bool outside = m >= long(n / 2) || -m >= long(n / 2);
        const cplx s = outside ? cplx{0.0, 0.0} : principal_power_ik(kg.k(bin), a.value);
        Da[bin] = s * Fa[bin];
        Db[bin] = s * Fb[bin];
    }
    fft_inverse(Fa);
    fft_inverse(Fb);
    fft_inverse(Da);
    fft_inverse(Db);
    for (std::size_t j = 0; j < nf; ++j) Fa[j] = Da[j] * Fb[j] - Fa[j] * Db[j];
    fft_forward(Fa);
    auto C = truncate2x(Fa);
    fft_inverse(C);
    return GridFunction(f.L(), std::move(C), f.periodic_tagged() && g.periodic_tagged());
}

GridFunction hirota_classical(const GridFunction& f, const GridFunction& g, int n) {
    if (n < 1) throw std::invalid_argument("classical bilinear order must be >= 1");
    check_same_grid(f, g);
    if (!f.periodic_tagged()) f.assert_boundary_decay();
    if (!g.periodic_tagged()) g.assert_boundary_decay();

    GridFunction acc(f.L(), std::vector<cplx>(f.size(), cplx{0.0, 0.0}),
                     f.periodic_tagged() && g.periodic_tagged());
    double binom = 1.0;
    for (int m = 0; m <= n; ++m) {
        const double sign = m % 2 == 0 ? 1.0 : -1.0;
        acc = acc + cplx{sign * binom, 0.0} *
                        dealiased_product(int_derivative(f, n - m), int_derivative(g, m));
        binom = binom * double(n - m) / double(m + 1);
    }
    return acc;
}

QuadratureResult hirota_frac_kernel(const AnalyticFunction& f, const AnalyticFunction& g,
                                    std::span<const double> xs, double alpha,
                                    const QuadratureSpec& spec) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("bilinear kernel requires 0 < alpha < 1");
    spec.validate();
    if (!f.eval || !g.eval) throw std::invalid_argument("analytic function has no eval handle");

    const double C = marchaud_constant(alpha);
    QuadratureResult out;
    out.values.reserve(xs.size());
    double worst = 0.0;
    for (const double xi : xs) {
        const auto df = detail::directional_difference(f, xi, 1.0);
        const auto dg = detail::directional_difference(g, xi, 1.0);
        const cplx fxi = f.eval(xi);
        const cplx gxi = g.eval(xi);
        // f(xi) g(xi-y) - f(xi-y) g(xi), written so both factors enter through
        // their stable differences and the f<->g swap negates term by term
        const std::function<cplx(double)> d = [&](double y) {
            return gxi * df(y) - fxi * dg(y);
        };
        const cplx d_inf =
            gxi * (fxi - f.mean_at_infinity) - fxi * (gxi - g.mean_at_infinity);
        double flo = 0.0, fhi = -1.0, glo = 0.0, ghi = -1.0;
        detail::bump_window(f, xi, 1.0, spec, flo, fhi);
        detail::bump_window(g, xi, 1.0, spec, glo, ghi);
        const auto r = detail::singular_integral(d, alpha, spec, std::min(flo, glo),
                                                 std::max(fhi, ghi), d_inf);
        out.values.push_back(C * r.value);
        worst = std::max(worst, C * r.est_error);
    }
    out.est_error = worst;
    out.tail_bound = 2.0 * f.sup_norm * g.sup_norm * C / (alpha * std::pow(spec.ymax, alpha));
    out.quality_ok = worst <= spec.requested_tol;
    return out;
}

double sobolev_ratio(const GridFunction& f, const GridFunction& g, double s, FractionalOrder a) {
    if (!(s > 0.5)) throw std::invalid_argument("sobolev ratio requires s > 1/2");
    const double den = sobolev_norm(f, s) * sobolev_norm(g, s);
    if (den == 0.0) return 0.0;
    return sobolev_norm(hirota_frac_commutator(f, g, a), s - a.value) / den;
}

std::vector<cplx> family_coeffs(const ProbeFamily& fam, SplitMix64& rng) {
    const auto band = std::size_t(fam.band_fraction * double(fam.n));
    if (band < 2 || band >= fam.n / 2)
        throw std::invalid_argument("probe band outside the usable coarse-grid range");
    const double k0 = fam.envelope_width > 0.0
                          ? fam.envelope_width
                          : 0.5 * std::numbers::pi * double(band) / fam.L;
    std::vector<cplx> c(band + 1, cplx{0.0, 0.0});
    for (std::size_t m = 1; m <= band; ++m) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        const double k = std::numbers::pi * double(m) / fam.L;
        const double env = std::exp(-(k / k0) * (k / k0));
        c[m] = env * cplx{re, im};
    }
    return c;
}

GridFunction family_synthesize(const ProbeFamily& fam, std::size_t n,
                               const std::vector<cplx>& c) {
    if (c.size() > n / 2) throw std::invalid_argument("coefficient band exceeds grid Nyquist");
    std::vector<cplx> A(n, cplx{0.0, 0.0});
    for (std::size_t m = 1; m < c.size(); ++m) {
        // exp(i k_m x) sampled from x = -L picks up (-1)^m per mode
        const double sgn = m % 2 == 0 ? 1.0 : -1.0;
        A[m] = double(n) * sgn * c[m];
        A[n - m] = std::conj(A[m]);
    }
    fft_inverse(A);
    return GridFunction(fam.L, std::move(A), true);
}

ProbeReport sobolev_bound_probe(const ProbeFamily& fam, double s, FractionalOrder a, int trials) {
    if (!(s > 0.5)) throw std::invalid_argument("sobolev probe requires s > 1/2");
    if (trials < 1) throw std::invalid_argument("probe needs at least one trial");
    SplitMix64 rng(fam.seed);
    ProbeReport rep;
    rep.trials = std::size_t(trials);
    for (int t = 0; t < trials; ++t) {
        const auto cf = family_coeffs(fam, rng);
        const auto cg = family_coeffs(fam, rng);
        const double rb = sobolev_ratio(family_synthesize(fam, fam.n, cf),
                                        family_synthesize(fam, fam.n, cg), s, a);
        const double rr = sobolev_ratio(family_synthesize(fam, 2 * fam.n, cf),
                                        family_synthesize(fam, 2 * fam.n, cg), s, a);
        rep.max_ratio_base = std::max(rep.max_ratio_base, rb);
        rep.max_ratio_refined = std::max(rep.max_ratio_refined, rr);
    }
    rep.growth = rep.max_ratio_refined / rep.max_ratio_base;
    rep.growth_ok = std::isfinite(rep.max_ratio_base) && std::isfinite(rep.max_ratio_refined) &&
                    rep.growth < 1.10;
    return rep;
}

std::vector<std::pair<double, double>> limit_convergence_check(
    const GridFunction& f, const GridFunction& g, double s, std::span<const double> alphas) {
    if (!(s > 0.5)) throw std::invalid_argument("limit check requires s > 1/2");
    const GridFunction classical = hirota_classical(f, g, 1);
    std::vector<std::pair<double, double>> table;
    table.reserve(alphas.size());
    for (const double a : alphas) {
        const GridFunction d = hirota_frac_commutator(f, g, FractionalOrder(a)) - classical;
        table.emplace_back(a, sobolev_norm(d, s - 1.0));
    }
    return table;
}

}  // namespace fhb
