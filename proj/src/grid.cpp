#include "fhb/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fhb/fft.hpp"

namespace fhb {

double WavenumberGrid::k(std::size_t bin) const {
    const long m = (bin <= n / 2) ? long(bin) : long(bin) - long(n);
    return std::numbers::pi * double(m) / L;
}

GridFunction::GridFunction(double L, std::vector<cplx> values, bool periodic)
    : half_width_(L), values_(std::move(values)), periodic_(periodic) {
    if (!(half_width_ > 0.0)) throw std::invalid_argument("grid half-width must be positive");
    if (values_.size() < 8 || !is_pow2(values_.size()))
        throw std::invalid_argument("grid size must be a power of two >= 8");
}

GridFunction GridFunction::sample(double L, std::size_t n, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(n);
    const double h = 2.0 * L / double(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(-L + h * double(j));
    return GridFunction(L, std::move(v));
}

GridFunction GridFunction::zeros(double L, std::size_t n) {
    return GridFunction(L, std::vector<cplx>(n, cplx{0.0, 0.0}));
}

GridFunction GridFunction::mode(double L, std::size_t n, long m) {
    std::vector<cplx> v(n);
    const double k = std::numbers::pi * double(m) / L;
    const double h = 2.0 * L / double(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = -L + h * double(j);
        v[j] = cplx{std::cos(k * x), std::sin(k * x)};
    }
    return GridFunction(L, std::move(v), true);
}

std::vector<double> GridFunction::xs() const {
    std::vector<double> out(size());
    for (std::size_t j = 0; j < size(); ++j) out[j] = x(j);
    return out;
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

void GridFunction::assert_boundary_decay(double rel_tol) const {
    const double peak = max_abs();
    if (peak == 0.0) return;
    const double edge = std::max(std::abs(values_.front()), std::abs(values_.back()));
    if (edge > rel_tol * peak) {
        std::ostringstream os;
        os << "boundary decay violated: |f| = " << edge << " at the box edge vs peak " << peak
           << " (relative " << edge / peak << ", allowed " << rel_tol << ")";
        throw std::domain_error(os.str());
    }
}

namespace {
void check_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.L() != b.L() || a.size() != b.size())
        throw std::invalid_argument("grid mismatch between operands");
}
}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    auto v = a.values();
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += b.values()[j];
    return GridFunction(a.L(), std::move(v), a.periodic_tagged() && b.periodic_tagged());
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    check_same_grid(a, b);
    auto v = a.values();
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= b.values()[j];
    return GridFunction(a.L(), std::move(v), a.periodic_tagged() && b.periodic_tagged());
}

GridFunction operator*(cplx s, const GridFunction& a) {
    auto v = a.values();
    for (auto& x : v) x *= s;
    return GridFunction(a.L(), std::move(v), a.periodic_tagged());
}

cplx principal_power_ik(double k, double alpha) {
    if (k == 0.0) return {0.0, 0.0};
    if (alpha == 1.0) return {0.0, k};
    const double mag = std::pow(std::abs(k), alpha);
    const double ang = 0.5 * std::numbers::pi * alpha;
    const double re = mag * std::cos(ang);
    const double im = mag * std::sin(ang);
    return k > 0.0 ? cplx{re, im} : cplx{re, -im};
}

GridFunction spectral_frac_derivative(const GridFunction& f, FractionalOrder a) {
    if (!f.periodic_tagged()) f.assert_boundary_decay();
    auto v = f.values();
    fft_forward(v);
    const WavenumberGrid kg{f.L(), f.size()};
    const std::size_t nyq = kg.nyquist_bin();
    for (std::size_t bin = 0; bin < v.size(); ++bin)
        v[bin] *= (bin == nyq) ? cplx{0.0, 0.0} : principal_power_ik(kg.k(bin), a.value);
    fft_inverse(v);
    return GridFunction(f.L(), std::move(v), f.periodic_tagged());
}

std::vector<cplx> spectrum(const GridFunction& f) {
    auto v = f.values();
    fft_forward(v);
    const double h = f.spacing();
    for (auto& c : v) c *= h;
    return v;
}

double l2_norm(const GridFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += std::norm(v);
    return std::sqrt(f.spacing() * s);
}

double sobolev_norm(const GridFunction& f, double s) {
    const auto fhat = spectrum(f);
    const WavenumberGrid kg{f.L(), f.size()};
    const double dk = std::numbers::pi / f.L();
    double acc = 0.0;
    for (std::size_t bin = 0; bin < fhat.size(); ++bin) {
        const double k = kg.k(bin);
        acc += std::pow(1.0 + k * k, s) * std::norm(fhat[bin]);
    }
    return std::sqrt(acc * dk / (2.0 * std::numbers::pi));
}

}  // namespace fhb
