#include "fhb/expsum.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "json.hpp"

namespace fhb {

namespace {

std::uint64_t key_bits(double v) {
    if (v == 0.0) v = 0.0;  // collapse -0 so signed zeros compare equal
    return std::bit_cast<std::uint64_t>(v);
}

std::array<std::uint64_t, 8> phase_key(const PhaseVector& p) {
    return {key_bits(p.k.real()),     key_bits(p.k.imag()),    key_bits(p.ell.real()),
            key_bits(p.ell.imag()),   key_bits(p.omega.real()), key_bits(p.omega.imag()),
            key_bits(p.delta.real()), key_bits(p.delta.imag())};
}

double scrub_zero(double v) { return v == 0.0 ? 0.0 : v; }

cplx scrub_zero(cplx v) { return {scrub_zero(v.real()), scrub_zero(v.imag())}; }

void canonicalize(std::vector<Term>& ts) {
    double scale = 0.0;
    for (auto& t : ts) {
        scale = std::max(scale, std::abs(t.coeff));
        t.phase.k = scrub_zero(t.phase.k);
        t.phase.ell = scrub_zero(t.phase.ell);
        t.phase.omega = scrub_zero(t.phase.omega);
        t.phase.delta = scrub_zero(t.phase.delta);
        if (t.phase.omega == cplx{0.0, 0.0}) t.phase.sigma = cplx{0.0, 0.0};
    }
    const double threshold = 1e-14 * std::max(scale, 1e-300);

    // stable: equal phases stay in insertion order, so the merge below sums
    // coefficients in the order they were emitted
    std::stable_sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) {
        return phase_key(a.phase) < phase_key(b.phase);
    });

    std::vector<Term> out;
    out.reserve(ts.size());
    std::size_t i = 0;
    while (i < ts.size()) {
        Term acc = ts[i];
        const auto key = phase_key(acc.phase);
        std::size_t j = i + 1;
        while (j < ts.size() && phase_key(ts[j].phase) == key) {
            acc.coeff = acc.coeff + ts[j].coeff;
            if (ts[j].phase.sigma) {
                if (!acc.phase.sigma)
                    acc.phase.sigma = ts[j].phase.sigma;
                else if (*acc.phase.sigma != *ts[j].phase.sigma)
                    throw std::logic_error("merged phase carries two different sigma values");
            }
            ++j;
        }
        if (std::abs(acc.coeff) >= threshold) out.push_back(acc);
        i = j;
    }
    ts = std::move(out);
}

cplx omega_from_sigma(cplx sigma, FractionalOrder alpha) {
    if (alpha.classical()) return sigma;
    if (sigma == cplx{0.0, 0.0}) return {0.0, 0.0};
    if (sigma.imag() == 0.0 && sigma.real() > 0.0)
        return {std::pow(sigma.real(), 1.0 / alpha.value), 0.0};
    return std::pow(sigma, 1.0 / alpha.value);
}

cplx power_alpha(cplx w, FractionalOrder alpha) {
    if (alpha.classical()) return w;
    if (w == cplx{0.0, 0.0}) return {0.0, 0.0};
    if (w.imag() == 0.0 && w.real() > 0.0) return {std::pow(w.real(), alpha.value), 0.0};
    return std::pow(w, alpha.value);
}

}  // namespace

ExpSum::ExpSum(std::vector<Term> terms) : terms_(std::move(terms)) { canonicalize(terms_); }

ExpSum ExpSum::one() { return ExpSum({Term{cplx{1.0, 0.0}, PhaseVector{}}}); }

cplx ExpSum::eval(double x, double y, double t) const {
    cplx s{0.0, 0.0};
    for (const auto& tm : terms_)
        s += tm.coeff *
             std::exp(tm.phase.k * x + tm.phase.ell * y + tm.phase.omega * t + tm.phase.delta);
    return s;
}

ExpSum ExpSum::derivative(int nx, int nt) const {
    if (nx < 0 || nt < 0) throw std::invalid_argument("derivative orders must be nonnegative");
    std::vector<Term> ts = terms_;
    for (auto& t : ts) {
        if (nx > 0) t.coeff = t.coeff * pow_int(t.phase.k, nx);
        if (nt > 0) t.coeff = t.coeff * pow_int(t.phase.omega, nt);
    }
    return ExpSum(std::move(ts));
}

double ExpSum::max_coeff() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

BilinearOperatorSpec kdv_bilinear_op() {
    BilinearOperatorSpec op;
    op.monomials.push_back({.nx = 1, .ny = 0, .use_frac_t = true, .coefficient = {1.0, 0.0}});
    op.monomials.push_back({.nx = 4, .ny = 0, .use_frac_t = false, .coefficient = {1.0, 0.0}});
    return op;
}

BilinearOperatorSpec kp_bilinear_op(double sigma_sign) {
    BilinearOperatorSpec op = kdv_bilinear_op();
    op.monomials.push_back({.nx = 0, .ny = 2, .use_frac_t = false, .coefficient = {sigma_sign, 0.0}});
    return op;
}

ApplyResult apply_bilinear_detail(const BilinearOperatorSpec& op, const ExpSum& F,
                                  const ExpSum& G) {
    std::vector<Term> emitted;
    emitted.reserve(F.size() * G.size() * op.monomials.size());
    double scale = 0.0;
    for (const auto& tf : F.terms()) {
        for (const auto& tg : G.terms()) {
            const PhaseVector& p = tf.phase;
            const PhaseVector& q = tg.phase;
            PhaseVector sum;
            sum.k = p.k + q.k;
            sum.ell = p.ell + q.ell;
            sum.omega = p.omega + q.omega;
            sum.delta = p.delta + q.delta;
            if (p.omega == cplx{0.0, 0.0})
                sum.sigma = q.sigma;
            else if (q.omega == cplx{0.0, 0.0})
                sum.sigma = p.sigma;
            // else unset: (omega1+omega2)^alpha != sigma1+sigma2 in general
            for (const auto& mono : op.monomials) {
                cplx w = mono.coefficient * (tf.coeff * tg.coeff);
                if (mono.nx > 0) w = w * pow_int(p.k - q.k, mono.nx);
                if (mono.ny > 0) w = w * pow_int(p.ell - q.ell, mono.ny);
                if (mono.use_frac_t) {
                    if (!p.sigma || !q.sigma)
                        throw std::invalid_argument(
                            "fractional time factor applied to a phase without sigma");
                    w = w * (*p.sigma - *q.sigma);
                }
                scale = std::max(scale, std::abs(w));
                emitted.push_back(Term{w, sum});
            }
        }
    }
    return {ExpSum(std::move(emitted)), scale};
}

ExpSum apply_bilinear_symbolic(const BilinearOperatorSpec& op, const ExpSum& F, const ExpSum& G) {
    return apply_bilinear_detail(op, F, G).sum;
}

DispersionResult dispersion_omega(cplx k, FractionalOrder alpha) {
    if (k == cplx{0.0, 0.0}) throw std::invalid_argument("dispersion is degenerate at k = 0");
    const cplx sigma = -pow_int(k, 3);
    const cplx omega = omega_from_sigma(sigma, alpha);
    const bool is_real = (k.imag() == 0.0 && k.real() < 0.0);
    const cplx back = power_alpha(omega, alpha);
    const bool roundtrip_ok = std::abs(back - sigma) <= 1e-10 * std::max(1.0, std::abs(sigma));
    return {sigma, omega, is_real, roundtrip_ok};
}

ExpSum one_soliton_tau(cplx k, cplx delta, FractionalOrder alpha) {
    const DispersionResult d = dispersion_omega(k, alpha);
    std::vector<Term> ts;
    ts.push_back(Term{cplx{1.0, 0.0}, PhaseVector{}});
    ts.push_back(Term{cplx{1.0, 0.0}, PhaseVector{k, {0.0, 0.0}, d.omega, delta, d.sigma}});
    return ExpSum(std::move(ts));
}

TwoSolitonResult two_soliton_tau(cplx k1, cplx k2, cplx delta1, cplx delta2,
                                 FractionalOrder alpha) {
    if (k1 == cplx{0.0, 0.0} || k2 == cplx{0.0, 0.0})
        throw std::invalid_argument("soliton wavenumbers must be nonzero");
    if (k1 + k2 == cplx{0.0, 0.0})
        throw std::invalid_argument("interaction coefficient pole: k1 + k2 = 0");
    const DispersionResult d1 = dispersion_omega(k1, alpha);
    const DispersionResult d2 = dispersion_omega(k2, alpha);
    const cplx r = (k1 - k2) / (k1 + k2);
    const cplx a12 = r * r;
    const bool degenerate = (k1 == k2);

    const PhaseVector p1{k1, {0.0, 0.0}, d1.omega, delta1, d1.sigma};
    const PhaseVector p2{k2, {0.0, 0.0}, d2.omega, delta2, d2.sigma};
    const PhaseVector p12{k1 + k2, {0.0, 0.0}, d1.omega + d2.omega, delta1 + delta2,
                          d1.sigma + d2.sigma};

    std::vector<Term> ts;
    ts.push_back(Term{cplx{1.0, 0.0}, PhaseVector{}});
    ts.push_back(Term{cplx{1.0, 0.0}, p1});
    ts.push_back(Term{cplx{1.0, 0.0}, p2});
    ts.push_back(Term{a12, p12});
    return {ExpSum(std::move(ts)), a12, degenerate};
}

ExpSum kp_one_soliton(cplx k, cplx ell, double sigma_sign, cplx delta, FractionalOrder alpha) {
    if (k == cplx{0.0, 0.0}) throw std::invalid_argument("kp soliton is degenerate at k = 0");
    if (sigma_sign != 1.0 && sigma_sign != -1.0)
        throw std::invalid_argument("sigma_sign must be +1 or -1");
    cplx sigma;
    if (ell == cplx{0.0, 0.0})
        sigma = -pow_int(k, 3);
    else
        sigma = -((pow_int(k, 4) + sigma_sign * pow_int(ell, 2)) / k);
    const cplx omega = omega_from_sigma(sigma, alpha);
    std::vector<Term> ts;
    ts.push_back(Term{cplx{1.0, 0.0}, PhaseVector{}});
    ts.push_back(Term{cplx{1.0, 0.0}, PhaseVector{k, ell, omega, delta, sigma}});
    return ExpSum(std::move(ts));
}

ResidualReport bilinear_residual_symbolic(const BilinearOperatorSpec& op, const ExpSum& F,
                                          double tolerance) {
    const ApplyResult r = apply_bilinear_detail(op, F, F);
    ResidualReport rep;
    rep.tolerance = tolerance;
    rep.notes = "coefficients relative to the pre-cancellation scale";
    if (!r.sum.empty() && r.precancel_scale > 0.0) {
        double m = 0.0, s2 = 0.0;
        for (const auto& t : r.sum.terms()) {
            const double a = std::abs(t.coeff);
            m = std::max(m, a);
            s2 += a * a;
        }
        rep.max_abs = m / r.precancel_scale;
        rep.l2 = std::sqrt(s2) / r.precancel_scale;
    }
    rep.pass = rep.max_abs <= rep.tolerance;
    return rep;
}

std::string to_json(const ExpSum& F) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& t : F.terms()) {
        nlohmann::ordered_json o;
        o["coeff"] = {t.coeff.real(), t.coeff.imag()};
        o["k"] = {t.phase.k.real(), t.phase.k.imag()};
        o["ell"] = {t.phase.ell.real(), t.phase.ell.imag()};
        o["omega"] = {t.phase.omega.real(), t.phase.omega.imag()};
        if (t.phase.sigma)
            o["sigma"] = {t.phase.sigma->real(), t.phase.sigma->imag()};
        else
            o["sigma"] = nullptr;
        o["delta"] = {t.phase.delta.real(), t.phase.delta.imag()};
        arr.push_back(std::move(o));
    }
    return arr.dump(2);
}

}  // namespace fhb
