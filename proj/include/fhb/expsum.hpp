#pragma once
#include <optional>
#include <string>
#include <vector>

#include "fhb/common.hpp"
#include "fhb/report.hpp"

namespace fhb {

// Affine phase k x + ell y + omega t + delta of one exponential term.
//
// sigma stores the branch value omega^alpha consumed by fractional time
// multipliers. It is data, not a formula: on the dispersion manifold it is
// exactly -k^3, and recomputing it from omega via principal-branch powers
// would land on the wrong branch for k > 0.
struct PhaseVector {
    cplx k{0.0, 0.0};
    cplx ell{0.0, 0.0};
    cplx omega{0.0, 0.0};
    cplx delta{0.0, 0.0};
    std::optional<cplx> sigma{};
};

struct Term {
    cplx coeff{0.0, 0.0};
    PhaseVector phase{};
};

// Finite sum of coeff * exp(k x + ell y + omega t + delta), canonicalized on
// construction:
//   - signed zeros in phase components collapse to +0, so -0 and +0 phases
//     compare equal;
//   - omega == 0 forces sigma = 0 (the 0^alpha = 0 convention);
//   - equal (k, ell, omega, delta) phases merge by summing coefficients in
//     insertion order; a set sigma wins over unset, two set-but-different
//     sigmas on one phase are a logic error;
//   - coefficients below 1e-14 of the largest pre-merge magnitude are
//     dropped (exact zeros always drop; an all-zero sum is empty).
// Canonicalization is idempotent and instances are immutable afterwards.
class ExpSum {
  public:
    ExpSum() = default;
    explicit ExpSum(std::vector<Term> terms);

    static ExpSum one();

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    cplx eval(double x, double y, double t) const;
    // d^nx/dx^nx d^nt/dt^nt by the multiplier rule: coeff -> coeff k^nx omega^nt.
    // Integer orders only; the time factor uses omega, not sigma.
    ExpSum derivative(int nx, int nt) const;
    double max_coeff() const;

  private:
    std::vector<Term> terms_;
};

// One monomial of a Hirota-type bilinear operator: coefficient * D_x^nx *
// D_y^ny * (D_t^alpha)^[use_frac_t]. Fractional time powers above one are
// not supported.
struct BilinearMonomial {
    int nx = 0;
    int ny = 0;
    bool use_frac_t = false;
    cplx coefficient{1.0, 0.0};
};

struct BilinearOperatorSpec {
    std::vector<BilinearMonomial> monomials;
};

BilinearOperatorSpec kdv_bilinear_op();                   // D_x D_t^alpha + D_x^4
BilinearOperatorSpec kp_bilinear_op(double sigma_sign);   // ... + sigma_sign D_y^2

struct ApplyResult {
    ExpSum sum;
    // Largest |coefficient| emitted before like-phase cancellation; the
    // scale residual magnitudes are reported against.
    double precancel_scale = 0.0;
};

// Per term pair (c1, th1) x (c2, th2) and monomial, emits
//   coefficient * c1 c2 * (k1-k2)^nx * (l1-l2)^ny * (sigma1-sigma2)^[frac]
// on the phase th1+th2, then canonicalizes. The combined phase keeps a sigma
// only when one factor has omega = 0 (then the additive value is exact);
// otherwise it is left unset and a later fractional application that needs
// it throws.
ApplyResult apply_bilinear_detail(const BilinearOperatorSpec& op, const ExpSum& F,
                                  const ExpSum& G);
ExpSum apply_bilinear_symbolic(const BilinearOperatorSpec& op, const ExpSum& F, const ExpSum& G);

struct DispersionResult {
    cplx sigma;         // -k^3, exact
    cplx omega;         // principal-branch sigma^(1/alpha)
    bool is_real;       // k real negative: sigma > 0 and omega real positive
    bool roundtrip_ok;  // |omega^alpha - sigma| small; false flags a branch mismatch
};

// Dispersion relation omega^alpha = -k^3. k = 0 is degenerate and throws.
DispersionResult dispersion_omega(cplx k, FractionalOrder alpha);

// F = 1 + e^theta with theta = k x + omega t + delta on the dispersion
// manifold; the bilinear residual of D_x D_t^alpha + D_x^4 on it is empty.
ExpSum one_soliton_tau(cplx k, cplx delta, FractionalOrder alpha);

struct TwoSolitonResult {
    ExpSum tau;
    cplx a12;         // ((k1-k2)/(k1+k2))^2
    bool degenerate;  // k1 == k2: a12 = 0 collapses the interaction term
};

// F = 1 + e^th1 + e^th2 + a12 e^(th1+th2). The combined phase stores
// sigma = sigma1 + sigma2 explicitly: that additive rule is the formal
// ingredient making the two-soliton algebra cancel for every alpha.
// k1 + k2 = 0 is an a12 pole and throws; k1 == k2 is allowed but flagged.
TwoSolitonResult two_soliton_tau(cplx k1, cplx k2, cplx delta1, cplx delta2,
                                 FractionalOrder alpha);

// F = 1 + e^(k x + ell y + omega t + delta) with sigma from
// k sigma + k^4 + sigma_sign ell^2 = 0. ell = 0 routes through the same
// -k*k*k expression as the KdV path, so the reduction is exact bitwise.
ExpSum kp_one_soliton(cplx k, cplx ell, double sigma_sign, cplx delta, FractionalOrder alpha);

// Applies op to (F, F) and reports the surviving coefficient magnitudes
// relative to the pre-cancellation scale; an empty result reports 0.
ResidualReport bilinear_residual_symbolic(const BilinearOperatorSpec& op, const ExpSum& F,
                                          double tolerance = 1.0e-12);

// JSON array of terms {coeff, k, ell, omega, sigma, delta}, complex values
// as [re, im], unset sigma as null.
std::string to_json(const ExpSum& F);

}  // namespace fhb
