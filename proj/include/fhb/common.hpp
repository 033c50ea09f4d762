#pragma once
#include <complex>
#include <stdexcept>

namespace fhb {

using cplx = std::complex<double>;

// Validated derivative order in (0, 1]. The upper endpoint is the classical
// first derivative and several code paths branch on it explicitly.
struct FractionalOrder {
    double value;
    explicit FractionalOrder(double a) : value(a) {
        if (!(a > 0.0) || !(a <= 1.0))
            throw std::invalid_argument("fractional order must lie in (0, 1], got " +
                                        std::to_string(a));
    }
    bool classical() const { return value == 1.0; }
};

// Left-associated integer power. Deliberately plain repeated multiplication:
// symbolic cancellations in the soliton algebra rely on k*(k*k*k) and
// ((k*k)*k)*k rounding identically, which commutativity of each single
// multiply guarantees.
inline cplx pow_int(cplx base, int n) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r = r * base;
    return r;
}

}  // namespace fhb
