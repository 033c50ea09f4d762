#include "fhb/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fhb {

namespace {

constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_positive(double x) {
    // valid for x >= 0.5
    x -= 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x + double(i));
    const double t = x + 7.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma_lanczos(double x) {
    if (x == std::floor(x) && x <= 0.0)
        throw std::domain_error("gamma pole at non-positive integer " + std::to_string(x));
    if (x < 0.5)
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_positive(1.0 - x));
    return lanczos_positive(x);
}

double marchaud_constant(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument(
            "marchaud_constant requires 0 < alpha < 1 (classical alpha = 1 must branch), got " +
            std::to_string(alpha));
    return alpha / gamma_lanczos(1.0 - alpha);
}

}  // namespace fhb
