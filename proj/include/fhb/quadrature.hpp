#pragma once
#include <vector>

namespace fhb {

// Gauss-Legendre rule on [-1, 1]. Nodes ascend; weights are positive.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Cached, synchronized lookup.
const GaussRule& gauss_legendre(int n);

}  // namespace fhb
