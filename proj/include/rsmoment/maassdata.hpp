#ifndef RSMOMENT_MAASSDATA_HPP
#define RSMOMENT_MAASSDATA_HPP

#include "rsmoment/real.hpp"

#include <string>
#include <vector>

namespace rsm {

// One ingested Hecke-Maass cusp form record: spectral parameter, parity,
// and a finite list of Hecke eigenvalues of declared precision.
struct MaassFormData {
    Real t{0};
    int parity = 1;                // epsilon_f in {+1, -1}
    std::vector<Real> lambda;      // lambda[n], n <= n_max; lambda[1] = 1
    long n_max = 0;
    double data_precision = 1e-9;  // declared absolute precision of lambdas
    std::string source_tag;

    const Real& lam(long n) const { return lambda[static_cast<size_t>(n)]; }
};

} // namespace rsm

#endif
