#ifndef RSMOMENT_WEIGHTS_HPP
#define RSMOMENT_WEIGHTS_HPP

// The three spectral weights of the moment identity and the sweep that
// compares them against their decay envelopes.

#include "rsmoment/value.hpp"

#include <map>
#include <string>
#include <vector>

namespace rsm {

// h_hol(l,k): nonnegative, zero for l > k, equals 1 at l = k.
Real h_hol(int l, int k, const PrecisionContext& ctx);

// h(t,k): positive, even in t.
Real h_maass(const Real& t, int k, const PrecisionContext& ctx);

// h~(t,k): complex, conjugated under t -> -t.
Complex h_tilde(const Real& t, int k, const PrecisionContext& ctx);

struct BoundRatio {
    std::string lemma;     // which envelope
    double max_ratio = 0;  // max over the grid of weight / envelope
    double median_ratio = 0;
    double max_over_median = 0;
};

struct SpectralWeightTable {
    int k = 0;
    std::map<int, Real> hol_values;                    // l -> h_hol(l,k)
    std::vector<std::pair<Real, Real>> maass_values;   // (t, h(t,k))
    std::vector<std::pair<Real, Complex>> tilde_values;
    std::vector<BoundRatio> bound_ratios;
};

// Evaluate the weights on grids and record max/median ratios against the
// piecewise decay envelopes (implied constants are measured, not assumed).
SpectralWeightTable verify_weight_bounds(int k, const std::vector<Real>& t_grid,
                                         const std::vector<int>& l_grid, const PrecisionContext& ctx);

std::string weight_table_csv(const SpectralWeightTable& table);

} // namespace rsm

#endif
