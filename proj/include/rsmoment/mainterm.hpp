#ifndef RSMOMENT_MAINTERM_HPP
#define RSMOMENT_MAINTERM_HPP

// Main-term machinery: the two-variable functions Psi and psi, the
// M0 value by three independent routes (limit, torus residue, scaled torus
// residue), the quadruple-pole Laurent decomposition into P_j polynomials,
// the constant c by two routes, the W1/W2 weight functions, and the
// positivity certificate sums.

#include "rsmoment/lfun.hpp"
#include "rsmoment/value.hpp"

#include <vector>

namespace rsm {

struct TorusContour {
    Real r1{0.065};
    Real r2{0.14};
    int nodes_per_circle = 96;
    TorusContour() = default;
    TorusContour(double radius1, double radius2, int nodes) : r1(radius1), r2(radius2), nodes_per_circle(nodes) {
        if (!(radius1 > 0 && radius1 < radius2 && radius2 < 0.25))
            throw Error(ErrorKind::contour_through_pole, "need 0 < r1 < r2 < 1/4");
        if (nodes < 64) throw Error(ErrorKind::unsupported, "nodes_per_circle >= 64");
    }
};

struct CertificateReport {
    Real s1{0}, s2{0}, s3{0}, s4_budget{0}, s4_measured{0};
    double s3_fitted_constant = 0;  // C with S3 >= -C (log k)^{-10}
    bool s1_ok = false, s2_ok = false, s3_ok = false, s4_ok = false;
    double s1_ratio = 0;            // S1/(log k)^2
};

struct PolyReal {
    std::vector<Real> coeff;  // ascending powers
    Real eval(const Real& x) const {
        Real acc(0);
        for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i) acc = acc * x + coeff[i];
        return acc;
    }
    int degree(double tol) const;
};

struct LaurentDecomposition {
    std::vector<PolyReal> p_polys;  // P_0..P_3, P_j pairs with L^{(3-j)}(1, ad g)
    Real main_value{0};             // k * sum_j P_j(log k) L^{(3-j)}(1, ad g)
};

struct MainTermReport {
    int k = 0;
    int g_index = 0;
    Real m0_limit{0}, m0_residue{0}, m0_scaled{0};
    Real c_value{0};        // derived route (authoritative)
    Real c_printed{0};      // quadratic-deflation variant as printed
    LaurentDecomposition decomposition;
    CertificateReport certificate;
    double disc_limit_residue = 0;   // relative differences
    double disc_scaled_residue = 0;  // |scaled - residue| / sqrt(k)
    double disc_laurent_scaled = 0;
};

// Psi(w1,w2): exact two-variable function with polar lines w1=0, w2=0,
// w1+w2=0. Throws too-close-to-pole within 10^{-digits/4} of the polar set.
ComplexValue psi_big(const Complex& w1, const Complex& w2, const EigenformPtr& g,
                     const PrecisionContext& ctx);

// psi(w1,w2): the (k/4pi^2)^w form with sextic deflation factors.
ComplexValue psi_small(const Complex& w1, const Complex& w2, const EigenformPtr& g, int k,
                       const PrecisionContext& ctx);

// M0 by Richardson extrapolation of the four-fold sign sum toward (0,0).
Real m0_by_limit(int k, const EigenformPtr& g, const PrecisionContext& ctx,
                 const std::vector<Real>& probe_radii = {});

// M0 = 4 (Gamma(k)^2/Gamma(k-1/2)^2) ResRes Psi/(w1 w2) by torus quadrature.
Real m0_by_residue(int k, const EigenformPtr& g, const TorusContour& contour,
                   const PrecisionContext& ctx);

// 8k ResRes psi/(w1 w2); differs from m0_by_residue by O(sqrt k).
Real m0_scaled_residue(int k, const EigenformPtr& g, const TorusContour& contour,
                       const PrecisionContext& ctx);

// Quadruple-pole residue by truncated power-series arithmetic; returns the
// P_j coefficient lists and the assembled main value.
LaurentDecomposition laurent_polynomials(int k, const EigenformPtr& g,
                                         const AdjointDerivatives& adjoint, const PrecisionContext& ctx);

// c as printed (quadratic deflation) and as forced by the w1 = -w2 residue
// of psi (sextic deflation); the two are compared, the derived one is used
// downstream.
Real c_constant(const PrecisionContext& ctx);
Real c_derived(const PrecisionContext& ctx);

// W1(n) by vertical-line quadrature (Gaussian-smoothed), W2(n) as the square
// of the printed single integral.
Real w1_weight(long n, int k, const PrecisionContext& ctx);
Real w2_weight(long n, int k, const PrecisionContext& ctx);

// Gaussian closed form of the W1 integral (test oracle for w1_weight).
Real w1_weight_closed_form(long n, int k, const PrecisionContext& ctx);

struct DecompositionCheck {
    Real residual{0};
    Real normalized{0};      // residual / (k (log k)^{1/2})
    Real double_integral{0};
    double imag_leak = 0;
};
// 8k (double line integral of psi/(w1w2) + c L(1,ad g)/zeta(2)) - m0_residue.
DecompositionCheck decomposition_check(int k, const EigenformPtr& g, const PrecisionContext& ctx);

CertificateReport lower_bound_certificate(int k, const EigenformPtr& g, long n_cut,
                                          const PrecisionContext& ctx);

// Full per-k report with the cross-method discrepancies filled in.
MainTermReport mainterm_report(int k, const EigenformPtr& g, const PrecisionContext& ctx);

} // namespace rsm

#endif
