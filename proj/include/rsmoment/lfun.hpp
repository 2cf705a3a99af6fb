#ifndef RSMOMENT_LFUN_HPP
#define RSMOMENT_LFUN_HPP

// Generic L-function evaluation from Dirichlet coefficients plus gamma data.
// The completed form used throughout is
//   Lambda(s) = pi^{-degree*s/2} * prod_j Gamma((s+mu_j)/2) * L(s),
// self-dual with real coefficients, Lambda(s) = eps * Lambda(1-s); eps is
// always measured numerically, never assumed.

#include "rsmoment/modforms.hpp"
#include "rsmoment/value.hpp"

#include <functional>
#include <optional>
#include <string>

namespace rsm {

struct LFunctionDescriptor {
    int degree = 0;
    std::vector<Complex> gamma_shifts;    // mu_j
    Real conductor_scale{1};              // pi^{degree/2}: Lambda = conductor_scale^{-s} prod Gamma((s+mu_j)/2) L(s)
    bool pole_at_1 = false;
    Real pole_residue_L{0};               // residue of L at s = 1 when pole_at_1
    std::optional<double> sign_hint;
    std::string cache_key;

    std::vector<Real> coefficients;       // b(1..N); [0] unused
    std::function<Real(long)> coeff_fn;   // generator for on-demand growth
    long coeff_limit = 0;                 // hard cap (data-driven descriptors)

    mutable std::optional<Real> measured_eps;

    void ensure_coefficients(long N);
    const Real& b(long n) const { return coefficients[static_cast<size_t>(n)]; }
};

// Builders. All coefficients satisfy b(1) = 1.
LFunctionDescriptor build_zeta_descriptor();
LFunctionDescriptor build_gl2(const EigenformPtr& g);
// pole_at_1 iff f and g are the same eigenform; the residue L(1, ad g) is
// then computed internally (one adjoint evaluation, memoized).
LFunctionDescriptor build_rankin_selberg(const EigenformPtr& f, const EigenformPtr& g,
                                         const PrecisionContext& ctx);
LFunctionDescriptor build_adjoint(const EigenformPtr& g);

// Maass variants, data-driven (lambda list of limited length).
struct MaassFormData;
LFunctionDescriptor build_gl2_maass(const MaassFormData& f);
LFunctionDescriptor build_rankin_selberg_maass(const MaassFormData& f, const EigenformPtr& g);
LFunctionDescriptor build_adjoint_maass(const MaassFormData& f);

// Smoothed approximate-functional-equation evaluation at any s; explicit
// residue correction when an L(s) pole at s=1 exists.
ComplexValue evaluate(const LFunctionDescriptor& desc, const Complex& s, const PrecisionContext& ctx);

// j-th derivative by Cauchy circle quadrature of evaluate, j <= 4.
ComplexValue derivative(const LFunctionDescriptor& desc, const Complex& s, int j,
                        const Real& radius, const PrecisionContext& ctx);

struct AdjointDerivatives {
    Real values[4];  // L(1,ad g), L'(1,ad g), L''(1,ad g), L'''(1,ad g)
};
AdjointDerivatives adjoint_derivs(const EigenformPtr& g, const PrecisionContext& ctx);

struct FunctionalEquationReport {
    Real epsilon;         // least-squares epsilon over the test points
    Real max_violation;   // max relative |Lambda(s) - eps Lambda(1-s)|
};
FunctionalEquationReport functional_equation_check(const LFunctionDescriptor& desc,
                                                   const std::vector<Complex>& test_points,
                                                   const PrecisionContext& ctx);

// Taylor coefficients of L around `center` (circle radius R, J terms),
// memoized per (cache_key, center, R, J, digits) in process and on disk.
std::vector<Complex> lfun_taylor(const LFunctionDescriptor& desc, const Complex& center,
                                 const Real& radius, int J, const PrecisionContext& ctx);

// gamma factor of the completed form (no L).
Complex gamma_factor(const LFunctionDescriptor& desc, const Complex& s, const PrecisionContext& ctx);

// Coefficient length the smoothed AFE needs at Re(s) = sre for `digits`
// decimal digits (saddle-point estimate of the weight decay).
long afe_coefficient_length(const LFunctionDescriptor& desc, double sre, double digits);

// Lambda(s) via the AFE machinery (used by FE checks and tests).
ComplexValue evaluate_completed(const LFunctionDescriptor& desc, const Complex& s,
                                const PrecisionContext& ctx);

} // namespace rsm

#endif
