#ifndef RSMOMENT_SPECIALFN_HPP
#define RSMOMENT_SPECIALFN_HPP

// Complex log-gamma, Riemann zeta (Euler-Maclaurin), Laurent data of zeta
// at s=1, the completed zeta xi, Whittaker functions, and the Mellin
// cross-check they feed.

#include "rsmoment/value.hpp"

#include <vector>

namespace rsm {

// Exact Bernoulli numbers B_0, B_1, B_2, ... (B_1 = -1/2), cached.
const mpq_class& bernoulli(unsigned n);

// Principal-branch log Gamma via recurrence-shifted Stirling series.
// Throws pole_input at nonpositive integers.
ComplexValue log_gamma(const Complex& z, const PrecisionContext& ctx);

// Riemann zeta by Euler-Maclaurin, any s != 1 (accurate uniformly near 1).
ComplexValue zeta(const Complex& s, const PrecisionContext& ctx);

// Coefficients c_{-1}, c_0, ..., c_{order-1} of zeta(1+w) = 1/w + sum c_j w^j,
// by Cauchy circle integrals around s = 1. order <= 8 for the public call.
std::vector<Real> zeta_laurent_at_1(int order, const PrecisionContext& ctx);

// Internal: same Laurent data to arbitrary order (used by series machinery).
std::vector<Real> zeta_laurent_series(int order, const PrecisionContext& ctx);

// xi(s) = pi^{-s/2} Gamma(s/2) zeta(s); poles at s = 0, 1.
ComplexValue completed_xi(const Complex& s, const PrecisionContext& ctx);

// Whittaker W_{kappa,mu}(y), y > 0. Route is chosen per parameters:
// terminating Laguerre closed form, Kummer pair, asymptotic series, or a
// real-integral representation; err is always reported.
ComplexValue whittaker_W(const Real& kappa, const Complex& mu, const Real& y,
                         const PrecisionContext& ctx);

// Both sides of int_0^inf W_{kappa,mu}(y) y^{s+kappa-1} e^{-y/2} dy/y
//   = Gamma(s+kappa-1/2+mu) Gamma(s+kappa-1/2-mu) / Gamma(s).
struct MellinCheck {
    ComplexValue lhs;  // numerical Mellin integral
    ComplexValue rhs;  // Gamma-ratio closed form
};
MellinCheck mellin_whittaker_check(const Real& kappa, const Complex& mu,
                                   const Complex& s, const PrecisionContext& ctx);

// Stirling main term for log|Gamma(sigma+i tau)| without the O(1):
//   (1/2)(sigma-1/2) log(sigma^2+tau^2) - |tau| arctan(|tau|/sigma) - sigma.
Real stirling_log_abs_gamma(const Real& sigma, const Real& tau);

// Convenience: Gamma-ratio exp(sum lg(num) - sum lg(den)) in log space.
ComplexValue gamma_ratio(const std::vector<Complex>& num, const std::vector<Complex>& den,
                         const PrecisionContext& ctx);

} // namespace rsm

#endif
