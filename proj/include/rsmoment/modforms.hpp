#ifndef RSMOMENT_MODFORMS_HPP
#define RSMOMENT_MODFORMS_HPP

// Level-one holomorphic Hecke eigenforms from the echelonized
// Delta*E4^a*E6^b basis, plus the real-analytic Eisenstein series and the
// fundamental-domain quadrature used to spot-check the unfolding identities.

#include "rsmoment/value.hpp"

#include <memory>
#include <vector>

namespace rsm {

struct HeckeEigenform {
    int weight = 0;         // k
    int index = 0;          // position within the weight, lambda(2) ascending
    long n_max = 0;
    std::vector<Real> lambda;        // lambda[n] = a(n)/n^{(k-1)/2}, lambda[1] = 1
    std::vector<mpz_class> a_exact;  // exact a(n) for small n when dim = 1 (else empty)

    const Real& lam(long n) const {
        if (n < 1 || n > n_max)
            throw Error(ErrorKind::insufficient_coefficients,
                        "eigenform coefficient " + std::to_string(n) + " beyond n_max=" + std::to_string(n_max));
        return lambda[static_cast<size_t>(n)];
    }
    bool same_form(const HeckeEigenform& o) const { return weight == o.weight && index == o.index; }
};

using EigenformPtr = std::shared_ptr<const HeckeEigenform>;

// dim S_k(SL2(Z)) by the classical formula, k even >= 2.
int cusp_dim(int k);

// All eigenforms of weight k with lambda(n) for n <= n_max, ordered by
// lambda(2) ascending. Throws dimension-zero when dim S_k = 0.
std::vector<EigenformPtr> hecke_eigenforms(int k, long n_max, const PrecisionContext& ctx);

// |rho_g(1)|^2 = pi / (2 Gamma(k) L(1, ad g)).
Real petersson_rho1_sq(const HeckeEigenform& g, const Real& adjoint_value);

struct EisensteinTruncation {
    long coprime_pair_bound = 400;
    long fourier_term_bound = 24;
    EisensteinTruncation() = default;
    EisensteinTruncation(long cp, long ft) : coprime_pair_bound(cp), fourier_term_bound(ft) {
        if (cp < 1 || ft < 1) throw Error(ErrorKind::unsupported, "truncation bounds must be >= 1");
    }
};

// E(z,s): direct coprime-pair sum for Re(s) > 1, Fourier expansion otherwise.
ComplexValue eisenstein_value(const Complex& z, const Complex& s,
                              const EisensteinTruncation& trunc, const PrecisionContext& ctx);

// Force one route (two-route agreement tests).
ComplexValue eisenstein_value_direct(const Complex& z, const Complex& s,
                                     const EisensteinTruncation& trunc, const PrecisionContext& ctx);
ComplexValue eisenstein_value_fourier(const Complex& z, const Complex& s,
                                      const EisensteinTruncation& trunc, const PrecisionContext& ctx);

// Completed E*(z, 1/2+it) = xi(1+2it) E(z, 1/2+it); finite at t = 0 where the
// two constant-term poles cancel into y^{1/2}(log y + gamma - log 4pi).
ComplexValue eisenstein_completed_value(const Complex& z, const Real& t,
                                        const EisensteinTruncation& trunc, const PrecisionContext& ctx);

// L-data the closed form needs; supplied by the caller (computed in lfun).
struct AdjointInput {
    Complex L_ad_half_it;  // L(1/2 + it, ad g)
    Real L_ad_one;         // L(1, ad g)
};

struct InnerProductCheck {
    ComplexValue quadrature;   // integral of E*(z,1/2+it) |G(z)|^2 dmu over the fundamental domain
    ComplexValue closed_form;  // xi(1+2it) * unfolded evaluation in terms of L-values
    Real one_norm{0};          // integral of |G|^2 dmu, should be 1
};

// Quadrature vs closed form for <E*(.,1/2+it), |G|^2>, g L^2-normalised.
InnerProductCheck fundamental_domain_inner_product(const HeckeEigenform& g, const Real& t,
                                                   const EisensteinTruncation& trunc, int grid_order,
                                                   const AdjointInput& adj, const PrecisionContext& ctx);

} // namespace rsm

#endif
