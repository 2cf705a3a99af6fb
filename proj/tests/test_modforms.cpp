#include <doctest.h>

#include "rsmoment/modforms.hpp"
#include "rsmoment/qexpansion.hpp"
#include "rsmoment/specialfn.hpp"

#include <cmath>

using namespace rsm;

namespace {
PrecisionContext ctx30() { return PrecisionContext(30); }

// brute-force dim S_k: monomials E4^a E6^b Delta with 4a+6b = k-12
int cusp_dim_brute(int k) {
    if (k < 12) return 0;
    int count = 0;
    for (int b = 0; 6 * b <= k - 12; ++b) {
        int rem = k - 12 - 6 * b;
        if (rem % 4 == 0) ++count;
    }
    return count;
}
}

TEST_SUITE_BEGIN("modforms");

TEST_CASE("cusp dimensions against the monomial count") {
    CHECK(cusp_dim(12) == 1);
    CHECK(cusp_dim(14) == 0);
    CHECK(cusp_dim(28) == 2);
    for (int k = 12; k <= 120; k += 2) CHECK(cusp_dim(k) == cusp_dim_brute(k));
    CHECK_THROWS_AS(cusp_dim(13), Error);
}

TEST_CASE("tau(n) from a brute-force eta product") {
    // Delta = q prod (1-q^n)^24 multiplied out naively, independent of the
    // pentagonal-series route used by delta_qexp.
    const long N = 16;
    std::vector<mpz_class> p2(N + 1, 0);
    p2[0] = 1;
    for (long n = 1; n <= N; ++n) {
        for (int rep = 0; rep < 24; ++rep) {
            std::vector<mpz_class> next(N + 1, 0);
            for (long i = 0; i <= N; ++i) {
                if (p2[i] == 0) continue;
                next[i] += p2[i];
                if (i + n <= N) next[i + n] -= p2[i];
            }
            p2.swap(next);
        }
    }
    ISeries delta = delta_qexp(N);
    for (long n = 1; n + 1 <= N; ++n) CHECK(delta[n + 1] == p2[n]);
    CHECK(delta[2] == -24);
    CHECK(delta[3] == 252);
    CHECK(delta[4] == -1472);
}

TEST_CASE("weight 12 eigenform") {
    Real::set_working_digits(40);
    auto ctx = ctx30();
    auto forms = hecke_eigenforms(12, 600, ctx);
    REQUIRE(forms.size() == 1);
    auto g = forms[0];
    // lambda(2) = -24 / 2^{11/2}
    Real expect = Real(-24) / exp(Real(5.5) * log(Real(2)));
    CHECK(abs(g->lam(2) - expect).to_double() < 1e-28);
    // Hecke relation at p=2
    CHECK(abs(g->lam(4) - (g->lam(2) * g->lam(2) - Real(1))).to_double() < 1e-28);
    // exact integer coefficients present in the rational case
    REQUIRE(!g->a_exact.empty());
    CHECK(g->a_exact[1] == 1);
    CHECK(g->a_exact[2] == -24);
    CHECK(g->a_exact[11] == 534612);
    CHECK_THROWS_AS(hecke_eigenforms(14, 100, ctx), Error);
}

TEST_CASE("multiplicativity and Deligne bound across weights") {
    Real::set_working_digits(40);
    auto ctx = ctx30();
    for (int k : {16, 18, 20, 24, 26}) {
        auto forms = hecke_eigenforms(k, 900, ctx);
        CHECK((int)forms.size() == cusp_dim(k));
        for (const auto& f : forms) {
            CHECK(abs(f->lam(2) * f->lam(3) - f->lam(6)).to_double() < 1e-24);
            // lambda(p^{j+1}) = lambda(p) lambda(p^j) - lambda(p^{j-1})
            for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L}) {
                for (long pj = p; pj * p <= f->n_max && pj * p <= 800; pj *= p) {
                    Real lhs = f->lam(pj * p);
                    Real rhs = f->lam(p) * f->lam(pj) - ((pj / p >= 1) ? f->lam(pj / p) : Real(0));
                    CHECK(abs(lhs - rhs).to_double() < 1e-24);
                }
            }
            auto d = divisor_count_sieve(200);
            for (long n = 1; n <= 200; ++n)
                CHECK(abs(f->lam(n)).to_double() <= d[n] * (1.0 + 1e-20));
        }
        // ordering convention: lambda(2) ascending
        for (size_t i = 0; i + 1 < forms.size(); ++i)
            CHECK(forms[i]->lam(2) < forms[i + 1]->lam(2));
    }
}

TEST_CASE("weight 24 eigenvalues satisfy the exact quadratic") {
    // a(2) for the two weight-24 eigenforms are roots of
    // x^2 - 1080 x - 20468736 (classical; checked exactly via Vieta).
    Real::set_working_digits(44);
    auto ctx = ctx30();
    auto forms = hecke_eigenforms(24, 600, ctx);
    REQUIRE(forms.size() == 2);
    Real scale = exp(Real(11.5) * log(Real(2)));
    Real a0 = forms[0]->lam(2) * scale, a1 = forms[1]->lam(2) * scale;
    CHECK(abs(a0 + a1 - Real(1080)).to_double() < 1e-20);
    CHECK(abs(a0 * a1 + Real(20468736)).to_double() < 1e-14);
}

TEST_CASE("petersson normalisation constant") {
    Real::set_working_digits(36);
    auto ctx = ctx30();
    auto g = hecke_eigenforms(12, 600, ctx)[0];
    Real adj(0.6317929457278832);
    Real v = petersson_rho1_sq(*g, adj);
    // doubling the adjoint value halves the output
    Real v2 = petersson_rho1_sq(*g, Real(2) * adj);
    CHECK(abs(v2 * Real(2) - v).to_double() < 1e-25);
    CHECK(v.to_double() > 0);
    // output * 2 Gamma(k) * adjoint = pi
    Real gk = factorial(11);
    CHECK(abs(v * Real(2) * gk * adj - real_pi()).to_double() < 1e-25);
    CHECK_THROWS_AS(petersson_rho1_sq(*g, Real(-1)), Error);
}

TEST_CASE("eisenstein series: two routes and invariance") {
    Real::set_working_digits(36);
    auto ctx = ctx30();
    EisensteinTruncation trunc(500, 24);
    Complex z{Real(0), Real(1)};
    Complex s{Real(2.5), Real(0)};
    auto direct = eisenstein_value_direct(z, s, trunc, ctx);
    auto fourier = eisenstein_value_fourier(z, s, trunc, ctx);
    CHECK(cabs(direct.z - fourier.z).to_double() < 1e-6);

    // SL2(Z) invariance under both generators at several points
    for (double x0 : {0.31, -0.12}) {
        for (double y0 : {1.08, 1.9}) {
            Complex zz{x0, y0};
            auto a = eisenstein_value_fourier(zz, s, trunc, ctx);
            auto b = eisenstein_value_fourier(Complex(x0 + 1.0, y0), s, trunc, ctx);
            CHECK(cabs(a.z - b.z).to_double() < 1e-6);
            // S: z -> -1/z
            Real den = Real(x0) * Real(x0) + Real(y0) * Real(y0);
            Complex sz{-Real(x0) / den, Real(y0) / den};
            auto cvals = eisenstein_value(sz, s, trunc, ctx);
            CHECK(cabs(a.z - cvals.z).to_double() < 2e-6);
        }
    }

    // large Im(z): E -> y^s + (xi(2-2s)/xi(2s)) y^{1-s}
    Complex zbig{Real(0.2), Real(14)};
    auto e = eisenstein_value_fourier(zbig, s, trunc, ctx);
    auto xi_num = completed_xi(Complex(2) - Complex(2) * s, ctx);
    auto xi_den = completed_xi(Complex(2) * s, ctx);
    Complex lead = rpow(zbig.im, s) + (xi_num.z / xi_den.z) * rpow(zbig.im, Complex(1) - s);
    CHECK(cabs(e.z / lead - Complex(1)).to_double() < 1e-12);

    CHECK_THROWS_AS(eisenstein_value_direct(z, Complex(0.8), trunc, ctx), Error);
}

TEST_CASE("eisenstein truncation guard") {
    auto ctx = ctx30();
    CHECK_THROWS_AS(EisensteinTruncation(0, 5), Error);
    // too few Fourier terms at small y must be flagged
    EisensteinTruncation tiny(100, 1);
    CHECK_THROWS_AS(eisenstein_value_fourier(Complex(0.1, 0.35), Complex(0.5, 1.0), tiny, ctx), Error);
}

TEST_SUITE_END();
