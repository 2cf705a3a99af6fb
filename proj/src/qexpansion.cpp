#include "rsmoment/qexpansion.hpp"
#include "rsmoment/value.hpp"

namespace rsm {

ISeries eisenstein_qexp(int k, long N) {
    if (k != 4 && k != 6) throw Error(ErrorKind::unsupported, "only E4 and E6 are generators here");
    ISeries sigma(N + 1, mpz_class(0));
    for (long d = 1; d <= N; ++d) {
        mpz_class dp;
        mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
        for (long n = d; n <= N; n += d) sigma[n] += dp;
    }
    ISeries e(N + 1, mpz_class(0));
    e[0] = 1;
    long mult = (k == 4) ? 240 : -504;
    for (long n = 1; n <= N; ++n) e[n] = mult * sigma[n];
    return e;
}

ISeries delta_qexp(long N) {
    // eta^3 = sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}; Delta = q (eta^3)^8.
    std::vector<std::pair<long, long>> eta3;
    for (long m = 0;; ++m) {
        long e = m * (m + 1) / 2;
        if (e > N) break;
        eta3.emplace_back(e, (m % 2 == 0) ? (2 * m + 1) : -(2 * m + 1));
    }
    ISeries acc(N + 1, mpz_class(0));
    acc[0] = 1;
    for (int pass = 0; pass < 8; ++pass) {
        ISeries next(N + 1, mpz_class(0));
        for (auto [e, c] : eta3) {
            for (long n = 0; n + e <= N; ++n) {
                if (acc[n] == 0) continue;
                if (c == 1) next[n + e] += acc[n];
                else if (c == -1) next[n + e] -= acc[n];
                else next[n + e] += c * acc[n];
            }
        }
        acc.swap(next);
    }
    ISeries delta(N + 1, mpz_class(0));
    for (long n = 0; n + 1 <= N; ++n) delta[n + 1] = acc[n];
    return delta;
}

ISeries mul_trunc(const ISeries& a, const ISeries& b, long N) {
    ISeries r(N + 1, mpz_class(0));
    long na = std::min<long>(a.size() - 1, N), nb = std::min<long>(b.size() - 1, N);
    for (long i = 0; i <= na; ++i) {
        if (a[i] == 0) continue;
        long jmax = std::min(nb, N - i);
        for (long j = 0; j <= jmax; ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

RSeries mul_trunc(const RSeries& a, const RSeries& b, long N) {
    RSeries r(N + 1, Real(0));
    long na = std::min<long>(a.size() - 1, N), nb = std::min<long>(b.size() - 1, N);
    // skip leading zero blocks (Delta multiples start high)
    long alead = 0, blead = 0;
    while (alead <= na && a[alead].is_zero()) ++alead;
    while (blead <= nb && b[blead].is_zero()) ++blead;
    for (long i = alead; i <= na; ++i) {
        if (a[i].is_zero()) continue;
        long jmax = std::min(nb, N - i);
        for (long j = blead; j <= jmax; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

RSeries to_rseries(const ISeries& a) {
    RSeries r;
    r.reserve(a.size());
    for (const auto& z : a) r.emplace_back(z);
    return r;
}

RSeries pow_trunc(const RSeries& a, long e, long N) {
    RSeries r(N + 1, Real(0));
    r[0] = Real(1);
    RSeries base = a;
    base.resize(N + 1, Real(0));
    while (e > 0) {
        if (e & 1) r = mul_trunc(r, base, N);
        e >>= 1;
        if (e > 0) base = mul_trunc(base, base, N);
    }
    return r;
}

std::vector<int> divisor_count_sieve(long N) {
    std::vector<int> d(N + 1, 0);
    for (long i = 1; i <= N; ++i)
        for (long n = i; n <= N; n += i) d[n]++;
    return d;
}

} // namespace rsm
