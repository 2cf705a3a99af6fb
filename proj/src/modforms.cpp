#include "rsmoment/modforms.hpp"
#include "rsmoment/qexpansion.hpp"
#include "rsmoment/specialfn.hpp"
#include "rsmoment/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace rsm {

int cusp_dim(int k) {
    if (k < 2 || k % 2 != 0) throw Error(ErrorKind::unsupported, "cusp_dim needs even k >= 2");
    if (k < 12) return 0;
    int dim_mk = (k % 12 == 2) ? k / 12 : k / 12 + 1;
    return dim_mk - 1;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over mpq for the structural stage.

namespace {

using QMat = std::vector<std::vector<mpq_class>>;
using QPoly = std::vector<mpq_class>;  // ascending coefficients

QMat qmat_inverse(QMat a) {
    int n = static_cast<int>(a.size());
    QMat inv(n, std::vector<mpq_class>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw Error(ErrorKind::validation_failure, "singular basis matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        mpq_class d = a[col][col];
        for (int j = 0; j < n; ++j) { a[col][j] /= d; inv[col][j] /= d; }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            mpq_class f = a[r][col];
            for (int j = 0; j < n; ++j) { a[r][j] -= f * a[col][j]; inv[r][j] -= f * inv[col][j]; }
        }
    }
    return inv;
}

// Characteristic polynomial by Faddeev-LeVerrier.
QPoly charpoly(const QMat& m) {
    int n = static_cast<int>(m.size());
    QMat a = m;
    QPoly c(n + 1, 0);
    c[n] = 1;
    QMat work = m;
    for (int j = 1; j <= n; ++j) {
        if (j > 1) {
            // work = m * (work + c[n-j+1] I)
            QMat t = work;
            for (int i = 0; i < n; ++i) t[i][i] += c[n - j + 1];
            QMat nw(n, std::vector<mpq_class>(n, 0));
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) {
                    if (m[i][l] == 0) continue;
                    for (int r = 0; r < n; ++r) nw[i][r] += m[i][l] * t[l][r];
                }
            work = nw;
        }
        mpq_class tr = 0;
        for (int i = 0; i < n; ++i) tr += work[i][i];
        c[n - j] = -tr / j;
    }
    return c;
}

mpq_class qpoly_eval(const QPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

QPoly qpoly_derivative(const QPoly& p) {
    QPoly d(std::max<size_t>(1, p.size() - 1), 0);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = mpq_class(static_cast<long>(i)) * p[i];
    return d;
}

QPoly qpoly_negrem(const QPoly& a, const QPoly& b) {
    QPoly r = a;
    int db = static_cast<int>(b.size()) - 1;
    while (db >= 0 && b[db] == 0) --db;
    int dr = static_cast<int>(r.size()) - 1;
    while (dr >= 0 && r[dr] == 0) --dr;
    while (dr >= db && dr >= 0) {
        mpq_class f = r[dr] / b[db];
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= f * b[i];
        while (dr >= 0 && r[dr] == 0) --dr;
    }
    r.resize(std::max(dr + 1, 1), 0);
    for (auto& v : r) v = -v;
    return r;
}

// Sturm sign variations at x.
int sturm_variations(const std::vector<QPoly>& chain, const mpq_class& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sgn(qpoly_eval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Isolate all real roots of squarefree p into disjoint rational intervals.
std::vector<std::pair<mpq_class, mpq_class>> sturm_isolate(const QPoly& p) {
    std::vector<QPoly> chain = {p, qpoly_derivative(p)};
    while (true) {
        const QPoly& last = chain.back();
        int deg = static_cast<int>(last.size()) - 1;
        while (deg >= 0 && last[deg] == 0) --deg;
        if (deg <= 0) break;
        chain.push_back(qpoly_negrem(chain[chain.size() - 2], last));
    }
    // Cauchy bound
    mpq_class bound = 1;
    int dp = static_cast<int>(p.size()) - 1;
    for (int i = 0; i < dp; ++i) {
        mpq_class q = abs(p[i] / p[dp]);
        if (q > bound) bound = q;
    }
    bound += 1;
    std::vector<std::pair<mpq_class, mpq_class>> out;
    std::vector<std::pair<mpq_class, mpq_class>> stack = {{-bound, bound}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int nroots = sturm_variations(chain, lo) - sturm_variations(chain, hi);
        if (nroots == 0) continue;
        if (nroots == 1) { out.emplace_back(lo, hi); continue; }
        mpq_class mid = (lo + hi) / 2;
        if (qpoly_eval(p, mid) == 0) {
            // nudge the split point off the root
            mid += (hi - lo) / 1000;
        }
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Real qpoly_eval_real(const QPoly& p, const Real& x) {
    Real acc(0);
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * x + Real(p[i]);
    return acc;
}

Real refine_root(const QPoly& p, const QPoly& dp, mpq_class lo, mpq_class hi) {
    // Bisect a little in exact arithmetic, then Newton in Real.
    int slo = sgn(qpoly_eval(p, lo));
    for (int it = 0; it < 40; ++it) {
        mpq_class mid = (lo + hi) / 2;
        int sm = sgn(qpoly_eval(p, mid));
        if (sm == 0) { lo = mid; hi = mid; break; }
        if (sm == slo) lo = mid; else hi = mid;
    }
    Real x{mpq_class((lo + hi) / 2)};
    double thr = std::pow(10.0, -std::min(300, Real::working_digits() - 2));
    for (int it = 0; it < 200; ++it) {
        Real f = qpoly_eval_real(p, x);
        Real df = qpoly_eval_real(dp, x);
        if (df.is_zero()) break;
        Real step = f / df;
        x -= step;
        if (abs(step).to_double() < thr * (1.0 + std::abs(x.to_double()))) break;
    }
    return x;
}

struct WeightData {
    int k = 0;
    int dim = 0;
    std::vector<std::pair<int, int>> monomials;   // (a, b) with 4a+6b = k-12
    std::vector<std::vector<Real>> weights;       // per form: w_j over monomials
    std::vector<Real> lambda2;                    // ordering key
};

} // namespace

// ---------------------------------------------------------------------------

namespace {

std::mutex g_forms_mutex;
std::map<std::pair<int, int>, std::vector<EigenformPtr>> g_forms_memo;  // (k, digits) -> forms

std::vector<EigenformPtr> build_eigenforms(int k, long n_max, const PrecisionContext& ctx) {
    int d = cusp_dim(k);
    if (d == 0)
        throw Error(ErrorKind::dimension_zero, "S_" + std::to_string(k) + " has dimension zero");

    PrecisionScope scope(ctx.working_digits + 25);

    // Monomials Delta E4^a E6^b, b of fixed parity, consecutive in c=(b-r)/2.
    int r = (k / 2) % 2;
    std::vector<std::pair<int, int>> mono;  // (a, b), b ascending
    for (int b = r;; b += 2) {
        int rem = k - 12 - 6 * b;
        if (rem < 0) break;
        if (rem % 4 == 0) mono.emplace_back(rem / 4, b);
    }
    if (static_cast<int>(mono.size()) != d)
        throw Error(ErrorKind::validation_failure, "monomial count disagrees with cusp_dim");

    // Exact structural stage to N0.
    long N0 = std::max<long>(2 * d + 2, 24);
    ISeries e4 = eisenstein_qexp(4, N0), e6 = eisenstein_qexp(6, N0), del = delta_qexp(N0);
    std::vector<ISeries> f(d);
    for (int j = 0; j < d; ++j) {
        ISeries acc = del;
        for (int i = 0; i < mono[j].first; ++i) acc = mul_trunc(acc, e4, N0);
        for (int i = 0; i < mono[j].second; ++i) acc = mul_trunc(acc, e6, N0);
        f[j] = std::move(acc);
    }

    // Echelonize: g_i = sum_j U[i][j] f_j with g_i = q^i + O(q^{d+1}).
    QMat gt(d, std::vector<mpq_class>(d));
    for (int j = 0; j < d; ++j)
        for (int m = 1; m <= d; ++m) gt[j][m - 1] = mpq_class(f[j][m]);
    QMat U = qmat_inverse(gt);  // U[i][j]: (G^T)^{-1}

    // Echelon basis coefficients as exact rationals, n <= N0.
    std::vector<std::vector<mpq_class>> g(d, std::vector<mpq_class>(N0 + 1, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (U[i][j] == 0) continue;
            for (long n = 0; n <= N0; ++n) g[i][n] += U[i][j] * mpq_class(f[j][n]);
        }

    // T_2 matrix in the echelon basis: (T_2 h)(n) = a(2n) + 2^{k-1} a(n/2).
    mpz_class p_pow;
    mpz_ui_pow_ui(p_pow.get_mpz_t(), 2, static_cast<unsigned long>(k - 1));
    QMat t2(d, std::vector<mpq_class>(d));
    for (int i = 0; i < d; ++i) {       // column: image of g_{i+1}
        for (int m = 1; m <= d; ++m) {  // echelon coordinate m
            mpq_class v = g[i][2 * m];
            if (m % 2 == 0) v += mpq_class(p_pow) * g[i][m / 2];
            t2[m - 1][i] = v;
        }
    }

    // Eigenvalues of T_2 (in a(n)-normalisation) by Sturm isolation + Newton.
    QPoly cp = charpoly(t2);
    auto intervals = sturm_isolate(cp);
    if (static_cast<int>(intervals.size()) != d) {
        // Degenerate or non-real T_2 spectrum: tie-break with T_2 + 3 T_3.
        mpz_class p3;
        mpz_ui_pow_ui(p3.get_mpz_t(), 3, static_cast<unsigned long>(k - 1));
        if (N0 < 3 * d) throw Error(ErrorKind::eigenvalue_collision, "T2 spectrum degenerate");
        QMat t3(d, std::vector<mpq_class>(d));
        for (int i = 0; i < d; ++i)
            for (int m = 1; m <= d; ++m) {
                mpq_class v = g[i][3 * m];
                if (m % 3 == 0) v += mpq_class(p3) * g[i][m / 3];
                t3[m - 1][i] = v;
            }
        QMat comb = t2;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) comb[i][j] += 3 * t3[i][j];
        cp = charpoly(comb);
        intervals = sturm_isolate(cp);
        if (static_cast<int>(intervals.size()) != d)
            throw Error(ErrorKind::eigenvalue_collision, "Hecke spectrum degenerate even with T3 tie-break");
        t2 = comb;  // diagonalise the combined operator instead
    }
    QPoly dcp = qpoly_derivative(cp);
    std::vector<Real> eigs;
    for (auto& iv : intervals) eigs.push_back(refine_root(cp, dcp, iv.first, iv.second));

    // Eigenvectors in the echelon basis, then monomial weights w = U^T v.
    std::vector<std::vector<Real>> wcol(d);
    for (int e = 0; e < d; ++e) {
        std::vector<std::vector<Real>> m(d, std::vector<Real>(d, Real(0)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                m[i][j] = Real(t2[i][j]);
                if (i == j) m[i][j] -= eigs[e];
            }
        // Gaussian elimination; the null direction gets its free variable = 1.
        std::vector<int> pivot_col(d, -1);
        int row = 0;
        for (int col = 0; col < d && row < d; ++col) {
            int piv = row;
            for (int rr = row; rr < d; ++rr)
                if (abs(m[rr][col]) > abs(m[piv][col])) piv = rr;
            if (abs(m[piv][col]).to_double() < 1e-12 * (1 + std::abs(eigs[e].to_double()))) continue;
            std::swap(m[piv], m[row]);
            for (int rr = 0; rr < d; ++rr) {
                if (rr == row) continue;
                Real fct = m[rr][col] / m[row][col];
                for (int cc = col; cc < d; ++cc) m[rr][cc] -= fct * m[row][cc];
            }
            pivot_col[row] = col;
            ++row;
        }
        int free_col = -1;
        std::vector<bool> is_pivot(d, false);
        for (int rr = 0; rr < row; ++rr)
            if (pivot_col[rr] >= 0) is_pivot[pivot_col[rr]] = true;
        for (int cc = d - 1; cc >= 0; --cc)
            if (!is_pivot[cc]) { free_col = cc; break; }
        if (free_col < 0) throw Error(ErrorKind::eigenvalue_collision, "no null direction found");
        std::vector<Real> v(d, Real(0));
        v[free_col] = Real(1);
        for (int rr = row - 1; rr >= 0; --rr) {
            int pc = pivot_col[rr];
            Real acc(0);
            for (int cc = pc + 1; cc < d; ++cc) acc += m[rr][cc] * v[cc];
            v[pc] = -acc / m[rr][pc];
        }
        // Normalise a(1) = 1: coefficient of q in sum v_i g_i is v_1.
        if (abs(v[0]).to_double() < 1e-30)
            throw Error(ErrorKind::validation_failure, "eigenform with vanishing first coefficient");
        Real inv = Real(1) / v[0];
        for (auto& vv : v) vv *= inv;
        // Monomial weights.
        std::vector<Real> w(d, Real(0));
        for (int j = 0; j < d; ++j) {
            Real acc(0);
            for (int i = 0; i < d; ++i) acc += v[i] * Real(U[i][j]);
            w[j] = acc;
        }
        wcol[e] = std::move(w);
    }

    // Order forms by lambda(2) ascending <=> a(2) ascending.
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return eigs[a] < eigs[b]; });

    // Long stage in Real arithmetic up to n_max.
    long N = std::max<long>(n_max, N0);
    RSeries e4r = to_rseries(eisenstein_qexp(4, N));
    RSeries e6r = to_rseries(eisenstein_qexp(6, N));
    RSeries delr = to_rseries(delta_qexp(N));
    RSeries S = mul_trunc(e6r, e6r, N);
    RSeries T = mul_trunc(e4r, mul_trunc(e4r, e4r, N), N);

    int M = d - 1;             // c ranges over c_min..c_min+M
    int a_min = mono[d - 1].first;  // a at largest b
    std::vector<RSeries> Spow(M + 1);
    Spow[0] = RSeries(N + 1, Real(0));
    Spow[0][0] = Real(1);
    for (int j = 1; j <= M; ++j) Spow[j] = mul_trunc(Spow[j - 1], S, N);

    std::vector<EigenformPtr> out;
    for (int rank = 0; rank < d; ++rank) {
        int e = order[rank];
        // P = sum_c w_c E4^{a(c)} E6^{b(c)} = E4^{a_min} E6^r * sum_i v_i T^i S^{M-i},
        // v_i = w at c = c_max - i (monomials are stored b ascending = c ascending).
        RSeries H(N + 1, Real(0));
        H[0] = wcol[e][d - 1 - M];  // v_M = w at c_min
        for (int i = M - 1; i >= 0; --i) {
            H = mul_trunc(H, T, N);
            const Real& vi = wcol[e][d - 1 - i];  // w at c = c_max - i
            const RSeries& sp = Spow[M - i];
            for (long n = 0; n <= N; ++n) H[n] += vi * sp[n];
        }
        if (a_min > 0) H = mul_trunc(H, pow_trunc(e4r, a_min, N), N);
        if (r == 1) H = mul_trunc(H, e6r, N);
        RSeries an = mul_trunc(delr, H, N);

        auto form = std::make_shared<HeckeEigenform>();
        form->weight = k;
        form->index = rank;
        form->n_max = N;
        form->lambda.assign(N + 1, Real(0));
        Real half_km1 = Real(k - 1) / Real(2);
        for (long n = 1; n <= N; ++n)
            form->lambda[n] = an[n] * exp(-half_km1 * log(Real(n)));
        // Exact integer coefficients exist in the rational (dim 1) case.
        if (d == 1) {
            form->a_exact.assign(N0 + 1, mpz_class(0));
            for (long n = 0; n <= N0; ++n) {
                mpq_class c = g[0][n];
                if (c.get_den() != 1)
                    throw Error(ErrorKind::validation_failure, "dim-1 eigenform with non-integral coefficient");
                form->a_exact[n] = c.get_num();
            }
        }
        // Sanity: lambda(1)=1 and Hecke relation at p=2.
        if (abs(form->lambda[1] - Real(1)).to_double() > 1e-25)
            throw Error(ErrorKind::validation_failure, "lambda(1) != 1 after normalisation");
        if (N >= 4) {
            Real rel = form->lambda[4] - (form->lambda[2] * form->lambda[2] - Real(1));
            if (abs(rel).to_double() > std::pow(10.0, -ctx.working_digits / 2.0))
                throw Error(ErrorKind::validation_failure, "Hecke relation at p=2 violated");
        }
        out.push_back(form);
    }
    return out;
}

} // namespace

std::vector<EigenformPtr> hecke_eigenforms(int k, long n_max, const PrecisionContext& ctx) {
    if (n_max < 2 * cusp_dim(k) + 1)
        throw Error(ErrorKind::unsupported, "n_max must be at least 2 dim + 1");
    std::lock_guard<std::mutex> lock(g_forms_mutex);
    auto key = std::make_pair(k, ctx.working_digits);
    auto it = g_forms_memo.find(key);
    if (it != g_forms_memo.end() && it->second.front()->n_max >= n_max) return it->second;
    auto forms = build_eigenforms(k, n_max, ctx);
    g_forms_memo[key] = forms;
    return forms;
}

Real petersson_rho1_sq(const HeckeEigenform& g, const Real& adjoint_value) {
    if (adjoint_value.to_double() <= 0)
        throw Error(ErrorKind::validation_failure, "adjoint L-value must be positive");
    PrecisionContext ctx(std::max(30, Real::working_digits() - 20));
    ComplexValue lg = log_gamma(Complex(Real(g.weight)), ctx);
    return real_pi() / (Real(2) * exp(lg.z.re) * adjoint_value);
}

// ---------------------------------------------------------------------------
// Eisenstein series.

ComplexValue eisenstein_value_direct(const Complex& z, const Complex& s,
                                     const EisensteinTruncation& trunc, const PrecisionContext& ctx) {
    double sig = s.re.to_double();
    if (sig <= 1.0)
        throw Error(ErrorKind::divergence, "direct Eisenstein sum needs Re(s) > 1");
    PrecisionScope scope(ctx.working_digits + 5);
    Real x = z.re, y = z.im;
    long B = trunc.coprime_pair_bound;
    Complex acc = rpow(y, s);  // the (c,d) = (0,1) coset
    for (long c = 1; c <= B; ++c) {
        for (long d = -B; d <= B; ++d) {
            if (std::gcd(c, std::abs(d)) != 1) continue;
            Real re = Real(c) * x + Real(d);
            Real q = re * re + Real(c) * Real(c) * y * y;
            acc += rpow(y / q, s);
        }
    }
    // Tail: |cz+d| >= r implies a ~ r^{2-2sigma} decay of the lattice tail.
    double ymin = y.to_double();
    double tail = 8.0 * std::pow(ymin, sig) * std::pow(static_cast<double>(B) * std::min(1.0, ymin), 2.0 - 2.0 * sig) / (2.0 * sig - 2.0);
    return {acc, tail};
}

namespace {

// sum_{ab=n} (b/a)^w for complex w.
Complex divisor_power_sum(long n, const Complex& w) {
    Complex acc(0);
    for (long a = 1; a * a <= n; ++a) {
        if (n % a) continue;
        long b = n / a;
        acc += rpow(Real(b) / Real(a), w);
        if (a != b) acc += rpow(Real(a) / Real(b), w);
    }
    return acc;
}

} // namespace

ComplexValue eisenstein_value_fourier(const Complex& z, const Complex& s,
                                      const EisensteinTruncation& trunc, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.working_digits + 5);
    Real x = z.re, y = z.im;
    ComplexValue xi2s = completed_xi(Complex(2) * s, ctx);
    ComplexValue xi2m = completed_xi(Complex(2) - Complex(2) * s, ctx);
    Complex acc = rpow(y, s) + (xi2m.z / xi2s.z) * rpow(y, Complex(1) - s);
    double err = 2.0 * (xi2m.err + xi2s.err) / std::max(1e-300, cabs(xi2s.z).to_double());

    Complex mu = s - Complex(0.5);
    Real four_pi = Real(4) * real_pi();
    Real two_pi_x = Real(2) * real_pi() * x;
    long M = trunc.fourier_term_bound;
    double last = 0;
    for (long n = 1; n <= M; ++n) {
        Complex dsum = divisor_power_sum(n, mu);
        ComplexValue w = whittaker_W(Real(0), mu, four_pi * Real(n) * y, ctx);
        Real cosx = cos(two_pi_x * Real(n));
        Complex term = (dsum / (sqrt(Real(n)) * xi2s.z)) * w.z * (Real(2) * cosx);
        acc += term;
        err += 2.0 * w.err / std::max(1e-300, cabs(xi2s.z).to_double());
        last = cabs(term).to_double();
    }
    err += last;  // geometric tail, e^{-2 pi y} per step
    if (last > ctx.half_digit_target() * (1 + cabs(acc).to_double()))
        throw Error(ErrorKind::truncation_insufficient,
                    "Eisenstein Fourier tail " + std::to_string(last) + " too large; raise fourier_term_bound");
    return {acc, err};
}

ComplexValue eisenstein_value(const Complex& z, const Complex& s,
                              const EisensteinTruncation& trunc, const PrecisionContext& ctx) {
    if (s.re.to_double() > 1.0)
        return eisenstein_value_direct(z, s, trunc, ctx);
    return eisenstein_value_fourier(z, s, trunc, ctx);
}

ComplexValue eisenstein_completed_value(const Complex& z, const Real& t,
                                        const EisensteinTruncation& trunc, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx.working_digits + 5);
    Real x = z.re, y = z.im;
    Complex acc;
    double err = 0;
    if (std::abs(t.to_double()) < 1e-30) {
        // xi(1+2it) y^{1/2+it} + xi(1-2it) y^{1/2-it} -> y^{1/2}(log y + gamma - log 4pi)
        Real cst = const_euler() - log(Real(4) * real_pi());
        acc = Complex(sqrt(y) * (log(y) + cst));
    } else {
        Complex s{Real(0.5), t};
        ComplexValue xp = completed_xi(Complex(1) + Complex(Real(0), Real(2) * t), ctx);
        ComplexValue xm = completed_xi(Complex(1) - Complex(Real(0), Real(2) * t), ctx);
        acc = xp.z * rpow(y, s) + xm.z * rpow(y, Complex(1) - s);
        err += (xp.err + xm.err) * std::pow(y.to_double(), 0.5);
    }
    Complex mu{Real(0), t};
    Real four_pi = Real(4) * real_pi();
    Real two_pi_x = Real(2) * real_pi() * x;
    double last = 0;
    for (long n = 1; n <= trunc.fourier_term_bound; ++n) {
        Complex dsum = divisor_power_sum(n, mu);
        ComplexValue w = whittaker_W(Real(0), mu, four_pi * Real(n) * y, ctx);
        Complex term = (dsum / sqrt(Real(n))) * w.z * (Real(2) * cos(two_pi_x * Real(n)));
        acc += term;
        err += 2.0 * w.err;
        last = cabs(term).to_double();
    }
    err += last;
    return {acc, err};
}

// ---------------------------------------------------------------------------
// Fundamental-domain quadrature for <E*(.,1/2+it), |G|^2>.

InnerProductCheck fundamental_domain_inner_product(const HeckeEigenform& g, const Real& t,
                                                   const EisensteinTruncation& trunc, int grid_order,
                                                   const AdjointInput& adj, const PrecisionContext& ctx) {
    if (std::abs(t.to_double()) > 10.0)
        throw Error(ErrorKind::unsupported, "inner-product check restricted to |t| <= 10");
    PrecisionScope scope(ctx.working_digits + 10);
    int k = g.weight;

    Real rho1 = sqrt(petersson_rho1_sq(g, adj.L_ad_one));
    // g(z) = rho1 sum lam(n) n^{-1/2} (4 pi n)^{k/2} e(nz); weights cached.
    Real four_pi = Real(4) * real_pi();
    long ng = 8;
    {
        // choose n-cutoff from (4 pi n)^{k/2} e^{-2 pi n y_min} at y_min = sqrt(3)/2
        double target = std::pow(10.0, -ctx.working_digits - 3.0);
        double ymin = 0.8660254;
        for (long n = 1; n < 4000; ++n) {
            double lt = 0.5 * k * std::log(4 * M_PI * n) - 2 * M_PI * n * ymin - 0.5 * std::log(n);
            if (lt < std::log(target)) { ng = n; break; }
            ng = n;
        }
    }
    if (ng > g.n_max)
        throw Error(ErrorKind::insufficient_coefficients, "eigenform table too short for |G|^2 evaluation");
    std::vector<Real> gw(ng + 1, Real(0));
    for (long n = 1; n <= ng; ++n)
        gw[n] = rho1 * g.lam(n) * exp(Real(0.5) * Real(k) * log(four_pi * Real(n)) - Real(0.5) * log(Real(n)));

    GaussLegendre gl(grid_order);
    Real two_pi = Real(2) * real_pi();
    bool t_zero = std::abs(t.to_double()) < 1e-30;
    Complex xi_plus(0), xi_minus(0);
    if (!t_zero) {
        xi_plus = completed_xi(Complex(1) + Complex(Real(0), Real(2) * t), ctx).z;
        xi_minus = completed_xi(Complex(1) - Complex(Real(0), Real(2) * t), ctx).z;
    }
    Real estar_const = const_euler() - log(Real(4) * real_pi());

    // y panels; the first panel has an x-range shrinking with y (unit circle).
    std::vector<std::pair<double, double>> panels = {
        {0.8660254037844386, 1.0}, {1.0, 1.3}, {1.3, 1.8}, {1.8, 2.6}, {2.6, 4.0}, {4.0, 6.5}, {6.5, 10.0}};

    Complex ip_acc(0);
    Real norm_acc(0);
    double err = 0;
    for (auto [ylo, yhi] : panels) {
        Real yl(ylo), yh(yhi);
        Real yc = (yh + yl) * Real(0.5), yr = (yh - yl) * Real(0.5);
        for (int iy = 0; iy < grid_order; ++iy) {
            Real y = yc + yr * gl.x[iy];
            Real wy = yr * gl.w[iy];
            double yd = y.to_double();

            // Fourier data of E* at this height (x enters only through cosines).
            Complex cterm;
            std::vector<Complex> coef;  // coefficient of cos(2 pi n x)
            if (t_zero) {
                cterm = Complex(sqrt(y) * (log(y) + estar_const));
            } else {
                Complex s{Real(0.5), t};
                cterm = xi_plus * rpow(y, s) + xi_minus * rpow(y, Complex(1) - s);
            }
            long M = std::min<long>(trunc.fourier_term_bound,
                                    std::max<long>(3, static_cast<long>((2.5 * ctx.working_digits) / (2.73 * yd)) + 2));
            coef.resize(M + 1);
            Complex mu{Real(0), t};
            for (long n = 1; n <= M; ++n) {
                ComplexValue w = whittaker_W(Real(0), mu, four_pi * Real(n) * y, ctx);
                coef[n] = (divisor_power_sum(n, mu) / sqrt(Real(n))) * w.z * Real(2);
                err += 2.0 * w.err * wy.to_double();
            }
            std::vector<Real> gdecay(ng + 1, Real(0));
            for (long n = 1; n <= ng; ++n) gdecay[n] = gw[n] * exp(-two_pi * Real(n) * y);
            Real yk = exp(Real(k) * log(y));

            double xlo = (yd < 1.0) ? std::sqrt(1.0 - yd * yd) : 0.0;
            Real xl(xlo), xh(0.5);
            Real xc = (xh + xl) * Real(0.5), xr = (xh - xl) * Real(0.5);
            for (int ix = 0; ix < grid_order; ++ix) {
                Real x = xc + xr * gl.x[ix];
                Real wx = xr * gl.w[ix];
                // g(x+iy) and E*(x+iy)
                Complex gz(0);
                for (long n = 1; n <= ng; ++n) {
                    Real sn(0), cn(0);
                    sin_cos(two_pi * Real(n) * x, sn, cn);
                    gz += Complex(gdecay[n] * cn, gdecay[n] * sn);
                }
                Real G2 = yk * norm2(gz);
                Complex estar = cterm;
                for (long n = 1; n < static_cast<long>(coef.size()); ++n)
                    estar += coef[n] * cos(two_pi * Real(n) * x);
                Real meas = wx * wy / (y * y);
                ip_acc += estar * (G2 * meas);
                norm_acc += G2 * meas;
            }
        }
    }
    // x-symmetry factor 2; tail above y=10 is e^{-4 pi 10} suppressed.
    ip_acc = ip_acc * Real(2);
    norm_acc = norm_acc * Real(2);
    err = 2 * err + 1e-25;

    // Closed form: 2^{-2it} pi^{1-3it} Gamma(1/2+it) Gamma(k-1/2+it) / Gamma(k)
    //              * L(1/2+it, ad g) zeta(1/2+it) / L(1, ad g).
    Complex it{Real(0), t};
    ComplexValue lg1 = log_gamma(Complex(0.5) + it, ctx);
    ComplexValue lg2 = log_gamma(Complex(Real(k) - Real(0.5)) + it, ctx);
    ComplexValue lg3 = log_gamma(Complex(Real(k)), ctx);
    ComplexValue zh = zeta(Complex(0.5) + it, ctx);
    Complex pref = cexp(lg1.z + lg2.z - lg3.z
                        - Real(2) * log(Real(2)) * it
                        + (Complex(1) - Complex(3) * it) * log(real_pi()));
    Complex closed = pref * adj.L_ad_half_it * zh.z / adj.L_ad_one;
    double cerr = cabs(closed).to_double() * (lg1.err + lg2.err + lg3.err + zh.err + 1e-25);

    InnerProductCheck out;
    out.quadrature = {ip_acc, err};
    out.closed_form = {closed, cerr};
    out.one_norm = norm_acc;
    return out;
}

} // namespace rsm
