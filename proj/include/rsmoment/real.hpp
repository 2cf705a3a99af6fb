#ifndef RSMOMENT_REAL_HPP
#define RSMOMENT_REAL_HPP

// Arbitrary-precision real numbers on top of MPFR, with a thread-local
// working precision that computations push/pop via PrecisionScope.

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <stdexcept>
#include <utility>

namespace rsm {

class Real {
public:
    Real() { mpfr_init2(v_, working_bits()); mpfr_set_zero(v_, 1); }
    Real(double x) { mpfr_init2(v_, working_bits()); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(int x) { mpfr_init2(v_, working_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(long x) { mpfr_init2(v_, working_bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(unsigned long x) { mpfr_init2(v_, working_bits()); mpfr_set_ui(v_, x, MPFR_RNDN); }
    explicit Real(const std::string& s) {
        mpfr_init2(v_, working_bits());
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("Real: cannot parse '" + s + "'");
    }
    explicit Real(const mpz_class& z) { mpfr_init2(v_, working_bits()); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    explicit Real(const mpq_class& q) { mpfr_init2(v_, working_bits()); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 32); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    // Thread-local working precision (decimal digits -> bits with guard).
    static void set_working_digits(int digits);
    static int working_digits();
    static mpfr_prec_t working_bits();

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    std::string str(int digits = 0) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_negative() const { return mpfr_sgn(v_) < 0; }
    int sign() const { return mpfr_sgn(v_); }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a) { Real r; mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

// Elementary functions; results carry the current working precision.
Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
void sin_cos(const Real& x, Real& s, Real& c);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& base, const Real& expo);
Real pow_si(const Real& base, long e);
Real floor(const Real& x);
Real real_pi();
Real const_euler();      // MPFR's gamma; used for cross-checks only
Real lngamma_real(const Real& x);  // MPFR real lngamma (x > 0); test oracle / fast path
Real factorial(unsigned long n);

// Temporarily switch the thread's working precision.
struct PrecisionScope {
    explicit PrecisionScope(int digits) : saved_(Real::working_digits()) { Real::set_working_digits(digits); }
    ~PrecisionScope() { Real::set_working_digits(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;
private:
    int saved_;
};

} // namespace rsm

#endif
