#include "rsmoment/real.hpp"

#include <cmath>
#include <cstdio>

namespace rsm {

namespace {
thread_local int g_digits = 40;
thread_local mpfr_prec_t g_bits = 166;  // 40 digits + guard

mpfr_prec_t bits_for(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 34;
}
}

void Real::set_working_digits(int digits) {
    if (digits < 8) digits = 8;
    g_digits = digits;
    g_bits = bits_for(digits);
}

int Real::working_digits() { return g_digits; }
mpfr_prec_t Real::working_bits() { return g_bits; }

std::string Real::str(int digits) const {
    if (digits <= 0) digits = g_digits;
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
    char* out = nullptr;
    mpfr_asprintf(&out, fmt, v_);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

Real abs(const Real& x) { Real r; mpfr_abs(r.raw(), x.raw(), MPFR_RNDN); return r; }
Real sqrt(const Real& x) { Real r; mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN); return r; }
Real exp(const Real& x) { Real r; mpfr_exp(r.raw(), x.raw(), MPFR_RNDN); return r; }
Real log(const Real& x) { Real r; mpfr_log(r.raw(), x.raw(), MPFR_RNDN); return r; }
Real sin(const Real& x) { Real r; mpfr_sin(r.raw(), x.raw(), MPFR_RNDN); return r; }
Real cos(const Real& x) { Real r; mpfr_cos(r.raw(), x.raw(), MPFR_RNDN); return r; }
void sin_cos(const Real& x, Real& s, Real& c) { mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN); }
Real atan(const Real& x) { Real r; mpfr_atan(r.raw(), x.raw(), MPFR_RNDN); return r; }
Real atan2(const Real& y, const Real& x) { Real r; mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN); return r; }
Real pow(const Real& base, const Real& expo) { Real r; mpfr_pow(r.raw(), base.raw(), expo.raw(), MPFR_RNDN); return r; }
Real pow_si(const Real& base, long e) { Real r; mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN); return r; }
Real floor(const Real& x) { Real r; mpfr_floor(r.raw(), x.raw()); return r; }
Real real_pi() { Real r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }
Real const_euler() { Real r; mpfr_const_euler(r.raw(), MPFR_RNDN); return r; }
Real lngamma_real(const Real& x) { Real r; mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN); return r; }
Real factorial(unsigned long n) { Real r; mpfr_fac_ui(r.raw(), n, MPFR_RNDN); return r; }

} // namespace rsm
