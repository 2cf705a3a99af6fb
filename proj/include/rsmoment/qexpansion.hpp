#ifndef RSMOMENT_QEXPANSION_HPP
#define RSMOMENT_QEXPANSION_HPP

// Truncated q-expansion arithmetic: exact integer series for the structural
// stage (echelon basis, Hecke matrices) and Real series for long tails.

#include "rsmoment/real.hpp"

#include <vector>

namespace rsm {

using ISeries = std::vector<mpz_class>;  // [n] = coefficient of q^n, size N+1
using RSeries = std::vector<Real>;

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for k = 4, 6.
ISeries eisenstein_qexp(int k, long N);

// Delta = q prod (1-q^n)^24, via the cube-of-eta pentagonal-type expansion.
ISeries delta_qexp(long N);

ISeries mul_trunc(const ISeries& a, const ISeries& b, long N);
RSeries mul_trunc(const RSeries& a, const RSeries& b, long N);
RSeries to_rseries(const ISeries& a);

// a^e by binary powering, truncated at q^N.
RSeries pow_trunc(const RSeries& a, long e, long N);

// Divisor-count sieve d(n), n <= N.
std::vector<int> divisor_count_sieve(long N);

} // namespace rsm

#endif
