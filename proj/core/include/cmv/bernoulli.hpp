#pragma once

#include <gmpxx.h>

#include "cmv/bigreal.hpp"

namespace cmv {

/// Exact Bernoulli number B_n (convention B_1 = -1/2), from the recurrence
/// sum_{k=0}^{n} C(n+1, k) B_k = 0. Results are cached; safe to call from
/// several threads.
mpq_class bernoulli_rational(int n);

/// B_n rounded to the calling thread's working precision (cached per precision).
BigReal bernoulli(int n);

/// B_n / n! at working precision (cached per precision).
BigReal bernoulli_over_factorial(int n);

}  // namespace cmv
