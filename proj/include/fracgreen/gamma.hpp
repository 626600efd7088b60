#pragma once

namespace fracgreen {

/// 1/Gamma(x) as an entire function of real x.
///
/// Returns exactly 0 at the poles of Gamma (x = 0, -1, -2, ...).  Large
/// positive x underflows to 0 gradually; large negative non-integer x can
/// overflow to +-inf, which callers working in log space avoid via
/// log_reciprocal_gamma below.
double reciprocal_gamma(double x);

/// log|1/Gamma(x)| and the sign of 1/Gamma(x).
///
/// At a pole of Gamma the sign is 0 and the returned log is -infinity.
/// This is the overflow-safe form used by series whose terms combine
/// reciprocal gamma factors with large powers.
double log_reciprocal_gamma(double x, int& sign);

} // namespace fracgreen
