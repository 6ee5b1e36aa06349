#pragma once

#include <complex>

namespace altzeta {

using cplx = std::complex<double>;

/// A branch of log Gamma(z) for complex z; only ever exponentiated, so the
/// branch is irrelevant. Throws Errc::PoleError at nonpositive integers.
cplx log_gamma(cplx z);

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

/// Gamma(a) / Gamma(b) computed in the log domain.
inline cplx gamma_ratio(cplx a, cplx b) { return std::exp(log_gamma(a) - log_gamma(b)); }

/// x^s for real x > 0 on the principal branch.
inline cplx pos_pow(double x, cplx s) { return std::exp(s * std::log(x)); }

bool is_nonpositive_integer(cplx z);

}  // namespace altzeta
