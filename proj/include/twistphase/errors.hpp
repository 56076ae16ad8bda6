#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace twistphase {

/// Bad argument values: NaN/Inf, out-of-range angles, zero vectors, bad steps.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Repeated eigenvalue: the matrix has no well-separated eigenbasis.
struct degeneracy_error : std::domain_error {
    std::complex<double> repeated_eigenvalue;
    degeneracy_error(const std::string& msg, std::complex<double> value)
        : std::domain_error(msg), repeated_eigenvalue(value) {}
};

/// Requested at a polar angle where the generator derivation blows up (sin theta = 0).
struct singular_birefringence : std::domain_error {
    using std::domain_error::domain_error;
};

/// Operation defined only for lossless (anti-Hermitian) generators.
struct unsupported_medium : std::domain_error {
    using std::domain_error::domain_error;
};

/// Phase requested through an (near-)orthogonal overlap: arg of ~0 is meaningless.
struct undefined_phase : std::domain_error {
    using std::domain_error::domain_error;
};

/// Geodesic between antipodal points is not unique.
struct ambiguous_geodesic : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace twistphase
