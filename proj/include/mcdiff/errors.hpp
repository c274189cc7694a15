#pragma once

#include <stdexcept>
#include <string>

namespace mcdiff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A species density (or the implied N-th density) is not strictly positive.
class NonPositiveDensity : public Error {
public:
  using Error::Error;
};

/// A conserved state has rho_N = rho - sum(rho_i) <= 0.
class InvalidConserved : public Error {
public:
  using Error::Error;
};

/// A mixture description violates its invariants (sigma, reference densities, epsilon, ...).
class InvalidSpec : public Error {
public:
  using Error::Error;
};

/// LU factorization hit a (numerically) singular matrix.
class SingularMatrix : public Error {
public:
  using Error::Error;
};

/// Lam weights with sum(omega) == 0.
class DegenerateOmega : public Error {
public:
  using Error::Error;
};

/// Symbol matrix requested at xi == 0.
class ZeroFrequency : public Error {
public:
  using Error::Error;
};

/// Time step outside the stability bound, or CFL number outside (0, 1].
class CflViolation : public Error {
public:
  using Error::Error;
};

/// Order fit with a non-positive error or too few rows.
class DegenerateFit : public Error {
public:
  using Error::Error;
};

/// Experiment configuration cannot be parsed or validated.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace mcdiff
