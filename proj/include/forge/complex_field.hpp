#pragma once

#include <complex>
#include <string>

namespace forge {

// A complex field value h, stored as
//   value(h) = real_part + i * (quarter_turns * pi/4 + residual_imag).
// The integer quarter_turns keeps gadget-generated arithmetic exact: every
// constant the rewrite calculus produces is a multiple of i*pi/4, so fields
// that start on that lattice stay on it (residual_imag == 0) through any
// number of rewrites. Only user-supplied couplings populate residual_imag.
//
// Canonical form: quarter_turns in {-3..4}, |residual_imag| < pi/4, and the
// total imaginary part in (-pi, pi]. Canonicalization never changes e^{hS}
// for S = +-1 (shifts are multiples of 2*pi*i), so its factor is always 1.
struct ComplexField {
  double real_part = 0.0;
  int quarter_turns = 0;
  double residual_imag = 0.0;

  ComplexField() = default;
  ComplexField(double re, int quarters, double res_im = 0.0)
      : real_part(re), quarter_turns(quarters), residual_imag(res_im) {}

  static ComplexField real(double re) { return {re, 0, 0.0}; }
  // k units of i*pi/4, exact.
  static ComplexField quarter(int k) { return {0.0, k, 0.0}; }
  static ComplexField from_complex(std::complex<double> v);

  double imag() const;
  std::complex<double> value() const;
  // e^{value()} with the quarter-turn part taken from an exact unit table,
  // so e.g. exp of +-i*pi is exactly -1.
  std::complex<double> exp_value() const;
  // e^{value()*s} for a spin s in {+1,-1}.
  std::complex<double> exp_spin(int s) const;

  bool on_quarter_lattice() const { return residual_imag == 0.0; }
  bool is_zero() const {
    return real_part == 0.0 && quarter_turns == 0 && residual_imag == 0.0;
  }

  ComplexField& operator+=(const ComplexField& o);
  friend ComplexField operator+(ComplexField a, const ComplexField& b) {
    a += b;
    return a;
  }
  ComplexField operator-() const {
    return {-real_part, -quarter_turns, -residual_imag};
  }
  friend ComplexField operator-(const ComplexField& a, const ComplexField& b) {
    return a + (-b);
  }
  friend bool operator==(const ComplexField& a, const ComplexField& b) {
    return a.real_part == b.real_part && a.quarter_turns == b.quarter_turns &&
           a.residual_imag == b.residual_imag;
  }

  // Multiply by the rational num/den. Exact on the quarter-turn lattice when
  // den divides quarter_turns*num; otherwise the turns fold into the residual.
  ComplexField scaled(long long num, long long den) const;
};

// Exact complex unit e^{i k pi/4}; k any integer.
std::complex<double> quarter_unit(int k);

struct Prefactor;

struct CanonicalizeResult {
  ComplexField field;
  // Always the identity: canonicalization shifts the imaginary part by
  // multiples of 2*pi only. Returned to keep the operation's shape uniform
  // with the other Z-tracked transforms.
  Prefactor factor();
};

CanonicalizeResult canonicalize_field(const ComplexField& h);
ComplexField canonical(const ComplexField& h);

// Exact multiplicative constant in log form: value = e^{log_magnitude + i*phase},
// phase canonical in (-pi, pi]. Kept in log form because compilations multiply
// thousands of factors of magnitude 1/2 and sqrt(2).
struct Prefactor {
  double log_magnitude = 0.0;
  double phase = 0.0;

  static Prefactor identity() { return {}; }
  static Prefactor from_complex(std::complex<double> v);
  // 2^{k/2} * e^{i q pi/4}, exact ingredients.
  static Prefactor half_power(int k, int q = 0);

  std::complex<double> as_complex() const;
  Prefactor inverse() const { return canonical_phase({-log_magnitude, -phase}); }

  Prefactor& operator*=(const Prefactor& o);
  friend Prefactor operator*(Prefactor a, const Prefactor& b) {
    a *= b;
    return a;
  }

  // Multiply by e^{h} for a field h (e.g. folding a constant term).
  Prefactor& times_exp(const ComplexField& h);
  // Multiply by 2^k.
  Prefactor& times_two_pow(int k);

  static Prefactor canonical_phase(Prefactor p);
};

Prefactor prefactor_mul(const Prefactor& a, const Prefactor& b);

// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

// Shortest-form decimal that round-trips a double ("%.17g").
std::string format_double(double v);

}  // namespace forge
