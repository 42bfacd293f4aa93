#include "forge/complex_field.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace forge {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kQuarter = kPi / 4.0;
constexpr double kInvSqrt2 = 0.70710678118654752440;

int wrap8(int q) {
  // into {-3..4}
  int r = ((q % 8) + 8) % 8;  // 0..7
  return r > 4 ? r - 8 : r;
}
}  // namespace

std::complex<double> quarter_unit(int k) {
  static const std::complex<double> table[8] = {
      {1.0, 0.0},
      {kInvSqrt2, kInvSqrt2},
      {0.0, 1.0},
      {-kInvSqrt2, kInvSqrt2},
      {-1.0, 0.0},
      {-kInvSqrt2, -kInvSqrt2},
      {0.0, -1.0},
      {kInvSqrt2, -kInvSqrt2},
  };
  return table[((k % 8) + 8) % 8];
}

ComplexField ComplexField::from_complex(std::complex<double> v) {
  return canonical(ComplexField{v.real(), 0, v.imag()});
}

double ComplexField::imag() const {
  return quarter_turns * kQuarter + residual_imag;
}

std::complex<double> ComplexField::value() const {
  return {real_part, imag()};
}

std::complex<double> ComplexField::exp_value() const {
  std::complex<double> u = quarter_unit(quarter_turns);
  if (residual_imag != 0.0)
    u *= std::complex<double>(std::cos(residual_imag), std::sin(residual_imag));
  return std::exp(real_part) * u;
}

std::complex<double> ComplexField::exp_spin(int s) const {
  return s >= 0 ? exp_value() : (-*this).exp_value();
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
  real_part += o.real_part;
  quarter_turns += o.quarter_turns;
  residual_imag += o.residual_imag;
  return *this;
}

ComplexField ComplexField::scaled(long long num, long long den) const {
  ComplexField r;
  r.real_part = real_part * static_cast<double>(num) / static_cast<double>(den);
  long long qn = static_cast<long long>(quarter_turns) * num;
  if (qn % den == 0) {
    r.quarter_turns = static_cast<int>(qn / den);
    r.residual_imag = residual_imag * static_cast<double>(num) / static_cast<double>(den);
  } else {
    r.quarter_turns = 0;
    r.residual_imag = imag() * static_cast<double>(num) / static_cast<double>(den);
  }
  return canonical(r);
}

double wrap_angle(double a) {
  double y = std::remainder(a, 2.0 * kPi);
  if (y == -kPi) y = kPi;
  return y;
}

ComplexField canonical(const ComplexField& h) {
  ComplexField r = h;
  if (r.residual_imag == 0.0) {
    r.quarter_turns = wrap8(r.quarter_turns);
    return r;
  }
  double y = wrap_angle(wrap8(r.quarter_turns) * kQuarter + r.residual_imag);
  int q = static_cast<int>(std::lround(y / kQuarter));
  if (q == -4) q = -3;  // y in (-pi, -7pi/8): fold into range with |res| < pi/4
  double res = y - q * kQuarter;
  r.quarter_turns = q;
  r.residual_imag = res;
  return r;
}

Prefactor CanonicalizeResult::factor() { return Prefactor::identity(); }

CanonicalizeResult canonicalize_field(const ComplexField& h) {
  return CanonicalizeResult{canonical(h)};
}

Prefactor Prefactor::from_complex(std::complex<double> v) {
  return canonical_phase({std::log(std::abs(v)), std::arg(v)});
}

Prefactor Prefactor::half_power(int k, int q) {
  return canonical_phase({0.5 * k * std::numbers::ln2, q * kQuarter});
}

std::complex<double> Prefactor::as_complex() const {
  return std::exp(log_magnitude) *
         std::complex<double>(std::cos(phase), std::sin(phase));
}

Prefactor Prefactor::canonical_phase(Prefactor p) {
  p.phase = wrap_angle(p.phase);
  return p;
}

Prefactor& Prefactor::operator*=(const Prefactor& o) {
  log_magnitude += o.log_magnitude;
  phase = wrap_angle(phase + o.phase);
  return *this;
}

Prefactor& Prefactor::times_exp(const ComplexField& h) {
  log_magnitude += h.real_part;
  phase = wrap_angle(phase + h.imag());
  return *this;
}

Prefactor& Prefactor::times_two_pow(int k) {
  log_magnitude += k * std::numbers::ln2;
  return *this;
}

Prefactor prefactor_mul(const Prefactor& a, const Prefactor& b) {
  return a * b;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace forge
