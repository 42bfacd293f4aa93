#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace forge {

// Exact arithmetic in Z[zeta, 1/2] where zeta = e^{i pi/4} (so zeta^4 = -1).
// Elements are (a0 + a1*zeta + a2*zeta^2 + a3*zeta^3) / 2^shift.
// Every quantity the gadget identities produce lives in this ring: the units
// e^{i k pi/4}, sqrt(2) = zeta - zeta^3, and the scalars (1/2)e^{i m pi/4}.
// Identity checks over it are exact, with zero floating tolerance.
class Cyclo8 {
public:
  Cyclo8() : c_{0, 0, 0, 0}, shift_(0) {}
  explicit Cyclo8(std::int64_t integer) : c_{integer, 0, 0, 0}, shift_(0) {
    normalize();
  }
  Cyclo8(std::array<std::int64_t, 4> coeffs, int shift)
      : c_(coeffs), shift_(shift) {
    normalize();
  }

  static Cyclo8 zero() { return Cyclo8(); }
  static Cyclo8 one() { return Cyclo8(1); }
  // zeta^k = e^{i k pi/4}, any integer k.
  static Cyclo8 zeta_pow(int k);
  // sqrt(2)^k, any integer k (negative powers use 1/sqrt2 = (zeta - zeta^3)/2).
  static Cyclo8 sqrt2_pow(int k);
  // 2^{k/2} * e^{i q pi/4}
  static Cyclo8 scalar(int k, int q) { return sqrt2_pow(k) * zeta_pow(q); }

  bool is_zero() const;
  friend bool operator==(const Cyclo8& a, const Cyclo8& b);
  friend bool operator!=(const Cyclo8& a, const Cyclo8& b) { return !(a == b); }

  Cyclo8 operator-() const;
  friend Cyclo8 operator+(const Cyclo8& a, const Cyclo8& b);
  friend Cyclo8 operator-(const Cyclo8& a, const Cyclo8& b) { return a + (-b); }
  friend Cyclo8 operator*(const Cyclo8& a, const Cyclo8& b);
  Cyclo8& operator+=(const Cyclo8& o) { return *this = *this + o; }
  Cyclo8& operator*=(const Cyclo8& o) { return *this = *this * o; }

  std::complex<double> to_complex() const;
  std::string to_string() const;

private:
  void normalize();
  std::array<std::int64_t, 4> c_;
  int shift_;
};

}  // namespace forge
