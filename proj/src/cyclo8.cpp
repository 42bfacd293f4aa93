#include "forge/cyclo8.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace forge {

void Cyclo8::normalize() {
  bool all_zero = c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
  if (all_zero) {
    shift_ = 0;
    return;
  }
  while (shift_ > 0 && c_[0] % 2 == 0 && c_[1] % 2 == 0 && c_[2] % 2 == 0 &&
         c_[3] % 2 == 0) {
    for (auto& x : c_) x /= 2;
    --shift_;
  }
}

Cyclo8 Cyclo8::zeta_pow(int k) {
  int r = ((k % 8) + 8) % 8;
  std::array<std::int64_t, 4> c{0, 0, 0, 0};
  if (r < 4)
    c[r] = 1;
  else
    c[r - 4] = -1;
  return Cyclo8(c, 0);
}

Cyclo8 Cyclo8::sqrt2_pow(int k) {
  Cyclo8 r = one();
  const Cyclo8 s2({0, 1, 0, -1}, 0);        // zeta - zeta^3 = sqrt(2)
  const Cyclo8 inv_s2({0, 1, 0, -1}, 1);    // sqrt(2)/2
  if (k >= 0)
    for (int i = 0; i < k; ++i) r *= s2;
  else
    for (int i = 0; i < -k; ++i) r *= inv_s2;
  return r;
}

bool Cyclo8::is_zero() const {
  return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

bool operator==(const Cyclo8& a, const Cyclo8& b) {
  return a.c_ == b.c_ && a.shift_ == b.shift_;
}

Cyclo8 Cyclo8::operator-() const {
  return Cyclo8({-c_[0], -c_[1], -c_[2], -c_[3]}, shift_);
}

Cyclo8 operator+(const Cyclo8& a, const Cyclo8& b) {
  int shift = std::max(a.shift_, b.shift_);
  std::int64_t fa = std::int64_t{1} << (shift - a.shift_);
  std::int64_t fb = std::int64_t{1} << (shift - b.shift_);
  std::array<std::int64_t, 4> c;
  for (int i = 0; i < 4; ++i) c[i] = a.c_[i] * fa + b.c_[i] * fb;
  return Cyclo8(c, shift);
}

Cyclo8 operator*(const Cyclo8& a, const Cyclo8& b) {
  std::array<std::int64_t, 4> c{0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (b.c_[j] == 0) continue;
      int k = i + j;
      std::int64_t v = a.c_[i] * b.c_[j];
      if (k >= 4)
        c[k - 4] -= v;  // zeta^4 = -1
      else
        c[k] += v;
    }
  }
  return Cyclo8(c, a.shift_ + b.shift_);
}

std::complex<double> Cyclo8::to_complex() const {
  std::complex<double> z{0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    double ang = i * std::numbers::pi / 4.0;
    z += static_cast<double>(c_[i]) *
         std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return z / std::pow(2.0, shift_);
}

std::string Cyclo8::to_string() const {
  std::ostringstream os;
  os << "(" << c_[0] << " + " << c_[1] << "z + " << c_[2] << "z^2 + " << c_[3]
     << "z^3)";
  if (shift_ > 0) os << "/2^" << shift_;
  return os.str();
}

}  // namespace forge
