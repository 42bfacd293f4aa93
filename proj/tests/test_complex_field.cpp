#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>

#include "forge/complex_field.hpp"

using namespace forge;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("quarter-turn fields stay on the exact unit table") {
  CHECK(quarter_unit(0) == std::complex<double>(1.0, 0.0));
  CHECK(quarter_unit(2) == std::complex<double>(0.0, 1.0));
  CHECK(quarter_unit(4) == std::complex<double>(-1.0, 0.0));
  CHECK(quarter_unit(-2) == std::complex<double>(0.0, -1.0));
  CHECK(quarter_unit(9) == quarter_unit(1));
  for (int k = -12; k <= 12; ++k) {
    CHECK(quarter_unit(k) == quarter_unit(k + 8));
    const auto want = std::exp(std::complex<double>(0.0, k * kPi / 4));
    CHECK(std::abs(quarter_unit(k) - want) < 4e-15);
  }
}

TEST_CASE("exp_spin matches std::exp and is exact for pure turns") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  std::uniform_real_distribution<double> im(-0.7, 0.7);
  std::uniform_int_distribution<int> q(-6, 6);
  for (int iter = 0; iter < 200; ++iter) {
    const ComplexField f{re(rng), q(rng), im(rng)};
    for (int s : {+1, -1}) {
      const auto want = std::exp(f.value() * double(s));
      CHECK(std::abs(f.exp_spin(s) - want) <= 1e-13 * std::abs(want));
    }
  }
  // no drift through pi on the lattice part
  CHECK(ComplexField::quarter(4).exp_spin(+1) == std::complex<double>(-1.0, 0.0));
  CHECK(ComplexField::quarter(4).exp_spin(-1) == std::complex<double>(-1.0, 0.0));
  CHECK(ComplexField::quarter(-3).exp_spin(-1) == quarter_unit(3));
}

TEST_CASE("field arithmetic is integer arithmetic on the turn part") {
  const ComplexField a{0.5, 3, 0.1};
  const ComplexField b{-0.25, -5, 0.2};
  const ComplexField s = a + b;
  CHECK(s.real_part == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.quarter_turns == -2);
  CHECK(s.residual_imag == doctest::Approx(0.3).epsilon(1e-15));
  CHECK((-a).quarter_turns == -3);
  CHECK((a - a).is_zero());
  CHECK(ComplexField::quarter(2).scaled(2, 1) == ComplexField::quarter(4));
  CHECK(ComplexField::quarter(2).scaled(1, 2) == ComplexField::quarter(1));
  // den does not divide: folds into the residual, value preserved
  const ComplexField third = ComplexField::quarter(1).scaled(1, 3);
  CHECK(third.quarter_turns == 0);
  CHECK(third.value().imag() == doctest::Approx(kPi / 12).epsilon(1e-15));
}

TEST_CASE("canonicalization lands in the canonical window with unit factor") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> re(-3.0, 3.0);
  std::uniform_real_distribution<double> im(-8.0, 8.0);
  std::uniform_int_distribution<int> q(-40, 40);
  for (int iter = 0; iter < 500; ++iter) {
    const ComplexField f{re(rng), q(rng), im(rng)};
    auto res = canonicalize_field(f);
    const ComplexField c = res.field;
    CHECK(c.quarter_turns > -4);
    CHECK(c.quarter_turns <= 4);
    CHECK(std::abs(c.residual_imag) < kPi / 4);
    const double total = c.quarter_turns * kPi / 4 + c.residual_imag;
    CHECK(total > -kPi - 1e-12);
    CHECK(total <= kPi + 1e-12);
    CHECK(c.real_part == f.real_part);
    // the tracked factor is the identity by construction
    CHECK(res.factor().log_magnitude == 0.0);
    CHECK(res.factor().phase == 0.0);
    // e^h unchanged
    CHECK(std::abs(c.exp_spin(1) - f.exp_spin(1)) <= 1e-12 * std::abs(f.exp_spin(1)));
  }
  CHECK(canonical(ComplexField::quarter(-4)) == ComplexField::quarter(4));
  CHECK(canonical(ComplexField::quarter(13)) == ComplexField::quarter(-3));
}

TEST_CASE("prefactor log arithmetic is exact where promised") {
  const Prefactor r2 = Prefactor::half_power(1, 0);
  CHECK(std::abs(r2.as_complex() - std::sqrt(2.0)) < 1e-15);
  const Prefactor p = Prefactor::half_power(-2, 3);
  const auto v = p.as_complex();
  CHECK(std::abs(v - 0.5 * quarter_unit(3)) < 1e-15);
  CHECK(std::abs((p * p.inverse()).as_complex() - 1.0) < 1e-15);

  // a thousand halvings stay finite in log form
  Prefactor tiny = Prefactor::identity();
  for (int i = 0; i < 1000; ++i) tiny *= Prefactor::half_power(-2, 1);
  CHECK(tiny.log_magnitude == doctest::Approx(-1000.0 * std::log(2.0)));
  CHECK(std::abs(tiny.phase) <= kPi);

  Prefactor q = Prefactor::identity();
  q.times_exp(ComplexField{0.75, 2, 0.0});
  const auto want = std::exp(std::complex<double>(0.75, 0.0)) * quarter_unit(2);
  CHECK(std::abs(q.as_complex() - want) < 1e-14);
  q.times_two_pow(-3);
  CHECK(std::abs(q.as_complex() - want / 8.0) < 1e-14);
}

TEST_CASE("prefactor phase always reported canonical") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> k(-9, 9), qq(-9, 9);
  Prefactor acc = Prefactor::identity();
  for (int i = 0; i < 300; ++i) {
    acc *= Prefactor::half_power(k(rng), qq(rng));
    CHECK(acc.phase > -kPi - 1e-15);
    CHECK(acc.phase <= kPi + 1e-15);
  }
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -0.5, kPi, 1e-300, 6.62607015e-34, -123456.789}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("wrap_angle window") {
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(0.25) == doctest::Approx(0.25));
}
