#pragma once

// Exact scalars (GMP rationals, Gaussian rationals) usable as Eigen scalars,
// plus the complex-double polynomial kernels used by the spectral code.

#include <complex>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "d4/errors.hpp"

namespace d4 {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using cplx = std::complex<double>;

struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(int r) : re(r) {}  // NOLINT: integer literals promote
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }

  GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
  GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw Error(ErrorKind::Singular, "division by zero Gaussian rational");
    const Rational n = b.norm();
    const GaussianRational t = a * b.conj();
    return {t.re / n, t.im / n};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline const GaussianRational kI{Rational(0), Rational(1)};

}  // namespace d4

namespace Eigen {
template <>
struct NumTraits<d4::GaussianRational> : GenericNumTraits<d4::GaussianRational> {
  using Real = d4::GaussianRational;
  using NonInteger = d4::GaussianRational;
  using Nested = d4::GaussianRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 64
  };
  static Real epsilon() { return {}; }
  static Real dummy_precision() { return {}; }
  static int digits10() { return 0; }
};
}  // namespace Eigen

namespace d4 {

template <class T> using Vec4 = Eigen::Matrix<T, 4, 1>;
template <class T> using Vec5 = Eigen::Matrix<T, 5, 1>;
template <class T> using Mat4 = Eigen::Matrix<T, 4, 4>;
using Q4 = Vec4<Rational>;
using G4 = Vec4<GaussianRational>;
using ExactMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using ExactVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// "p/q", "p", decimals ("-0.125", "1.5e-3") are all exact.
Rational parse_rational(std::string_view s);
std::string format(const Rational& q);

// "a+bi" with rational or decimal parts; "i", "-2i", "3/5-1/5i".
GaussianRational parse_gaussian(std::string_view s);
std::string format(const GaussianRational& z);
inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << format(z); }

double to_double(const Rational& q);
cplx to_complex(const GaussianRational& z);

Integer floor(const Rational& q);
bool is_integer(const Rational& q);
Rational abs(const Rational& q);

// Throws Singular unless A is square with full rank; the result satisfies A x = b exactly.
ExactVector exact_solve(const ExactMatrix& A, const ExactVector& b);

// Gaussian elimination over an exact field (first nonzero pivot).
template <class T>
T exact_determinant(Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> m) {
  const Eigen::Index n = m.rows();
  T det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    while (piv < n && m(piv, c) == T(0)) ++piv;
    if (piv == n) return T(0);
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (m(r, c) == T(0)) continue;
      const T f = m(r, c) / m(c, c);
      for (Eigen::Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

// Coefficients ascending. Construction trims trailing coefficients with
// |c| <= 1e-12 * max|c|; the zero polynomial keeps a single 0.
struct ComplexPoly {
  std::vector<cplx> c;

  ComplexPoly() : c{cplx(0)} {}
  explicit ComplexPoly(std::vector<cplx> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  cplx lead() const { return c.back(); }
  double max_abs_coeff() const;
  cplx operator()(cplx z) const;
};

ComplexPoly poly_from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);
ComplexPoly derivative(const ComplexPoly& p);
ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly operator*(cplx s, const ComplexPoly& a);
// Quotient by (z - u); the remainder p(u) is returned through `remainder`.
ComplexPoly divide_linear(const ComplexPoly& p, cplx u, cplx* remainder = nullptr);

// Aberth-Ehrlich with restarts. Every root satisfies
// |p(r)| < 1e-8 (1+|r|)^deg max|c|, otherwise NonConvergence.
std::vector<cplx> poly_roots(const ComplexPoly& p);

// (-1)^{n(n-1)/2} Res(p, p') / lead for the trimmed degree n >= 2.
cplx discriminant_z(const ComplexPoly& p);

// Discriminant of the binary form of nominal degree a.size()-1. The lead
// coefficient is divided out of the Sylvester matrix symbolically, so the
// value stays correct (and continuous) when the nominal lead vanishes.
cplx discriminant_nominal(const std::vector<cplx>& a);
GaussianRational discriminant_nominal(const std::vector<GaussianRational>& a);

}  // namespace d4
