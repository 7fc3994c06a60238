#include "d4/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace d4 {

std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::OnWall: return "OnWall";
    case ErrorKind::OutOfCube: return "OutOfCube";
    case ErrorKind::NonGeneric: return "NonGeneric";
    case ErrorKind::NotAVertex: return "NotAVertex";
    case ErrorKind::InconsistentFiberRelation: return "InconsistentFiberRelation";
    case ErrorKind::DegenerateP0: return "DegenerateP0";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::OffCurve: return "OffCurve";
    case ErrorKind::UndefinedFlag: return "UndefinedFlag";
    case ErrorKind::BranchPointCollision: return "BranchPointCollision";
    case ErrorKind::SingularFiber: return "SingularFiber";
    case ErrorKind::BranchPointCoincidence: return "BranchPointCoincidence";
    case ErrorKind::RootTrackingLost: return "RootTrackingLost";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::NotParabolic: return "NotParabolic";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

// GMP reads a leading 0 as an octal prefix, so leading zeros are stripped first.
Integer decimal_integer(std::string_view digits) {
  bool neg = !digits.empty() && digits[0] == '-';
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
  while (digits.size() > 1 && digits[0] == '0') digits.remove_prefix(1);
  Integer n{std::string(digits.empty() ? "0" : digits)};
  return neg ? Integer(-n) : n;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
  auto fail = [&] { return Error(ErrorKind::Parse, "not a rational: '" + std::string(original) + "'"); };
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) throw fail();
    exponent = std::stol(std::string(es)) * (eneg ? -1 : 1);
    s = s.substr(0, e);
  }
  std::string_view ip = s, fp;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    ip = s.substr(0, dot);
    fp = s.substr(dot + 1);
  }
  if (ip.empty() && fp.empty()) throw fail();
  if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) throw fail();
  const Integer mant = decimal_integer(std::string(ip) + std::string(fp));
  exponent -= static_cast<long>(fp.size());
  Rational r = exponent >= 0 ? Rational(mant * pow10(exponent)) : Rational(mant, pow10(-exponent));
  return neg ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view s0) {
  const std::string_view s = trim(s0);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(s.substr(0, slash)), den = trim(s.substr(slash + 1));
    std::string_view digits = num;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
    if (!all_digits(digits) || !all_digits(den))
      throw Error(ErrorKind::Parse, "not a rational: '" + std::string(s0) + "'");
    const Integer n = decimal_integer(num), d = decimal_integer(den);
    if (d == 0) throw Error(ErrorKind::Parse, "zero denominator: '" + std::string(s0) + "'");
    return Rational(n, d);
  }
  return parse_decimal(s, s0);
}

std::string format(const Rational& q) {
  return q.str();  // GMP canonical form: "p/q", or "p" when q = 1
}

GaussianRational parse_gaussian(std::string_view s0) {
  const std::string_view s = trim(s0);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty complex number");
  if (s.back() != 'i') return {parse_rational(s)};
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not leading, not an exponent sign, not after '/'.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    const char ch = body[k];
    if ((ch == '+' || ch == '-') && body[k - 1] != 'e' && body[k - 1] != 'E' && body[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string_view re = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im = split == std::string_view::npos ? body : body.substr(split);
  Rational imv;
  if (im.empty() || im == "+") imv = 1;
  else if (im == "-") imv = -1;
  else imv = parse_rational(im);
  return {re.empty() ? Rational(0) : parse_rational(re), imv};
}

std::string format(const GaussianRational& z) {
  if (z.im == 0) return format(z.re);
  std::string im;
  const Rational a = abs(z.im);
  im = a == 1 ? "i" : format(a) + "i";
  if (z.re == 0) return (z.im < 0 ? "-" : "") + im;
  return format(z.re) + (z.im < 0 ? "-" : "+") + im;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }
cplx to_complex(const GaussianRational& z) { return {to_double(z.re), to_double(z.im)}; }

Integer floor(const Rational& q) {
  const Integer n = boost::multiprecision::numerator(q);
  const Integer d = boost::multiprecision::denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (f * d != n && n < 0) f -= 1;
  return f;
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }
Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

ExactVector exact_solve(const ExactMatrix& A, const ExactVector& b) {
  if (A.rows() != A.cols() || A.rows() != b.rows())
    throw Error(ErrorKind::Singular, "exact_solve needs a square system");
  Eigen::FullPivLU<ExactMatrix> lu(A);
  if (lu.rank() != A.rows()) throw Error(ErrorKind::Singular, "matrix is rank deficient");
  ExactVector x = lu.solve(b);
  if (A * x != b) throw Error(ErrorKind::Singular, "exact solve residual is nonzero");
  return x;
}

// ---------------------------------------------------------------------------

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {
  if (c.empty()) c.push_back(0.0);
  const double tol = 1e-12 * max_abs_coeff();
  while (c.size() > 1 && std::abs(c.back()) <= tol) c.pop_back();
  if (c.size() == 1 && std::abs(c[0]) == 0.0) c[0] = 0.0;
}

double ComplexPoly::max_abs_coeff() const {
  double m = 0;
  for (const cplx& x : c) m = std::max(m, std::abs(x));
  return m;
}

cplx ComplexPoly::operator()(cplx z) const {
  cplx r = 0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * z + c[k];
  return r;
}

ComplexPoly poly_from_roots(const std::vector<cplx>& roots, cplx lead) {
  std::vector<cplx> c{lead};
  for (const cplx& r : roots) {
    std::vector<cplx> n(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      n[k + 1] += c[k];
      n[k] -= r * c[k];
    }
    c = std::move(n);
  }
  return ComplexPoly(std::move(c));
}

ComplexPoly derivative(const ComplexPoly& p) {
  if (p.c.size() <= 1) return ComplexPoly();
  std::vector<cplx> d(p.c.size() - 1);
  for (std::size_t k = 1; k < p.c.size(); ++k) d[k - 1] = static_cast<double>(k) * p.c[k];
  return ComplexPoly(std::move(d));
}

ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b) {
  std::vector<cplx> c(std::max(a.c.size(), b.c.size()), 0.0);
  for (std::size_t k = 0; k < a.c.size(); ++k) c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) c[k] += b.c[k];
  return ComplexPoly(std::move(c));
}

ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b) { return a + cplx(-1.0) * b; }

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  std::vector<cplx> c(a.c.size() + b.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return ComplexPoly(std::move(c));
}

ComplexPoly operator*(cplx s, const ComplexPoly& a) {
  std::vector<cplx> c = a.c;
  for (cplx& x : c) x *= s;
  return ComplexPoly(std::move(c));
}

ComplexPoly divide_linear(const ComplexPoly& p, cplx u, cplx* remainder) {
  const std::size_t n = p.c.size();
  if (n == 1) {
    if (remainder) *remainder = p.c[0];
    return ComplexPoly();
  }
  std::vector<cplx> q(n - 1);
  cplx acc = 0;
  for (std::size_t k = n; k-- > 1;) {
    acc = acc * u + p.c[k];
    q[k - 1] = acc;
  }
  if (remainder) *remainder = acc * u + p.c[0];
  return ComplexPoly(std::move(q));
}

namespace {

bool residual_ok(const ComplexPoly& p, const std::vector<cplx>& roots) {
  const double scale = p.max_abs_coeff();
  const int n = p.degree();
  for (const cplx& r : roots) {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return false;
    if (std::abs(p(r)) >= 1e-8 * std::pow(1.0 + std::abs(r), n) * scale) return false;
  }
  return true;
}

std::vector<cplx> aberth(const ComplexPoly& p, double radius, double phase) {
  const int n = p.degree();
  const ComplexPoly dp = derivative(p);
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + phase);
  for (int it = 0; it < 2000; ++it) {
    double worst = 0;
    for (int k = 0; k < n; ++k) {
      const cplx pv = p(z[k]);
      if (pv == 0.0) continue;
      const cplx ratio = pv / dp(z[k]);
      cplx sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const cplx step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (worst < 1e-16) break;
  }
  return z;
}

}  // namespace

std::vector<cplx> poly_roots(const ComplexPoly& p) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorKind::NonConvergence, "poly_roots needs degree >= 1");
  if (n == 1) return {-p.c[0] / p.c[1]};
  // Geometric-mean root modulus, guarded against a vanishing constant term.
  double radius = 0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(p.c[k] / p.lead()), 1.0 / (n - k)));
  radius = radius > 0 ? radius : 1.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double scale = attempt == 0 ? 1.0 : 0.5 + 0.37 * attempt;
    std::vector<cplx> z = aberth(p, radius * scale, 0.4 + 0.9 * attempt);
    if (residual_ok(p, z)) return z;
  }
  throw Error(ErrorKind::NonConvergence, "Aberth iteration failed after restarts");
}

namespace {

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> nominal_sylvester(const std::vector<T>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  const int size = 2 * n - 1;
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> s =
      Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>::Constant(size, size, T(0));
  // p rows (n-1 of them) then p' rows (n of them), coefficients descending.
  for (int r = 0; r < n - 1; ++r)
    for (int k = 0; k <= n; ++k) s(r, r + k) = a[n - k];
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) s(n - 1 + r, r + k) = a[n - k] * T(n - k);
  // Column 0 is a_n (e_0 + n e_{n-1}); divide it by a_n.
  s(0, 0) = T(1);
  s(n - 1, 0) = T(n);
  return s;
}

int sign_for_degree(int n) { return (n * (n - 1) / 2) % 2 == 0 ? 1 : -1; }

}  // namespace

cplx discriminant_nominal(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n < 2) throw Error(ErrorKind::Singular, "discriminant needs degree >= 2");
  const Eigen::MatrixXcd s = nominal_sylvester(a);
  return static_cast<double>(sign_for_degree(n)) * s.partialPivLu().determinant();
}

GaussianRational discriminant_nominal(const std::vector<GaussianRational>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n < 2) throw Error(ErrorKind::Singular, "discriminant needs degree >= 2");
  return GaussianRational(sign_for_degree(n)) * exact_determinant(nominal_sylvester(a));
}

cplx discriminant_z(const ComplexPoly& p) {
  if (p.degree() < 2) throw Error(ErrorKind::Singular, "discriminant needs degree >= 2");
  return discriminant_nominal(p.c);
}

}  // namespace d4
