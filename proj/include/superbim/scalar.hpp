#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace superbim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class K>
using Vec = std::vector<K>;

enum class FieldTag : uint8_t { RAT, GAUSS };

/// Error with a short machine-readable code ("GRADING", "FIELD", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Exact Gaussian rational a + b*i.
struct Gaussian {
  Rational re, im;

  Gaussian() = default;
  Gaussian(long v) : re(v) {}  // NOLINT: implicit like the int->Rational path
  Gaussian(Rational r) : re(std::move(r)) {}
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    Rational n = o.re * o.re + o.im * o.im;
    if (n == 0) throw Error("DIV0", "division by zero Gaussian rational");
    Rational r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = std::move(r);
    return *this;
  }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

template <class K>
struct FieldOps;

// Minimal shim so that the numeric paths can reuse Matrix<double>.
template <>
struct FieldOps<double> {
  static bool is_zero(double x) { return x == 0.0; }
  static double to_real(double x) { return x; }
};

template <>
struct FieldOps<Rational> {
  static constexpr FieldTag tag = FieldTag::RAT;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational from_int(long v) { return Rational(v); }
  static double to_real(const Rational& x) { return x.convert_to<double>(); }
  static std::string to_string(const Rational& x);
  static Rational parse(const std::string& s);
};

template <>
struct FieldOps<Gaussian> {
  static constexpr FieldTag tag = FieldTag::GAUSS;
  static Gaussian zero() { return Gaussian(); }
  static Gaussian one() { return Gaussian(Rational(1)); }
  static bool is_zero(const Gaussian& x) { return x.re == 0 && x.im == 0; }
  static Gaussian from_int(long v) { return Gaussian(Rational(v)); }
  static double to_real(const Gaussian& x) {
    if (x.im != 0) throw Error("FIELD", "non-real Gaussian rational in real-only context");
    return x.re.convert_to<double>();
  }
  static std::string to_string(const Gaussian& x);
  static Gaussian parse(const std::string& s);
};

namespace detail {

inline Rational parse_plain_rational(const std::string& raw) {
  auto bad = [&] { throw Error("PARSE", "bad rational literal '" + raw + "'"); };
  std::string s = raw;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);  // cpp_int rejects a leading '+'
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);
  } catch (const std::exception&) {
    bad();
  }
  return Rational(0);
}

}  // namespace detail

inline std::string FieldOps<Rational>::to_string(const Rational& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) s += "/" + denominator(x).str();
  return s;
}

inline Rational FieldOps<Rational>::parse(const std::string& s) {
  return detail::parse_plain_rational(s);
}

inline std::string FieldOps<Gaussian>::to_string(const Gaussian& x) {
  if (x.im == 0) return FieldOps<Rational>::to_string(x.re);
  std::string s = FieldOps<Rational>::to_string(x.re);
  if (x.im > 0) s += "+";
  s += FieldOps<Rational>::to_string(x.im) + " i";
  return s;
}

// Accepts "p/q", "p/q+r/s i", "p/q-r/s i", and "r/s i".
inline Gaussian FieldOps<Gaussian>::parse(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  if (t.empty()) throw Error("PARSE", "empty Gaussian literal");
  bool imag_only = t.back() == 'i';
  if (imag_only) t.pop_back();
  // Split on the last top-level +/- that is not the leading sign.
  size_t split = std::string::npos;
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i] == '+' || t[i] == '-') split = i;
  if (!imag_only) return Gaussian(detail::parse_plain_rational(t));
  if (split == std::string::npos) return Gaussian(Rational(0), detail::parse_plain_rational(t));
  Rational re = detail::parse_plain_rational(t.substr(0, split));
  std::string imtxt = t.substr(split);
  if (imtxt == "+" || imtxt == "-") imtxt += "1";
  return Gaussian(std::move(re), detail::parse_plain_rational(imtxt));
}

inline const char* field_name(FieldTag t) { return t == FieldTag::RAT ? "RAT" : "GAUSS"; }

inline FieldTag field_from_name(const std::string& s) {
  if (s == "RAT" || s == "rat") return FieldTag::RAT;
  if (s == "GAUSS" || s == "gauss") return FieldTag::GAUSS;
  throw Error("FIELD", "unknown field tag '" + s + "'");
}

}  // namespace superbim
