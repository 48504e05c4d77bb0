#pragma once

// Exact scalar types: arbitrary-precision integers, reduced rationals, and
// canonical residues in Q/Z. No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace singlat {

using Int = boost::multiprecision::cpp_int;
// cpp_rational is kept canonical by boost: gcd-reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

// Error taxonomy. usage_error: malformed input (CLI exit 2).
// domain_error: input outside the mathematical domain (CLI exit 3).
// bound_error: an enumeration guard tripped (CLI exit 3).
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct usage_error : error {
  using error::error;
};
struct domain_error : error {
  using error::error;
};
struct singular_error : domain_error {
  using domain_error::domain_error;
};
struct not_negative_definite : domain_error {
  using domain_error::domain_error;
};
struct bound_error : error {
  using error::error;
};

inline Int int_from_string(const std::string& s) {
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  bool ok = s.size() > start;
  for (std::size_t i = start; i < s.size() && ok; ++i)
    ok = (s[i] >= '0' && s[i] <= '9');
  if (!ok) throw usage_error("not an integer: '" + s + "'");
  return Int(s);
}

// i as a plain long long, for report serialization; refuses silent truncation.
inline long long to_int64(const Int& i) {
  if (i > Int(std::numeric_limits<long long>::max()) ||
      i < Int(std::numeric_limits<long long>::min()))
    throw bound_error("integer too large for the report encoding: " + i.str());
  return i.convert_to<long long>();
}

// A residue in Q/Z, stored as the canonical representative in [0, 1).
class QmodZ {
 public:
  QmodZ() = default;
  explicit QmodZ(const Rational& r) : v_(reduce(r)) {}
  QmodZ(const Int& num, const Int& den) : v_(reduce(Rational(num, den))) {}

  const Rational& representative() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  QmodZ operator+(const QmodZ& o) const { return QmodZ(v_ + o.v_); }
  QmodZ operator-(const QmodZ& o) const { return QmodZ(v_ - o.v_); }
  QmodZ operator-() const { return QmodZ(-v_); }
  // a * x for an integer scalar a.
  QmodZ times(const Int& a) const { return QmodZ(v_ * Rational(a)); }

  bool operator==(const QmodZ& o) const = default;
  // Canonical representatives make the rational order a total order on Q/Z.
  bool operator<(const QmodZ& o) const { return v_ < o.v_; }

  // "num/den" with the canonical representative; zero prints "0/1".
  std::string str() const {
    return numerator(v_).str() + "/" + denominator(v_).str();
  }
  static QmodZ parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
      return QmodZ(int_from_string(s), 1);
    Int den = int_from_string(s.substr(slash + 1));
    if (den <= 0) throw usage_error("nonpositive denominator in '" + s + "'");
    return QmodZ(int_from_string(s.substr(0, slash)), den);
  }

 private:
  static Rational reduce(const Rational& r) {
    Int n = numerator(r), d = denominator(r);
    Int m = n % d;
    if (m < 0) m += d;
    return Rational(m, d);
  }
  Rational v_ = 0;
};

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

}  // namespace singlat
