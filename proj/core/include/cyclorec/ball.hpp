#pragma once

// Rigorous real and complex enclosures on top of MPFR.
//
// A RealBall is stored by its endpoints [lo, hi]; every operation rounds the
// lower endpoint toward -inf and the upper endpoint toward +inf, so the exact
// value is always enclosed. mid() and rad() give the ball view.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace cyclorec {

using Precision = mpfr_prec_t;
inline constexpr Precision kDefaultPrecision = 64;

class RealBall {
 public:
  explicit RealBall(Precision prec = kDefaultPrecision);
  RealBall(const RealBall& o);
  RealBall(RealBall&& o) noexcept;
  RealBall& operator=(const RealBall& o);
  RealBall& operator=(RealBall&& o) noexcept;
  ~RealBall();

  static RealBall exact(const mpq_class& q, Precision prec);
  static RealBall exact(const mpz_class& z, Precision prec);
  static RealBall exact(double d, Precision prec);
  static RealBall interval(const RealBall& lo, const RealBall& hi);  // hull of two balls
  static RealBall pi(Precision prec);
  static RealBall euler_e(Precision prec);
  static RealBall whole(Precision prec);  // [-inf, +inf]
  static RealBall from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec);

  Precision precision() const noexcept { return prec_; }
  const __mpfr_struct* lo_ptr() const noexcept { return lo_; }
  const __mpfr_struct* hi_ptr() const noexcept { return hi_; }

  double lower() const;  // rounded down
  double upper() const;  // rounded up
  double mid() const;
  double rad() const;    // rounded up
  bool is_finite() const;

  bool contains_zero() const;
  bool certainly_positive() const;
  bool certainly_negative() const;
  bool certainly_less(const RealBall& o) const;  // hi < o.lo
  bool possibly_less_equal(const RealBall& o) const { return !o.certainly_less(*this); }
  bool contains(const mpq_class& q) const;
  bool overlaps(const RealBall& o) const;

  /// Decimal rendering of the midpoint with the given significant digits.
  std::string mid_string(int digits = 20) const;
  std::string to_string(int digits = 20) const;

  friend RealBall operator+(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a, const RealBall& b);
  friend RealBall operator*(const RealBall& a, const RealBall& b);
  friend RealBall operator/(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a);

  friend RealBall abs(const RealBall& a);
  friend RealBall sqr(const RealBall& a);
  friend RealBall sqrt(const RealBall& a);  // of the nonnegative part
  friend RealBall log(const RealBall& a);   // requires a > 0
  friend RealBall exp(const RealBall& a);
  friend RealBall max(const RealBall& a, const RealBall& b);
  friend RealBall min(const RealBall& a, const RealBall& b);
  friend RealBall pow(const RealBall& base, const RealBall& e);  // base > 0
  friend RealBall atan2(const RealBall& y, const RealBall& x);

 private:
  Precision prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

class ComplexBall {
 public:
  explicit ComplexBall(Precision prec = kDefaultPrecision) : re_(prec), im_(prec) {}
  ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}

  /// Enclosure of exp(2 pi i num / den).
  static ComplexBall unit_root(long num, unsigned long den, Precision prec);

  const RealBall& re() const noexcept { return re_; }
  const RealBall& im() const noexcept { return im_; }
  Precision precision() const noexcept { return re_.precision(); }

  /// Enclosing disc: center and an upper bound for the radius.
  double center_re() const { return re_.mid(); }
  double center_im() const { return im_.mid(); }
  double radius() const;

  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }

  RealBall abs2() const;
  RealBall abs() const;

  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const RealBall& a, const ComplexBall& b);

 private:
  RealBall re_;
  RealBall im_;
};

}  // namespace cyclorec
