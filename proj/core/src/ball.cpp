#include "cyclorec/ball.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cyclorec/errors.hpp"

namespace cyclorec {

namespace {

inline Precision joint(const RealBall& a, const RealBall& b) {
  return std::max(a.precision(), b.precision());
}

void set_whole(mpfr_ptr lo, mpfr_ptr hi) {
  mpfr_set_inf(lo, -1);
  mpfr_set_inf(hi, 1);
}

}  // namespace

RealBall::RealBall(Precision prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealBall::RealBall(const RealBall& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealBall& RealBall::operator=(const RealBall& o) {
  if (this == &o) return *this;
  prec_ = o.prec_;
  mpfr_set_prec(lo_, prec_);
  mpfr_set_prec(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

RealBall::~RealBall() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealBall RealBall::exact(const mpq_class& q, Precision prec) {
  RealBall r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealBall RealBall::exact(const mpz_class& z, Precision prec) {
  RealBall r(prec);
  mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
  return r;
}

RealBall RealBall::exact(double d, Precision prec) {
  RealBall r(prec);
  mpfr_set_d(r.lo_, d, MPFR_RNDD);
  mpfr_set_d(r.hi_, d, MPFR_RNDU);
  return r;
}

RealBall RealBall::interval(const RealBall& a, const RealBall& b) {
  RealBall r(joint(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::pi(Precision prec) {
  RealBall r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::euler_e(Precision prec) {
  RealBall r(prec);
  mpfr_set_ui(r.lo_, 1, MPFR_RNDN);
  mpfr_set_ui(r.hi_, 1, MPFR_RNDN);
  mpfr_exp(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, r.hi_, MPFR_RNDU);
  return r;
}

RealBall RealBall::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec) {
  RealBall r(prec);
  mpfr_set(r.lo_, lo, MPFR_RNDD);
  mpfr_set(r.hi_, hi, MPFR_RNDU);
  return r;
}

RealBall RealBall::whole(Precision prec) {
  RealBall r(prec);
  set_whole(r.lo_, r.hi_);
  return r;
}

double RealBall::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealBall::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double RealBall::mid() const {
  mpfr_t t;
  mpfr_init2(t, prec_ + 2);
  mpfr_add(t, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t, t, 1, MPFR_RNDN);
  double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

double RealBall::rad() const {
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_sub(t, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(t, t, 1, MPFR_RNDU);
  double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

bool RealBall::is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

bool RealBall::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool RealBall::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool RealBall::certainly_negative() const { return mpfr_sgn(hi_) < 0; }
bool RealBall::certainly_less(const RealBall& o) const { return mpfr_less_p(hi_, o.lo_); }

bool RealBall::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool RealBall::overlaps(const RealBall& o) const {
  return !certainly_less(o) && !o.certainly_less(*this);
}

std::string RealBall::mid_string(int digits) const {
  mpfr_t t;
  mpfr_init2(t, prec_ + 2);
  mpfr_add(t, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t, t, 1, MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, t);
  std::string s(buf);
  mpfr_free_str(buf);
  mpfr_clear(t);
  return s;
}

std::string RealBall::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "[%.*RDg, %.*RUg]", digits, lo_, digits, hi_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

RealBall operator+(const RealBall& a, const RealBall& b) {
  RealBall r(joint(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
  RealBall r(joint(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

RealBall operator-(const RealBall& a) {
  RealBall r(a.prec_);
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
  const Precision p = joint(a, b);
  RealBall r(p);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  mpfr_t t;
  mpfr_init2(t, p);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      // 0 * inf contributes 0 to the hull.
      if ((mpfr_zero_p(x) && mpfr_inf_p(y)) || (mpfr_inf_p(x) && mpfr_zero_p(y))) {
        mpfr_set_zero(t, 1);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
        continue;
      }
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

RealBall operator/(const RealBall& a, const RealBall& b) {
  if (b.contains_zero()) return RealBall::whole(joint(a, b));
  RealBall inv(b.prec_);
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

RealBall abs(const RealBall& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  RealBall r(a.prec_);
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RealBall sqr(const RealBall& a0) {
  RealBall a = abs(a0);
  RealBall r(a.prec_);
  mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RealBall sqrt(const RealBall& a) {
  if (mpfr_sgn(a.hi_) < 0) throw BadInput("square root of a negative enclosure");
  RealBall r(a.prec_);
  if (mpfr_sgn(a.lo_) <= 0) mpfr_set_zero(r.lo_, 1);
  else mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RealBall log(const RealBall& a) {
  if (mpfr_sgn(a.hi_) <= 0) throw BadInput("logarithm of a nonpositive enclosure");
  RealBall r(a.prec_);
  if (mpfr_sgn(a.lo_) <= 0) mpfr_set_inf(r.lo_, -1);
  else mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RealBall exp(const RealBall& a) {
  RealBall r(a.prec_);
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RealBall max(const RealBall& a, const RealBall& b) {
  RealBall r(joint(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealBall min(const RealBall& a, const RealBall& b) {
  RealBall r(joint(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealBall pow(const RealBall& base, const RealBall& e) { return exp(e * log(base)); }

RealBall atan2(const RealBall& y, const RealBall& x) {
  const Precision p = joint(x, y);
  const bool straddles_cut = mpfr_sgn(x.lo_) < 0 && y.contains_zero();
  if (straddles_cut || (x.contains_zero() && y.contains_zero())) {
    RealBall pi = RealBall::pi(p);
    return RealBall::interval(-pi, pi);
  }
  RealBall r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  bool first = true;
  for (mpfr_srcptr yy : {y.lo_, y.hi_}) {
    for (mpfr_srcptr xx : {x.lo_, x.hi_}) {
      mpfr_atan2(t, yy, xx, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_atan2(t, yy, xx, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

ComplexBall ComplexBall::unit_root(long num, unsigned long den, Precision prec) {
  long k = num % static_cast<long>(den);
  if (k < 0) k += den;
  const unsigned long four_k = 4 * static_cast<unsigned long>(k);
  if (four_k % den == 0) {
    switch (four_k / den) {
      case 0: return {RealBall::exact(1.0, prec), RealBall(prec)};
      case 1: return {RealBall(prec), RealBall::exact(1.0, prec)};
      case 2: return {RealBall::exact(-1.0, prec), RealBall(prec)};
      default: return {RealBall(prec), RealBall::exact(-1.0, prec)};
    }
  }
  const Precision wp = prec + 16;
  RealBall x = RealBall::pi(wp) * RealBall::exact(mpq_class(2 * k, den), wp);
  // |cos'|, |sin'| <= 1: evaluate at the lower endpoint and widen by the interval width.
  mpfr_t w, c, lo, hi;
  mpfr_inits2(wp, w, c, lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_sub(w, x.hi_ptr(), x.lo_ptr(), MPFR_RNDU);
  mpfr_cos(c, x.lo_ptr(), MPFR_RNDD);
  mpfr_sub(lo, c, w, MPFR_RNDD);
  mpfr_cos(c, x.lo_ptr(), MPFR_RNDU);
  mpfr_add(hi, c, w, MPFR_RNDU);
  RealBall re = RealBall::from_endpoints(lo, hi, wp);
  mpfr_sin(c, x.lo_ptr(), MPFR_RNDD);
  mpfr_sub(lo, c, w, MPFR_RNDD);
  mpfr_sin(c, x.lo_ptr(), MPFR_RNDU);
  mpfr_add(hi, c, w, MPFR_RNDU);
  RealBall im = RealBall::from_endpoints(lo, hi, wp);
  mpfr_clears(w, c, lo, hi, static_cast<mpfr_ptr>(nullptr));
  return {re, im};
}

double ComplexBall::radius() const { return re_.rad() + im_.rad(); }

RealBall ComplexBall::abs2() const { return sqr(re_) + sqr(im_); }
RealBall ComplexBall::abs() const { return sqrt(abs2()); }

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  return {a.re_ + b.re_, a.im_ + b.im_};
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  return {a.re_ - b.re_, a.im_ - b.im_};
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

ComplexBall operator*(const RealBall& a, const ComplexBall& b) { return {a * b.re_, a * b.im_}; }

}  // namespace cyclorec
