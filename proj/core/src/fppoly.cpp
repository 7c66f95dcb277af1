#include "cyclorec/fppoly.hpp"

#include <algorithm>

#include "cyclorec/errors.hpp"

namespace cyclorec::fp {

namespace {

mpz_class mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class inv(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t())) throw BadInput("non-invertible residue");
  return r;
}

Poly random_poly(long deg_below, const mpz_class& p, std::mt19937_64& rng) {
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  Poly a(static_cast<size_t>(deg_below));
  for (auto& c : a) c = gen.get_z_range(p);
  trim(a);
  return a;
}

}  // namespace

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }

Poly reduce(const ZPoly& a, const mpz_class& p) {
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i], p);
  trim(r);
  return r;
}

Poly reduce(const QPoly& a, const mpz_class& p) {
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    const mpz_class& den = a[i].get_den();
    if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) throw NonIntegral("denominator divisible by p");
    r[i] = mod(a[i].get_num() * inv(den, p), p);
  }
  trim(r);
  return r;
}

Poly add(const Poly& a, const Poly& b, const mpz_class& p) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    mpz_class s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = s >= p ? mpz_class(s - p) : s;
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, const mpz_class& p) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    mpz_class s = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    r[i] = s < 0 ? mpz_class(s + p) : s;
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, const mpz_class& p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = mod(c, p);
  trim(r);
  return r;
}

static void divmod(const Poly& a, const Poly& b, const mpz_class& p, Poly* q, Poly* r) {
  if (b.empty()) throw BadInput("division by zero polynomial");
  Poly rem = a;
  trim(rem);
  const long db = degree(b);
  const mpz_class lead_inv = inv(b.back(), p);
  Poly quo(rem.size() > b.size() - 1 ? rem.size() - b.size() + 1 : 0);
  while (degree(rem) >= db) {
    const long shift = degree(rem) - db;
    mpz_class c = mod(rem.back() * lead_inv, p);
    quo[static_cast<size_t>(shift)] = c;
    for (long i = 0; i <= db; ++i) rem[i + shift] = mod(rem[i + shift] - c * b[i], p);
    trim(rem);
  }
  if (q) {
    trim(quo);
    *q = std::move(quo);
  }
  if (r) *r = std::move(rem);
}

Poly rem(const Poly& a, const Poly& b, const mpz_class& p) {
  Poly r;
  divmod(a, b, p, nullptr, &r);
  return r;
}

Poly quo(const Poly& a, const Poly& b, const mpz_class& p) {
  Poly q;
  divmod(a, b, p, &q, nullptr);
  return q;
}

Poly monic(const Poly& a, const mpz_class& p) {
  if (a.empty()) return a;
  const mpz_class li = inv(a.back(), p);
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] * li, p);
  return r;
}

Poly gcd(Poly a, Poly b, const mpz_class& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly powmod(const Poly& a, const mpz_class& e, const Poly& m, const mpz_class& p) {
  Poly result{1};
  result = rem(result, m, p);
  Poly base = rem(a, m, p);
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base, p), m, p);
  }
  return result;
}

std::vector<Poly> equal_degree_factors(const Poly& f0, long d, const mpz_class& p, std::mt19937_64& rng) {
  Poly f = monic(f0, p);
  const long n = degree(f);
  if (n <= d) return {f};
  mpz_class q;
  mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
  for (;;) {
    Poly a = random_poly(n, p, rng);
    if (degree(a) < 1) continue;
    Poly g = gcd(a, f, p);
    if (degree(g) <= 0) {
      Poly t;
      if (p == 2) {
        // Trace form: a + a^2 + ... + a^(2^(d-1)) splits F_{2^d} into halves.
        Poly power = a;
        t = a;
        for (long i = 1; i < d; ++i) {
          power = rem(mul(power, power, p), f, p);
          t = add(t, power, p);
        }
      } else {
        t = sub(powmod(a, (q - 1) / 2, f, p), Poly{1}, p);
      }
      g = gcd(t, f, p);
    }
    if (degree(g) <= 0 || degree(g) == n) continue;
    auto left = equal_degree_factors(g, d, p, rng);
    auto right = equal_degree_factors(quo(f, g, p), d, p, rng);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
}

bool canonical_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace cyclorec::fp
