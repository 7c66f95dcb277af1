#include "cyclorec/intfactor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

#include "cyclorec/errors.hpp"

namespace cyclorec {

namespace {

// Miller-Rabin with the first 13 prime bases is deterministic below this bound.
const mpz_class kDeterministicBound("3317044064679887385961981");

bool expired(const Deadline& d) { return d && std::chrono::steady_clock::now() > *d; }

bool miller_rabin(const mpz_class& n, unsigned long base) {
  mpz_class d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  mpz_class a = base, x;
  a %= n;
  if (a == 0) return true;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Pollard-Brent with a bounded cycle length; 0 when nothing turned up.
mpz_class rho_brent(const mpz_class& n, std::mt19937_64& rng, const Deadline& deadline, unsigned long max_r) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::uniform_int_distribution<unsigned long> dist(1, ~0ul);
  for (int attempt = 0; attempt < 3 && !expired(deadline); ++attempt) {
    mpz_class c = mpz_class(dist(rng)) % n, y = mpz_class(dist(rng)) % n;
    mpz_class g = 1, q = 1, x, ys;
    const unsigned long batch = 128;
    for (unsigned long r = 1; g == 1 && r <= max_r; r <<= 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      for (unsigned long k = 0; k < r && g == 1; k += batch) {
        ys = y;
        for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
      }
      if (expired(deadline)) break;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

// Lenstra ECM on Montgomery curves in (X:Z) coordinates, Suyama parametrization.
class Ecm {
 public:
  explicit Ecm(const mpz_class& n) : n_(n) {}

  // A nontrivial factor, n itself when the run degenerated, or 0.
  mpz_class curve(unsigned long sigma_seed, unsigned long B1, unsigned long B2) {
    mpz_class sigma = mpz_class(sigma_seed) % (n_ - 6) + 6;
    mpz_class u = (sigma * sigma - 5) % n_, v = 4 * sigma % n_;
    mpz_class u3 = u * u * u % n_, v3 = v * v * v % n_;
    mpz_class num = (v - u) * (v - u) % n_ * (v - u) % n_ * (3 * u + v) % n_;
    mpz_class den = 16 * u3 % n_ * v % n_;
    mpz_class den_inv;
    if (!mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), n_.get_mpz_t())) return gcd(den, n_);
    a24_ = md(num * den_inv);
    Pt q{u3, v3};

    for (unsigned p : small_primes()) {
      if (p > B1) break;
      unsigned long pk = p;
      while (pk * p <= B1) pk *= p;
      q = ladder(pk, q);
    }
    mpz_class g = gcd(q.z, n_);
    if (g != 1) return g;

    // Stage two: baby steps [j]q for odd j <= D/2, giant steps [iD]q.
    const unsigned long D = 2310;
    std::vector<Pt> baby(D / 2 + 1);
    Pt q2 = dbl(q);
    baby[1] = q;
    baby[3] = add(q2, q, q);
    for (unsigned long j = 5; j <= D / 2; j += 2) baby[j] = add(baby[j - 2], q2, baby[j - 4]);
    const Pt qD = ladder(D, q);
    unsigned long i = std::max(1ul, B1 / D);
    Pt cur = ladder(i * D, q);
    Pt prev = i > 1 ? ladder((i - 1) * D, q) : Pt{};
    mpz_class acc = 1;
    const auto& primes = small_primes(static_cast<unsigned>(B2));
    auto it = std::upper_bound(primes.begin(), primes.end(), static_cast<unsigned>(B1));
    for (; it != primes.end() && *it <= B2; ++it) {
      const unsigned long p = *it;
      while (p > i * D + D / 2) {
        Pt next = i == 1 ? dbl(cur) : add(cur, qD, prev);
        prev = cur;
        cur = next;
        ++i;
      }
      const unsigned long j = p > i * D ? p - i * D : i * D - p;
      if (j > D / 2) continue;
      acc = md(acc * md(cur.x * baby[j].z - baby[j].x * cur.z));
    }
    return gcd(acc, n_);
  }

 private:
  struct Pt {
    mpz_class x, z;
  };

  mpz_class md(const mpz_class& a) const {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n_.get_mpz_t());
    return r;
  }
  Pt dbl(const Pt& p) const {
    mpz_class s = md((p.x + p.z) * (p.x + p.z)), d = md((p.x - p.z) * (p.x - p.z)), t = s - d;
    return {md(s * d), md(t * (d + md(a24_ * t)))};
  }
  Pt add(const Pt& p, const Pt& q, const Pt& diff) const {
    mpz_class u = md((p.x - p.z) * (q.x + q.z)), v = md((p.x + p.z) * (q.x - q.z));
    mpz_class s = u + v, d = u - v;
    return {md(diff.z * md(s * s)), md(diff.x * md(d * d))};
  }
  Pt ladder(unsigned long k, const Pt& p) const {
    if (k == 1) return p;
    Pt r0 = p, r1 = dbl(p);
    for (int b = 62 - __builtin_clzl(k); b >= 0; --b) {
      if ((k >> b) & 1) {
        r0 = add(r1, r0, p);
        r1 = dbl(r1);
      } else {
        r1 = add(r1, r0, p);
        r0 = dbl(r0);
      }
    }
    return r0;
  }

  mpz_class n_;
  mpz_class a24_;
};

mpz_class find_factor(const mpz_class& n, std::mt19937_64& rng, const Deadline& deadline) {
  if (mpz_class d = rho_brent(n, rng, deadline, 1ul << 15); d != 0) return d;
  Ecm ecm(n);
  struct Level {
    unsigned long B1;
    int curves;
  };
  for (Level lv : {Level{2000, 25}, Level{11000, 90}, Level{50000, 300}, Level{250000, 700}, Level{1000000, 1800}}) {
    for (int c = 0; c < lv.curves; ++c) {
      if (expired(deadline)) return 0;
      mpz_class g = ecm.curve(rng(), lv.B1, std::min(100 * lv.B1, 50000000ul));
      if (g != 1 && g != n && g != 0) return g;
    }
  }
  return 0;
}

// Split a composite n into prime powers; primes whose proof is missing clear `certified`.
void split(const mpz_class& n, std::map<mpz_class, unsigned>& out, mpz_class& leftover,
           bool& certified, std::mt19937_64& rng, const Deadline& deadline) {
  if (n == 1) return;
  Primality pr = primality(n, deadline);
  if (pr != Primality::Composite) {
    out[n] += 1;
    if (pr == Primality::ProbablePrime) certified = false;
    return;
  }
  // Perfect powers defeat rho on some seeds; peel them first.
  for (unsigned long k = 2, bits = mpz_sizeinbase(n.get_mpz_t(), 2); k <= std::min(bits, 64ul); ++k) {
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k)) {
      std::map<mpz_class, unsigned> sub;
      split(r, sub, leftover, certified, rng, deadline);
      for (auto& [p, e] : sub) out[p] += e * k;
      return;
    }
  }
  mpz_class d = find_factor(n, rng, deadline);
  if (d == 0) {
    leftover *= n;
    return;
  }
  split(d, out, leftover, certified, rng, deadline);
  split(n / d, out, leftover, certified, rng, deadline);
}

bool pocklington(const mpz_class& n, const Deadline& deadline) {
  // Budget a short factorization of n - 1 and keep the proven part F.
  const mpz_class nm1 = n - 1;
  auto inner = std::chrono::steady_clock::now() + std::chrono::milliseconds(500);
  Deadline d = deadline && *deadline < inner ? deadline : Deadline(inner);
  IntFactorization f = factor_integer(nm1, d);
  mpz_class F = 1;
  std::vector<mpz_class> qs;
  for (const auto& [q, e] : f.factors) {
    if (primality(q, d) != Primality::Prime) continue;
    mpz_class qe;
    mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), e);
    F *= qe;
    qs.push_back(q);
  }
  if (F * F <= n) return false;
  for (const auto& q : qs) {
    bool ok = false;
    for (unsigned long a = 2; a < 200 && !ok; ++a) {
      mpz_class base = a, t;
      mpz_powm(t.get_mpz_t(), base.get_mpz_t(), nm1.get_mpz_t(), n.get_mpz_t());
      if (t != 1) return false;  // Fermat witness: composite after all
      mpz_class e = nm1 / q;
      mpz_powm(t.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
      ok = gcd(mpz_class(t - 1), n) == 1;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Deadline deadline_after(std::optional<std::chrono::milliseconds> budget) {
  if (!budget) return std::nullopt;
  return std::chrono::steady_clock::now() + *budget;
}

const std::vector<unsigned>& small_primes(unsigned bound) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<unsigned>> cache;
  std::lock_guard lock(mu);
  auto& v = cache[bound];
  if (v.empty()) {
    std::vector<bool> sieve(bound + 1, true);
    for (unsigned i = 2; i <= bound; ++i) {
      if (!sieve[i]) continue;
      v.push_back(i);
      for (unsigned long j = static_cast<unsigned long>(i) * i; j <= bound; j += i) sieve[j] = false;
    }
  }
  return v;
}

unsigned valuation_p(const mpz_class& n0, const mpz_class& p) {
  if (n0 == 0) throw ZeroElement("valuation of zero");
  mpz_class n = abs(n0);
  unsigned v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

Primality primality(const mpz_class& n, const Deadline& deadline) {
  if (n < 2) return Primality::Composite;
  static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long b : bases) {
    if (n == b) return Primality::Prime;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return Primality::Composite;
  }
  for (unsigned long b : bases)
    if (!miller_rabin(n, b)) return Primality::Composite;
  if (n < kDeterministicBound) return Primality::Prime;
  if (mpz_probab_prime_p(n.get_mpz_t(), 25) == 0) return Primality::Composite;
  return pocklington(n, deadline) ? Primality::Prime : Primality::ProbablePrime;
}

IntFactorization factor_integer(const mpz_class& n0, const Deadline& deadline) {
  if (n0 == 0) throw ZeroElement("factorization of zero");
  IntFactorization res;
  mpz_class n = abs(n0);
  std::map<mpz_class, unsigned> found;
  for (unsigned p : small_primes()) {
    if (mpz_class(p) * p > n) break;
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    found[mpz_class(p)] = e;
  }
  if (n > 1) {
    std::mt19937_64 rng(0x5eed);
    split(n, found, res.unfactored, res.certified, rng, deadline);
  }
  for (auto& [p, e] : found) res.factors.emplace_back(p, e);
  return res;
}

}  // namespace cyclorec
