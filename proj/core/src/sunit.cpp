#include "cyclorec/sunit.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cyclorec/embedding.hpp"
#include "cyclorec/errors.hpp"
#include "cyclorec/intfactor.hpp"
#include "cyclorec/parallel.hpp"

namespace cyclorec {
namespace {

using Tuple = std::vector<mpz_class>;

constexpr long kMaxEpsSize = 1000;
constexpr int kRelationBound = 20;

struct EpsParts {
  unsigned long p, q;  // eps = p / q
};

EpsParts split_eps(const mpq_class& eps) {
  if (sgn(eps) <= 0) throw BadInput("eps must be positive");
  const mpz_class& p = eps.get_num();
  const mpz_class& q = eps.get_den();
  if (p + q > kMaxEpsSize)
    throw BadInput("eps numerator plus denominator must not exceed " + std::to_string(kMaxEpsSize));
  return {p.get_ui(), q.get_ui()};
}

mpz_class pow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Largest c >= 0 with c^(p+q) < |w_r|^q.
mpz_class entry_cap(const mpz_class& w_r, EpsParts e) {
  const mpz_class t = pow(abs(w_r), e.q);
  mpz_class c;
  mpz_root(c.get_mpz_t(), t.get_mpz_t(), e.p + e.q);
  if (pow(c, e.p + e.q) == t) --c;
  return c;
}

bool member(const mpz_class& v, const std::vector<unsigned long>& S, SMembership m) {
  if (v == 0) return m.zero;
  if (v < 0 && !m.negative) return false;
  return is_s_smooth(v, S);
}

// Signed candidates with |x| <= cap, ascending.
std::vector<mpz_class> signed_candidates(const std::vector<mpz_class>& positive, const mpz_class& cap,
                                         SMembership m) {
  std::vector<mpz_class> out;
  if (m.negative)
    for (auto it = positive.rbegin(); it != positive.rend(); ++it)
      if (*it <= cap) out.push_back(-*it);
  if (m.zero) out.push_back(0);
  for (const auto& x : positive)
    if (x <= cap) out.push_back(x);
  return out;
}

// Nondecreasing k-tuples from cand[start..] summing to rem.
void find_tuples(const mpz_class& rem, unsigned k, const std::vector<mpz_class>& cand, size_t start, Tuple& cur,
                 std::vector<Tuple>& out) {
  if (start >= cand.size()) return;
  if (k == 1) {
    auto it = std::lower_bound(cand.begin() + static_cast<long>(start), cand.end(), rem);
    if (it != cand.end() && *it == rem) {
      cur.push_back(rem);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  const mpz_class& top = cand.back();
  for (size_t i = start; i < cand.size(); ++i) {
    const mpz_class& x = cand[i];
    if (rem < x * k) break;
    if (rem - x > top * (k - 1)) continue;
    cur.push_back(x);
    find_tuples(rem - x, k - 1, cand, i, cur, out);
    cur.pop_back();
  }
}

void normalize(std::vector<Tuple>& v) {
  for (auto& t : v) std::sort(t.begin(), t.end() - 1);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_primes(const std::vector<unsigned long>& S) {
  if (S.empty()) throw EmptyS("S must not be empty");
  std::set<unsigned long> seen;
  for (unsigned long p : S) {
    if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
      throw BadInput("S entry " + std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) throw BadInput("duplicate prime " + std::to_string(p) + " in S");
  }
}

// Prime exponent vector of a nonzero rational.
std::map<mpz_class, long> exponent_vector(const mpq_class& x) {
  std::map<mpz_class, long> v;
  for (const auto& [p, e] : factor_integer(abs(x.get_num())).factors) v[p] += e;
  for (const auto& [p, e] : factor_integer(x.get_den()).factors) v[p] -= e;
  return v;
}

// Bounded search for f^a alpha^b w^c = 1, filtered through the norms first.
class RelationFinder {
 public:
  RelationFinder(const CycloElem& f1, const CycloElem& a1) : f1_(f1), a1_(a1) {
    D_ = f1.field()->degree();
    vf_ = exponent_vector(norm(f1));
    va_ = exponent_vector(norm(a1));
    for (int k = -kRelationBound; k <= kRelationBound; ++k) {
      fpow_.push_back(k >= 0 ? f1.pow(k) : f1.inverse().pow(-k));
      apow_.push_back(k >= 0 ? a1.pow(k) : a1.inverse().pow(-k));
    }
  }

  std::optional<std::string> find(const mpz_class& w) const {
    const auto vw = exponent_vector(mpq_class(w));
    std::set<mpz_class> primes;
    for (const auto* v : {&vf_, &va_, &vw})
      for (const auto& [p, e] : *v) primes.insert(p);
    auto get = [](const std::map<mpz_class, long>& v, const mpz_class& p) {
      auto it = v.find(p);
      return it == v.end() ? 0L : it->second;
    };
    const auto wf = f1_.field();
    for (int level = 1; level <= kRelationBound; ++level)
      for (int a = -level; a <= level; ++a)
        for (int b = -level; b <= level; ++b)
          for (int c = -level; c <= level; ++c) {
            if (std::max({std::abs(a), std::abs(b), std::abs(c)}) != level) continue;
            const int lead = a != 0 ? a : (b != 0 ? b : c);
            if (lead < 0) continue;
            bool ok = true;
            for (const auto& p : primes)
              if (a * get(vf_, p) + b * get(va_, p) + long(c) * D_ * get(vw, p) != 0) {
                ok = false;
                break;
              }
            if (!ok) continue;
            mpq_class wc = 1;
            for (int i = 0; i < std::abs(c); ++i) wc *= mpq_class(w);
            if (c < 0) wc = 1 / wc;
            const CycloElem prod = fpow_[a + kRelationBound] * apow_[b + kRelationBound] * wc;
            if (prod == CycloElem::one(wf)) return describe(a, b, c);
          }
    return std::nullopt;
  }

 private:
  static std::string describe(int a, int b, int c) {
    std::string s;
    auto term = [&](const char* name, int e) {
      if (e == 0) return;
      if (!s.empty()) s += " * ";
      s += std::string(name) + "^" + std::to_string(e);
    };
    term("f1", a);
    term("alpha1", b);
    term("w_r", c);
    return s + " = 1";
  }

  CycloElem f1_, a1_;
  long D_;
  std::map<mpz_class, long> vf_, va_;
  std::vector<CycloElem> fpow_, apow_;
};

}  // namespace

bool is_s_smooth(const mpz_class& v, const std::vector<unsigned long>& S) {
  if (v == 0) return false;
  mpz_class x = abs(v);
  for (unsigned long p : S)
    while (mpz_divisible_ui_p(x.get_mpz_t(), p)) mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
  return x == 1;
}

std::vector<mpz_class> enumerate_s_integers(const std::vector<unsigned long>& S, const mpz_class& bound) {
  if (bound < 1) throw BadInput("enumeration bound must be at least 1");
  std::vector<mpz_class> out{1};
  for (unsigned long p : S) {
    const size_t n = out.size();
    for (size_t i = 0; i < n; ++i)
      for (mpz_class x = out[i] * p; x <= bound; x *= p) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

mpz_class window_bound(const mpz_class& value, unsigned r, const mpq_class& eps) {
  const EpsParts e = split_eps(eps);
  if (r <= 1) return abs(value);
  // Past T0 the small entries add at most |w_r| / 2, so |w_r| < 2 |value|.
  const mpz_class target = pow(mpz_class(2 * (r - 1)), e.p + e.q);
  mpz_class t0;
  mpz_root(t0.get_mpz_t(), target.get_mpz_t(), e.p);
  if (pow(t0, e.p) < target) ++t0;
  return std::max(mpz_class(2 * abs(value)), t0);
}

bool in_window(const mpz_class& value, const mpz_class& w_r, unsigned r, const mpq_class& eps) {
  if (r <= 1) return value == w_r;
  const EpsParts e = split_eps(eps);
  return pow(abs(value - w_r), e.p + e.q) < pow(mpz_class(r - 1), e.p + e.q) * pow(abs(w_r), e.q);
}

bool eps_dominated(const mpz_class& w, const mpz_class& w_r, const mpq_class& eps) {
  const EpsParts e = split_eps(eps);
  return pow(abs(w), e.p + e.q) < pow(abs(w_r), e.q);
}

std::vector<std::vector<mpz_class>> solve_value(const mpz_class& value, const std::vector<unsigned long>& S,
                                                unsigned r, const mpq_class& eps, const mpz_class& cap,
                                                SMembership membership) {
  if (r < 1) throw BadInput("r must be at least 1");
  const EpsParts e = split_eps(eps);
  if (r == 1) {
    if (abs(value) > cap) throw CapExceeded("|U| = " + mpz_class(abs(value)).get_str() + " exceeds height_cap");
    if (member(value, S, membership)) return {{value}};
    return {};
  }
  const mpz_class W = window_bound(value, r, eps);
  if (W > cap) throw CapExceeded("window bound " + W.get_str() + " exceeds height_cap " + cap.get_str());

  const auto positive = enumerate_s_integers(S, W);
  std::vector<Tuple> out;
  Tuple cur;
  for (const auto& t : positive)
    for (int sign : {1, -1}) {
      if (sign < 0 && !membership.negative) continue;
      const mpz_class w_r = sign * t;
      if (!in_window(value, w_r, r, eps)) continue;
      const auto cand = signed_candidates(positive, entry_cap(w_r, e), membership);
      std::vector<Tuple> rest;
      find_tuples(value - w_r, r - 1, cand, 0, cur, rest);
      for (auto& tup : rest) {
        tup.push_back(w_r);
        out.push_back(std::move(tup));
      }
    }
  normalize(out);
  return out;
}

std::vector<std::vector<mpz_class>> brute_oracle(const mpz_class& value, const std::vector<unsigned long>& S,
                                                 unsigned r, const mpq_class& eps, const mpz_class& cap,
                                                 SMembership membership) {
  if (r < 1) throw BadInput("r must be at least 1");
  if (cap < abs(value)) throw BadInput("oracle cap must cover |value|");
  split_eps(eps);
  const auto cand = signed_candidates(enumerate_s_integers(S, std::max(cap, mpz_class(1))), cap, membership);
  std::vector<Tuple> out;
  Tuple cur(r);
  // Every ordered choice of the first r - 1 entries; w_r is whatever remains.
  auto rec = [&](auto&& self, unsigned i, const mpz_class& sum) -> void {
    if (i + 1 == r) {
      const mpz_class w_r = value - sum;
      if (abs(w_r) > cap || !member(w_r, S, membership)) return;
      for (unsigned j = 0; j + 1 < r; ++j)
        if (!eps_dominated(cur[j], w_r, eps)) return;
      cur[i] = w_r;
      out.push_back(cur);
      return;
    }
    for (const auto& x : cand) {
      cur[i] = x;
      self(self, i + 1, sum + x);
    }
  };
  rec(rec, 0, 0);
  normalize(out);
  return out;
}

SolveResult solve(const SpecializedLRS& Lz, const SUnitConfig& cfg) {
  check_primes(cfg.S);
  if (cfg.r < 1) throw BadInput("r must be at least 1");
  split_eps(cfg.eps);
  if (cfg.n_min > cfg.n_max) throw BadInput("n_min exceeds n_max");
  if (cfg.height_cap < 1) throw BadInput("height_cap must be positive");
  std::vector<unsigned long> S = cfg.S;
  std::sort(S.begin(), S.end());

  const auto terms = terms_recurrence(Lz, cfg.n_max);
  const RelationFinder relations(Lz.fvals()[0], Lz.avals()[0]);

  struct PerN {
    std::vector<Solution> sols;
    std::optional<SkippedN> skipped;
  };
  auto per_n = parallel_map(cfg.n_max - cfg.n_min + 1, cfg.workers, [&](size_t i) {
    PerN res;
    const unsigned long n = cfg.n_min + i;
    const CycloElem& U = terms[n];
    if (!U.is_rational() || U.constant().get_den() != 1) {
      res.skipped = SkippedN{n, "U_n is not a rational integer", false};
      return res;
    }
    std::vector<Tuple> tuples;
    try {
      tuples = solve_value(U.constant().get_num(), S, cfg.r, cfg.eps, cfg.height_cap, cfg.membership);
    } catch (const CapExceeded& e) {
      res.skipped = SkippedN{n, e.what(), true};
      return res;
    }
    for (auto& t : tuples) {
      Solution s;
      s.n = n;
      for (const auto& w : t) {
        s.signs.push_back(sgn(w));
        std::vector<unsigned long> ex;
        if (w != 0) {
          mpz_class x = abs(w);
          for (unsigned long p : S) {
            unsigned long k = 0;
            while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
              mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
              ++k;
            }
            ex.push_back(k);
          }
        }
        s.exponents.push_back(std::move(ex));
      }
      s.dependence = relations.find(t.back());
      s.w = std::move(t);
      res.sols.push_back(std::move(s));
    }
    return res;
  });

  SolveResult out;
  for (auto& r : per_n) {
    for (auto& s : r.sols) out.solutions.push_back(std::move(s));
    if (r.skipped) out.skipped.push_back(std::move(*r.skipped));
  }
  return out;
}

}  // namespace cyclorec
