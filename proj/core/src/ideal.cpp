#include "cyclorec/ideal.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "cyclorec/embedding.hpp"
#include "cyclorec/errors.hpp"

namespace cyclorec {

namespace {

fp::Poly reduce_elem(const CycloElem& beta, const mpz_class& p) { return fp::reduce(beta.coords(), p); }

CycloElem lift(const FieldPtr& field, const fp::Poly& g) {
  std::vector<mpq_class> c(g.begin(), g.end());
  return CycloElem(field, std::move(c));
}

unsigned multiplicative_order(const mpz_class& p, unsigned m) {
  if (m <= 2) return 1;
  const unsigned long r = mpz_fdiv_ui(p.get_mpz_t(), m);
  unsigned long x = r;
  unsigned k = 1;
  while (x != 1) {
    x = x * r % m;
    ++k;
  }
  return k;
}

// Search for pi in P with v_p(N(pi)) = f; such pi has valuation one at P and zero at
// the other primes above p.
CycloElem find_uniformizer(const FieldPtr& field, const mpz_class& p, unsigned f, const fp::Poly& g,
                           std::mt19937_64& rng) {
  const CycloElem base = lift(field, g);
  const CycloElem pe = CycloElem::rational(field, mpq_class(p));
  auto good = [&](const CycloElem& pi) {
    if (pi.is_zero()) return false;
    mpz_class n = abs(norm(pi).get_num());
    return valuation_p(n, p) == f;
  };
  std::vector<CycloElem> tries{base, base + pe, base - pe};
  for (unsigned j = 1; j < field->degree(); ++j) tries.push_back(base + pe * CycloElem::zeta_power(field, j));
  for (const auto& pi : tries)
    if (good(pi)) return pi;
  std::uniform_int_distribution<int> dist(-3, 3);
  for (;;) {
    std::vector<mpq_class> h(field->degree());
    for (auto& c : h) c = dist(rng);
    CycloElem pi = base + pe * CycloElem(field, h);
    if (good(pi)) return pi;
  }
}

std::vector<PrimeIdeal> compute_split(const FieldPtr& field, const mpz_class& p) {
  if (primality(p) == Primality::Composite) throw BadInput("split_prime: " + p.get_str() + " is not prime");
  unsigned m0 = field->conductor();
  if (p <= m0) {
    const unsigned long pu = p.get_ui();
    while (m0 % pu == 0) m0 /= static_cast<unsigned>(pu);
  }
  const unsigned e = euler_phi(field->conductor()) / euler_phi(m0);
  const unsigned f = multiplicative_order(p, m0);
  std::mt19937_64 rng(0x1dea1 ^ (static_cast<unsigned long>(field->conductor()) << 32) ^ mpz_fdiv_ui(p.get_mpz_t(), 1u << 31));
  auto gens = fp::equal_degree_factors(fp::reduce(cyclotomic_polynomial(m0), p), f, p, rng);
  std::sort(gens.begin(), gens.end(), fp::canonical_less);
  std::vector<PrimeIdeal> out;
  for (auto& g : gens) out.emplace_back(field, p, f, e, std::move(g));
  return out;
}

}  // namespace

PrimeIdeal::PrimeIdeal(FieldPtr field, mpz_class p, unsigned f, unsigned e, fp::Poly gen)
    : field_(std::move(field)), p_(std::move(p)), f_(f), e_(e), gen_(std::move(gen)) {
  mpz_pow_ui(norm_.get_mpz_t(), p_.get_mpz_t(), f_);
  std::mt19937_64 rng(0xface ^ mpz_fdiv_ui(p_.get_mpz_t(), 1u << 31));
  CycloElem pi = find_uniformizer(field_, p_, f_, gen_, rng);
  CycloElem cof = CycloElem::one(field_);
  const auto conj = galois_conjugates(pi);
  for (size_t i = 1; i < conj.size(); ++i) cof *= conj[i];
  cofactor_ = std::make_shared<const CycloElem>(std::move(cof));
}

bool PrimeIdeal::contains(const CycloElem& beta) const {
  return fp::rem(reduce_elem(beta, p_), gen_, p_).empty();
}

CycloElem PrimeIdeal::divide_once(const CycloElem& beta) const {
  // beta * cofactor / p^f loses exactly one factor of P and stays integral.
  return beta * *cofactor_ * mpq_class(1, norm_);
}

std::string PrimeIdeal::serialize() const {
  std::ostringstream os;
  os << p_.get_str() << ':' << f_ << ':' << e_ << ':';
  for (size_t i = 0; i < gen_.size(); ++i) os << (i ? " " : "") << gen_[i].get_str();
  return os.str();
}

bool PrimeIdeal::operator==(const PrimeIdeal& o) const {
  return field_->conductor() == o.field_->conductor() && p_ == o.p_ && gen_ == o.gen_;
}

bool PrimeIdeal::operator<(const PrimeIdeal& o) const {
  if (p_ != o.p_) return p_ < o.p_;
  return fp::canonical_less(gen_, o.gen_);
}

const std::vector<PrimeIdeal>& split_prime(const FieldPtr& field, const mpz_class& p) {
  using Key = std::pair<unsigned, mpz_class>;
  static std::mutex mu;
  static std::map<Key, std::vector<PrimeIdeal>> cache;
  Key key{field->conductor(), p};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto ideals = compute_split(field, p);
  std::lock_guard lock(mu);
  return cache.try_emplace(std::move(key), std::move(ideals)).first->second;
}

unsigned valuation(const CycloElem& beta, const PrimeIdeal& ideal) {
  if (beta.is_zero()) throw ZeroElement("valuation of zero");
  if (!beta.is_integral()) throw NonIntegral("valuation of a non-integral element");
  if (beta.conductor() != ideal.field()->conductor()) throw BadInput("valuation: field mismatch");
  unsigned v = 0;
  CycloElem cur = beta;
  while (ideal.contains(cur)) {
    cur = ideal.divide_once(cur);
    ++v;
  }
  return v;
}

std::string IdealFactorization::serialize() const {
  if (factors.empty()) return "1";
  std::string out;
  for (const auto& [ideal, v] : factors) {
    if (!out.empty()) out += " * ";
    out += "(" + ideal.serialize() + ")^" + std::to_string(v);
  }
  return out;
}

IdealFactorization factor_principal(const CycloElem& beta, const Deadline& deadline) {
  if (beta.is_zero()) throw ZeroElement("factor_principal: zero element");
  if (!beta.is_integral()) throw NonIntegral("factor_principal: non-integral element");
  IdealFactorization res;
  res.element = beta;
  res.norm_abs = abs(norm(beta).get_num());
  if (res.norm_abs == 1) return res;
  IntFactorization ints = factor_integer(res.norm_abs, deadline);
  res.unfactored = ints.unfactored;
  res.certified = ints.certified;
  for (const auto& [p, k] : ints.factors) {
    unsigned long seen = 0;
    for (const auto& ideal : split_prime(beta.field(), p)) {
      const unsigned v = valuation(beta, ideal);
      if (v == 0) continue;
      res.factors.emplace_back(ideal, v);
      seen += static_cast<unsigned long>(ideal.residue_degree()) * v;
    }
    if (seen != k) throw std::logic_error("valuations disagree with the norm at p = " + p.get_str());
  }
  return res;
}

GreatestPrime greatest_prime_and_radical(const IdealFactorization& fact) {
  if (!fact.complete())
    throw IncompleteFactorization("unfactored part " + fact.unfactored.get_str() + " remains");
  GreatestPrime g{1, 1};
  std::vector<mpz_class> norms;
  for (const auto& [ideal, v] : fact.factors) {
    g.largest_norm = std::max(g.largest_norm, ideal.norm());
    norms.push_back(ideal.norm());
  }
  std::sort(norms.begin(), norms.end());
  norms.erase(std::unique(norms.begin(), norms.end()), norms.end());
  for (const auto& n : norms) g.radical_norm *= n;
  return g;
}

SPartResult s_part(const IdealFactorization& fact, const std::vector<PrimeIdeal>& S) {
  if (S.empty()) throw EmptyS("S must contain at least one prime ideal");
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = i + 1; j < S.size(); ++j)
      if (S[i] == S[j]) throw BadInput("S contains a repeated prime ideal");
  SPartResult r{1, 0, {}};
  for (const auto& ideal : S) {
    if (!fact.complete() && mpz_divisible_p(fact.unfactored.get_mpz_t(), ideal.p().get_mpz_t()))
      throw IncompleteFactorization("S prime " + ideal.p().get_str() + " divides the unfactored part");
    unsigned v = 0;
    for (const auto& [q, e] : fact.factors)
      if (q == ideal) v = e;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), ideal.norm().get_mpz_t(), v);
    r.s_part_norm *= pw;
    r.exponents.emplace_back(ideal, v);
  }
  r.cofactor_norm = fact.norm_abs / r.s_part_norm;
  return r;
}

}  // namespace cyclorec
