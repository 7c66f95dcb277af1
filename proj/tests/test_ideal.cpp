#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cyclorec/embedding.hpp"
#include "cyclorec/errors.hpp"
#include "cyclorec/ideal.hpp"
#include "cyclorec/intfactor.hpp"

using namespace cyclorec;

namespace {

CycloElem elem(unsigned m, std::vector<mpq_class> c) { return CycloElem(make_field(m), std::move(c)); }

CycloElem random_integral(const FieldPtr& f, std::mt19937& rng, int spread = 4) {
  std::uniform_int_distribution<int> coef(-spread, spread);
  std::vector<mpq_class> c(f->degree());
  for (auto& x : c) x = coef(rng);
  return CycloElem(f, c);
}

bool naive_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Generator of a principal prime ideal found by exhaustive search of small elements.
CycloElem small_generator(const PrimeIdeal& P) {
  const auto& field = P.field();
  const unsigned D = field->degree();
  if (P.residue_degree() == D) return CycloElem::rational(field, mpq_class(P.p()));
  std::vector<int> c(D, -3);
  for (;;) {
    std::vector<mpq_class> q(c.begin(), c.end());
    CycloElem g(field, q);
    if (!g.is_zero() && abs(norm(g)) == P.norm() && P.contains(g)) return g;
    unsigned i = 0;
    while (i < D && c[i] == 3) c[i++] = -3;
    REQUIRE(i < D);
    ++c[i];
  }
}

// v_P(beta) as the largest k with beta / g^k integral.
unsigned valuation_by_division(CycloElem beta, const CycloElem& g) {
  unsigned v = 0;
  for (;;) {
    CycloElem next = beta / g;
    if (!next.is_integral()) return v;
    beta = next;
    ++v;
  }
}

}  // namespace

TEST_CASE("primality agrees with trial division below 20000") {
  for (unsigned long n = 0; n < 20000; ++n) CHECK((primality(mpz_class(n)) == Primality::Prime) == naive_prime(n));
}

TEST_CASE("primality on named hard cases") {
  CHECK(primality(mpz_class("3317044064679887385961981")) == Primality::Composite);
  CHECK(primality(mpz_class("3215031751")) == Primality::Composite);  // strong pseudoprime to 2, 3, 5, 7
  CHECK(primality(mpz_class("561")) == Primality::Composite);
  CHECK(primality(mpz_class("170141183460469231731687303715884105727")) == Primality::Prime);  // 2^127 - 1
  CHECK(primality(mpz_class("618970019642690137449562111")) == Primality::Prime);               // 2^89 - 1
  CHECK(primality(mpz_class("340282366920938463463374607431768211457")) == Primality::Composite);  // F_7
}

TEST_CASE("integer factorization recomposes and lists primes") {
  std::mt19937_64 rng(7);
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(11);
  for (int i = 0; i < 60; ++i) {
    mpz_class n = gen.get_z_bits(20 + 2 * i) + 1;
    auto f = factor_integer(n);
    REQUIRE(f.complete());
    mpz_class prod = 1;
    mpz_class last = 0;
    for (auto& [p, e] : f.factors) {
      CHECK(p > last);
      last = p;
      CHECK(mpz_probab_prime_p(p.get_mpz_t(), 30) > 0);
      mpz_class pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      prod *= pe;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("factorization of semiprimes beyond trial division") {
  mpz_class p("1000000000039"), q("99999999977"), r("1000003");
  auto f = factor_integer(p * q * q * r);
  REQUIRE(f.complete());
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].first == r);
  CHECK(f.factors[1].first == q);
  CHECK(f.factors[1].second == 2);
  CHECK(f.factors[2].first == p);
  CHECK(f.certified);
}

TEST_CASE("balanced 20-digit semiprime needs the elliptic-curve stage") {
  mpz_class p("10000000000000000051"), q("30000000000000000041");
  auto f = factor_integer(p * q);
  REQUIRE(f.complete());
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == p);
  CHECK(f.factors[1].first == q);
}

TEST_CASE("expired budget leaves the composite part flagged") {
  mpz_class p("1000000000000000000117"), q("1000000000000000000000007");
  auto f = factor_integer(p * q * 12, std::chrono::steady_clock::now());
  CHECK_FALSE(f.complete());
  CHECK(f.unfactored == p * q);
  CHECK(f.factors.size() == 2);
}

TEST_CASE("split_prime on Q(i)") {
  auto K = make_field(4);
  auto five = split_prime(K, 5);
  REQUIRE(five.size() == 2);
  for (auto& P : five) {
    CHECK(P.residue_degree() == 1);
    CHECK(P.ramification() == 1);
    CHECK(P.norm() == 5);
  }
  CHECK(five[0].generator() == fp::Poly{2, 1});  // X + 2 = X - 3
  CHECK(five[1].generator() == fp::Poly{3, 1});  // X - 2
  auto three = split_prime(K, 3);
  REQUIRE(three.size() == 1);
  CHECK(three[0].residue_degree() == 2);
  CHECK(three[0].norm() == 9);
  auto two = split_prime(K, 2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].ramification() == 2);
  CHECK(two[0].residue_degree() == 1);
  CHECK(two[0].serialize() == "2:1:2:1 1");
  CHECK_THROWS_AS(split_prime(K, 15), BadInput);
}

TEST_CASE("split_prime degree identity and generator product") {
  for (unsigned m : {1u, 2u, 3u, 5u, 7u, 8u, 9u, 12u, 15u, 16u, 20u, 21u, 24u, 36u}) {
    auto K = make_field(m);
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 29ul, 31ul, 1000003ul}) {
      const auto& ideals = split_prime(K, p);
      unsigned total = 0;
      fp::Poly prod{1};
      for (auto& P : ideals) {
        total += P.ramification() * P.residue_degree();
        CHECK(fp::degree(P.generator()) == static_cast<long>(P.residue_degree()));
        for (unsigned k = 0; k < P.ramification(); ++k) prod = fp::mul(prod, P.generator(), p);
        if (m % p != 0) {
          unsigned long x = p % m, f = 1;
          while (m > 2 && x != 1) x = x * p % m, ++f;
          CHECK(P.residue_degree() == (m > 2 ? f : 1));
          CHECK(P.ramification() == 1);
        }
      }
      CHECK(total == K->degree());
      CHECK(prod == fp::reduce(K->cyclotomic_poly(), p));
    }
  }
}

TEST_CASE("degree-one generators are brute-force roots") {
  auto K = make_field(15);
  for (unsigned long p : {31ul, 61ul, 151ul}) {
    std::vector<unsigned long> roots;
    for (unsigned long r = 0; r < p; ++r) {
      mpz_class v = 0, x = 1;
      for (auto& c : K->cyclotomic_poly()) v += c * x, x *= r;
      if (v % p == 0) roots.push_back(r);
    }
    const auto& ideals = split_prime(K, p);
    REQUIRE(ideals.size() == roots.size());
    for (size_t i = 0; i < ideals.size(); ++i) {
      mpz_class r = (p - ideals[i].generator()[0]) % p;
      CHECK(std::find(roots.begin(), roots.end(), r.get_ui()) != roots.end());
    }
  }
}

TEST_CASE("valuation examples") {
  auto K = make_field(4);
  const auto& two = split_prime(K, 2)[0];
  CHECK(valuation(elem(4, {8, 8}), two) == 7);
  CHECK(valuation(elem(4, {3}), two) == 0);
  for (auto& P : split_prime(K, 5)) CHECK(valuation(elem(4, {5}), P) == 1);
  CHECK_THROWS_AS(valuation(elem(4, {0}), two), ZeroElement);
  CHECK_THROWS_AS(valuation(elem(4, {mpq_class(1, 2)}), two), NonIntegral);
}

TEST_CASE("valuation agrees with division by a principal generator") {
  std::mt19937 rng(3);
  for (unsigned m : {3u, 4u, 5u, 8u}) {
    auto K = make_field(m);
    for (unsigned long p : {2ul, 3ul, 5ul, 11ul, 13ul}) {
      for (const auto& P : split_prime(K, p)) {
        if (P.norm() > 2000) continue;
        const CycloElem g = small_generator(P);
        for (int t = 0; t < 12; ++t) {
          CycloElem beta = random_integral(K, rng) * g.pow(t % 4);
          if (beta.is_zero()) continue;
          CHECK(valuation(beta, P) == valuation_by_division(beta, g));
        }
      }
    }
  }
}

TEST_CASE("factor_principal examples") {
  auto f72 = factor_principal(elem(1, {72}));
  REQUIRE(f72.factors.size() == 2);
  CHECK(f72.factors[0].first.p() == 2);
  CHECK(f72.factors[0].second == 3);
  CHECK(f72.factors[1].first.p() == 3);
  CHECK(f72.factors[1].second == 2);
  CHECK(f72.norm_abs == 72);
  CHECK(f72.serialize() == "(2:1:1:1 1)^3 * (3:1:1:2 1)^2");

  auto unit = factor_principal(CycloElem::zeta_power(make_field(5), 1));
  CHECK(unit.factors.empty());
  CHECK(unit.norm_abs == 1);
  CHECK(unit.serialize() == "1");

  auto g = factor_principal(elem(4, {8, 8}));
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0].second == 7);
  CHECK(g.norm_abs == 128);

  CHECK_THROWS_AS(factor_principal(elem(4, {0})), ZeroElement);
  CHECK_THROWS_AS(factor_principal(elem(4, {mpq_class(1, 3), 1})), NonIntegral);
}

TEST_CASE("greatest prime and radical") {
  auto a = greatest_prime_and_radical(factor_principal(elem(1, {72})));
  CHECK(a.largest_norm == 3);
  CHECK(a.radical_norm == 6);
  auto b = greatest_prime_and_radical(factor_principal(elem(4, {8, 8})));
  CHECK(b.largest_norm == 2);
  CHECK(b.radical_norm == 2);
  auto c = greatest_prime_and_radical(factor_principal(CycloElem::zeta_power(make_field(5), 2)));
  CHECK(c.largest_norm == 1);
  CHECK(c.radical_norm == 1);
  // Two primes of norm 5 above 5 share one radical factor of 5 each.
  auto d = greatest_prime_and_radical(factor_principal(elem(4, {5})));
  CHECK(d.radical_norm == 5);
  IdealFactorization partial = factor_principal(elem(1, {6}));
  partial.unfactored = 35;
  CHECK_THROWS_AS(greatest_prime_and_radical(partial), IncompleteFactorization);
}

TEST_CASE("s_part examples") {
  auto Q = make_field(1);
  auto f72 = factor_principal(elem(1, {72}));
  auto two = split_prime(Q, 2);
  auto r = s_part(f72, two);
  CHECK(r.s_part_norm == 8);
  CHECK(r.cofactor_norm == 9);
  auto r5 = s_part(f72, split_prime(Q, 5));
  CHECK(r5.s_part_norm == 1);
  CHECK(r5.cofactor_norm == 72);
  auto g = factor_principal(elem(4, {8, 8}));
  auto rg = s_part(g, split_prime(make_field(4), 2));
  CHECK(rg.s_part_norm == 128);
  CHECK(rg.cofactor_norm == 1);
  CHECK_THROWS_AS(s_part(f72, {}), EmptyS);
  CHECK_THROWS_AS(s_part(f72, {two[0], two[0]}), BadInput);
}

TEST_CASE("properties: recomposition, bridge, additivity, S-part multiplicativity") {
  std::mt19937 rng(19);
  for (unsigned m : {3u, 4u, 5u, 7u, 8u, 9u, 12u, 15u, 16u}) {
    auto K = make_field(m);
    for (int t = 0; t < 10; ++t) {
      CycloElem a = random_integral(K, rng), b = random_integral(K, rng);
      if (a.is_zero() || b.is_zero()) continue;
      auto fa = factor_principal(a), fb = factor_principal(b), fab = factor_principal(a * b);
      mpz_class prod = 1;
      for (auto& [P, v] : fab.factors) {
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), P.norm().get_mpz_t(), v);
        prod *= pw;
        CHECK(v == valuation(a, P) + valuation(b, P));
      }
      CHECK(prod == fab.norm_abs);
      CHECK(fab.norm_abs == abs(norm_by_resultant(a * b)));
      std::vector<PrimeIdeal> S;
      for (unsigned long p : {2ul, 3ul, 7ul})
        for (auto& P : split_prime(K, p)) S.push_back(P);
      CHECK(s_part(fab, S).s_part_norm == s_part(fa, S).s_part_norm * s_part(fb, S).s_part_norm);
      auto sp = s_part(fab, S);
      CHECK(sp.s_part_norm * sp.cofactor_norm == fab.norm_abs);
    }
  }
}
