#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cyclorec/embedding.hpp"
#include "cyclorec/errors.hpp"
#include "cyclorec/field.hpp"

using namespace cyclorec;

namespace {

CycloElem elem(unsigned m, std::vector<mpq_class> c) { return CycloElem(make_field(m), std::move(c)); }

CycloElem random_elem(const FieldPtr& f, std::mt19937& rng, bool rational_coords = false) {
  std::uniform_int_distribution<int> coef(-3, 3), den(1, 3);
  std::vector<mpq_class> c(f->degree());
  for (auto& x : c) {
    x = mpq_class(coef(rng), rational_coords ? den(rng) : 1);
    x.canonicalize();
  }
  return CycloElem(f, c);
}

int mobius(unsigned n) {
  int r = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

// Phi_m = prod_{d | m} (X^d - 1)^mu(m/d), computed without the recursive division.
ZPoly cyclotomic_by_mobius(unsigned m) {
  QPoly num{1}, den{1};
  for (unsigned d = 1; d <= m; ++d) {
    if (m % d) continue;
    QPoly xd(d + 1, mpq_class(0));
    xd[0] = -1;
    xd[d] = 1;
    int mu = mobius(m / d);
    if (mu == 1) num = qpoly::mul(num, xd);
    if (mu == -1) den = qpoly::mul(den, xd);
  }
  QPoly q = qpoly::quo(num, den);
  ZPoly out;
  for (auto& c : q) out.push_back(c.get_num());
  return out;
}

bool is_cyclotomic_poly(const ZPoly& p) {
  for (unsigned n = 1; n <= 400; ++n) {
    if (euler_phi(n) != p.size() - 1) continue;
    if (cyclotomic_polynomial(n) == p) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("make_field builds Phi_m, degree and torsion order") {
  auto f1 = make_field(1);
  CHECK(f1->degree() == 1);
  CHECK(f1->cyclotomic_poly() == ZPoly{-1, 1});
  CHECK(f1->torsion_order() == 2);

  auto f4 = make_field(4);
  CHECK(f4->degree() == 2);
  CHECK(f4->cyclotomic_poly() == ZPoly{1, 0, 1});
  CHECK(f4->torsion_order() == 4);

  auto f5 = make_field(5);
  CHECK(f5->degree() == 4);
  CHECK(f5->cyclotomic_poly() == ZPoly{1, 1, 1, 1, 1});
  CHECK(f5->torsion_order() == 10);

  for (unsigned m = 1; m <= 60; ++m) {
    auto f = make_field(m);
    CHECK(f->cyclotomic_poly() == cyclotomic_by_mobius(m));
    CHECK(f->galois_exponents().size() == f->degree());
    CHECK(f->galois_exponents().front() == 1);
  }
}

TEST_CASE("galois conjugates") {
  auto c = galois_conjugates(elem(4, {2, 1}));
  REQUIRE(c.size() == 2);
  CHECK(c[0] == elem(4, {2, 1}));
  CHECK(c[1] == elem(4, {2, -1}));

  for (const auto& x : galois_conjugates(CycloElem::rational(make_field(5), 3)))
    CHECK(x == CycloElem::rational(make_field(5), 3));

  auto f5 = make_field(5);
  auto z = CycloElem::zeta_power(f5, 1);
  auto cz = galois_conjugates(z);
  REQUIRE(cz.size() == 4);
  for (int a = 1; a <= 4; ++a) CHECK(cz[a - 1] == CycloElem::zeta_power(f5, a));
}

TEST_CASE("galois closure permutes the conjugate multiset") {
  std::mt19937 rng(7);
  for (unsigned m : {5u, 8u, 12u}) {
    auto f = make_field(m);
    for (int t = 0; t < 10; ++t) {
      auto b = random_elem(f, rng, true);
      auto base = galois_conjugates(b);
      std::multiset<CycloElem> ref(base.begin(), base.end());
      for (unsigned a : f->galois_exponents()) {
        std::multiset<CycloElem> img;
        for (const auto& x : base) img.insert(x.galois(a));
        CHECK(img == ref);
      }
    }
  }
}

TEST_CASE("norm examples") {
  CHECK(norm(elem(4, {8, 8})) == 128);
  CHECK(norm(elem(5, {1, 1, 0, 0})) == 1);
  CHECK(norm(CycloElem::zero(make_field(7))) == 0);
}

TEST_CASE("ring laws, norm multiplicativity and the resultant route") {
  std::mt19937 rng(2024);
  for (unsigned m : {1u, 3u, 4u, 5u, 8u, 12u}) {
    auto f = make_field(m);
    for (int t = 0; t < 200; ++t) {
      auto a = random_elem(f, rng, t % 3 == 0), b = random_elem(f, rng), c = random_elem(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(norm(a * b) == norm(a) * norm(b));
      CHECK(norm(a) == norm_by_resultant(a));
      if (!a.is_zero()) CHECK(a * a.inverse() == CycloElem::one(f));
    }
  }
}

TEST_CASE("house") {
  auto two = CycloElem::rational(make_field(1), 2);
  auto h = house(two, 64);
  CHECK(h.contains(2));
  CHECK(h.rad() < std::ldexp(1.0, -62));

  auto z8 = CycloElem::zeta_power(make_field(8), 1);
  CHECK(house(z8, 64).contains(1));

  auto g = house(elem(5, {1, 1, 0, 0}), 128);
  CHECK(g.mid() == doctest::Approx(2 * std::cos(M_PI / 5)).epsilon(1e-15));
  CHECK(g.mid() == doctest::Approx(1.6180339887).epsilon(1e-10));
  CHECK(house(elem(5, {1, 1, 0, 0}), 256).rad() < g.rad());

  std::mt19937 rng(11);
  auto f = make_field(12);
  for (int t = 0; t < 40; ++t) {
    auto a = random_elem(f, rng), b = random_elem(f, rng);
    CHECK(house(a * b, 96).possibly_less_equal(house(a, 96) * house(b, 96)));
  }
  for (long j = 0; j < 12; ++j) CHECK(house(CycloElem::zeta_power(f, j), 96).contains(1));
}

TEST_CASE("minimal polynomials") {
  auto mp = min_poly(CycloElem::zeta_power(make_field(4), 1));
  CHECK(mp.coeffs == ZPoly{1, 0, 1});
  CHECK(mp.leading() == 1);

  mp = min_poly(elem(5, {1, 1, 0, 0}));
  CHECK(mp.coeffs == ZPoly{1, -2, 4, -3, 1});

  mp = min_poly(CycloElem::rational(make_field(1), mpq_class(1, 2)));
  CHECK(mp.coeffs == ZPoly{-1, 2});
  CHECK(mp.leading() == 2);

  // sqrt(2) = zeta_8 + zeta_8^7 sits in Q(zeta_8) with degree 2.
  auto f8 = make_field(8);
  auto s2 = CycloElem::zeta_power(f8, 1) + CycloElem::zeta_power(f8, 7);
  CHECK(min_poly(s2).coeffs == ZPoly{-2, 0, 1});
}

TEST_CASE("heights") {
  auto hs = heights(CycloElem::rational(make_field(1), 2), 128);
  CHECK(hs.H.contains(2));
  CHECK(hs.h.mid() == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  for (unsigned m : {1u, 3u, 7u, 12u}) {
    auto z = heights(CycloElem::zeta_power(make_field(m), 1), 128);
    CHECK(z.H.contains(1));
    CHECK(z.h.contains(0));
  }

  const double phi = (1 + std::sqrt(5.0)) / 2;
  auto g = heights(elem(5, {1, 1, 0, 0}), 128);
  CHECK(g.H.mid() == doctest::Approx(phi * phi).epsilon(1e-14));
  CHECK(g.h.mid() == doctest::Approx(std::log(phi) / 2).epsilon(1e-14));
  CHECK(g.h.mid() == doctest::Approx(0.2406).epsilon(1e-4));

  CHECK_THROWS_AS(heights(CycloElem::zero(make_field(3)), 64), ZeroElement);
}

TEST_CASE("height laws: powers and torsion twists") {
  std::mt19937 rng(5);
  for (unsigned m : {4u, 5u, 12u}) {
    auto f = make_field(m);
    for (int t = 0; t < 6; ++t) {
      auto b = random_elem(f, rng, true);
      if (b.is_zero()) continue;
      auto hb = heights(b, 160).h;
      for (unsigned k = 1; k <= 5; ++k) {
        auto hk = heights(b.pow(k), 160).h;
        CHECK(hk.overlaps(RealBall::exact(mpq_class(k), 160) * hb));
      }
      for (long j = 1; j < static_cast<long>(m); ++j)
        CHECK(heights(CycloElem::zeta_power(f, j) * b, 160).h.overlaps(hb));
    }
  }
}

TEST_CASE("Kronecker torsion test") {
  CHECK(is_root_of_unity(-CycloElem::zeta_power(make_field(7), 3)));
  CHECK(is_root_of_unity(elem(3, {1, 1})));
  CHECK_FALSE(is_root_of_unity(elem(5, {1, 1, 0, 0})));
  CHECK_FALSE(is_root_of_unity(CycloElem::zero(make_field(5))));

  std::mt19937 rng(99);
  for (unsigned m : {3u, 4u, 5u, 8u, 12u}) {
    auto f = make_field(m);
    for (long j = 0; j < static_cast<long>(m); ++j) {
      for (int s : {1, -1}) {
        auto u = CycloElem::zeta_power(f, j) * mpq_class(s);
        CHECK(is_root_of_unity(u));
        CHECK(is_cyclotomic_poly(min_poly(u).coeffs));
      }
    }
  }
  auto f = make_field(12);
  std::uniform_int_distribution<int> coef(-1, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<mpq_class> c(f->degree());
    for (auto& x : c) x = coef(rng);
    CycloElem b(f, c);
    if (b.is_zero()) continue;
    CHECK(is_root_of_unity(b) == is_cyclotomic_poly(min_poly(b).coeffs));
  }
}

TEST_CASE("abs_compare") {
  CHECK(abs_compare(elem(4, {3, 1}), elem(4, {1, 3})) == Ordering::Equal);
  CHECK(abs_compare(elem(4, {3, 1}), elem(4, {1, 1})) == Ordering::Greater);
  CHECK(abs_compare(elem(4, {1, 1}), elem(4, {3, 1})) == Ordering::Less);
  auto f7 = make_field(7);
  CHECK(abs_compare(CycloElem::zeta_power(f7, 1), CycloElem::one(f7)) == Ordering::Equal);

  std::mt19937 rng(3);
  auto f = make_field(12);
  for (int t = 0; t < 100; ++t) {
    auto a = random_elem(f, rng), b = random_elem(f, rng);
    auto ord = abs_compare(a, b);
    double da = complex_value(a, 128).abs().mid(), db = complex_value(b, 128).abs().mid();
    if (ord == Ordering::Greater) CHECK(da > db);
    if (ord == Ordering::Less) CHECK(da < db);
    if (ord == Ordering::Equal) CHECK(da == doctest::Approx(db).epsilon(1e-25));
    // antisymmetry
    auto rev = abs_compare(b, a);
    CHECK((ord == Ordering::Equal) == (rev == Ordering::Equal));
  }
}

TEST_CASE("serialization") {
  auto b = elem(5, {mpq_class(1, 2), -3, 0, 7});
  CHECK(b.serialize() == "5; 1/2, -3, 0, 7");
  CHECK(CycloElem::parse(b.serialize()) == b);
  CHECK_THROWS_AS(CycloElem::parse("5; 1, 2"), ParseError);
  CHECK(parse_rational("0.25") == mpq_class(1, 4));
  CHECK(parse_rational("-3/6") == mpq_class(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("roots of unity by angle and embeddings between fields") {
  auto f3 = make_field(3);  // torsion order 6
  auto w = CycloElem::root_of_unity(f3, 1, 6);
  CHECK(w.pow(6) == CycloElem::one(f3));
  CHECK(w.pow(3) == -CycloElem::one(f3));
  auto v = complex_value(w, 64);
  CHECK(v.center_re() == doctest::Approx(0.5));
  CHECK(v.center_im() == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK_THROWS_AS(CycloElem::root_of_unity(f3, 1, 4), UniverseTooSmall);

  auto f12 = make_field(12);
  auto z4 = CycloElem::zeta_power(make_field(4), 1).embed(f12);
  CHECK(z4 == CycloElem::zeta_power(f12, 3));
  auto z3 = CycloElem::zeta_power(f3, 1).embed(f12);
  CHECK(z3 == CycloElem::zeta_power(f12, 4));
}
