#include <catch2/catch_amalgamated.hpp>

#include "arbordet/polynomial.hpp"
#include "test_util.hpp"

using namespace arbordet;
using testutil::v;

TEST_CASE("like monomials combine and order is canonical") {
  Polynomial a = v(1, 1) * v(2, 2) + v(2, 2) * v(1, 1);
  Polynomial b = Polynomial(2) * v(1, 1) * v(2, 2);
  CHECK(a == b);
  CHECK(a.str() == "2*v_1_1*v_2_2");

  Polynomial prod = (v(1, 2) + v(2, 2)) * (v(1, 3) + v(3, 3));
  Polynomial expanded = v(1, 2) * v(1, 3) + v(1, 2) * v(3, 3) +
                        v(2, 2) * v(1, 3) + v(2, 2) * v(3, 3);
  CHECK(prod == expanded);
  CHECK(prod.term_count() == 4);
}

TEST_CASE("normalization is idempotent and zero terms vanish") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Polynomial p = testutil::random_polynomial(rng);
    std::vector<std::pair<Rational, Monomial>> raw;
    for (const auto& [m, c] : p.terms()) raw.emplace_back(c, m);
    CHECK(Polynomial::from_terms(raw) == p);
  }
  Polynomial z = v(1, 1) - v(1, 1);
  CHECK(z.is_zero());
  CHECK(z.term_count() == 0);
  CHECK(z.str() == "0");
}

TEST_CASE("equality is structural on canonical forms") {
  Polynomial p = v(1, 1) + v(2, 2);
  CHECK(p == p);
  CHECK(v(1, 1) + v(2, 2) == v(2, 2) + v(1, 1));
  CHECK(v(1, 1) != v(2, 2));
}

TEST_CASE("evaluation substitutes exactly") {
  Polynomial p = v(1, 1) * v(2, 2);
  std::map<std::string, Rational> a{{"v_1_1", Rational(2)}, {"v_2_2", Rational(3)}};
  CHECK(p.eval(a) == 6);

  Polynomial q = Polynomial(Rational(1, 3)) * v(1, 1) - Polynomial(Rational(1, 2));
  std::map<std::string, Rational> b{{"v_1_1", Rational(9, 2)}};
  CHECK(q.eval(b) == Rational(1));

  std::map<std::string, Rational> missing{{"v_1_1", Rational(1)}};
  CHECK_THROWS_WITH(p.eval(missing),
                    Catch::Matchers::ContainsSubstring("v_2_2"));
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    Polynomial a = testutil::random_polynomial(rng);
    Polynomial b = testutil::random_polynomial(rng);
    std::map<std::string, Rational> assign;
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    for (char c = 'a'; c <= 'd'; ++c)
      assign[std::string(1, c)] = Rational(num(rng), den(rng));
    CHECK((a + b).eval(assign) == a.eval(assign) + b.eval(assign));
    CHECK((a * b).eval(assign) == a.eval(assign) * b.eval(assign));
  }
}

TEST_CASE("printing then parsing is the identity") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 80; ++t) {
    Polynomial p = testutil::random_polynomial(rng);
    CHECK(Polynomial::parse(p.str()) == p);
  }
  // the documented canonical text form
  Polynomial p = Polynomial(2) * v(1, 1) * v(2, 2) -
                 Polynomial(Rational(1, 3)) * v(3, 3);
  CHECK(p.str() == "2*v_1_1*v_2_2 - 1/3*v_3_3");
  CHECK(Polynomial::parse("2*v_1_1*v_2_2 - 1/3*v_3_3") == p);
  CHECK(Polynomial::parse("x^2") == Polynomial::symbol("x") * Polynomial::symbol("x"));
  CHECK(Polynomial::parse("x*x").str() == "x^2");
  CHECK(Polynomial::parse("-x + 3") == Polynomial(3) - Polynomial::symbol("x"));
}

TEST_CASE("parse rejects malformed text") {
  CHECK_THROWS_AS(Polynomial::parse(""), ParseError);
  CHECK_THROWS_AS(Polynomial::parse("1 +"), ParseError);
  CHECK_THROWS_AS(Polynomial::parse("x*"), ParseError);
  CHECK_THROWS_AS(Polynomial::parse("2x"), ParseError);  // implicit product
  CHECK_THROWS_AS(Polynomial::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Polynomial::parse("x y"), ParseError);
}

TEST_CASE("constant handling") {
  CHECK(Polynomial(0).is_zero());
  CHECK(Polynomial(1).is_one());
  CHECK(Polynomial(Rational(5, 10)).constant_value() == Rational(1, 2));
  CHECK_FALSE(v(1, 1).is_constant());
  CHECK_THROWS_AS(v(1, 1).constant_value(), DomainError);
}

TEST_CASE("exact division inverts multiplication") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    Polynomial a = testutil::random_polynomial(rng);
    Polynomial b = testutil::random_polynomial(rng);
    if (b.is_zero()) continue;
    auto q = exact_div(a * b, b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
  }
  auto fail = exact_div(Polynomial::symbol("x") + Polynomial(1),
                        Polynomial::symbol("y"));
  CHECK_FALSE(fail.has_value());
  CHECK_THROWS_AS(exact_div(Polynomial(1), Polynomial{}), DomainError);
}

TEST_CASE("weight symbol names round-trip") {
  WeightSymbol s = weight_symbol(1, 2);
  CHECK(s.name == "v_1_2");
  WeightSymbol u = weight_symbol(2, 3, 2, 4);
  CHECK(u.name == "u_2_3_2");

  auto ps = parse_weight_symbol("v_1_2");
  REQUIRE(ps.has_value());
  CHECK(ps->i == 1);
  CHECK(ps->j == 2);
  CHECK(ps->term_index == 1);

  auto pu = parse_weight_symbol("u_2_3_2");
  REQUIRE(pu.has_value());
  CHECK(pu->i == 2);
  CHECK(pu->j == 3);
  CHECK(pu->term_index == 2);

  CHECK_FALSE(parse_weight_symbol("w_1").has_value());
  CHECK_FALSE(parse_weight_symbol("v_1").has_value());
  CHECK_FALSE(parse_weight_symbol("u_1_2_0").has_value());
  CHECK_THROWS_AS(weight_symbol(-1, 0), DomainError);
  CHECK_THROWS_AS(weight_symbol(1, 1, 3, 2), DomainError);
}

TEST_CASE("monomial order sorts the constant first and powers before mixed") {
  Polynomial p = Polynomial::symbol("x") * Polynomial::symbol("y") +
                 Polynomial::symbol("x") * Polynomial::symbol("x") +
                 Polynomial::symbol("x") + Polynomial(7);
  CHECK(p.str() == "7 + x + x^2 + x*y");
}
