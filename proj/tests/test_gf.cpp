#include <catch2/catch_amalgamated.hpp>

#include "pgcode/gf.hpp"

#include "oracles.hpp"

using pgcode::Field;
using pgcode::precondition_error;

TEST_CASE("prime field arithmetic matches integers mod p") {
  Field F(5, 1);
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = 0; b < 5; ++b) {
      REQUIRE(F.add(a, b) == (a + b) % 5);
      REQUIRE(F.mul(a, b) == oracle::pmul(a, b, 5));
      REQUIRE(F.sub(a, b) == (a + 5 - b) % 5);
      if (b) REQUIRE(F.div(a, b) == oracle::pmul(a, oracle::pinv(b, 5), 5));
    }
  for (std::uint32_t a = 1; a < 5; ++a) REQUIRE(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("GF(4) uses t^2+t+1 and matches carry-less arithmetic") {
  Field F(2, 2);
  REQUIRE(F.q() == 4);
  // modulus integer code 2^2 + 2 + 1 = 7
  std::uint32_t code = 0;
  const auto mod = F.modulus();
  for (std::size_t i = 0; i < mod.size(); ++i) code += mod[i] << i;
  REQUIRE(code == 7);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) {
      REQUIRE(F.add(a, b) == (a ^ b));
      REQUIRE(F.mul(a, b) == oracle::gf4_mul(a, b));
    }
  // trace to F_2: x + x^2
  REQUIRE(F.trace_to_prime(0) == 0);
  REQUIRE(F.trace_to_prime(1) == 0);
  REQUIRE(F.trace_to_prime(2) == 1);
  REQUIRE(F.trace_to_prime(3) == 1);
  for (std::uint32_t a = 0; a < 4; ++a) REQUIRE(F.frobenius(a) == F.mul(a, a));
}

TEST_CASE("GF(8) uses t^3+t+1, inverses and Frobenius behave") {
  Field F(2, 3);
  std::uint32_t code = 0;
  const auto mod = F.modulus();
  for (std::size_t i = 0; i < mod.size(); ++i) code += mod[i] << i;
  REQUIRE(code == 11);
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b) REQUIRE(F.mul(a, b) == oracle::gf8_mul(a, b));
  for (std::uint32_t a = 1; a < 8; ++a) REQUIRE(F.mul(a, F.inv(a)) == 1);
  for (std::uint32_t a = 0; a < 8; ++a)
    REQUIRE(F.frobenius(F.frobenius(F.frobenius(a))) == a);
  // generator has multiplicative order 7
  const std::uint32_t g = F.generator();
  std::uint32_t x = g;
  unsigned order = 1;
  while (x != 1) {
    x = F.mul(x, g);
    ++order;
  }
  REQUIRE(order == 7);
  // trace x + x^2 + x^4 lands in {0,1}, kernel has 4 elements
  unsigned zeros = 0;
  for (std::uint32_t a = 0; a < 8; ++a) {
    REQUIRE(F.trace_to_prime(a) <= 1);
    zeros += F.trace_to_prime(a) == 0;
  }
  REQUIRE(zeros == 4);
}

TEST_CASE("GF(9) uses t^2+1 and matches the a+bt oracle") {
  Field F(3, 2);
  std::uint32_t code = 0;
  const auto mod = F.modulus();
  for (std::size_t i = 0; i < mod.size(); ++i) code += mod[i] * oracle::ppow(3, i, 1000);
  REQUIRE(code == 10);
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b) {
      REQUIRE(F.mul(a, b) == oracle::gf9_mul(a, b));
      REQUIRE(F.add(a, b) == oracle::gf9_add(a, b));
    }
  for (std::uint32_t a = 0; a < 9; ++a) {
    REQUIRE(F.pow(a, 9) == a);  // Frobenius squared is the identity
    const std::uint32_t tr = F.trace_to_prime(a);
    REQUIRE(tr <= 2);
    REQUIRE(F.add(a, F.frobenius(a)) == tr);
  }
  unsigned zeros = 0;
  for (std::uint32_t a = 0; a < 9; ++a) zeros += F.trace_to_prime(a) == 0;
  REQUIRE(zeros == 3);
}

TEST_CASE("field constructor preconditions") {
  REQUIRE_THROWS_AS(Field(4, 1), precondition_error);   // p not prime
  REQUIRE_THROWS_AS(Field(6, 1), precondition_error);
  REQUIRE_THROWS_AS(Field(2, 0), precondition_error);   // h < 1
  REQUIRE_THROWS_AS(Field(2, 21), precondition_error);  // p^h over the 2^20 cap
  Field F(2, 2);
  REQUIRE_THROWS_AS(F.inv(0), precondition_error);
  REQUIRE(F.pow(0, 0) == 1);
  REQUIRE(F.pow(0, 5) == 0);
  REQUIRE_THROWS_AS(F.pow(0, -1), precondition_error);
}

TEST_CASE("subfield embeddings preserve arithmetic") {
  auto F2 = std::make_shared<Field>(2, 1);
  auto F4 = std::make_shared<Field>(2, 2);
  auto F8 = std::make_shared<Field>(2, 3);
  auto F3 = std::make_shared<Field>(3, 1);
  auto F9 = std::make_shared<Field>(3, 2);

  pgcode::Embedding e29(F3, F9);
  REQUIRE(e29(0) == 0);
  REQUIRE(e29(1) == 1);
  for (std::uint32_t a = 0; a < 3; ++a)
    for (std::uint32_t b = 0; b < 3; ++b) {
      REQUIRE(e29(F3->add(a, b)) == F9->add(e29(a), e29(b)));
      REQUIRE(e29(F3->mul(a, b)) == F9->mul(e29(a), e29(b)));
    }

  pgcode::Embedding e28(F2, F8);
  REQUIRE(e28(1) == 1);

  // F_4 is not a subfield of F_8
  REQUIRE_THROWS_AS(pgcode::Embedding(F4, F8), precondition_error);
  // characteristic mismatch
  REQUIRE_THROWS_AS(pgcode::Embedding(F2, F9), precondition_error);
}
