#include <doctest.h>

#include <random>

#include "clonekit/errors.hpp"
#include "clonekit/named_relations.hpp"
#include "clonekit/operation.hpp"
#include "clonekit/relation.hpp"

using namespace clonekit;

TEST_CASE("tuple encoding is big-endian base k") {
  CHECK(encode_tuple(3, std::vector<Val>{0, 0}) == 0);
  CHECK(encode_tuple(3, std::vector<Val>{2, 2, 2}) == 26);
  CHECK(encode_tuple(3, std::vector<Val>{1, 0, 2}) == 11);
  CHECK_THROWS_AS(encode_tuple(3, std::vector<Val>{}), std::invalid_argument);
  CHECK_THROWS_AS(encode_tuple(3, std::vector<Val>{3}), std::invalid_argument);
}

TEST_CASE("decode inverts encode exhaustively up to arity 6") {
  for (int k : {2, 3})
    for (int arity = 1; arity <= 6; ++arity) {
      std::size_t space = pow_size(k, arity);
      for (std::size_t idx = 0; idx < space; ++idx) {
        auto t = decode_tuple(k, arity, idx);
        CHECK(encode_tuple(k, t) == idx);
      }
    }
}

TEST_CASE("operations validate their tables") {
  CHECK_THROWS_AS(Operation(3, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(Operation(3, 1, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Operation(3, 1, {0, 1, 3}), std::invalid_argument);
}

TEST_CASE("composition with projections is the identity") {
  // exhaustive at arities 1 and 2
  for (int arity : {1, 2}) {
    std::size_t width = pow_size(3, arity);
    std::size_t count = 1;
    for (std::size_t i = 0; i < width; ++i) count *= 3;
    std::vector<Operation> projs;
    for (int i = 0; i < arity; ++i) projs.push_back(Operation::projection(3, arity, i));
    for (std::size_t code = 0; code < count; ++code) {
      Operation f(3, arity, decode_tuple(3, static_cast<int>(width), code));
      CHECK(compose(f, projs) == f);
    }
  }
  // sampled at arity 3
  std::mt19937 rng(7);
  std::vector<Operation> projs3;
  for (int i = 0; i < 3; ++i) projs3.push_back(Operation::projection(3, 3, i));
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Val> table(27);
    for (Val& v : table) v = static_cast<Val>(rng() % 3);
    Operation f(3, 3, table);
    CHECK(compose(f, projs3) == f);
  }
}

TEST_CASE("composition examples") {
  Operation p1 = Operation::projection(3, 2, 0);
  Operation p2 = Operation::projection(3, 2, 1);
  std::mt19937 rng(11);
  std::vector<Val> t1(9), t2(9);
  for (Val& v : t1) v = static_cast<Val>(rng() % 3);
  for (Val& v : t2) v = static_cast<Val>(rng() % 3);
  Operation g(3, 2, t1), g2(3, 2, t2);
  CHECK(compose(p1, std::vector<Operation>{g, g2}) == g);

  Operation t3 = Operation::discriminator(3);
  CHECK(compose(t3, std::vector<Operation>{p1, p1, p2}) == p2);

  // unary 0->1, 1->0, 2->2 composed with itself fixes everything
  Operation swap01 = Operation::unary_map(3, {1, 0, 2});
  Operation twice = compose(swap01, std::vector<Operation>{swap01});
  CHECK(twice == Operation::unary_map(3, {0, 1, 2}));
}

TEST_CASE("discriminator values") {
  Operation t3 = Operation::discriminator(3);
  CHECK(t3(std::vector<Val>{1, 1, 2}) == 2);
  CHECK(t3(std::vector<Val>{0, 1, 2}) == 0);
  CHECK(t3(std::vector<Val>{2, 2, 2}) == 2);
}

TEST_CASE("range, kernel and essential arity") {
  Operation c0 = Operation::constant(3, 2, 0);
  CHECK(c0.range() == std::vector<Val>{0});
  CHECK(c0.kernel().size() == 1);
  CHECK(c0.essential_arity() == 0);

  Operation p1 = Operation::projection(3, 2, 0);
  CHECK(p1.range() == std::vector<Val>{0, 1, 2});
  CHECK(p1.essential_arity() == 1);

  Operation t3 = Operation::discriminator(3);
  CHECK(t3.range() == std::vector<Val>{0, 1, 2});
  // independent check: flipping one argument at a witness point changes the value
  CHECK(t3.essential_arity() == 3);
  CHECK(t3(std::vector<Val>{0, 1, 2}) != t3(std::vector<Val>{1, 1, 2}));
  CHECK(t3(std::vector<Val>{0, 0, 2}) != t3(std::vector<Val>{0, 1, 2}));
  CHECK(t3(std::vector<Val>{0, 0, 2}) != t3(std::vector<Val>{0, 0, 1}));
}

TEST_CASE("unary collapse of essentially unary operations") {
  // f(x, y) = u(y) with u = (2,0,1)
  std::vector<Val> table(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      table[static_cast<std::size_t>(3 * x + y)] = static_cast<Val>((y + 2) % 3);
  Operation f(3, 2, table);
  auto u = f.unary_collapse();
  REQUIRE(u.has_value());
  CHECK(*u == Operation::unary_map(3, {2, 0, 1}));
  CHECK_FALSE(Operation::discriminator(3).unary_collapse().has_value());
  auto c = Operation::constant(3, 2, 1).unary_collapse();
  REQUIRE(c.has_value());
  CHECK(*c == Operation::unary_map(3, {1, 1, 1}));
}

TEST_CASE("preservation basics") {
  Relation eps = eps3(Abc{0, 1, 2});
  for (int i = 0; i < 2; ++i) CHECK(preserves(Operation::projection(3, 2, i), eps));
  CHECK(preserves(Operation::discriminator(3), subset_relation(3, {0})));
  // unary 0->1, 1->0, 2->2 against the equivalence with blocks {0,1} | {2}
  CHECK(preserves(Operation::unary_map(3, {1, 0, 2}), eps));
  CHECK_THROWS_AS(preserves(Operation::discriminator(2), eps), std::invalid_argument);
}

TEST_CASE("preserves agrees with the naive direct-power check") {
  std::vector<Relation> t1 = {subset_relation(3, {0}), subset_relation(3, {0, 1}),
                              cycle3_graph(Abc{0, 1, 2}), eps3(Abc{0, 1, 2}),
                              leq3(Abc{0, 1, 2}),        gamma3(0),
                              lambda3(),                 iota3()};
  for (const Relation& rho : t1)
    for (const Operation& u : all_unary_maps(3))
      CHECK(preserves(u, rho) == preserves_naive(u, rho));
  for (const Relation& rho : t1)
    for (std::size_t code = 0; code < 19683; ++code) {
      Operation f(3, 2, decode_tuple(3, 9, code));
      bool fast = preserves(f, rho);
      bool naive = preserves_naive(f, rho);
      if (fast != naive) {
        CAPTURE(code);
        REQUIRE(fast == naive);
      }
    }
}

TEST_CASE("clone closure: composition of preserving operations preserves") {
  // 1000 random draws from the binary part of Pol eps
  Relation eps = eps3(Abc{0, 1, 2});
  std::vector<Operation> members;
  for (std::size_t code = 0; code < 19683; ++code) {
    Operation f(3, 2, decode_tuple(3, 9, code));
    if (preserves(f, eps)) members.push_back(std::move(f));
  }
  REQUIRE(members.size() > 10);
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const Operation& f = members[pick(rng)];
    std::vector<Operation> gs = {members[pick(rng)], members[pick(rng)]};
    CHECK(preserves(compose(f, gs), eps));
  }
}

TEST_CASE("restriction of operations and relations") {
  Relation eps = eps3(Abc{0, 1, 2});
  std::vector<Val> b01 = {0, 1};
  Relation r = restrict_relation(eps, b01);
  CHECK(r == Relation::full(2, 2));

  Relation ord = leq2(0, 1);
  Relation rb = restrict_relation(ord, b01);
  CHECK(rb == Relation::from_tuples(2, 2, {{0, 0}, {0, 1}, {1, 1}}));

  Operation t3 = Operation::discriminator(3);
  CHECK(restrict_operation(t3, b01) == Operation::discriminator(2));

  Operation c2 = Operation::constant(3, 1, 2);
  CHECK_THROWS_AS(restrict_operation(c2, b01), NotClosedError);
}

TEST_CASE("restriction commutes with preservation") {
  // if f preserves rho and f is closed on B then restrict(f) preserves restrict(rho)
  std::mt19937 rng(5);
  std::vector<Relation> rels = {eps3(Abc{0, 1, 2}), leq3(Abc{0, 1, 2}), gamma3(0),
                                table2_literal(24, Abc{0, 1, 2})};
  std::vector<std::vector<Val>> subsets = {{0, 1}, {0, 2}, {1, 2}};
  int tested = 0;
  for (int trial = 0; trial < 4000 && tested < 300; ++trial) {
    std::vector<Val> table(9);
    for (Val& v : table) v = static_cast<Val>(rng() % 3);
    Operation f(3, 2, table);
    for (const Relation& rho : rels) {
      if (!preserves(f, rho)) continue;
      for (const auto& b : subsets) {
        try {
          Operation fb = restrict_operation(f, b);
          CHECK(preserves(fb, restrict_relation(rho, b)));
          ++tested;
        } catch (const NotClosedError&) {
        }
      }
    }
  }
  CHECK(tested >= 100);
}

TEST_CASE("pullback of relations") {
  std::vector<Val> phi = {0, 0, 1};  // 0,1 -> 0; 2 -> 1
  Relation swap2 = Relation::from_tuples(2, 2, {{0, 1}, {1, 0}});
  Relation pulled = pullback_relation(swap2, phi, 3);
  CHECK(pulled == Relation::from_tuples(3, 2, {{0, 2}, {1, 2}, {2, 0}, {2, 1}}));

  Relation full2 = Relation::full(2, 2);
  CHECK(pullback_relation(full2, phi, 3) == Relation::full(3, 2));

  CHECK(phi_pullback_lambda2(Abc{0, 1, 2}).size() == 41);
}

TEST_CASE("operation string round trip") {
  Operation t3 = Operation::discriminator(3);
  CHECK(Operation::from_string(t3.to_string()) == t3);
  CHECK(t3.to_string().substr(0, 4) == "3:3:");
}
