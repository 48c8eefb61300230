#include <doctest.h>

#include <algorithm>
#include <set>

#include "clonekit/clone.hpp"
#include "clonekit/errors.hpp"
#include "clonekit/named_relations.hpp"

using namespace clonekit;

namespace {
const Abc kStd{0, 1, 2};

std::vector<Operation> all_binary_ops() {
  std::vector<Operation> out;
  out.reserve(19683);
  for (std::size_t code = 0; code < 19683; ++code)
    out.emplace_back(3, 2, decode_tuple(3, 9, code));
  return out;
}
}  // namespace

TEST_CASE("projections belong to every clone") {
  std::vector<CloneSpec> specs = {
      CloneSpec::pol(3, {eps3(kStd), gamma3(0)}),
      CloneSpec::generated(3, {Operation::unary_map(3, {1, 0, 2})}, 2),
      CloneSpec::burle(3, 2, tminus_monoid(3)),
      CloneSpec::burle(3, 1, all_unary_maps(3)),
  };
  for (const CloneSpec& c : specs)
    for (int arity = 1; arity <= 2; ++arity)
      for (int i = 0; i < arity; ++i) CHECK(c.member(Operation::projection(3, arity, i)));
}

TEST_CASE("discriminator commutes with the 3-cycle") {
  CloneSpec c = CloneSpec::pol(3, {transposition3_graph(0, 1)});
  CHECK(c.member(Operation::discriminator(3)));
  CloneSpec cyc = CloneSpec::pol(3, {cycle3_graph(kStd)});
  CHECK(cyc.member(Operation::discriminator(3)));
}

TEST_CASE("Burle chain membership by range") {
  // binary operation with range {0,1} sits in level 2 over any monoid
  std::vector<Val> table(9, 0);
  table[4] = 1;
  table[8] = 1;
  table[1] = 1;
  Operation f(3, 2, table);
  REQUIRE(f.range().size() == 2);
  REQUIRE(f.essential_arity() == 2);
  auto gens = tminus_monoid(3);
  gens.push_back(Operation::unary_map(3, {1, 0, 2}));
  CloneSpec b2m = CloneSpec::burle(3, 2, gens);
  CHECK(b2m.member(f));
  // a unary permutation outside <M> is rejected
  CHECK_FALSE(b2m.member(Operation::unary_map(3, {1, 2, 0})));
  CHECK(b2m.member(Operation::unary_map(3, {1, 0, 2})));
  // level 3 is everything
  CHECK(CloneSpec::burle(3, 3, tminus_monoid(3)).member(Operation::discriminator(3)));
}

TEST_CASE("quasilinear decision by exhaustive factor search") {
  // g(h1(x) xor h2(y)) with h = indicator of {2}, g = (0 -> 0, 1 -> 2)
  std::vector<Val> table(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      int bit = (x == 2) ^ (y == 2);
      table[static_cast<std::size_t>(3 * x + y)] = static_cast<Val>(bit ? 2 : 0);
    }
  CHECK(is_quasilinear(Operation(3, 2, table)));
  // min is not quasilinear
  std::vector<Val> mintab(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) mintab[static_cast<std::size_t>(3 * x + y)] = static_cast<Val>(std::min(x, y));
  CHECK_FALSE(is_quasilinear(Operation(3, 2, mintab)));
  // unary bijections are not quasilinear (range needs three values)
  CHECK_FALSE(is_quasilinear(Operation::unary_map(3, {1, 2, 0})));
}

TEST_CASE("enumeration counts at arity 1") {
  CHECK(CloneSpec::pol(3, {}).enumerate(1).size() == 27);
  CHECK(CloneSpec::pol(3, {subset_relation(3, {0})}).enumerate(1).size() == 9);
  CHECK(CloneSpec::pol(3, {leq3(kStd)}).enumerate(1).size() == 10);
}

TEST_CASE("Slupecki clone binary part is 1545") {
  // oracle: inclusion-exclusion for range <= 2 gives 3 * 2^9 - 3 = 1533
  // binary tables; essentially unary operations with full range add 12 more.
  std::size_t small_range = 0, essentially_unary_full = 0;
  for (const Operation& f : all_binary_ops()) {
    if (f.range().size() <= 2) ++small_range;
    else if (f.essential_arity() <= 1) ++essentially_unary_full;
  }
  CHECK(small_range == 3 * 512 - 3);
  CHECK(essentially_unary_full == 12);
  auto part = CloneSpec::pol(3, {iota3()}).enumerate(2);
  CHECK(part.size() == 1545);
  CHECK(part.size() == small_range + essentially_unary_full);
}

TEST_CASE("Slupecki identity over all unary and binary operations") {
  Relation iota = iota3();
  std::size_t checks = 0;
  for (const Operation& u : all_unary_maps(3)) {
    CHECK(preserves(u, iota) == (u.range().size() <= 2 || u.essential_arity() <= 1));
    ++checks;
  }
  for (const Operation& f : all_binary_ops()) {
    bool predicate = f.range().size() <= 2 || f.essential_arity() <= 1;
    if (preserves(f, iota) != predicate) {
      CAPTURE(f.to_string());
      REQUIRE(false);
    }
    ++checks;
  }
  CHECK(checks == 19710);
}

TEST_CASE("Burle chain is monotone at arities up to 2") {
  auto all_unary = all_unary_maps(3);
  CloneSpec b0 = CloneSpec::burle(3, 0, all_unary);
  CloneSpec b1 = CloneSpec::burle(3, 1, all_unary);
  CloneSpec b2 = CloneSpec::burle(3, 2, all_unary);
  auto check = [&](const Operation& f) {
    if (b0.member(f)) CHECK(b1.member(f));
    if (b1.member(f)) CHECK(b2.member(f));
  };
  for (const Operation& u : all_unary_maps(3)) check(u);
  for (const Operation& f : all_binary_ops()) check(f);
}

TEST_CASE("closure of the empty-ish generator set is projections only") {
  // a projection generator adds nothing
  ClosureResult res = generate_closure(std::vector<Operation>{Operation::projection(3, 1, 0)}, 2);
  CHECK(res.complete);
  CHECK(res.by_arity[1].size() == 1);
  CHECK(res.by_arity[2].size() == 2);
}

TEST_CASE("closure of all unary maps has the 51 essentially unary binaries") {
  ClosureResult res = generate_closure(all_unary_maps(3), 2);
  REQUIRE(res.complete);
  CHECK(res.by_arity[1].size() == 27);
  // oracle: direct count of binary tables with essential arity <= 1
  std::set<std::vector<Val>> expected;
  for (const Operation& f : all_binary_ops())
    if (f.essential_arity() <= 1) expected.insert(f.table());
  CHECK(expected.size() == 51);
  std::set<std::vector<Val>> got;
  for (const Operation& f : res.by_arity[2]) got.insert(f.table());
  CHECK(got == expected);
}

TEST_CASE("closure members replay their derivations") {
  auto mono = CloneSpec::pol(3, {leq3(kStd)}).enumerate(1);
  std::vector<Val> maxtab(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) maxtab[static_cast<std::size_t>(3 * x + y)] = static_cast<Val>(std::max(x, y));
  mono.push_back(Operation(3, 2, maxtab));
  ClosureResult res = generate_closure(mono, 2);
  REQUIRE(res.complete);
  std::size_t replayed = 0;
  for (int arity = 1; arity <= 2; ++arity)
    for (std::size_t i = 0; i < res.by_arity[static_cast<std::size_t>(arity)].size(); ++i) {
      const Derivation& d = res.derivations[static_cast<std::size_t>(arity)][i];
      if (d.seed) continue;
      std::vector<Operation> gs;
      for (std::size_t j : d.inner_indices)
        gs.push_back(res.by_arity[static_cast<std::size_t>(arity)][j]);
      Operation out = compose(res.by_arity[static_cast<std::size_t>(d.outer_arity)][d.outer_index], gs);
      CHECK(out == res.by_arity[static_cast<std::size_t>(arity)][i]);
      ++replayed;
    }
  CHECK(replayed > 20);
  // every closure member is monotone
  Relation ord = leq3(kStd);
  for (int arity = 1; arity <= 2; ++arity)
    for (const Operation& f : res.by_arity[static_cast<std::size_t>(arity)])
      CHECK(preserves(f, ord));
}

TEST_CASE("generated clones reject queries above the cap") {
  CloneSpec g = CloneSpec::generated(3, {Operation::unary_map(3, {1, 0, 2})}, 2);
  CHECK_THROWS_AS(g.member(Operation::discriminator(3)), CapExceededError);
  CHECK_THROWS_AS(g.enumerate(3), CapExceededError);
  CHECK_THROWS_AS(
      generate_closure(std::vector<Operation>{Operation::discriminator(3)}, 2),
      CapExceededError);
}

TEST_CASE("monoid closures") {
  auto only_id = monoid_closure(std::vector<Operation>{Operation::unary_map(3, {0, 1, 2})});
  CHECK(only_id.size() == 1);

  auto tminus = monoid_closure(tminus_monoid(3));
  CHECK(tminus.size() == 22);
  // oracle: brute-force closure under composition
  auto closed_under_composition = [](const std::vector<Operation>& m) {
    for (const Operation& u : m)
      for (const Operation& v : m) {
        Operation uv = compose(u, std::vector<Operation>{v});
        if (std::find(m.begin(), m.end(), uv) == m.end()) return false;
      }
    return true;
  };
  CHECK(closed_under_composition(tminus));

  auto gens = tminus_monoid(3);
  gens.push_back(Operation::unary_map(3, {1, 2, 0}));
  gens.push_back(Operation::unary_map(3, {2, 0, 1}));
  auto with_cycles = monoid_closure(gens);
  CHECK(closed_under_composition(with_cycles));
  // record: non-permutations, identity and the two 3-cycles only
  CHECK(with_cycles.size() == 24);
  for (const Operation& u : with_cycles) {
    bool permutation = u.range().size() == 3;
    bool is_transposition = permutation && compose(u, std::vector<Operation>{u}) ==
                                               Operation::unary_map(3, {0, 1, 2}) &&
                            u != Operation::unary_map(3, {0, 1, 2});
    CHECK_FALSE(is_transposition);
  }
}

TEST_CASE("enumerate agrees with membership at arities 1 and 2") {
  std::vector<CloneSpec> specs = {
      CloneSpec::pol(3, {eps3(kStd)}),
      CloneSpec::pol(3, {gamma3(1), subset_relation(3, {1})}),
      CloneSpec::burle(3, 2, tminus_monoid(3)),
  };
  for (const CloneSpec& c : specs)
    for (int arity = 1; arity <= 2; ++arity) {
      auto listed = c.enumerate(arity);
      std::set<std::vector<Val>> in_list;
      for (const Operation& f : listed) in_list.insert(f.table());
      std::size_t width = pow_size(3, arity);
      std::size_t count = 1;
      for (std::size_t i = 0; i < width; ++i) count *= 3;
      for (std::size_t code = 0; code < count; ++code) {
        Operation f(3, arity, decode_tuple(3, static_cast<int>(width), code));
        CHECK(c.member(f) == in_list.contains(f.table()));
      }
    }
}

TEST_CASE("backtracking enumeration at arity 3") {
  // operations commuting with the 3-cycle are free on one representative per
  // orbit of the diagonal action: 9 orbits, so 3^9 ternary members
  CloneSpec cyc = CloneSpec::pol(3, {cycle3_graph(kStd)});
  auto part = cyc.enumerate(3);
  CHECK(part.size() == 19683);
  for (std::size_t i = 0; i < part.size(); i += 997) CHECK(cyc.member(part[i]));

  // cross-check a small sample against membership for a second clone
  std::vector<Relation> rels = {subset_relation(3, {0}), subset_relation(3, {1})};
  CloneSpec fix01 = CloneSpec::pol(3, rels);
  std::size_t seen = 0;
  enumerate_pol_ops(3, rels, 3, [&](const Operation& f) {
    if (++seen % 1000 == 1) CHECK(fix01.member(f));
    return seen < 20000;
  });
  CHECK(seen >= 1);
}

TEST_CASE("clone equality and separation") {
  CloneSpec c1 = CloneSpec::pol(3, {subset_relation(3, {0})});
  CHECK(clones_equal_up_to(c1, c1, 2));
  CHECK_FALSE(separating_op(c1, c1, 2).has_value());

  CloneSpec c2 = CloneSpec::pol(3, {subset_relation(3, {1})});
  auto sep = separating_op(c1, c2, 1);
  REQUIRE(sep.has_value());
  CHECK(*sep == Operation::constant(3, 1, 0));

  // same clone from two bindings of an unordered subset
  CloneSpec a = CloneSpec::pol(3, {table2_literal(24, Abc{0, 1, 2}), subset_relation(3, {0, 1})});
  CloneSpec b = CloneSpec::pol(3, {subset_relation(3, {0, 1}), table2_literal(24, Abc{0, 1, 2})});
  CHECK(clones_equal_up_to(a, b, 2));
}

TEST_CASE("clone spec expression parser") {
  CloneSpec c = parse_clone_spec("pol(eps3[a=0,b=1,c=2],set1[a=2])");
  CHECK(c.kind() == CloneSpec::Kind::Pol);
  CHECK(c.relations().size() == 2);
  CHECK(c.member(Operation::constant(3, 1, 2)));

  CloneSpec m = parse_clone_spec("meet(pol(set1[a=0]),pol(set1[a=1]))");
  CHECK_FALSE(m.member(Operation::constant(3, 1, 0)));
  CHECK(m.member(Operation::projection(3, 2, 0)));

  CloneSpec g = parse_clone_spec("gen(3:1:102;cap=2)");
  CHECK(g.member(Operation::unary_map(3, {1, 0, 2})));

  CloneSpec b = parse_clone_spec("burle(2;tminus)");
  CHECK(b.burle_monoid().size() == 22);
}
