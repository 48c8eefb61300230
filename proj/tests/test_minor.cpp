#include <doctest.h>

#include <random>
#include <set>

#include "clonekit/clone.hpp"
#include "clonekit/errors.hpp"
#include "clonekit/minor.hpp"
#include "clonekit/named_relations.hpp"
#include "clonekit/witness.hpp"

using namespace clonekit;

namespace {
const Abc kStd{0, 1, 2};

Operation random_op(std::mt19937& rng, int arity) {
  std::size_t width = pow_size(3, arity);
  std::vector<Val> table(width);
  for (Val& v : table) v = static_cast<Val>(rng() % 3);
  return Operation(3, arity, std::move(table));
}

bool range_subset(const Operation& f, const Operation& g) {
  auto rf = f.range(), rg = g.range();
  return std::includes(rg.begin(), rg.end(), rf.begin(), rf.end());
}

// Naive unary decision: try every h in C^(1).
Verdict naive_unary_minor(const Operation& f, const Operation& g,
                          std::span<const Relation> rels) {
  for (const Operation& h : all_unary_maps(3)) {
    bool in_c = true;
    for (const Relation& rho : rels)
      if (!preserves(h, rho)) {
        in_c = false;
        break;
      }
    if (!in_c) continue;
    if (compose(g, std::vector<Operation>{h}) == f) return Verdict::Yes;
  }
  return Verdict::No;
}
}  // namespace

TEST_CASE("reflexivity: every operation is its own minor") {
  std::mt19937 rng(3);
  std::vector<Relation> rels = {eps3(kStd), gamma3(0)};
  for (int trial = 0; trial < 30; ++trial) {
    Operation f = random_op(rng, 1 + static_cast<int>(rng() % 2));
    MinorResult res = is_minor(f, f, rels);
    CHECK(res.verdict == Verdict::Yes);
    REQUIRE(res.witness.has_value());
    CHECK(verify_witness(f, f, rels, *res.witness));
  }
}

TEST_CASE("full clone: minor is exactly range containment") {
  std::mt19937 rng(99);
  std::vector<Relation> none;
  for (int trial = 0; trial < 200; ++trial) {
    Operation f = random_op(rng, 1 + static_cast<int>(rng() % 2));
    Operation g = random_op(rng, 1 + static_cast<int>(rng() % 2));
    MinorResult res = is_minor(f, g, none);
    CHECK(res.verdict == (range_subset(f, g) ? Verdict::Yes : Verdict::No));
  }
}

TEST_CASE("empty fiber yields an immediate refutation") {
  Operation f = Operation::constant(3, 1, 2);
  Operation g = Operation::constant(3, 2, 0);
  MinorResult res = is_minor(f, g, std::vector<Relation>{});
  CHECK(res.verdict == Verdict::No);
  CHECK(res.nodes == 0);
}

TEST_CASE("solver agrees with naive unary enumeration for each maximal clone") {
  std::vector<std::vector<Relation>> clones = {
      {subset_relation(3, {0})}, {subset_relation(3, {0, 1})}, {cycle3_graph(kStd)},
      {eps3(kStd)},              {leq3(kStd)},                 {gamma3(0)},
      {lambda3()},               {iota3()}};
  auto unary = all_unary_maps(3);
  for (const auto& rels : clones)
    for (const Operation& f : unary)
      for (const Operation& g : unary) {
        MinorResult res = is_minor(f, g, rels);
        REQUIRE(res.verdict != Verdict::Unknown);
        CHECK(res.verdict == naive_unary_minor(f, g, rels));
      }
}

TEST_CASE("witnesses replay and respect monotonicity in the clone") {
  // a yes under Pol(R) carries over to any subset of R via the same witness
  std::mt19937 rng(123);
  std::vector<Relation> big = {eps3(kStd), subset_relation(3, {0, 1})};
  std::vector<Relation> small = {eps3(kStd)};
  int yes_seen = 0;
  for (int trial = 0; trial < 400 && yes_seen < 60; ++trial) {
    Operation f = random_op(rng, 2);
    Operation g = random_op(rng, 2);
    MinorResult res = is_minor(f, g, big);
    if (res.verdict != Verdict::Yes) continue;
    ++yes_seen;
    REQUIRE(res.witness.has_value());
    CHECK(verify_witness(f, g, big, *res.witness));
    CHECK(verify_witness(f, g, small, *res.witness));
    CHECK(is_minor(f, g, small).verdict == Verdict::Yes);
  }
  CHECK(yes_seen >= 10);
}

TEST_CASE("transitivity via witness composition") {
  std::mt19937 rng(77);
  std::vector<Relation> rels = {eps3(kStd)};
  int composed = 0;
  for (int trial = 0; trial < 600 && composed < 40; ++trial) {
    Operation f = random_op(rng, 1);
    Operation g = random_op(rng, 2);
    Operation e = random_op(rng, 2);
    MinorResult fg = is_minor(f, g, rels);
    if (fg.verdict != Verdict::Yes) continue;
    MinorResult ge = is_minor(g, e, rels);
    if (ge.verdict != Verdict::Yes) continue;
    // compose the witnesses: f = e o (h_ge o h_fg)
    std::vector<Operation> chained;
    for (const Operation& comp : ge.witness->components)
      chained.push_back(compose(comp, fg.witness->components));
    MinorWitness w{chained};
    CHECK(verify_witness(f, e, rels, w));
    ++composed;
  }
  CHECK(composed >= 5);
}

TEST_CASE("budget exhaustion reports unknown, never a verdict") {
  // an unconstrained yes-instance assigns one node per point, so a budget of
  // two nodes cannot finish
  Operation p1 = Operation::projection(3, 2, 0);
  SolveBudget tiny;
  tiny.max_nodes = 2;
  MinorResult res = is_minor(p1, p1, std::vector<Relation>{}, tiny);
  CHECK(res.verdict == Verdict::Unknown);
  CHECK_FALSE(res.witness.has_value());
}

TEST_CASE("are_equivalent combines directions") {
  std::vector<Relation> none;
  Operation u = Operation::unary_map(3, {1, 0, 2});
  Operation v = Operation::unary_map(3, {2, 1, 0});
  CHECK(are_equivalent(u, v, none).verdict == Verdict::Yes);  // equal ranges
  Operation c0 = Operation::constant(3, 1, 0);
  CHECK(are_equivalent(u, c0, none).verdict == Verdict::No);
}

TEST_CASE("full-clone classes at arity up to 2 are the seven range classes") {
  ClassPartition part = enumerate_classes(3, std::vector<Relation>{}, 2);
  REQUIRE(part.complete);
  CHECK(part.classes.size() == 7);
  std::size_t total = 0;
  for (const auto& cls : part.classes) {
    auto want = cls.rep.range();
    for (const Operation& f : cls.members) CHECK(f.range() == want);
    total += cls.members.size();
  }
  CHECK(total == 19710);
  // equal class implies equal range was asserted above; check counts per size
  std::vector<std::size_t> sizes;
  for (const auto& cls : part.classes) sizes.push_back(cls.members.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 2, 2, 516, 516, 516, 18156});
}

TEST_CASE("partition does not depend on the thread count") {
  std::vector<Relation> rels = {leq3(kStd)};
  ClassPartition one = enumerate_classes(3, rels, 1, SolveBudget{}, 1);
  ClassPartition many = enumerate_classes(3, rels, 1, SolveBudget{}, 8);
  REQUIRE(one.complete);
  REQUIRE(many.complete);
  REQUIRE(one.classes.size() == many.classes.size());
  for (std::size_t i = 0; i < one.classes.size(); ++i) {
    CHECK(one.classes[i].rep == many.classes[i].rep);
    CHECK(one.classes[i].members == many.classes[i].members);
  }
}

TEST_CASE("order clone: unary classes refine range equality") {
  std::vector<Relation> rels = {leq3(kStd)};
  ClassPartition part = enumerate_classes(3, rels, 1);
  REQUIRE(part.complete);
  for (const auto& cls : part.classes) {
    auto want = cls.rep.range();
    for (const Operation& f : cls.members) CHECK(f.range() == want);
  }
  // strictly finer than range classes: the identity and a non-monotone
  // bijection share their range but are inequivalent
  Operation id = Operation::unary_map(3, {0, 1, 2});
  Operation swap01 = Operation::unary_map(3, {1, 0, 2});
  CHECK(are_equivalent(id, swap01, rels).verdict == Verdict::No);
  CHECK(part.classes.size() > 7);

  // among monotone unary maps the solver identifies equal-range pairs
  auto monotone = CloneSpec::pol(3, rels).enumerate(1);
  REQUIRE(monotone.size() == 10);
  for (const Operation& f : monotone)
    for (const Operation& g : monotone) {
      EquivResult e = are_equivalent(f, g, rels);
      REQUIRE(e.verdict != Verdict::Unknown);
      CHECK((e.verdict == Verdict::Yes) == (f.range() == g.range()));
    }
}

TEST_CASE("witness family refutations at the smallest indices") {
  struct Case {
    FamilyLine fam;
    int line;
    int n, m;
  };
  std::vector<Case> cases = {{FamilyLine::L26, 26, 3, 4},
                             {FamilyLine::L34, 34, 3, 4},
                             {FamilyLine::L35, 35, 3, 4},
                             {FamilyLine::L40, 40, 3, 5}};
  for (const Case& c : cases) {
    Relation rho = table2_literal(c.line, kStd);
    Operation fn = build_family(c.fam, FamilyParams{kStd, c.n});
    Operation fm = build_family(c.fam, FamilyParams{kStd, c.m});
    std::vector<Relation> rels = {rho};
    MinorResult res = is_minor(fn, fm, rels);
    CAPTURE(c.line);
    CHECK(res.verdict == Verdict::No);
  }
}

TEST_CASE("signature classes of the block-transposition clone at arity 1") {
  // class count equals the number of realized block signatures
  std::vector<Relation> rels = {phi_pullback_pi2(kStd)};
  ClassPartition part = enumerate_classes(3, rels, 1);
  REQUIRE(part.complete);
  std::set<Signature> sigs;
  for (const Operation& u : all_unary_maps(3)) sigs.insert(signature(u, SignatureKind::S32, kStd));
  CHECK(part.classes.size() == sigs.size());
}

TEST_CASE("solver rejects out-of-range instances") {
  std::vector<Relation> none;
  std::vector<Val> t5(pow_size(3, 5), 0);
  Operation big(3, 5, t5);
  CHECK_THROWS_AS(is_minor(big, big, none), UnsupportedQueryError);
}
