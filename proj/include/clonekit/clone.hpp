#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clonekit/relation.hpp"

namespace clonekit {

// One step of a closure derivation: op = compose(by_arity[outer_arity][outer_index],
// inners taken from by_arity[op.arity()]). Seeds carry seed = true.
struct Derivation {
  bool seed = true;
  int outer_arity = 0;
  std::size_t outer_index = 0;
  std::vector<std::size_t> inner_indices;
};

struct ClosureResult {
  int k = 0;
  int cap = 0;
  // by_arity[n] for n in 1..cap; index 0 unused.
  std::vector<std::vector<Operation>> by_arity;
  std::vector<std::vector<Derivation>> derivations;
  bool complete = true;

  bool contains(const Operation& f) const;
};

struct ClosureBudget {
  std::size_t max_ops = 100000;
  std::uint64_t max_compositions = 50'000'000;
};

// Least fixpoint of composition over F and all projections, restricted to
// arities <= cap. Generators above the cap raise CapExceededError. When the
// budget runs out the partial result is returned with complete = false; every
// listed operation is still genuinely in the generated clone.
ClosureResult generate_closure(std::span<const Operation> gens, int cap,
                               const ClosureBudget& budget = {});

// Closure of M together with the identity under unary composition; sorted.
std::vector<Operation> monoid_closure(std::span<const Operation> unary_ops);

// f = g(h_1(x_1) xor ... xor h_n(x_n)) for some h_i : A -> {0,1} and
// g : {0,1} -> A; decided by exhaustive factor search, arity <= 5.
bool is_quasilinear(const Operation& f);

/// Intensional clone description: Pol of a relation list, an intersection,
/// a generated clone with an arity cap, or a Burle-chain predicate clone
/// B_level(M). Immutable; internal caches are thread-safe.
class CloneSpec {
 public:
  enum class Kind { Pol, Meet, Generated, Burle };

  static CloneSpec pol(int k, std::vector<Relation> relations);
  static CloneSpec meet(std::vector<CloneSpec> parts);
  static CloneSpec generated(int k, std::vector<Operation> generators, int cap);
  static CloneSpec burle(int k, int level, std::vector<Operation> monoid_gens);

  int k() const;
  Kind kind() const;
  const std::vector<Relation>& relations() const;      // Pol
  const std::vector<CloneSpec>& parts() const;         // Meet
  const std::vector<Operation>& generators() const;    // Generated
  int cap() const;                                     // Generated
  int burle_level() const;                             // Burle
  const std::vector<Operation>& burle_monoid() const;  // Burle, normalized <M>

  bool member(const Operation& f) const;
  std::vector<Operation> enumerate(int arity) const;

  // Defining relations when the spec reduces to Pol of a finite list
  // (Pol, meets of such, Burle level k, or Slupecki's B_{k-1} at k = 3).
  std::optional<std::vector<Relation>> as_pol_relations() const;


 private:
  struct Impl;
  explicit CloneSpec(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

// Backtracking enumeration of the arity-n part of Pol(rels), cells filled in
// ascending encoded order with wildcard feasibility checks per relation.
// Returns false when the callback stopped the walk or the node budget ran out.
bool enumerate_pol_ops(int k, std::span<const Relation> rels, int arity,
                       const std::function<bool(const Operation&)>& callback,
                       std::uint64_t max_nodes = UINT64_MAX);

// Arity-by-arity comparison up to max_arity (enumeration limits apply).
bool clones_equal_up_to(const CloneSpec& c1, const CloneSpec& c2, int max_arity);
// Least operation of arity <= max_arity in exactly one of the clones.
std::optional<Operation> separating_op(const CloneSpec& c1, const CloneSpec& c2, int max_arity);

// Spec expressions: pol(rel,...), meet(spec,spec), gen(op,...;cap=N),
// burle(level; m1, m2, ...). Relation items are registry tokens or file
// paths; monoid items are op strings, "tminus" or "allunary".
CloneSpec parse_clone_spec(const std::string& expr);

}  // namespace clonekit
