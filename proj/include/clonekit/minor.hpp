#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clonekit/relation.hpp"

namespace clonekit {

struct SolveBudget {
  std::uint64_t max_nodes = 10'000'000;
  std::int64_t max_millis = 600'000;
};

enum class Verdict { Yes, No, Unknown };
const char* verdict_name(Verdict v);

// The m-tuple of n-ary operations certifying f = g o h.
struct MinorWitness {
  std::vector<Operation> components;
};

struct MinorResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<MinorWitness> witness;
  std::uint64_t nodes = 0;
  std::int64_t millis = 0;
};

/// Decides whether f = g o h for some h whose components all preserve every
/// relation in rels (rels empty means the full clone). Formulated as a CSP:
/// one variable per point of A^n whose domain is the g-fiber over the f-value,
/// with one constraint per coordinatewise related point tuple. `No` is only
/// returned after exhaustive refutation; budget exhaustion yields `Unknown`.
/// Supported: arity(f) <= 4, arity(g) <= 6.
MinorResult is_minor(const Operation& f, const Operation& g,
                     std::span<const Relation> rels, const SolveBudget& budget = {});

struct EquivResult {
  Verdict verdict = Verdict::Unknown;
  MinorResult forward;   // f as minor of g
  MinorResult backward;  // g as minor of f
};

EquivResult are_equivalent(const Operation& f, const Operation& g,
                           std::span<const Relation> rels, const SolveBudget& budget = {});

// Replays a witness: compose(g, h) == f and every component preserves rels.
bool verify_witness(const Operation& f, const Operation& g,
                    std::span<const Relation> rels, const MinorWitness& witness);

struct ClassPartition {
  struct Class {
    Operation rep;  // least member
    std::vector<Operation> members;
    Class(Operation r) : rep(std::move(r)) {}
  };
  std::vector<Class> classes;
  bool complete = true;
  std::string note;
};

/// Partitions all operations of arity <= max_arity (<= 2) into equivalence
/// classes relative to Pol(rels). Operations are pre-bucketed by range, which
/// is an invariant for every clone since composition cannot enlarge a range;
/// classes inside a bucket are built exclusively from solver verdicts. The
/// resulting partition does not depend on the thread count.
ClassPartition enumerate_classes(int k, std::span<const Relation> rels, int max_arity,
                                 const SolveBudget& per_call = {}, int threads = 1);

}  // namespace clonekit
