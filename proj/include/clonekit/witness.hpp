#pragma once

#include <compare>
#include <vector>

#include "clonekit/named_relations.hpp"

namespace clonekit {

// Witness families attached to catalog lines 26, 34, 35 and 40. Lines 26/40
// give n-ary operations, lines 34/35 give (n+1)-ary ones; n is the family
// index, not the arity.
enum class FamilyLine { L26, L34, L35, L40 };

struct FamilyParams {
  Abc abc;
  int n = 3;
};

// Positions below are 1-based, matching the printed case analyses; they are
// converted to 0-based only at the table boundary.

// a at position i, b elsewhere (length n).
std::vector<Val> e_tuple(int n, int i, const Abc& s);
// b everywhere except c at positions i, i+1 for i < n; (c, b, ..., b, c) for i = n.
std::vector<Val> d_tuple(int n, int i, const Abc& s);
// Length n+1: c everywhere except alpha at i and beta at i+1 (1 <= i <= n).
std::vector<Val> d_pair_tuple(int n, int i, Val alpha, Val beta, const Abc& s);
// Length n, cyclic: b at i, a at i-1 and i+1 (mod n), c elsewhere.
std::vector<Val> a_cyclic_tuple(int n, int i, const Abc& s);

Operation build_family(FamilyLine line, const FamilyParams& params);

// Are the given equal-length tuples coordinatewise rho-related?
bool coordinatewise_related(std::span<const std::vector<Val>> tuples, const Relation& rho);

// Brute-force checks of the combinatorial membership criteria used by the
// non-equivalence arguments; true iff the stated iff holds for every index.
bool check_fact_26(int p, const Abc& s = {});
bool check_fact_35(int p, const Abc& s = {});
bool check_fact_40(int p, const Abc& s = {});

enum class SignatureKind { P24, Q27, S32 };

struct Signature {
  SignatureKind kind = SignatureKind::P24;
  std::vector<Val> range;
  std::vector<Val> cube_range;  // range on the {a,b}-cube
  int diag_value = -1;          // f(a,...,a); P24 only
  int flag = -1;                // -1 undefined, 0 false, 1 true; P24/Q27
  // (range on block, range on mirrored block) over all blocks; S32 only.
  std::vector<std::pair<std::vector<Val>, std::vector<Val>>> block_ranges;

  auto operator<=>(const Signature&) const = default;
};

// Equivalence invariants read off an operation. P24/Q27 flags are defined
// only when the range is full and the cube range has exactly two elements;
// they are decided by exhaustive witness search against the line relation.
Signature signature(const Operation& f, SignatureKind kind, const Abc& s);

}  // namespace clonekit
