#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace clonekit {

using Val = std::uint8_t;

// k^n, guarded against overflowing table sizes.
std::size_t pow_size(int k, int n);

// Big-endian base-k encoding: the leftmost component is most significant.
std::size_t encode_tuple(int k, std::span<const Val> t);
std::vector<Val> decode_tuple(int k, int arity, std::size_t index);

/// A finitary operation on {0,...,k-1}, stored as a full value table indexed
/// by the big-endian tuple encoding. Arity 0 is rejected; values are validated
/// on construction. Immutable after construction.
class Operation {
 public:
  Operation(int k, int arity, std::vector<Val> table);

  static Operation projection(int k, int arity, int coord);  // coord 0-based
  static Operation constant(int k, int arity, Val value);
  static Operation unary_map(int k, std::vector<Val> images);
  // t(x,y,z) = z if x == y, else x.
  static Operation discriminator(int k);
  // Parses "k:arity:digits", digits in table order.
  static Operation from_string(const std::string& text);

  int k() const { return k_; }
  int arity() const { return arity_; }
  const std::vector<Val>& table() const { return table_; }
  std::size_t points() const { return table_.size(); }

  Val at(std::size_t index) const { return table_[index]; }
  Val operator()(std::span<const Val> args) const;

  std::vector<Val> range() const;  // sorted, distinct
  // Blocks of the kernel (points grouped by value), ordered by value.
  std::vector<std::vector<std::uint32_t>> kernel() const;
  bool depends_on(int coord) const;
  int essential_arity() const;
  // For essentially at most unary operations, the unary map they factor
  // through; nullopt when two or more coordinates are essential.
  std::optional<Operation> unary_collapse() const;

  std::string to_string() const;

  auto operator<=>(const Operation&) const = default;

 private:
  int k_;
  int arity_;
  std::vector<Val> table_;
};

// An m-tuple of n-ary operations, identified with a map A^n -> A^m.
using OperationVector = std::vector<Operation>;

// f(g_1,...,g_n): requires |gs| == arity of f, all gs of equal arity, same k.
Operation compose(const Operation& f, std::span<const Operation> gs);

// Re-indexes f along the order-preserving bijection subset -> {0..|B|-1}.
// Throws NotClosedError when f does not map subset^n into subset.
Operation restrict_operation(const Operation& f, std::span<const Val> subset);

std::vector<Operation> all_unary_maps(int k);  // ascending table order
// Identity together with all unary non-permutations.
std::vector<Operation> tminus_monoid(int k);

}  // namespace clonekit
