#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "clonekit/operation.hpp"

namespace clonekit {

/// An r-ary relation on {0,...,k-1}, stored as a bitset over encoded tuple
/// indices. Iteration is always ascending by encoded index, so equal relations
/// compare equal. Immutable in normal use; insert() exists for construction.
class Relation {
 public:
  Relation(int k, int arity);

  static Relation from_tuples(int k, int arity,
                              const std::vector<std::vector<Val>>& tuples);
  static Relation full(int k, int arity);
  static Relation diagonal(int k, int arity);

  int k() const { return k_; }
  int arity() const { return arity_; }
  std::size_t space() const { return space_; }  // k^arity
  std::size_t size() const;                     // number of tuples

  bool contains_index(std::size_t index) const;
  bool contains(std::span<const Val> t) const;
  void insert_index(std::size_t index);
  void insert(std::span<const Val> t);

  std::vector<std::uint32_t> tuple_indices() const;  // ascending
  std::vector<std::vector<Val>> tuples() const;      // ascending by index

  bool is_reflexive() const;       // binary
  bool is_symmetric() const;       // binary
  bool is_transitive() const;      // binary
  bool is_antisymmetric() const;   // binary
  bool is_equivalence() const;     // binary
  bool is_totally_reflexive() const;
  bool is_totally_symmetric() const;

  // Tuple positions permuted by perm (new position i reads old perm[i]).
  Relation permuted_coords(std::span<const int> perm) const;
  // Minimum over all coordinate permutations; Pol is invariant under these.
  Relation canonical_coord_form() const;
  // Image under a permutation of the universe applied to every component.
  Relation mapped_elements(std::span<const Val> image) const;

  auto operator<=>(const Relation&) const = default;

 private:
  int k_;
  int arity_;
  std::size_t space_;
  std::vector<std::uint64_t> words_;
};

/// Preservation test: every selection of arity(f) tuples from rho, applied
/// componentwise through f, must land in rho. Early exit on first violation.
bool preserves(const Operation& f, const Relation& rho);

// Reference implementation that materializes the direct power rho^n as
// explicit point tuples. Exponential; for cross-checks only.
bool preserves_naive(const Operation& f, const Relation& rho);

// Keeps the tuples lying inside subset and re-indexes to {0..|B|-1}.
Relation restrict_relation(const Relation& rho, std::span<const Val> subset);

// {(x_1..x_r) : (phi(x_1)..phi(x_r)) in rho}, phi given as a value table on
// {0..k-1} with entries below rho.k().
Relation pullback_relation(const Relation& rho, std::span<const Val> phi, int k);

// Text format: first line "k r t", then t rows of r space-separated values.
Relation read_relation_text(std::istream& in);
void write_relation_text(std::ostream& out, const Relation& rho);
Relation parse_relation_text(const std::string& text);
std::string relation_to_text(const Relation& rho);
Relation load_relation_file(const std::string& path);

}  // namespace clonekit
