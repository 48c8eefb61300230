#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clonekit/relation.hpp"

namespace clonekit {

// Binding of the symbols a, b, c to concrete universe elements of {0,1,2}.
struct Abc {
  Val a = 0;
  Val b = 1;
  Val c = 2;
  bool is_permutation() const { return a != b && b != c && a != c && a < 3 && b < 3 && c < 3; }
  std::string to_string() const;
};

// Unary relations (subsets).
Relation subset_relation(int k, std::vector<Val> elems);

// Graph {(x, sigma(x))} of a permutation given by its value table.
Relation perm_graph(int k, std::span<const Val> images);
// If rho is the graph of a permutation of the full universe, returns it.
std::optional<Operation> graph_permutation(const Relation& rho);

Relation cycle3_graph(const Abc& s);              // 3-cycle a -> b -> c -> a
Relation transposition3_graph(Val a, Val b);      // (a b) fixing the rest, k = 3
Relation pi2(Val a, Val b);                       // {(a,b),(b,a)} on k = 3
Relation eps3(const Abc& s);                      // blocks {a,b} | {c}
Relation leq3(const Abc& s);                      // total order a <= b <= c
Relation leq2(Val a, Val b);                      // {(a,a),(a,b),(b,b)} on k = 3
Relation gamma3(Val a);                           // binary central, center a
Relation lambda3();                               // {(x,y,z,w) : w = x-y+z mod 3}
Relation lambda2(Val a, Val b);                   // mod-2 affine quadruples over {a,b}
Relation iota3();                                 // ternary, some repeated entry
Relation phi_pullback_pi2(const Abc& s);          // line 32: phi^-1(swap of {0,1})
Relation phi_pullback_lambda2(const Abc& s);      // line 37
Relation lambda2_with_point(const Abc& s);        // line 36: lambda2(a,b) + (c,c,c,c)

// Column-major literal for the given catalog line (19, 20, 24, 25, 26, 27,
// 31, 33, 34, 35, 38, 39, 40) with symbols bound through s.
Relation table2_literal(int line, const Abc& s);
// The raw literal: one string of rows, entries a/b/c or digits, space-split.
const char* table2_literal_text(int line);

// Totally reflexive, totally symmetric relation of arity r whose tuples all
// contain center or a repeated entry; for (k=3, r=2) this is the unique
// central relation with the given center.
Relation central_relation(int k, int r, Val center);
bool is_central(const Relation& rho);
// All central elements; throws std::invalid_argument when rho is not central.
std::vector<Val> central_elements(const Relation& rho);

// lambda_T for an h-regular family of equivalences: the h-ary relation of
// tuples that fail to be a transversal of the blocks of every member.
Relation h_regular_from_family(std::span<const Relation> family, int h);

// Pairwise comparability under inclusion; members must be equivalences.
bool is_chain(std::span<const Relation> equivalences);

enum class RelationType {
  BoundedOrder,
  PrimePermutation,
  NontrivialEquivalence,
  PrimeAffine,
  Central,
  HRegular,
  Other,
};

struct RelationClass {
  RelationType tag = RelationType::Other;
  std::vector<Val> central_elements;  // for Central
  int h = 0;                          // for HRegular
};

RelationClass rosenberg_classify(const Relation& rho);
const char* relation_type_name(RelationType t);

// Named registry for the CLI: "eps3[a=0,b=1,c=2]", "line26[a=0,b=1,c=2]",
// "gamma3[a=1]", "set1[a=0]", "set2[a=0,b=1]", ... Missing params default to
// a=0, b=1, c=2.
Relation build_named(const std::string& name, const std::map<std::string, int>& params);
Relation parse_named_relation(const std::string& token);  // "name[k=v,...]"
std::vector<std::pair<std::string, std::string>> named_relation_list();

}  // namespace clonekit
