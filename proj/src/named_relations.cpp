#include "clonekit/named_relations.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace clonekit {

namespace {

constexpr int kThree = 3;

void require_perm(const Abc& s, const char* who) {
  if (!s.is_permutation())
    throw std::invalid_argument(std::string(who) + ": a, b, c must be a permutation of {0,1,2}");
}

Val third_element(Val a, Val b) {
  for (Val v = 0; v < 3; ++v)
    if (v != a && v != b) return v;
  throw std::invalid_argument("a and b must be distinct elements of {0,1,2}");
}

int block_count(const Relation& eq) {
  std::vector<int> rep(static_cast<std::size_t>(eq.k()), -1);
  int blocks = 0;
  for (int x = 0; x < eq.k(); ++x) {
    if (rep[static_cast<std::size_t>(x)] >= 0) continue;
    ++blocks;
    for (int y = x; y < eq.k(); ++y) {
      Val t[2] = {static_cast<Val>(x), static_cast<Val>(y)};
      if (eq.contains(t)) rep[static_cast<std::size_t>(y)] = x;
    }
  }
  return blocks;
}

std::vector<std::vector<Val>> equivalence_blocks(const Relation& eq) {
  std::vector<std::vector<Val>> blocks;
  std::vector<bool> seen(static_cast<std::size_t>(eq.k()), false);
  for (int x = 0; x < eq.k(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    std::vector<Val> block;
    for (int y = x; y < eq.k(); ++y) {
      Val t[2] = {static_cast<Val>(x), static_cast<Val>(y)};
      if (eq.contains(t)) {
        block.push_back(static_cast<Val>(y));
        seen[static_cast<std::size_t>(y)] = true;
      }
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

// All equivalence relations on {0..k-1} with exactly h blocks.
std::vector<Relation> equivalences_with_blocks(int k, int h) {
  std::vector<Relation> out;
  std::vector<int> label(static_cast<std::size_t>(k), 0);
  // Restricted growth strings enumerate set partitions once each.
  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (pos == k) {
      if (used != h) return;
      Relation eq(k, 2);
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
          if (label[static_cast<std::size_t>(x)] == label[static_cast<std::size_t>(y)]) {
            Val t[2] = {static_cast<Val>(x), static_cast<Val>(y)};
            eq.insert(t);
          }
      out.push_back(std::move(eq));
      return;
    }
    for (int v = 0; v <= used && v < h; ++v) {
      label[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, std::max(used, v + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace

std::string Abc::to_string() const {
  std::ostringstream out;
  out << "a=" << int(a) << ",b=" << int(b) << ",c=" << int(c);
  return out.str();
}

Relation subset_relation(int k, std::vector<Val> elems) {
  Relation r(k, 1);
  for (Val v : elems) {
    Val t[1] = {v};
    r.insert(t);
  }
  return r;
}

Relation perm_graph(int k, std::span<const Val> images) {
  if (static_cast<int>(images.size()) != k)
    throw std::invalid_argument("permutation table has wrong length");
  std::vector<bool> hit(static_cast<std::size_t>(k), false);
  for (Val v : images) {
    if (v >= k || hit[v]) throw std::invalid_argument("not a permutation");
    hit[v] = true;
  }
  Relation r(k, 2);
  for (int x = 0; x < k; ++x) {
    Val t[2] = {static_cast<Val>(x), images[static_cast<std::size_t>(x)]};
    r.insert(t);
  }
  return r;
}

std::optional<Operation> graph_permutation(const Relation& rho) {
  if (rho.arity() != 2 || rho.size() != static_cast<std::size_t>(rho.k())) return std::nullopt;
  std::vector<int> image(static_cast<std::size_t>(rho.k()), -1);
  std::vector<bool> hit(static_cast<std::size_t>(rho.k()), false);
  for (const auto& t : rho.tuples()) {
    if (image[t[0]] >= 0 || hit[t[1]]) return std::nullopt;
    image[t[0]] = t[1];
    hit[t[1]] = true;
  }
  std::vector<Val> tab(static_cast<std::size_t>(rho.k()));
  for (int x = 0; x < rho.k(); ++x) {
    if (image[static_cast<std::size_t>(x)] < 0) return std::nullopt;
    tab[static_cast<std::size_t>(x)] = static_cast<Val>(image[static_cast<std::size_t>(x)]);
  }
  return Operation::unary_map(rho.k(), std::move(tab));
}

Relation cycle3_graph(const Abc& s) {
  require_perm(s, "cycle3_graph");
  return Relation::from_tuples(kThree, 2, {{s.a, s.b}, {s.b, s.c}, {s.c, s.a}});
}

Relation transposition3_graph(Val a, Val b) {
  Val c = third_element(a, b);
  return Relation::from_tuples(kThree, 2, {{a, b}, {b, a}, {c, c}});
}

Relation pi2(Val a, Val b) {
  if (a == b) throw std::invalid_argument("pi2 needs distinct elements");
  return Relation::from_tuples(kThree, 2, {{a, b}, {b, a}});
}

Relation eps3(const Abc& s) {
  require_perm(s, "eps3");
  return Relation::from_tuples(kThree, 2,
                               {{s.a, s.a}, {s.a, s.b}, {s.b, s.a}, {s.b, s.b}, {s.c, s.c}});
}

Relation leq3(const Abc& s) {
  require_perm(s, "leq3");
  return Relation::from_tuples(
      kThree, 2, {{s.a, s.a}, {s.a, s.b}, {s.a, s.c}, {s.b, s.b}, {s.b, s.c}, {s.c, s.c}});
}

Relation leq2(Val a, Val b) {
  if (a == b) throw std::invalid_argument("leq2 needs distinct elements");
  return Relation::from_tuples(kThree, 2, {{a, a}, {a, b}, {b, b}});
}

Relation gamma3(Val a) { return central_relation(3, 2, a); }

Relation lambda3() {
  Relation r(kThree, 4);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) {
        int w = ((x - y + z) % 3 + 3) % 3;
        Val t[4] = {static_cast<Val>(x), static_cast<Val>(y), static_cast<Val>(z),
                    static_cast<Val>(w)};
        r.insert(t);
      }
  return r;
}

Relation lambda2(Val a, Val b) {
  if (a == b) throw std::invalid_argument("lambda2 needs distinct elements");
  Relation r(kThree, 4);
  Val elems[2] = {a, b};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        int w = x ^ y ^ z;  // x - y + z mod 2
        Val t[4] = {elems[x], elems[y], elems[z], elems[w]};
        r.insert(t);
      }
  return r;
}

Relation iota3() {
  Relation r(kThree, 3);
  for (std::size_t i = 0; i < r.space(); ++i) {
    auto t = decode_tuple(kThree, 3, i);
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) r.insert_index(i);
  }
  return r;
}

namespace {
std::vector<Val> phi_table(const Abc& s) {
  require_perm(s, "phi");
  std::vector<Val> phi(3);
  phi[s.a] = 0;
  phi[s.b] = 0;
  phi[s.c] = 1;
  return phi;
}
}  // namespace

Relation phi_pullback_pi2(const Abc& s) {
  Relation swap2 = Relation::from_tuples(2, 2, {{0, 1}, {1, 0}});
  return pullback_relation(swap2, phi_table(s), kThree);
}

Relation phi_pullback_lambda2(const Abc& s) {
  Relation l2(2, 4);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        Val t[4] = {static_cast<Val>(x), static_cast<Val>(y), static_cast<Val>(z),
                    static_cast<Val>(x ^ y ^ z)};
        l2.insert(t);
      }
  return pullback_relation(l2, phi_table(s), kThree);
}

Relation lambda2_with_point(const Abc& s) {
  require_perm(s, "lambda2_with_point");
  Relation r = lambda2(s.a, s.b);
  Val t[4] = {s.c, s.c, s.c, s.c};
  r.insert(t);
  return r;
}

const char* table2_literal_text(int line) {
  switch (line) {
    case 19:
      return "a a b a c\n"
             "a b a c a";
    case 20:
      return "a a b a c b c\n"
             "a b a c a c b";
    case 24:
      return "a a b b a\n"
             "a b a b c";
    case 25:
      return "a a b b a c b c\n"
             "a b a b c a c b";
    case 26:
      return "a b a b a b a b\n"
             "a b a b b a a b\n"
             "a b b a c c c c";
    case 27:
      return "a b b a a b b a a b\n"
             "a b a b a b a b a b\n"
             "a b a a b a b b c c";
    case 31:
      return "0 1 2 a\n"
             "0 1 2 b";
    case 33:
      return "0 1 2 a b a b\n"
             "0 1 2 b a c c";
    case 34:
      return "0 1 2 a a b b c c a b\n"
             "0 1 2 a a b b c c b a\n"
             "0 1 2 b c a c a b c c";
    case 35:
      return "a a a a b b b b a b c c c\n"
             "a a b b a a b b a b c c c\n"
             "a b a b a b a b c c a b c";
    case 38:
      return "0 1 2 a a\n"
             "0 1 2 b c";
    case 39:
      return "0 1 2 a b a c b\n"
             "0 1 2 b a c a c";
    case 40:
      return "a b a c a b a a b b a b c a a c c a c\n"
             "b a c a a a b a b a b b a c a c a c c\n"
             "c c b b a a a b a b b b a a c a c c c";
    default:
      throw std::invalid_argument("no matrix literal for line " + std::to_string(line));
  }
}

Relation table2_literal(int line, const Abc& s) {
  require_perm(s, "table2_literal");
  std::istringstream in(table2_literal_text(line));
  std::vector<std::vector<Val>> rows;
  std::string row_text;
  while (std::getline(in, row_text)) {
    std::istringstream row(row_text);
    std::vector<Val> vals;
    std::string tok;
    while (row >> tok) {
      Val v;
      if (tok == "a")
        v = s.a;
      else if (tok == "b")
        v = s.b;
      else if (tok == "c")
        v = s.c;
      else
        v = static_cast<Val>(std::stoi(tok));
      vals.push_back(v);
    }
    rows.push_back(std::move(vals));
  }
  // Columns of the printed matrix are the tuples.
  std::size_t cols = rows.at(0).size();
  for (const auto& r : rows)
    if (r.size() != cols) throw std::invalid_argument("ragged matrix literal");
  std::vector<std::vector<Val>> tuples;
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<Val> t;
    for (const auto& r : rows) t.push_back(r[c]);
    tuples.push_back(std::move(t));
  }
  return Relation::from_tuples(kThree, static_cast<int>(rows.size()), tuples);
}

Relation central_relation(int k, int r, Val center) {
  if (r < 1 || r > k - 1)
    throw std::invalid_argument("central relation arity must satisfy 1 <= r <= k-1");
  if (center >= k) throw std::invalid_argument("center out of range");
  Relation out(k, r);
  for (std::size_t i = 0; i < out.space(); ++i) {
    auto t = decode_tuple(k, r, i);
    bool take = false;
    for (std::size_t p = 0; p < t.size() && !take; ++p) {
      if (t[p] == center) take = true;
      for (std::size_t q = p + 1; q < t.size() && !take; ++q)
        if (t[p] == t[q]) take = true;
    }
    if (take) out.insert_index(i);
  }
  return out;
}

namespace {
std::vector<Val> center_candidates(const Relation& rho) {
  // c is central when {c} x A^{r-1} is contained in rho.
  std::vector<Val> out;
  const int k = rho.k();
  const int r = rho.arity();
  std::size_t rest = pow_size(k, r - 1);
  for (int c = 0; c < k; ++c) {
    bool ok = true;
    for (std::size_t tail = 0; tail < rest && ok; ++tail) {
      std::size_t idx = static_cast<std::size_t>(c) * rest + tail;
      if (!rho.contains_index(idx)) ok = false;
    }
    if (ok) out.push_back(static_cast<Val>(c));
  }
  return out;
}
}  // namespace

bool is_central(const Relation& rho) {
  std::size_t n = rho.size();
  if (n == 0 || n == rho.space()) return false;
  if (!rho.is_totally_reflexive() || !rho.is_totally_symmetric()) return false;
  return !center_candidates(rho).empty();
}

std::vector<Val> central_elements(const Relation& rho) {
  if (!is_central(rho)) throw std::invalid_argument("relation is not central");
  return center_candidates(rho);
}

Relation h_regular_from_family(std::span<const Relation> family, int h) {
  if (h < 3) throw std::invalid_argument("h-regular families need h >= 3");
  if (family.empty()) throw std::invalid_argument("family must be nonempty");
  const int k = family[0].k();
  std::vector<std::vector<std::vector<Val>>> blocks;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Relation& theta = family[i];
    if (theta.k() != k) throw std::invalid_argument("family members must share the universe");
    if (!theta.is_equivalence())
      throw std::invalid_argument("family member " + std::to_string(i) + " is not an equivalence");
    if (block_count(theta) != h)
      throw std::invalid_argument("family member " + std::to_string(i) +
                                  " does not have exactly " + std::to_string(h) + " blocks");
    blocks.push_back(equivalence_blocks(theta));
  }
  // Every choice of one block per member must intersect.
  std::vector<std::size_t> choice(family.size(), 0);
  for (;;) {
    for (int x = 0;; ++x) {
      if (x == k) {
        std::string combo;
        for (std::size_t i = 0; i < choice.size(); ++i)
          combo += (i ? "," : "") + std::to_string(choice[i]);
        throw std::invalid_argument("empty block intersection for block choice " + combo);
      }
      bool in_all = true;
      for (std::size_t i = 0; i < family.size() && in_all; ++i) {
        const auto& blk = blocks[i][choice[i]];
        if (std::find(blk.begin(), blk.end(), static_cast<Val>(x)) == blk.end()) in_all = false;
      }
      if (in_all) break;
    }
    std::size_t pos = family.size();
    while (pos > 0 && ++choice[pos - 1] == static_cast<std::size_t>(h)) {
      choice[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }

  Relation out(k, h);
  for (std::size_t idx = 0; idx < out.space(); ++idx) {
    auto t = decode_tuple(k, h, idx);
    bool in_all = true;
    for (const Relation& theta : family) {
      bool related_pair = false;
      for (std::size_t p = 0; p < t.size() && !related_pair; ++p)
        for (std::size_t q = p + 1; q < t.size() && !related_pair; ++q) {
          Val pair[2] = {t[p], t[q]};
          if (theta.contains(pair)) related_pair = true;
        }
      // h values over h blocks: transversal means pairwise unrelated.
      if (!related_pair) {
        in_all = false;
        break;
      }
    }
    if (in_all) out.insert_index(idx);
  }
  return out;
}

bool is_chain(std::span<const Relation> equivalences) {
  for (std::size_t i = 0; i < equivalences.size(); ++i)
    if (!equivalences[i].is_equivalence())
      throw std::invalid_argument("member " + std::to_string(i) + " is not an equivalence");
  auto contains_all = [](const Relation& big, const Relation& small) {
    for (auto idx : small.tuple_indices())
      if (!big.contains_index(idx)) return false;
    return true;
  };
  for (std::size_t i = 0; i < equivalences.size(); ++i)
    for (std::size_t j = i + 1; j < equivalences.size(); ++j)
      if (!contains_all(equivalences[i], equivalences[j]) &&
          !contains_all(equivalences[j], equivalences[i]))
        return false;
  return true;
}

RelationClass rosenberg_classify(const Relation& rho) {
  RelationClass out;
  const int k = rho.k();
  // (1) bounded partial order
  if (rho.arity() == 2 && rho.is_reflexive() && rho.is_antisymmetric() && rho.is_transitive()) {
    bool has_least = false, has_greatest = false;
    for (int x = 0; x < k; ++x) {
      bool least = true, greatest = true;
      for (int y = 0; y < k; ++y) {
        Val xy[2] = {static_cast<Val>(x), static_cast<Val>(y)};
        Val yx[2] = {static_cast<Val>(y), static_cast<Val>(x)};
        if (!rho.contains(xy)) least = false;
        if (!rho.contains(yx)) greatest = false;
      }
      has_least |= least;
      has_greatest |= greatest;
    }
    if (has_least && has_greatest) {
      out.tag = RelationType::BoundedOrder;
      return out;
    }
  }
  // (2) prime permutation
  if (auto sigma = graph_permutation(rho)) {
    bool fixed_point_free = true;
    for (int x = 0; x < k; ++x)
      if (sigma->at(static_cast<std::size_t>(x)) == x) fixed_point_free = false;
    if (fixed_point_free) {
      std::vector<int> cycle_len;
      std::vector<bool> seen(static_cast<std::size_t>(k), false);
      for (int x = 0; x < k; ++x) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        int len = 0, y = x;
        do {
          seen[static_cast<std::size_t>(y)] = true;
          y = sigma->at(static_cast<std::size_t>(y));
          ++len;
        } while (y != x);
        cycle_len.push_back(len);
      }
      auto is_prime = [](int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
          if (n % d == 0) return false;
        return true;
      };
      bool same = std::all_of(cycle_len.begin(), cycle_len.end(),
                              [&](int len) { return len == cycle_len[0]; });
      if (same && is_prime(cycle_len[0])) {
        out.tag = RelationType::PrimePermutation;
        return out;
      }
    }
  }
  // (3) nontrivial equivalence
  if (rho.is_equivalence() && rho != Relation::diagonal(k, 2) && rho != Relation::full(k, 2)) {
    out.tag = RelationType::NontrivialEquivalence;
    return out;
  }
  // (4) prime affine: graph of x - y + z over some elementary abelian p-group.
  // For prime k every such group is a relabeling of Z_k; found by enumeration.
  // Compared up to coordinate permutation, under which Pol is invariant.
  if (rho.arity() == 4 && (k == 2 || k == 3)) {
    Relation rho_canon = rho.canonical_coord_form();
    std::vector<Val> labels(static_cast<std::size_t>(k));
    std::iota(labels.begin(), labels.end(), 0);
    do {
      // labels[g] = element carrying group value g.
      std::vector<int> to_group(static_cast<std::size_t>(k));
      for (int v = 0; v < k; ++v) to_group[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])] = v;
      Relation cand(k, 4);
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
          for (int z = 0; z < k; ++z) {
            int gw = ((to_group[static_cast<std::size_t>(x)] - to_group[static_cast<std::size_t>(y)] +
                       to_group[static_cast<std::size_t>(z)]) %
                          k +
                      k) %
                     k;
            Val t[4] = {static_cast<Val>(x), static_cast<Val>(y), static_cast<Val>(z),
                        labels[static_cast<std::size_t>(gw)]};
            cand.insert(t);
          }
      if (cand == rho || cand.canonical_coord_form() == rho_canon) {
        out.tag = RelationType::PrimeAffine;
        return out;
      }
    } while (std::next_permutation(labels.begin(), labels.end()));
  }
  // (5) central
  if (is_central(rho)) {
    out.tag = RelationType::Central;
    out.central_elements = center_candidates(rho);
    return out;
  }
  // (6) h-regular with h = arity
  if (rho.arity() >= 3) {
    int h = rho.arity();
    auto candidates = equivalences_with_blocks(k, h);
    std::size_t subsets = std::size_t{1} << candidates.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      std::vector<Relation> family;
      for (std::size_t i = 0; i < candidates.size(); ++i)
        if (mask & (std::size_t{1} << i)) family.push_back(candidates[i]);
      try {
        if (h_regular_from_family(family, h) == rho) {
          out.tag = RelationType::HRegular;
          out.h = h;
          return out;
        }
      } catch (const std::invalid_argument&) {
        // family fails the h-regularity side conditions; skip
      }
    }
  }
  out.tag = RelationType::Other;
  return out;
}

const char* relation_type_name(RelationType t) {
  switch (t) {
    case RelationType::BoundedOrder: return "bounded-order";
    case RelationType::PrimePermutation: return "prime-permutation";
    case RelationType::NontrivialEquivalence: return "nontrivial-equivalence";
    case RelationType::PrimeAffine: return "prime-affine";
    case RelationType::Central: return "central";
    case RelationType::HRegular: return "h-regular";
    case RelationType::Other: return "other";
  }
  return "other";
}

namespace {

struct NamedEntry {
  const char* name;
  const char* params;
  Relation (*build)(const Abc&);
};

const NamedEntry kRegistry[] = {
    {"set1", "a", [](const Abc& s) { return subset_relation(3, {s.a}); }},
    {"set2", "a,b", [](const Abc& s) { return subset_relation(3, {s.a, s.b}); }},
    {"pi3c", "a,b,c", [](const Abc& s) { return cycle3_graph(s); }},
    {"pi3t", "a,b", [](const Abc& s) { return transposition3_graph(s.a, s.b); }},
    {"pi2", "a,b", [](const Abc& s) { return pi2(s.a, s.b); }},
    {"eps3", "a,b,c", [](const Abc& s) { return eps3(s); }},
    {"leq3", "a,b,c", [](const Abc& s) { return leq3(s); }},
    {"leq2", "a,b", [](const Abc& s) { return leq2(s.a, s.b); }},
    {"gamma3", "a", [](const Abc& s) { return gamma3(s.a); }},
    {"lambda3", "", [](const Abc&) { return lambda3(); }},
    {"lambda2", "a,b", [](const Abc& s) { return lambda2(s.a, s.b); }},
    {"iota3", "", [](const Abc&) { return iota3(); }},
    {"line19", "a,b,c", [](const Abc& s) { return table2_literal(19, s); }},
    {"line20", "a,b,c", [](const Abc& s) { return table2_literal(20, s); }},
    {"line24", "a,b,c", [](const Abc& s) { return table2_literal(24, s); }},
    {"line25", "a,b,c", [](const Abc& s) { return table2_literal(25, s); }},
    {"line26", "a,b,c", [](const Abc& s) { return table2_literal(26, s); }},
    {"line27", "a,b,c", [](const Abc& s) { return table2_literal(27, s); }},
    {"line31", "a,b,c", [](const Abc& s) { return table2_literal(31, s); }},
    {"line32", "a,b,c", [](const Abc& s) { return phi_pullback_pi2(s); }},
    {"line33", "a,b,c", [](const Abc& s) { return table2_literal(33, s); }},
    {"line34", "a,b,c", [](const Abc& s) { return table2_literal(34, s); }},
    {"line35", "a,b,c", [](const Abc& s) { return table2_literal(35, s); }},
    {"line36", "a,b,c", [](const Abc& s) { return lambda2_with_point(s); }},
    {"line37", "a,b,c", [](const Abc& s) { return phi_pullback_lambda2(s); }},
    {"line38", "a,b,c", [](const Abc& s) { return table2_literal(38, s); }},
    {"line39", "a,b,c", [](const Abc& s) { return table2_literal(39, s); }},
    {"line40", "a,b,c", [](const Abc& s) { return table2_literal(40, s); }},
};

}  // namespace

Relation build_named(const std::string& name, const std::map<std::string, int>& params) {
  Abc s;
  if (auto it = params.find("a"); it != params.end()) s.a = static_cast<Val>(it->second);
  if (auto it = params.find("b"); it != params.end()) s.b = static_cast<Val>(it->second);
  if (auto it = params.find("c"); it != params.end()) s.c = static_cast<Val>(it->second);
  for (const auto& [key, value] : params) {
    if (key != "a" && key != "b" && key != "c")
      throw std::invalid_argument("unknown relation parameter: " + key);
    if (value < 0 || value > 2)
      throw std::invalid_argument("relation parameters must be in {0,1,2}");
  }
  for (const NamedEntry& e : kRegistry)
    if (name == e.name) return e.build(s);
  throw std::invalid_argument("unknown relation name: " + name);
}

Relation parse_named_relation(const std::string& token) {
  auto open = token.find('[');
  std::string name = token.substr(0, open);
  std::map<std::string, int> params;
  if (open != std::string::npos) {
    if (token.back() != ']') throw std::invalid_argument("missing ] in relation token");
    std::string body = token.substr(open + 1, token.size() - open - 2);
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("relation params use key=value");
      params[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
    }
  }
  return build_named(name, params);
}

std::vector<std::pair<std::string, std::string>> named_relation_list() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const NamedEntry& e : kRegistry) out.emplace_back(e.name, e.params);
  return out;
}

}  // namespace clonekit
