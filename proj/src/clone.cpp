#include "clonekit/clone.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "clonekit/errors.hpp"
#include "clonekit/named_relations.hpp"

namespace clonekit {

bool ClosureResult::contains(const Operation& f) const {
  if (f.arity() < 1 || f.arity() > cap) return false;
  const auto& list = by_arity[static_cast<std::size_t>(f.arity())];
  return std::find(list.begin(), list.end(), f) != list.end();
}

ClosureResult generate_closure(std::span<const Operation> gens, int cap,
                               const ClosureBudget& budget) {
  if (cap < 1) throw std::invalid_argument("closure cap must be positive");
  if (gens.empty())
    throw std::invalid_argument("closure needs a nonempty generator list");
  int k = gens[0].k();
  for (const Operation& g : gens) {
    if (g.k() != k) throw std::invalid_argument("generators must share the universe");
    if (g.arity() > cap)
      throw CapExceededError("generator arity " + std::to_string(g.arity()) +
                             " exceeds closure cap " + std::to_string(cap));
  }

  ClosureResult res;
  res.k = k;
  res.cap = cap;
  res.by_arity.resize(static_cast<std::size_t>(cap) + 1);
  res.derivations.resize(static_cast<std::size_t>(cap) + 1);
  std::vector<std::map<std::vector<Val>, std::size_t>> index(static_cast<std::size_t>(cap) + 1);

  std::size_t total = 0;
  std::vector<std::pair<int, std::size_t>> worklist;
  auto add = [&](int arity, Operation op, Derivation deriv) -> bool {
    auto [it, fresh] = index[static_cast<std::size_t>(arity)].try_emplace(
        op.table(), res.by_arity[static_cast<std::size_t>(arity)].size());
    if (!fresh) return false;
    worklist.emplace_back(arity, it->second);
    res.by_arity[static_cast<std::size_t>(arity)].push_back(std::move(op));
    res.derivations[static_cast<std::size_t>(arity)].push_back(std::move(deriv));
    ++total;
    return true;
  };

  for (int n = 1; n <= cap; ++n)
    for (int i = 0; i < n; ++i) add(n, Operation::projection(k, n, i), Derivation{});
  for (const Operation& g : gens) add(g.arity(), g, Derivation{});

  std::uint64_t compositions = 0;
  bool exhausted = false;
  auto try_compose = [&](int outer_arity, std::size_t fi, int m,
                         std::span<const std::size_t> sel) -> bool {
    if (exhausted) return false;
    if (++compositions > budget.max_compositions || total >= budget.max_ops) {
      exhausted = true;
      return false;
    }
    const auto& inner = res.by_arity[static_cast<std::size_t>(m)];
    std::vector<Operation> gs;
    gs.reserve(sel.size());
    for (std::size_t j : sel) gs.push_back(inner[j]);
    Operation composed = compose(res.by_arity[static_cast<std::size_t>(outer_arity)][fi], gs);
    Derivation d;
    d.seed = false;
    d.outer_arity = outer_arity;
    d.outer_index = fi;
    d.inner_indices.assign(sel.begin(), sel.end());
    add(m, std::move(composed), std::move(d));
    return true;
  };

  // Each composition is attempted when one of its participants is processed,
  // so nothing is rescanned once the worklist drains.
  for (std::size_t qi = 0; qi < worklist.size() && !exhausted; ++qi) {
    auto [ax, xi] = worklist[qi];
    // x as outer operation
    for (int m = 1; m <= cap && !exhausted; ++m) {
      std::size_t inner_count = res.by_arity[static_cast<std::size_t>(m)].size();
      std::vector<std::size_t> sel(static_cast<std::size_t>(ax), 0);
      if (inner_count == 0) continue;
      for (;;) {
        if (!try_compose(ax, xi, m, sel)) break;
        std::size_t pos = sel.size();
        while (pos > 0 && ++sel[pos - 1] == inner_count) {
          sel[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
    // x as one inner component; other components range over already-known ops
    for (int outer_arity = 1; outer_arity <= cap && !exhausted; ++outer_arity) {
      std::size_t outer_count = res.by_arity[static_cast<std::size_t>(outer_arity)].size();
      std::size_t inner_count = res.by_arity[static_cast<std::size_t>(ax)].size();
      for (std::size_t fi = 0; fi < outer_count && !exhausted; ++fi) {
        for (int slot = 0; slot < outer_arity && !exhausted; ++slot) {
          std::vector<std::size_t> sel(static_cast<std::size_t>(outer_arity), 0);
          sel[static_cast<std::size_t>(slot)] = xi;
          auto advance = [&]() -> bool {
            for (int pos = outer_arity - 1; pos >= 0; --pos) {
              if (pos == slot) continue;
              if (++sel[static_cast<std::size_t>(pos)] < inner_count) return true;
              sel[static_cast<std::size_t>(pos)] = 0;
            }
            return false;
          };
          for (;;) {
            if (!try_compose(outer_arity, fi, ax, sel)) break;
            if (!advance()) break;
          }
        }
      }
    }
  }
  res.complete = !exhausted;
  return res;
}

std::vector<Operation> monoid_closure(std::span<const Operation> unary_ops) {
  if (unary_ops.empty()) throw std::invalid_argument("monoid closure needs a nonempty generator set");
  int k = unary_ops[0].k();
  std::set<std::vector<Val>> seen;
  std::vector<Operation> list;
  auto add = [&](const Operation& u) {
    if (u.k() != k || u.arity() != 1) throw std::invalid_argument("monoid elements must be unary on one universe");
    if (seen.insert(u.table()).second) list.push_back(u);
  };
  std::vector<Val> id(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v) id[static_cast<std::size_t>(v)] = static_cast<Val>(v);
  add(Operation::unary_map(k, id));
  for (const Operation& u : unary_ops) add(u);
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < list.size(); ++j) {
      Operation uv = compose(list[i], std::vector<Operation>{list[j]});
      add(uv);
    }
  std::sort(list.begin(), list.end());
  return list;
}

bool is_quasilinear(const Operation& f) {
  const int k = f.k();
  const int n = f.arity();
  if (n > 5) throw UnsupportedQueryError("quasilinear decision supported up to arity 5");
  const std::size_t points = f.points();
  std::vector<std::vector<Val>> digits(points);
  for (std::size_t p = 0; p < points; ++p) digits[p] = decode_tuple(k, n, p);

  std::size_t hcount = std::size_t{1} << k;  // maps A -> {0,1} as bitmasks
  std::vector<std::size_t> h(static_cast<std::size_t>(n), 0);
  for (;;) {
    // xorbit[p] = h_1(p_1) xor ... xor h_n(p_n)
    // g must be constant on each xor-class and match f there.
    int g_for[2] = {-1, -1};
    bool ok = true;
    for (std::size_t p = 0; p < points && ok; ++p) {
      int bit = 0;
      for (int j = 0; j < n; ++j) bit ^= static_cast<int>((h[static_cast<std::size_t>(j)] >> digits[p][static_cast<std::size_t>(j)]) & 1);
      int want = f.at(p);
      if (g_for[bit] < 0)
        g_for[bit] = want;
      else if (g_for[bit] != want)
        ok = false;
    }
    if (ok) return true;
    std::size_t pos = h.size();
    while (pos > 0 && ++h[pos - 1] == hcount) {
      h[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return false;
}

struct CloneSpec::Impl {
  int k = 0;
  Kind kind = Kind::Pol;
  std::vector<Relation> rels;
  std::vector<CloneSpec> parts;
  std::vector<Operation> gens;
  int cap = 0;
  int level = 0;
  std::vector<Operation> monoid;  // normalized <M>, sorted

  mutable std::mutex mu;
  mutable std::optional<ClosureResult> closure;

  const ClosureResult& closure_for_membership() const {
    std::lock_guard<std::mutex> lock(mu);
    if (!closure) closure = generate_closure(gens, cap);
    return *closure;
  }
};

CloneSpec CloneSpec::pol(int k, std::vector<Relation> relations) {
  auto impl = std::make_shared<Impl>();
  impl->k = k;
  impl->kind = Kind::Pol;
  for (const Relation& r : relations)
    if (r.k() != k) throw std::invalid_argument("relation universe mismatch");
  impl->rels = std::move(relations);
  return CloneSpec(std::move(impl));
}

CloneSpec CloneSpec::meet(std::vector<CloneSpec> parts) {
  if (parts.empty()) throw std::invalid_argument("meet needs at least one part");
  auto impl = std::make_shared<Impl>();
  impl->k = parts[0].k();
  impl->kind = Kind::Meet;
  for (const CloneSpec& p : parts)
    if (p.k() != impl->k) throw std::invalid_argument("meet parts must share the universe");
  impl->parts = std::move(parts);
  return CloneSpec(std::move(impl));
}

CloneSpec CloneSpec::generated(int k, std::vector<Operation> generators, int cap) {
  auto impl = std::make_shared<Impl>();
  impl->k = k;
  impl->kind = Kind::Generated;
  impl->cap = cap;
  for (const Operation& g : generators)
    if (g.k() != k) throw std::invalid_argument("generator universe mismatch");
  impl->gens = std::move(generators);
  if (impl->gens.empty()) throw std::invalid_argument("generated clone needs generators (projections are implicit)");
  return CloneSpec(std::move(impl));
}

CloneSpec CloneSpec::burle(int k, int level, std::vector<Operation> monoid_gens) {
  if (level < 0 || level > k) throw std::invalid_argument("Burle level must lie in 0..k");
  auto impl = std::make_shared<Impl>();
  impl->k = k;
  impl->kind = Kind::Burle;
  impl->level = level;
  impl->monoid = monoid_closure(monoid_gens);
  for (const Operation& u : impl->monoid)
    if (u.k() != k) throw std::invalid_argument("monoid universe mismatch");
  return CloneSpec(std::move(impl));
}

int CloneSpec::k() const { return impl_->k; }
CloneSpec::Kind CloneSpec::kind() const { return impl_->kind; }
const std::vector<Relation>& CloneSpec::relations() const { return impl_->rels; }
const std::vector<CloneSpec>& CloneSpec::parts() const { return impl_->parts; }
const std::vector<Operation>& CloneSpec::generators() const { return impl_->gens; }
int CloneSpec::cap() const { return impl_->cap; }
int CloneSpec::burle_level() const { return impl_->level; }
const std::vector<Operation>& CloneSpec::burle_monoid() const { return impl_->monoid; }

bool CloneSpec::member(const Operation& f) const {
  if (f.k() != impl_->k) throw std::invalid_argument("universe mismatch in membership query");
  switch (impl_->kind) {
    case Kind::Pol:
      for (const Relation& r : impl_->rels)
        if (!preserves(f, r)) return false;
      return true;
    case Kind::Meet:
      for (const CloneSpec& p : impl_->parts)
        if (!p.member(f)) return false;
      return true;
    case Kind::Generated: {
      if (f.arity() > impl_->cap)
        throw CapExceededError("membership query of arity " + std::to_string(f.arity()) +
                               " exceeds generated-clone cap " + std::to_string(impl_->cap));
      const ClosureResult& c = impl_->closure_for_membership();
      if (c.contains(f)) return true;
      if (!c.complete)
        throw UnsupportedQueryError("closure budget exhausted before membership could be refuted");
      return false;
    }
    case Kind::Burle: {
      if (impl_->level >= impl_->k) return true;
      if (auto u = f.unary_collapse()) {
        return std::binary_search(impl_->monoid.begin(), impl_->monoid.end(), *u);
      }
      if (impl_->level >= 2) return static_cast<int>(f.range().size()) <= impl_->level;
      if (impl_->level == 1) return is_quasilinear(f);
      return false;  // level 0 holds only essentially at most unary operations
    }
  }
  return false;
}

namespace {

std::vector<Operation> filter_all_tables(int k, int arity,
                                         const std::function<bool(const Operation&)>& pred) {
  std::size_t width = pow_size(k, arity);
  std::size_t count = 1;
  for (std::size_t i = 0; i < width; ++i) count *= static_cast<std::size_t>(k);
  std::vector<Operation> out;
  for (std::size_t code = 0; code < count; ++code) {
    Operation f(k, arity, decode_tuple(k, static_cast<int>(width), code));
    if (pred(f)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<Operation> CloneSpec::enumerate(int arity) const {
  if (arity < 1) throw std::invalid_argument("arity must be positive");
  if (impl_->kind == Kind::Generated) {
    if (arity > impl_->cap)
      throw CapExceededError("enumeration above the generated-clone cap");
    const ClosureResult& c = impl_->closure_for_membership();
    if (!c.complete)
      throw UnsupportedQueryError("closure budget exhausted; enumeration incomplete");
    auto list = c.by_arity[static_cast<std::size_t>(arity)];
    std::sort(list.begin(), list.end());
    return list;
  }
  if (arity <= 2)
    return filter_all_tables(impl_->k, arity, [&](const Operation& f) { return member(f); });
  if (arity == 3) {
    if (auto rels = as_pol_relations()) {
      std::vector<Operation> out;
      enumerate_pol_ops(impl_->k, *rels, 3, [&](const Operation& f) {
        out.push_back(f);
        return true;
      });
      return out;
    }
  }
  throw UnsupportedQueryError("enumeration supported for arity <= 2 (<= 3 for Pol-defined clones)");
}

std::optional<std::vector<Relation>> CloneSpec::as_pol_relations() const {
  switch (impl_->kind) {
    case Kind::Pol:
      return impl_->rels;
    case Kind::Meet: {
      std::vector<Relation> out;
      for (const CloneSpec& p : impl_->parts) {
        auto sub = p.as_pol_relations();
        if (!sub) return std::nullopt;
        out.insert(out.end(), sub->begin(), sub->end());
      }
      return out;
    }
    case Kind::Burle: {
      if (impl_->level >= impl_->k) return std::vector<Relation>{};
      // Slupecki's clone: B_{k-1} with full unary part equals Pol of the
      // unique k-regular relation; implemented for k = 3.
      if (impl_->k == 3 && impl_->level == 2 &&
          impl_->monoid.size() == pow_size(3, 3))
        return std::vector<Relation>{iota3()};
      return std::nullopt;
    }
    case Kind::Generated:
      return std::nullopt;
  }
  return std::nullopt;
}


bool enumerate_pol_ops(int k, std::span<const Relation> rels, int arity,
                       const std::function<bool(const Operation&)>& callback,
                       std::uint64_t max_nodes) {
  const std::size_t cells = pow_size(k, arity);
  struct Cons {
    std::vector<std::uint32_t> cell;  // one per relation position
    const Relation* rel;
    std::vector<std::uint64_t> mask;  // mask[pos][val] flattened
    int r;
    std::size_t tuples;
  };
  std::vector<Cons> constraints;
  std::vector<std::vector<std::size_t>> touching(cells);
  for (const Relation& rho : rels) {
    auto tup = rho.tuples();
    if (tup.size() > 64)
      throw UnsupportedQueryError("backtracking enumeration supports relations with at most 64 tuples");
    const int r = rho.arity();
    // selection of `arity` tuples; constraint cells are the componentwise points
    std::vector<std::size_t> sel(static_cast<std::size_t>(arity), 0);
    if (tup.empty()) continue;
    std::vector<Val> args(static_cast<std::size_t>(arity));
    for (;;) {
      Cons c;
      c.rel = &rho;
      c.r = r;
      c.tuples = tup.size();
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < arity; ++j) args[static_cast<std::size_t>(j)] = tup[sel[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)];
        c.cell.push_back(static_cast<std::uint32_t>(encode_tuple(k, args)));
      }
      c.mask.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(k), 0);
      for (std::size_t t = 0; t < tup.size(); ++t)
        for (int i = 0; i < r; ++i)
          c.mask[static_cast<std::size_t>(i) * k + tup[t][static_cast<std::size_t>(i)]] |= std::uint64_t{1} << t;
      std::size_t id = constraints.size();
      constraints.push_back(std::move(c));
      for (std::uint32_t cellv : constraints.back().cell) touching[cellv].push_back(id);
      std::size_t pos = sel.size();
      while (pos > 0 && ++sel[pos - 1] == tup.size()) {
        sel[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  for (auto& t : touching) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }

  std::vector<Val> table(cells, 0);
  std::vector<bool> assigned(cells, false);
  std::uint64_t nodes = 0;
  bool exhausted = true;
  bool keep_going = true;

  auto feasible = [&](std::size_t cell) {
    for (std::size_t id : touching[cell]) {
      const Cons& c = constraints[id];
      std::uint64_t m = c.tuples == 64 ? ~std::uint64_t{0}
                                       : ((std::uint64_t{1} << c.tuples) - 1);
      for (int i = 0; i < c.r; ++i) {
        std::uint32_t cv = c.cell[static_cast<std::size_t>(i)];
        if (assigned[cv]) m &= c.mask[static_cast<std::size_t>(i) * k + table[cv]];
      }
      if (m == 0) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (!keep_going) return;
    if (cell == cells) {
      if (!callback(Operation(k, arity, table))) keep_going = false;
      return;
    }
    for (int v = 0; v < k && keep_going; ++v) {
      if (++nodes > max_nodes) {
        exhausted = false;
        keep_going = false;
        return;
      }
      table[cell] = static_cast<Val>(v);
      assigned[cell] = true;
      if (feasible(cell)) self(self, cell + 1);
      assigned[cell] = false;
    }
  };
  rec(rec, 0);
  return exhausted && keep_going;
}

bool clones_equal_up_to(const CloneSpec& c1, const CloneSpec& c2, int max_arity) {
  return !separating_op(c1, c2, max_arity).has_value();
}

std::optional<Operation> separating_op(const CloneSpec& c1, const CloneSpec& c2, int max_arity) {
  if (c1.k() != c2.k()) throw std::invalid_argument("universe mismatch");
  const int k = c1.k();
  for (int arity = 1; arity <= std::min(max_arity, 2); ++arity) {
    std::size_t width = pow_size(k, arity);
    std::size_t count = 1;
    for (std::size_t i = 0; i < width; ++i) count *= static_cast<std::size_t>(k);
    for (std::size_t code = 0; code < count; ++code) {
      Operation f(k, arity, decode_tuple(k, static_cast<int>(width), code));
      if (c1.member(f) != c2.member(f)) return f;
    }
  }
  if (max_arity >= 3) {
    auto r1 = c1.as_pol_relations();
    auto r2 = c2.as_pol_relations();
    if (!r1 || !r2)
      throw UnsupportedQueryError("arity-3 separation needs Pol-defined clones");
    std::optional<Operation> found;
    enumerate_pol_ops(k, *r1, 3, [&](const Operation& f) {
      if (!c2.member(f)) {
        found = f;
        return false;
      }
      return true;
    });
    if (found) return found;
    enumerate_pol_ops(k, *r2, 3, [&](const Operation& f) {
      if (!c1.member(f)) {
        found = f;
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> split_top_level(const std::string& body, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : body) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

Relation relation_item(const std::string& token) {
  std::string t = strip(token);
  if (t.find('[') != std::string::npos) return parse_named_relation(t);
  for (const auto& [name, params] : named_relation_list())
    if (t == name) return parse_named_relation(t);
  return load_relation_file(t);
}

}  // namespace

CloneSpec parse_clone_spec(const std::string& expr) {
  std::string e = strip(expr);
  auto open = e.find('(');
  if (open == std::string::npos || e.back() != ')')
    throw std::invalid_argument("clone spec must look like head(...)");
  std::string head = e.substr(0, open);
  std::string body = e.substr(open + 1, e.size() - open - 2);
  if (head == "pol") {
    std::vector<Relation> rels;
    for (const std::string& item : split_top_level(body, ','))
      if (!strip(item).empty()) rels.push_back(relation_item(item));
    int k = rels.empty() ? 3 : rels[0].k();
    return CloneSpec::pol(k, std::move(rels));
  }
  if (head == "meet") {
    std::vector<CloneSpec> parts;
    for (const std::string& item : split_top_level(body, ','))
      parts.push_back(parse_clone_spec(item));
    return CloneSpec::meet(std::move(parts));
  }
  if (head == "gen") {
    auto halves = split_top_level(body, ';');
    if (halves.size() != 2) throw std::invalid_argument("gen(ops...;cap=N)");
    std::vector<Operation> gens;
    for (const std::string& item : split_top_level(halves[0], ','))
      gens.push_back(Operation::from_string(strip(item)));
    std::string capspec = strip(halves[1]);
    if (capspec.rfind("cap=", 0) == 0) capspec = capspec.substr(4);
    int cap = std::stoi(capspec);
    int k = gens.empty() ? 3 : gens[0].k();
    return CloneSpec::generated(k, std::move(gens), cap);
  }
  if (head == "burle") {
    auto halves = split_top_level(body, ';');
    if (halves.size() != 2) throw std::invalid_argument("burle(level; maps...)");
    int level = std::stoi(strip(halves[0]));
    std::vector<Operation> monoid;
    for (const std::string& item : split_top_level(halves[1], ',')) {
      std::string t = strip(item);
      if (t == "tminus") {
        auto tm = tminus_monoid(3);
        monoid.insert(monoid.end(), tm.begin(), tm.end());
      } else if (t == "allunary") {
        auto all = all_unary_maps(3);
        monoid.insert(monoid.end(), all.begin(), all.end());
      } else {
        monoid.push_back(Operation::from_string(t));
      }
    }
    int k = monoid.empty() ? 3 : monoid[0].k();
    return CloneSpec::burle(k, level, std::move(monoid));
  }
  throw std::invalid_argument("unknown clone spec head: " + head);
}

}  // namespace clonekit
