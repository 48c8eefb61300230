#include "clonekit/minor.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <map>
#include <mutex>
#include <stdexcept>

#include "clonekit/errors.hpp"
#include "clonekit/parallel.hpp"

namespace clonekit {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Bitmask over the tuples of one relation (up to 128 tuples).
struct Mask {
  std::uint64_t w0 = 0, w1 = 0;
  void set(std::size_t i) { (i < 64 ? w0 : w1) |= std::uint64_t{1} << (i & 63); }
  Mask and_with(const Mask& o) const { return Mask{w0 & o.w0, w1 & o.w1}; }
  bool empty() const { return w0 == 0 && w1 == 0; }
};

struct SolverRel {
  int r = 0;
  std::vector<Mask> mask;  // mask[pos * k + val]: tuples with value val at pos
};

struct VarSlot {
  std::uint16_t var = 0;
  std::uint8_t npos = 0;
  std::array<std::uint8_t, 4> pos{};  // relation positions held by this var
};

struct Cons {
  std::uint32_t rel = 0;
  std::uint8_t nslots = 0;
  std::array<VarSlot, 4> slot{};
};

class MinorSolver {
 public:
  MinorSolver(const Operation& f, const Operation& g, std::span<const Relation> rels,
              const SolveBudget& budget)
      : f_(f), g_(g), budget_(budget), k_(f.k()), m_(g.arity()) {
    nvars_ = f.points();
    domain_size_ = g.points();
    words_ = (domain_size_ + 63) / 64;

    digits_.resize(domain_size_ * static_cast<std::size_t>(m_));
    for (std::size_t q = 0; q < domain_size_; ++q) {
      auto d = decode_tuple(k_, m_, q);
      for (int j = 0; j < m_; ++j)
        digits_[q * static_cast<std::size_t>(m_) + static_cast<std::size_t>(j)] =
            d[static_cast<std::size_t>(j)];
    }

    build_domains();
    if (!infeasible_) build_constraints(rels);
  }

  MinorResult solve() {
    MinorResult out;
    auto start = std::chrono::steady_clock::now();
    deadline_ = start + std::chrono::milliseconds(budget_.max_millis);
    Status st = Status::Exhausted;
    if (!infeasible_) {
      for (std::size_t c = 0; c < constraints_.size(); ++c) enqueue(c);
      st = propagate() ? search() : Status::Exhausted;
    }
    out.nodes = nodes_;
    out.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
    switch (st) {
      case Status::Solved:
        out.verdict = Verdict::Yes;
        out.witness = extract_witness();
        break;
      case Status::Budget:
        out.verdict = Verdict::Unknown;
        break;
      case Status::Exhausted:
        out.verdict = Verdict::No;
        break;
    }
    return out;
  }

 private:
  enum class Status { Solved, Exhausted, Budget };

  const Operation& f_;
  const Operation& g_;
  SolveBudget budget_;
  int k_;
  int m_;
  std::size_t nvars_ = 0;
  std::size_t domain_size_ = 0;
  std::size_t words_ = 0;
  bool infeasible_ = false;

  std::vector<Val> digits_;  // digits_[q * m + j] = coordinate j of point q
  std::vector<SolverRel> rels_;
  std::vector<Cons> constraints_;
  std::vector<std::vector<std::uint32_t>> touching_;

  std::vector<std::uint64_t> dom_;    // nvars x words
  std::vector<std::uint32_t> count_;  // nvars
  std::vector<std::uint32_t> queue_;
  std::vector<bool> queued_;
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point deadline_;

  void build_domains() {
    dom_.assign(nvars_ * words_, 0);
    count_.assign(nvars_, 0);
    for (std::size_t p = 0; p < nvars_; ++p) {
      Val want = f_.at(p);
      std::uint32_t cnt = 0;
      for (std::size_t q = 0; q < domain_size_; ++q)
        if (g_.at(q) == want) {
          dom_[p * words_ + (q >> 6)] |= std::uint64_t{1} << (q & 63);
          ++cnt;
        }
      count_[p] = cnt;
      if (cnt == 0) {
        // Some g-fiber is empty: f takes a value outside the range of g.
        infeasible_ = true;
        return;
      }
    }
  }

  void build_constraints(std::span<const Relation> rels) {
    const int n = f_.arity();
    touching_.assign(nvars_, {});
    for (const Relation& rho : rels) {
      auto tup = rho.tuples();
      if (tup.size() > 128)
        throw UnsupportedQueryError("solver supports relations with at most 128 tuples");
      if (tup.empty()) continue;
      const int r = rho.arity();
      if (r > 4) throw UnsupportedQueryError("solver supports relations of arity at most 4");
      SolverRel sr;
      sr.r = r;
      sr.mask.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(k_), Mask{});
      for (std::size_t t = 0; t < tup.size(); ++t)
        for (int i = 0; i < r; ++i)
          sr.mask[static_cast<std::size_t>(i) * k_ + tup[t][static_cast<std::size_t>(i)]].set(t);
      rels_.push_back(std::move(sr));
      auto rel_id = static_cast<std::uint32_t>(rels_.size() - 1);

      // One constraint per selection of n tuples from rho; the point at
      // relation position i has coordinates (u_1[i], ..., u_n[i]).
      std::vector<std::size_t> sel(static_cast<std::size_t>(n), 0);
      std::vector<Val> coords(static_cast<std::size_t>(n));
      for (;;) {
        Cons c;
        c.rel = rel_id;
        for (int i = 0; i < r; ++i) {
          for (int j = 0; j < n; ++j)
            coords[static_cast<std::size_t>(j)] =
                tup[sel[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)];
          auto var = static_cast<std::uint16_t>(encode_tuple(k_, coords));
          bool found = false;
          for (int s = 0; s < c.nslots && !found; ++s)
            if (c.slot[static_cast<std::size_t>(s)].var == var) {
              auto& vs = c.slot[static_cast<std::size_t>(s)];
              vs.pos[vs.npos++] = static_cast<std::uint8_t>(i);
              found = true;
            }
          if (!found) {
            auto& vs = c.slot[c.nslots++];
            vs.var = var;
            vs.npos = 1;
            vs.pos[0] = static_cast<std::uint8_t>(i);
          }
        }
        auto id = static_cast<std::uint32_t>(constraints_.size());
        constraints_.push_back(c);
        for (int s = 0; s < c.nslots; ++s)
          touching_[c.slot[static_cast<std::size_t>(s)].var].push_back(id);

        std::size_t pos = sel.size();
        while (pos > 0 && ++sel[pos - 1] == tup.size()) {
          sel[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
    queued_.assign(constraints_.size(), false);
  }

  void enqueue(std::size_t cid) {
    if (!queued_[cid]) {
      queued_[cid] = true;
      queue_.push_back(static_cast<std::uint32_t>(cid));
    }
  }

  // Narrows cols by the digits of value q at every relation position the
  // slot occupies; false when a coordinate loses all candidate tuples.
  bool apply_slot(const SolverRel& sr, const VarSlot& vs, std::size_t q,
                  std::array<Mask, 6>& cols) const {
    for (int j = 0; j < m_; ++j) {
      Val d = digits_[q * static_cast<std::size_t>(m_) + static_cast<std::size_t>(j)];
      Mask cur = cols[static_cast<std::size_t>(j)];
      for (int pi = 0; pi < vs.npos; ++pi)
        cur = cur.and_with(
            sr.mask[static_cast<std::size_t>(vs.pos[static_cast<std::size_t>(pi)]) * k_ + d]);
      if (cur.empty()) return false;
      cols[static_cast<std::size_t>(j)] = cur;
    }
    return true;
  }

  bool extend(const Cons& c, int si, int next, const std::array<Mask, 6>& cols) {
    if (next == c.nslots) return true;
    if (next == si) return extend(c, si, next + 1, cols);
    const VarSlot& vs = c.slot[static_cast<std::size_t>(next)];
    const SolverRel& sr = rels_[c.rel];
    std::size_t var = vs.var;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = dom_[var * words_ + w];
      while (bits) {
        std::uint64_t low = bits & (~bits + 1);
        std::size_t q = (w << 6) + static_cast<std::size_t>(std::countr_zero(low));
        bits ^= low;
        std::array<Mask, 6> cols2 = cols;
        if (apply_slot(sr, vs, q, cols2) && extend(c, si, next + 1, cols2)) return true;
      }
    }
    return false;
  }

  bool supported(const Cons& c, int si, std::size_t q) {
    const SolverRel& sr = rels_[c.rel];
    std::array<Mask, 6> cols;
    for (int j = 0; j < m_; ++j) cols[static_cast<std::size_t>(j)] = Mask{~std::uint64_t{0}, ~std::uint64_t{0}};
    if (!apply_slot(sr, c.slot[static_cast<std::size_t>(si)], q, cols)) return false;
    return extend(c, si, 0, cols);
  }

  bool revise(std::size_t cid) {
    const Cons& c = constraints_[cid];
    for (int si = 0; si < c.nslots; ++si) {
      std::size_t var = c.slot[static_cast<std::size_t>(si)].var;
      bool changed = false;
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = dom_[var * words_ + w];
        while (bits) {
          std::uint64_t low = bits & (~bits + 1);
          std::size_t q = (w << 6) + static_cast<std::size_t>(std::countr_zero(low));
          bits ^= low;
          if (!supported(c, si, q)) {
            dom_[var * words_ + w] &= ~low;
            --count_[var];
            changed = true;
          }
        }
      }
      if (changed) {
        if (count_[var] == 0) return false;
        for (std::uint32_t dep : touching_[var]) enqueue(dep);
      }
    }
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      std::uint32_t cid = queue_.back();
      queue_.pop_back();
      queued_[cid] = false;
      if (!revise(cid)) {
        for (std::uint32_t q : queue_) queued_[q] = false;
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  Status search() {
    // Smallest current domain first, ties by encoded index.
    std::size_t best = nvars_;
    std::uint32_t best_count = 0;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (count_[v] > 1 && (best == nvars_ || count_[v] < best_count)) {
        best = v;
        best_count = count_[v];
      }
    if (best == nvars_) return Status::Solved;

    std::vector<std::uint64_t> saved_dom = dom_;
    std::vector<std::uint32_t> saved_count = count_;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = saved_dom[best * words_ + w];
      while (bits) {
        std::uint64_t low = bits & (~bits + 1);
        bits ^= low;
        if (++nodes_ > budget_.max_nodes) return Status::Budget;
        if ((nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_)
          return Status::Budget;
        dom_ = saved_dom;
        count_ = saved_count;
        std::fill(dom_.begin() + static_cast<std::ptrdiff_t>(best * words_),
                  dom_.begin() + static_cast<std::ptrdiff_t>((best + 1) * words_), 0);
        dom_[best * words_ + w] = low;
        count_[best] = 1;
        for (std::uint32_t dep : touching_[best]) enqueue(dep);
        if (propagate()) {
          Status st = search();
          if (st != Status::Exhausted) return st;  // Solved keeps dom_ intact
        }
      }
    }
    return Status::Exhausted;
  }

  MinorWitness extract_witness() {
    MinorWitness w;
    const int n = f_.arity();
    std::vector<std::vector<Val>> tables(static_cast<std::size_t>(m_),
                                         std::vector<Val>(nvars_));
    for (std::size_t p = 0; p < nvars_; ++p) {
      std::size_t q = 0;
      for (std::size_t wd = 0; wd < words_; ++wd)
        if (dom_[p * words_ + wd]) {
          q = (wd << 6) + static_cast<std::size_t>(std::countr_zero(dom_[p * words_ + wd]));
          break;
        }
      for (int j = 0; j < m_; ++j)
        tables[static_cast<std::size_t>(j)][p] =
            digits_[q * static_cast<std::size_t>(m_) + static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < m_; ++j)
      w.components.emplace_back(k_, n, std::move(tables[static_cast<std::size_t>(j)]));
    return w;
  }
};

}  // namespace

MinorResult is_minor(const Operation& f, const Operation& g,
                     std::span<const Relation> rels, const SolveBudget& budget) {
  if (f.k() != g.k()) throw std::invalid_argument("universe mismatch between f and g");
  for (const Relation& r : rels)
    if (r.k() != f.k()) throw std::invalid_argument("relation universe mismatch");
  if (f.arity() > 4) throw UnsupportedQueryError("inner arity above 4 is unsupported");
  if (g.arity() > 6) throw UnsupportedQueryError("outer arity above 6 is unsupported");
  MinorSolver solver(f, g, rels, budget);
  MinorResult res = solver.solve();
  if (res.verdict == Verdict::Yes) {
    if (!res.witness || !verify_witness(f, g, rels, *res.witness))
      throw std::logic_error("solver produced an invalid witness");
  }
  return res;
}

EquivResult are_equivalent(const Operation& f, const Operation& g,
                           std::span<const Relation> rels, const SolveBudget& budget) {
  EquivResult out;
  out.forward = is_minor(f, g, rels, budget);
  if (out.forward.verdict == Verdict::No) {
    out.verdict = Verdict::No;
    return out;
  }
  out.backward = is_minor(g, f, rels, budget);
  if (out.backward.verdict == Verdict::No) {
    out.verdict = Verdict::No;
  } else if (out.forward.verdict == Verdict::Yes && out.backward.verdict == Verdict::Yes) {
    out.verdict = Verdict::Yes;
  } else {
    out.verdict = Verdict::Unknown;
  }
  return out;
}

bool verify_witness(const Operation& f, const Operation& g,
                    std::span<const Relation> rels, const MinorWitness& witness) {
  if (static_cast<int>(witness.components.size()) != g.arity()) return false;
  for (const Operation& h : witness.components) {
    if (h.k() != f.k() || h.arity() != f.arity()) return false;
    for (const Relation& rho : rels)
      if (!preserves(h, rho)) return false;
  }
  return compose(g, witness.components) == f;
}

ClassPartition enumerate_classes(int k, std::span<const Relation> rels, int max_arity,
                                 const SolveBudget& per_call, int threads) {
  if (max_arity < 1 || max_arity > 2)
    throw UnsupportedQueryError("exhaustive class enumeration supports max_arity <= 2");
  ClassPartition out;

  std::vector<Operation> pool;
  for (int arity = 1; arity <= max_arity; ++arity) {
    std::size_t width = pow_size(k, arity);
    std::size_t count = 1;
    for (std::size_t i = 0; i < width; ++i) count *= static_cast<std::size_t>(k);
    for (std::size_t code = 0; code < count; ++code)
      pool.emplace_back(k, arity, decode_tuple(k, static_cast<int>(width), code));
  }

  // Range buckets: f = g o h forces range f inside range g, so equivalent
  // operations have equal ranges under every clone. The buckets are refined
  // only by verified solver calls.
  std::map<std::vector<Val>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < pool.size(); ++i) buckets[pool[i].range()].push_back(i);

  std::mutex abort_mu;
  bool aborted = false;
  std::string abort_note;

  for (auto& [range, members] : buckets) {
    if (aborted) break;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> pending = members;
    while (!pending.empty() && !aborted) {
      std::size_t rep = pending.front();
      groups.emplace_back();
      groups.back().push_back(rep);
      std::vector<std::size_t> rest(pending.begin() + 1, pending.end());
      std::vector<char> joined(rest.size(), 0);
      parallel_for(
          rest.size(),
          [&](std::size_t i) {
            {
              std::lock_guard<std::mutex> lock(abort_mu);
              if (aborted) return;
            }
            EquivResult e = are_equivalent(pool[rest[i]], pool[rep], rels, per_call);
            if (e.verdict == Verdict::Unknown) {
              std::lock_guard<std::mutex> lock(abort_mu);
              aborted = true;
              abort_note =
                  "solver budget exhausted while classifying " + pool[rest[i]].to_string();
              return;
            }
            joined[i] = e.verdict == Verdict::Yes ? 1 : 0;
          },
          threads);
      if (aborted) break;
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i < rest.size(); ++i)
        (joined[i] ? groups.back() : next).push_back(rest[i]);
      pending = std::move(next);
    }
    for (auto& g : groups) {
      std::sort(g.begin(), g.end());
      ClassPartition::Class cls(pool[g.front()]);
      for (std::size_t idx : g) cls.members.push_back(pool[idx]);
      out.classes.push_back(std::move(cls));
    }
  }
  if (aborted) {
    out.complete = false;
    out.note = abort_note;
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const ClassPartition::Class& a, const ClassPartition::Class& b) {
              return a.rep < b.rep;
            });
  return out;
}

}  // namespace clonekit
