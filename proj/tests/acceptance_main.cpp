// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "clonekit/catalog.hpp"
#include "clonekit/clone.hpp"
#include "clonekit/minor.hpp"
#include "clonekit/named_relations.hpp"
#include "clonekit/parallel.hpp"
#include "clonekit/witness.hpp"

using namespace clonekit;

namespace {

const Abc kStd{0, 1, 2};

struct Criterion {
  int id;
  const char* title;
  std::function<bool(std::string&)> run;
};

bool criterion_catalog_counts(std::string& detail) {
  std::vector<int> t1 = {3, 3, 1, 3, 3, 3, 1, 1};
  std::vector<int> t2 = {3, 6, 3, 3, 3, 6, 3, 1, 3, 6, 9, 9, 6, 6, 9, 3, 1, 3, 3, 3, 3, 3,
                         3, 6, 3, 3, 3, 3, 3, 1, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 1, 1};
  int total1 = 0, total2 = 0;
  bool ok = true;
  for (const CatalogLine& def : catalog_lines(1)) {
    int n = static_cast<int>(instantiate_line(1, def.line).size());
    ok &= n == t1[static_cast<std::size_t>(def.line - 1)];
    total1 += n;
  }
  for (const CatalogLine& def : catalog_lines(2)) {
    int n = static_cast<int>(instantiate_line(2, def.line).size());
    ok &= n == t2[static_cast<std::size_t>(def.line - 1)];
    total2 += n;
  }
  ok &= total1 == 18 && total2 == 155;
  detail = "18 maximal, " + std::to_string(total2) + " submaximal";
  return ok;
}

bool criterion_rosenberg_typing(std::string& detail) {
  bool ok = true;
  int typed = 0;
  for (const CatalogLine& def : catalog_lines(1))
    for (const CloneInstance& inst : instantiate_line(1, def.line)) {
      RelationType t = rosenberg_classify(inst.desc.relations.at(0)).tag;
      ok &= t == def.expected_type;
      ++typed;
    }
  // the builders' plain forms, independent of catalog canonicalization
  ok &= rosenberg_classify(subset_relation(3, {1})).tag == RelationType::Central;
  ok &= rosenberg_classify(subset_relation(3, {0, 2})).tag == RelationType::Central;
  ok &= rosenberg_classify(cycle3_graph(kStd)).tag == RelationType::PrimePermutation;
  ok &= rosenberg_classify(eps3(kStd)).tag == RelationType::NontrivialEquivalence;
  ok &= rosenberg_classify(leq3(kStd)).tag == RelationType::BoundedOrder;
  ok &= rosenberg_classify(gamma3(1)).tag == RelationType::Central;
  ok &= rosenberg_classify(lambda3()).tag == RelationType::PrimeAffine;
  ok &= rosenberg_classify(iota3()).tag == RelationType::HRegular;
  detail = std::to_string(typed) + " relations typed";
  return ok;
}

bool criterion_discriminator(std::string& detail) {
  Operation t3 = Operation::discriminator(3);
  bool ok = true;
  int checked = 0;
  for (int line : {1, 2, 3, 8, 18, 22})
    for (const CloneInstance& inst : instantiate_line(2, line))
      for (const Relation& rho : inst.desc.relations) {
        ok &= preserves(t3, rho);
        ++checked;
      }
  ok &= !preserves(t3, leq3(kStd));
  ok &= !preserves(t3, lambda3());
  detail = std::to_string(checked) + " preservation checks; order and affine rejected";
  return ok;
}

bool criterion_slupecki(std::string& detail) {
  Relation iota = iota3();
  std::size_t checks = 0;
  bool ok = true;
  for (const Operation& u : all_unary_maps(3)) {
    ok &= preserves(u, iota) == (u.range().size() <= 2 || u.essential_arity() <= 1);
    ++checks;
  }
  for (std::size_t code = 0; code < 19683; ++code) {
    Operation f(3, 2, decode_tuple(3, 9, code));
    ok &= preserves(f, iota) == (f.range().size() <= 2 || f.essential_arity() <= 1);
    ++checks;
  }
  detail = std::to_string(checks) + " operations";
  return ok && checks == 19710;
}

bool criterion_full_clone_classes(std::string& detail) {
  ClassPartition part = enumerate_classes(3, std::vector<Relation>{}, 2, SolveBudget{},
                                          thread_cap());
  if (!part.complete || part.classes.size() != 7) {
    detail = "expected 7 complete classes, got " + std::to_string(part.classes.size());
    return false;
  }
  bool ok = true;
  std::size_t total = 0;
  for (const auto& cls : part.classes) {
    auto want = cls.rep.range();
    for (const Operation& f : cls.members) ok &= f.range() == want;
    total += cls.members.size();
  }
  ok &= total == 19710;
  detail = "7 classes covering all 19710 operations, one per nonempty range";
  return ok;
}

bool criterion_facts(std::string& detail) {
  bool ok = true;
  for (int p = 3; p <= 7; ++p) {
    ok &= check_fact_26(p);
    ok &= check_fact_35(p);
  }
  for (int p : {3, 5, 7, 9}) ok &= check_fact_40(p);
  detail = "criteria for lines 26, 35 for p=3..7 and line 40 for odd p<=9";
  return ok;
}

bool criterion_refutations(std::string& detail) {
  struct Case {
    FamilyLine fam;
    int line, n, m;
  };
  std::vector<Case> cases = {{FamilyLine::L26, 26, 3, 4},
                             {FamilyLine::L34, 34, 3, 4},
                             {FamilyLine::L35, 35, 3, 4},
                             {FamilyLine::L40, 40, 3, 5}};
  SolveBudget budget;  // defaults: 1e7 nodes, 10 minutes
  bool ok = true;
  std::ostringstream d;
  for (const Case& c : cases) {
    std::vector<Relation> rels = {table2_literal(c.line, kStd)};
    Operation fn = build_family(c.fam, FamilyParams{kStd, c.n});
    Operation fm = build_family(c.fam, FamilyParams{kStd, c.m});
    MinorResult res = is_minor(fn, fm, rels, budget);
    ok &= res.verdict == Verdict::No;
    d << "line " << c.line << ": " << verdict_name(res.verdict) << " (" << res.nodes
      << " nodes) ";
  }
  detail = d.str();
  return ok;
}

bool criterion_signatures(std::string& detail) {
  SolveBudget per_call{100000, 60000};
  bool ok = true;
  std::ostringstream d;
  for (int line : {24, 27, 32}) {
    SignatureKind kind = line == 24   ? SignatureKind::P24
                         : line == 27 ? SignatureKind::Q27
                                      : SignatureKind::S32;
    for (const CloneInstance& inst : instantiate_line(2, line)) {
      Abc abc = inst.rep.abc;
      Relation rho = line == 32 ? phi_pullback_pi2(abc) : table2_literal(line, abc);
      SignatureSweep sweep = signature_soundness_sweep(rho, kind, abc, per_call, thread_cap());
      ok &= sweep.all_confirmed && !sweep.budget_exhausted;
      d << "line " << line << "[" << abc.to_string() << "]: " << sweep.groups << " sigs ";
    }
  }
  detail = d.str();
  return ok;
}

bool criterion_restriction(std::string& detail) {
  bool ok = true;
  int checked = 0;
  Operation t2 = Operation::discriminator(2);
  for (int line : {19, 20, 21, 23, 25, 31, 33, 36, 37, 38, 39}) {
    const CatalogLine& def = catalog_line(2, line);
    for (const CloneInstance& inst : instantiate_line(2, line)) {
      Val b0 = def.restrict_b[0] == 'a'   ? inst.rep.abc.a
               : def.restrict_b[0] == 'b' ? inst.rep.abc.b
                                          : inst.rep.abc.c;
      Val b1 = def.restrict_b[1] == 'a'   ? inst.rep.abc.a
               : def.restrict_b[1] == 'b' ? inst.rep.abc.b
                                          : inst.rep.abc.c;
      std::vector<Val> subset = {std::min(b0, b1), std::max(b0, b1)};
      for (const Relation& rho : inst.desc.relations) {
        ok &= !preserves(t2, restrict_relation(rho, subset));
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " restricted relations reject the binary discriminator";
  return ok;
}

bool criterion_hypotheses(std::string& detail) {
  bool ok = true;
  // eps-conditions for lines 4, 9, 10
  for (int line : {4, 9, 10})
    for (const CloneInstance& inst : instantiate_line(2, line)) {
      std::vector<Relation> equivalences;
      for (const Relation& r : inst.desc.relations)
        if (r.arity() == 2 && r.is_equivalence()) equivalences.push_back(r);
      ok &= !equivalences.empty() && is_chain(equivalences);
    }
  // central-conditions for lines 5, 12, 14
  for (int line : {5, 12, 14})
    for (const CloneInstance& inst : instantiate_line(2, line)) {
      const Relation* central = nullptr;
      const Relation* subset = nullptr;
      const Relation* equivalence = nullptr;
      for (const Relation& r : inst.desc.relations) {
        if (r.arity() == 1) subset = &r;
        else if (is_central(r)) central = &r;
        else if (r.is_equivalence()) equivalence = &r;
      }
      if (!central) {
        ok = false;
        continue;
      }
      auto centers = central_elements(*central);
      ok &= centers.size() == 1;
      if (line == 5) {
        std::vector<Val> s;
        for (const auto& t : subset->tuples()) s.push_back(t[0]);
        ok &= s == centers;
      } else if (line == 12) {
        std::vector<Val> s;
        for (const auto& t : subset->tuples()) s.push_back(t[0]);
        ok &= s != centers;
      } else {
        ok &= equivalence != nullptr && equivalence->is_equivalence();
        ok &= *equivalence != Relation::diagonal(3, 2) && *equivalence != Relation::full(3, 2);
      }
    }
  detail = "chain and permutation conditions for 4/9/10; center split for 5/12/14";
  return ok;
}

bool criterion_solver_oracle(std::string& detail) {
  bool ok = true;
  auto unary = all_unary_maps(3);
  std::size_t agreements = 0;
  for (const CatalogLine& def : catalog_lines(1)) {
    for (const CloneInstance& inst : instantiate_line(1, def.line)) {
      const auto& rels = inst.desc.relations;
      // naive: enumerate C^(1) once
      std::vector<Operation> c1;
      for (const Operation& h : unary) {
        bool in_c = true;
        for (const Relation& rho : rels)
          if (!preserves(h, rho)) in_c = false;
        if (in_c) c1.push_back(h);
      }
      for (const Operation& f : unary)
        for (const Operation& g : unary) {
          bool naive = false;
          for (const Operation& h : c1)
            if (compose(g, std::vector<Operation>{h}) == f) {
              naive = true;
              break;
            }
          MinorResult res = is_minor(f, g, rels);
          if (res.verdict == Verdict::Unknown || (res.verdict == Verdict::Yes) != naive) {
            ok = false;
          }
          ++agreements;
        }
    }
  }
  // range-containment closed form for the full clone on random pairs
  std::mt19937 rng(20240809);
  for (int trial = 0; trial < 200; ++trial) {
    int an = 1 + static_cast<int>(rng() % 2);
    int am = 1 + static_cast<int>(rng() % 2);
    std::vector<Val> tf(pow_size(3, an)), tg(pow_size(3, am));
    for (Val& v : tf) v = static_cast<Val>(rng() % 3);
    for (Val& v : tg) v = static_cast<Val>(rng() % 3);
    Operation f(3, an, tf), g(3, am, tg);
    auto rf = f.range(), rg = g.range();
    bool closed_form = std::includes(rg.begin(), rg.end(), rf.begin(), rf.end());
    MinorResult res = is_minor(f, g, std::vector<Relation>{});
    ok &= (res.verdict == Verdict::Yes) == closed_form;
  }
  detail = std::to_string(agreements) + " unary pairs against naive enumeration; 200 random "
           "pairs against range containment";
  return ok;
}

bool criterion_line2829(std::string& detail) {
  Line2829Report rep = check_line28_29_readings();
  detail = rep.detail;
  return !rep.printed_reading_contained && rep.monotone_reading_contained;
}

}  // namespace

int main(int argc, char** argv) {
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  std::vector<Criterion> criteria = {
      {1, "catalog counts (18 maximal / 155 submaximal, per-line)", criterion_catalog_counts},
      {2, "Rosenberg typing of the maximal-clone relations", criterion_rosenberg_typing},
      {3, "discriminator preservation claims", criterion_discriminator},
      {4, "Slupecki identity over all unary and binary operations", criterion_slupecki},
      {5, "full-clone equivalence classes are the seven range classes",
       criterion_full_clone_classes},
      {6, "witness tuple membership criteria", criterion_facts},
      {7, "witness family refutations at the smallest indices", criterion_refutations},
      {8, "signature soundness sweeps for lines 24, 27, 32", criterion_signatures},
      {9, "two-element restrictions reject the binary discriminator", criterion_restriction},
      {10, "chain and center hypothesis checks", criterion_hypotheses},
      {11, "solver agreement with independent oracles", criterion_solver_oracle},
      {12, "generator-set readings of the max/min lines", criterion_line2829},
  };
  bool all_ok = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title,
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    all_ok &= ok;
  }
  return all_ok ? 0 : 1;
}
