#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "clonekit/catalog.hpp"
#include "clonekit/clone.hpp"
#include "clonekit/errors.hpp"
#include "clonekit/minor.hpp"
#include "clonekit/named_relations.hpp"
#include "clonekit/parallel.hpp"
#include "clonekit/relation.hpp"
#include "clonekit/witness.hpp"

namespace {

using namespace clonekit;

Relation resolve_relation(const std::string& token) {
  if (std::filesystem::exists(token)) return load_relation_file(token);
  return parse_named_relation(token);
}

std::vector<Relation> resolve_relations(const std::vector<std::string>& tokens) {
  std::vector<Relation> out;
  for (const auto& t : tokens) out.push_back(resolve_relation(t));
  return out;
}

Abc parse_params(const std::string& text) {
  Abc s;
  if (text.empty()) return s;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("params", "expected key=value");
    std::string key = item.substr(0, eq);
    int value = std::stoi(item.substr(eq + 1));
    if (key == "a")
      s.a = static_cast<Val>(value);
    else if (key == "b")
      s.b = static_cast<Val>(value);
    else if (key == "c")
      s.c = static_cast<Val>(value);
    else
      throw CLI::ValidationError("params", "keys are a, b, c");
  }
  return s;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = std::stoi(text);
    return {v, v};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clonekit: finite operations, relations, clone membership and relative "
               "minor decisions on small universes"};
  app.require_subcommand(1);
  int exit_code = 0;

  // relations list | show
  auto* relations = app.add_subcommand("relations", "named relation registry");
  relations->require_subcommand(1);
  auto* rel_list = relations->add_subcommand("list", "list registry names");
  rel_list->callback([] {
    for (const auto& [name, params] : named_relation_list())
      std::cout << name << (params[0] ? std::string("[") + params + "]" : "") << "\n";
  });
  auto* rel_show = relations->add_subcommand("show", "print a relation in text format");
  static std::string show_token;
  rel_show->add_option("token", show_token, "name[params] or file path")->required();
  rel_show->callback([] { std::cout << relation_to_text(resolve_relation(show_token)); });

  // check preserve
  auto* check = app.add_subcommand("check", "pointwise checks");
  check->require_subcommand(1);
  auto* preserve_cmd = check->add_subcommand("preserve", "does an operation preserve a relation");
  static std::string pres_op, pres_rel;
  preserve_cmd->add_option("--op", pres_op, "operation as k:arity:digits")->required();
  preserve_cmd->add_option("--rel", pres_rel, "relation name or file")->required();
  preserve_cmd->callback([&] {
    bool ok = preserves(Operation::from_string(pres_op), resolve_relation(pres_rel));
    std::cout << (ok ? "true" : "false") << "\n";
  });

  // clone enumerate | member
  auto* clone_cmd = app.add_subcommand("clone", "intensional clone queries");
  clone_cmd->require_subcommand(1);
  auto* enum_cmd = clone_cmd->add_subcommand("enumerate", "list the arity-n part");
  static std::string enum_spec;
  static int enum_arity = 1;
  static bool enum_count_only = false;
  enum_cmd->add_option("--spec", enum_spec, "pol(...), meet(...), gen(...;cap), burle(i;...)")
      ->required();
  enum_cmd->add_option("--arity", enum_arity)->required();
  enum_cmd->add_flag("--count-only", enum_count_only);
  enum_cmd->callback([&] {
    auto ops = parse_clone_spec(enum_spec).enumerate(enum_arity);
    std::cout << ops.size() << "\n";
    if (!enum_count_only)
      for (const auto& f : ops) std::cout << f.to_string() << "\n";
  });
  auto* member_cmd = clone_cmd->add_subcommand("member", "membership test");
  static std::string member_spec, member_op;
  member_cmd->add_option("--spec", member_spec)->required();
  member_cmd->add_option("--op", member_op)->required();
  member_cmd->callback([&] {
    bool ok = parse_clone_spec(member_spec).member(Operation::from_string(member_op));
    std::cout << (ok ? "true" : "false") << "\n";
  });

  // minor decide
  auto* minor_cmd = app.add_subcommand("minor", "relative minor decisions");
  minor_cmd->require_subcommand(1);
  auto* decide = minor_cmd->add_subcommand("decide", "decide f = g o h with h from Pol(rels)");
  static std::string minor_f, minor_g;
  static std::vector<std::string> minor_rels;
  static SolveBudget minor_budget;
  decide->add_option("--f", minor_f, "inner operation k:arity:digits")->required();
  decide->add_option("--g", minor_g, "outer operation k:arity:digits")->required();
  decide->add_option("--rels", minor_rels, "defining relations (names or files)");
  decide->add_option("--budget-nodes", minor_budget.max_nodes);
  decide->add_option("--budget-ms", minor_budget.max_millis);
  decide->callback([&] {
    auto rels = resolve_relations(minor_rels);
    MinorResult res =
        is_minor(Operation::from_string(minor_f), Operation::from_string(minor_g), rels,
                 minor_budget);
    std::cout << verdict_name(res.verdict) << " nodes=" << res.nodes
              << " millis=" << res.millis << "\n";
    if (res.witness)
      for (const auto& h : res.witness->components) std::cout << h.to_string() << "\n";
    if (res.verdict == Verdict::Unknown)
      std::cerr << "warning: budget exhausted before a decision\n";
  });

  // equiv classes
  auto* equiv_cmd = app.add_subcommand("equiv", "relative equivalence classes");
  equiv_cmd->require_subcommand(1);
  auto* classes = equiv_cmd->add_subcommand("classes", "partition all ops of arity <= n");
  static std::vector<std::string> cls_rels;
  static int cls_arity = 1;
  static std::string cls_out;
  static SolveBudget cls_budget;
  classes->add_option("--rels", cls_rels);
  classes->add_option("--max-arity", cls_arity)->required();
  classes->add_option("--out", cls_out, "JSON report path (default stdout)");
  classes->add_option("--budget-nodes", cls_budget.max_nodes);
  classes->add_option("--budget-ms", cls_budget.max_millis);
  classes->callback([&] {
    auto rels = resolve_relations(cls_rels);
    ClassPartition part = enumerate_classes(3, rels, cls_arity, cls_budget, thread_cap());
    std::ostringstream out;
    out << "{\n  \"max_arity\": " << cls_arity << ",\n  \"complete\": "
        << (part.complete ? "true" : "false") << ",\n  \"classes\": [\n";
    for (std::size_t i = 0; i < part.classes.size(); ++i) {
      out << "    {\"rep\": \"" << part.classes[i].rep.to_string()
          << "\", \"size\": " << part.classes[i].members.size() << "}"
          << (i + 1 < part.classes.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    write_output(cls_out, out.str());
    if (!part.complete) {
      std::cerr << "warning: " << part.note << "\n";
    }
  });

  // catalog instantiate
  auto* catalog_cmd = app.add_subcommand("catalog", "embedded clone catalog");
  catalog_cmd->require_subcommand(1);
  auto* inst_cmd = catalog_cmd->add_subcommand("instantiate", "expand parameter schemes");
  static int inst_table = 2;
  static int inst_line = 0;
  inst_cmd->add_option("--table", inst_table)->required();
  inst_cmd->add_option("--line", inst_line, "single line (default: whole table)");
  inst_cmd->callback([&] {
    int total = 0;
    for (const CatalogLine& def : catalog_lines(inst_table)) {
      if (inst_line != 0 && def.line != inst_line) continue;
      auto instances = instantiate_line(inst_table, def.line);
      total += static_cast<int>(instances.size());
      for (const auto& inst : instances)
        std::cout << "table " << inst_table << " line " << def.line << " ["
                  << inst.rep.to_string() << "] x" << inst.merged.size()
                  << " assignments\n";
    }
    std::cout << "total " << total << "\n";
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the per-line verification pipeline");
  static int verify_table = 2;
  static std::string verify_lines;
  static std::string verify_out;
  static VerifyOptions verify_opts;
  verify_cmd->add_option("--table", verify_table)->required();
  verify_cmd->add_option("--lines", verify_lines, "range a..b (default: all)");
  verify_cmd->add_option("--out", verify_out, "JSON report path (default stdout)");
  verify_cmd->add_option("--budget-nodes", verify_opts.refutation.max_nodes);
  verify_cmd->add_option("--budget-ms", verify_opts.refutation.max_millis);
  verify_cmd->callback([&] {
    int lo = 1, hi = 1000;
    if (!verify_lines.empty()) std::tie(lo, hi) = parse_range(verify_lines);
    VerificationReport report = run_verification(verify_table, lo, hi, verify_opts);
    write_output(verify_out, report.to_json());
    std::cerr << "verified=" << report.verified
              << " expected-recorded=" << report.expected_recorded
              << " discrepancy=" << report.discrepancy << " timeout=" << report.timeout << "\n";
    if (report.discrepancy > 0) exit_code = 1;
    if (report.timeout > 0) std::cerr << "warning: some entries hit the solver budget\n";
  });

  // witness build | facts
  auto* witness_cmd = app.add_subcommand("witness", "witness families and their facts");
  witness_cmd->require_subcommand(1);
  auto* build_cmd = witness_cmd->add_subcommand("build", "print one family member");
  static int wit_lemma = 26;
  static int wit_n = 3;
  static std::string wit_params;
  build_cmd->add_option("--lemma", wit_lemma, "26, 34, 35 or 40")->required();
  build_cmd->add_option("--n", wit_n, "family index")->required();
  build_cmd->add_option("--params", wit_params, "a=..,b=..,c=..");
  build_cmd->callback([&] {
    FamilyLine line;
    switch (wit_lemma) {
      case 26: line = FamilyLine::L26; break;
      case 34: line = FamilyLine::L34; break;
      case 35: line = FamilyLine::L35; break;
      case 40: line = FamilyLine::L40; break;
      default: throw CLI::ValidationError("lemma", "must be 26, 34, 35 or 40");
    }
    Operation f = build_family(line, FamilyParams{parse_params(wit_params), wit_n});
    std::cout << f.to_string() << "\n";
  });
  auto* facts_cmd = witness_cmd->add_subcommand("facts", "check the membership criteria");
  static int facts_lemma = 26;
  static std::string facts_range = "3..7";
  static std::string facts_params;
  facts_cmd->add_option("--lemma", facts_lemma, "26, 35 or 40")->required();
  facts_cmd->add_option("--p", facts_range, "range lo..hi");
  facts_cmd->add_option("--params", facts_params);
  facts_cmd->callback([&] {
    auto [lo, hi] = parse_range(facts_range);
    Abc abc = parse_params(facts_params);
    bool all = true;
    for (int p = lo; p <= hi; ++p) {
      bool ok;
      switch (facts_lemma) {
        case 26: ok = check_fact_26(p, abc); break;
        case 35: ok = check_fact_35(p, abc); break;
        case 40: ok = check_fact_40(p, abc); break;
        default: throw CLI::ValidationError("lemma", "facts exist for 26, 35 and 40");
      }
      all &= ok;
      std::cout << "p=" << p << " " << (ok ? "pass" : "FAIL") << "\n";
    }
    if (!all) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
