#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clonekit/clone.hpp"
#include "clonekit/minor.hpp"
#include "clonekit/named_relations.hpp"
#include "clonekit/witness.hpp"

namespace clonekit {

enum class Tactic {
  Discriminator,
  EpsConditions,
  CentralConditions,
  LinmonCited,
  Restriction,
  Lemma24,
  Lemma26,
  Lemma27,
  Lemma32,
  Lemma34,
  Lemma35,
  Lemma40,
  Burle,
  HennoCited,
};
const char* tactic_name(Tactic t);

enum class EntryStatus { Verified, ExpectedRecorded, Discrepancy, Timeout };
const char* status_name(EntryStatus s);

struct Assignment {
  Abc abc;
  std::optional<Abc> greek;
  std::string to_string() const;
};

// Canonical intensional description of one catalog clone.
struct CloneDescription {
  enum class Kind { Pol, Generated, Burle };
  Kind kind = Kind::Pol;
  int k = 3;
  std::vector<Relation> relations;      // Pol: canonicalized, sorted
  std::vector<Operation> generators;    // Generated
  int cap = 2;                          // Generated
  int burle_level = 0;                  // Burle
  std::vector<Operation> burle_monoid;  // Burle: normalized <M>

  CloneSpec to_spec() const;
  std::string key() const;
};

struct CloneInstance {
  CloneDescription desc;
  Assignment rep;                  // first assignment yielding this clone
  std::vector<Assignment> merged;  // all assignments yielding it
};

struct CatalogLine {
  int table = 0;
  int line = 0;
  int expected_count = 0;
  bool expected_in_F = false;
  Tactic tactic = Tactic::Discriminator;
  bool uses_greek = false;
  char restrict_b[2] = {0, 0};  // symbols of B for the restriction tactic
  RelationType expected_type = RelationType::Other;  // Table 1 typing
};

const std::vector<CatalogLine>& catalog_lines(int table);
const CatalogLine& catalog_line(int table, int line);

// Enumerates the line's parameter scheme, canonicalizes and dedupes the
// descriptions, and checks the survivor count against the printed one
// (CatalogError on mismatch). With check_distinct, also proves pairwise
// distinctness through separating operations at arity <= 2 (escalating to 3);
// unresolved pairs are appended to *warnings.
std::vector<CloneInstance> instantiate_line(int table, int line, bool check_distinct = false,
                                            std::vector<std::string>* warnings = nullptr);

struct CheckRecord {
  std::string name;
  bool ok = false;
  std::string detail;
  std::int64_t millis = 0;
};

struct EntryReport {
  int table = 0;
  int line = 0;
  EntryStatus status = EntryStatus::Verified;
  Tactic tactic = Tactic::Discriminator;
  std::vector<std::string> params;
  std::vector<CheckRecord> checks;
};

struct VerificationReport {
  std::vector<EntryReport> entries;
  int verified = 0;
  int expected_recorded = 0;
  int discrepancy = 0;
  int timeout = 0;
  std::string to_json() const;  // stable key order, no timestamps
};

struct VerifyOptions {
  SolveBudget refutation;                 // witness-family refutations
  SolveBudget confirmation{100000, 60000};  // small equivalence confirmations
  int threads = 0;                        // 0 = CLONEKIT_THREADS / hardware
};

EntryReport verify_entry(int table, int line, const VerifyOptions& options = {});
VerificationReport run_verification(int table, int first_line, int last_line,
                                    const VerifyOptions& options = {});

// Membership tables at arities 1 and 2.
struct CloneFingerprint {
  std::vector<bool> unary;
  std::vector<bool> binary;
  bool subset_of(const CloneFingerprint& other) const;
  bool operator==(const CloneFingerprint&) const = default;
};
CloneFingerprint fingerprint(const CloneSpec& spec);

struct SubmaximalityEvidence {
  int line = 0;
  std::string params;
  int table1_line = 0;   // containing maximal clone's line (0 = none found)
  bool proper = false;   // strictly smaller already at arity <= 2
};
std::vector<SubmaximalityEvidence> submaximality_evidence(int threads = 0);

// Instances from different lines whose arity <= 2 parts coincide.
std::vector<std::string> cross_line_collisions(int threads = 0);

// The two readings of the printed generator sets of lines 28/29: the literal
// reading (max/min with all unary maps) escapes the order clone already at
// arity 1, the monotone-unary reading stays inside it.
struct Line2829Report {
  bool printed_reading_contained = true;
  bool monotone_reading_contained = false;
  std::string detail;
};
Line2829Report check_line28_29_readings();

// Signature-soundness sweep for one instantiated clone of line 24, 27 or 32:
// groups all operations of arity <= 2 by signature and solver-confirms every
// member equivalent to its group representative.
struct SignatureSweep {
  std::size_t groups = 0;
  std::size_t confirmed = 0;
  bool all_confirmed = false;
  bool budget_exhausted = false;
};
SignatureSweep signature_soundness_sweep(const Relation& rho, SignatureKind kind, const Abc& abc,
                                         const SolveBudget& per_call, int threads = 0);

}  // namespace clonekit
