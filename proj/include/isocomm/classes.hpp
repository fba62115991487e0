#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isocomm/hall.hpp"
#include "isocomm/ints.hpp"
#include "isocomm/machines.hpp"
#include "isocomm/oracle.hpp"
#include "isocomm/presentation.hpp"
#include "isocomm/torus.hpp"
#include "isocomm/word.hpp"

namespace isocomm {

// The two indexed presentation families this library studies. Family C1
// extends the decidable-word-problem factor (variant V1) and carries the
// extra finite cyclic direct factor of order r + 1; within it isomorphism is
// decidable and commensurability is only semi-decidable. Family C2 extends
// the variant-V2 factor; within it commensurability is decidable and
// isomorphism is only semi-decidable.
enum class Family { C1, C2 };

// Identifies one emitted presentation: family, index r >= 0, and the
// truncation level T >= max(r, 1) at which the factor's infinite relator
// schema is cut off. T is recorded in every emitted file header; consumers
// of two emissions should compare their T values.
struct InstanceLabel {
  Family family = Family::C1;
  Int r;
  Int truncation;

  friend bool operator==(const InstanceLabel&, const InstanceLabel&) = default;
};

// Throws std::invalid_argument unless r >= 0, T >= 1, T >= r.
void validate_label(const InstanceLabel& label);

// Shared environment for one family of instances: the function f behind the
// factor's torsion relators and the word-problem budget baked into the
// variant-V2 factor oracle. Instances created from one context share f's
// enumeration cache.
class FamilyContext {
 public:
  explicit FamilyContext(std::shared_ptr<ComputableF> f, Budget factor_wp_budget = 100000);

  // The default-mode context (f enumerates the halting set).
  static FamilyContext default_context();

  const std::shared_ptr<ComputableF>& f() const { return f_; }
  Budget factor_wp_budget() const { return factor_wp_budget_; }

  HallConfig hall_config(Family family) const;
  OracleSet oracle_set(Family family) const;

  // The mapping-torus spec of instance r: base group (variant factor) * C2,
  // twisted by conjugation with the r-th central generator (identity twist
  // for r = 0).
  TorusSpec torus_spec(Family family, const Int& r) const;

  // Header tag: "default" or "table:...".
  std::string f_mode() const { return f_->describe(); }

 private:
  std::shared_ptr<ComputableF> f_;
  Budget factor_wp_budget_;
};

// Truncated presentation of the two-generator factor at level T: the
// double-commutator and index-shift relator families up to T, then the
// variant's torsion relators (V1: z_{f(n)}^n for n = 1..T; V2: z_n^2 for
// n = 1..T and z_{f(n)} for n = 0..T). Relators that reduce to the empty
// word (powers of z_0) are omitted. Uses f(n) for n <= T, so a finite-table
// f must cover [0, T].
FinitePresentation factor_presentation(const FamilyContext& ctx, Family family,
                                       const Int& truncation);

// Emitted presentation of instance label (family C1): the mapping torus of
// the V1 instantiation twisted by z_r, times the cyclic group of order
// r + 1. Generators a b y t u. Deterministic bytes via emit_text.
FinitePresentation emit_c1(const FamilyContext& ctx, const InstanceLabel& label);

// Family C2: the mapping torus of the V2 instantiation twisted by z_r, with
// no cyclic direct factor. Generators a b y t.
FinitePresentation emit_c2(const FamilyContext& ctx, const InstanceLabel& label);

// Serialized emission with the header block
//   # family: c1|c2
//   # r: <r>
//   # truncation: <T>
//   # f-mode: default|table:<spec>
std::string emit_text(const FamilyContext& ctx, const InstanceLabel& label);

// Presentations of labels r = 0 .. count-1 at one truncation level, in
// order. Requires T >= count - 1 so every label is valid.
std::vector<FinitePresentation> enumerate_family(const FamilyContext& ctx, Family family,
                                                 std::size_t count, const Int& truncation);

// Uniform word problem over the emitted generators: folds w into a torus
// element (stable letter t contributes (identity, -1)) plus, for C1, the
// u-exponent mod r + 1; trivial iff every component is. Definite for C1,
// three-valued for C2. Throws std::invalid_argument on foreign generators.
OracleAnswer class_wp(const FamilyContext& ctx, const InstanceLabel& label, const Word& w,
                      Budget budget);

// Isomorphism decider within C1. The decision rule is label equality
// r == q (distinct labels present non-isomorphic groups); the certificate
// reports the abelian invariants of both emissions and, for No, the
// differing cyclic contributions r+1 vs q+1.
OracleAnswer iso_c1(const FamilyContext& ctx, const InstanceLabel& a, const InstanceLabel& b);

// A commensurability witness: a common subgroup reached from each side's
// mapping torus by a congruence subgroup of the recorded index, with the
// resulting twists reduced. Valid certificates have equal witness specs.
struct CommCertificate {
  Int k1;
  Int k2;
  TorusSpec witness1;
  TorusSpec witness2;
  std::string note;
};

struct CommResult {
  OracleAnswer answer;
  std::optional<CommCertificate> certificate;
};

// Commensurability decider within C2: always Yes. The index-2 congruence
// subgroup trivializes either twist (squares of central generators die by
// the exponent-2 relators), so both sides share the untwisted extension;
// index 1 suffices where the conjugator is already empty.
CommResult comm_c2(const FamilyContext& ctx, const InstanceLabel& a, const InstanceLabel& b);

// Commensurability semi-decision within C1 against the r = 0 instance: Yes
// exactly when the budgeted search finds m with the m-th power of the twist
// conjugator dying (then the index-m congruence subgroup is the untwisted
// extension); Unknown otherwise, never No.
CommResult comm_c1_semi(const FamilyContext& ctx, const InstanceLabel& label, Budget budget);

// Isomorphism semi-decision within C2 against the r = 0 instance: Yes when
// the word problem certifies the twist conjugator trivial within budget.
OracleAnswer iso_c2_semi(const FamilyContext& ctx, const InstanceLabel& label, Budget budget);

// Oracle signatures for the reduction harness.
using CommOracle =
    std::function<OracleAnswer(const InstanceLabel&, const InstanceLabel&, Budget)>;
using IsoOracle =
    std::function<OracleAnswer(const InstanceLabel&, const InstanceLabel&, Budget)>;
using MemberOracle = std::function<OracleAnswer(const FinitePresentation&)>;
using PairOracle =
    std::function<OracleAnswer(const FinitePresentation&, const FinitePresentation&)>;

// "Does the r-th central generator have finite order in the V1 factor?"
// asked as the commensurability query (instance r, instance 0); the oracle's
// verdict is returned unchanged. Labels are built at truncation max(r, 1).
OracleAnswer reduce_torsion_to_comm(const CommOracle& comm, const Int& r, Budget budget);

// "Is the r-th central generator trivial in the V2 factor?" asked as the
// isomorphism query (instance r, instance 0).
OracleAnswer reduce_word_to_iso(const IsoOracle& iso, const Int& r, Budget budget);

// Triviality of the group presented by a, reduced to class membership plus
// isomorphism: forms h = g_ref * a (fresh names on collision); h outside the
// class or not isomorphic to g_ref refutes triviality, both affirmative
// answers certify it. Yes means "a presents the trivial group".
OracleAnswer triviality_from_iso(const MemberOracle& member, const PairOracle& iso,
                                 const FinitePresentation& g_ref, const FinitePresentation& a,
                                 Budget budget);

// Triviality reduced to membership plus commensurability: forms
// h = g_ref * (a * a) and f = g_ref x (a * a); any No among membership of
// h, membership of f, and commensurability of (h, f) refutes triviality;
// all Yes certify it.
OracleAnswer triviality_from_comm(const MemberOracle& member, const PairOracle& comm,
                                  const FinitePresentation& g_ref, const FinitePresentation& a,
                                  Budget budget);

// Toy oracles over the one-group class { Z } used to demonstrate the
// reductions: membership answers Yes only for a one-generator relator-free
// presentation, No when the abelianization already differs from Z's, and
// Unknown otherwise (it never inspects relators beyond exponent sums).
OracleAnswer toy_z_member(const FinitePresentation& p);
// Pair oracles built on toy_z_member: Yes when both sides are certified
// members (any two copies of Z are isomorphic and commensurable). The iso
// oracle answers No when exactly one side is certified out, since isomorphic
// groups share abelianizations; the commensurability oracle keeps that case
// Unknown, because commensurable groups need not (the infinite dihedral
// group is commensurable with Z). Everything else is Unknown.
OracleAnswer toy_z_iso(const FinitePresentation& p, const FinitePresentation& q);
OracleAnswer toy_z_comm(const FinitePresentation& p, const FinitePresentation& q);

}  // namespace isocomm
