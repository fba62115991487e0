#include "isocomm/classes.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "isocomm/freeprod.hpp"
#include "isocomm/snf.hpp"

namespace isocomm {

namespace {

const char* family_tag(Family family) { return family == Family::C1 ? "c1" : "c2"; }

void require_family(const InstanceLabel& label, Family family) {
  if (label.family != family) {
    throw std::invalid_argument(std::string("label must be family ") + family_tag(family));
  }
}

const FinitePresentation& cyclic2_presentation() {
  static const FinitePresentation p({GeneratorSymbol{"y"}}, {parse_word("y^2")});
  return p;
}

std::string format_invariants(const AbelianInvariants& inv) {
  std::ostringstream os;
  os << "free rank " << inv.free_rank << ", torsion [";
  bool first = true;
  for (const Int& d : inv.torsion) {
    if (!first) os << ", ";
    first = false;
    os << d;
  }
  os << ']';
  return os.str();
}

}  // namespace

void validate_label(const InstanceLabel& label) {
  if (label.r < 0) throw std::invalid_argument("instance index r must be >= 0");
  if (label.truncation < 1) throw std::invalid_argument("truncation level must be >= 1");
  if (label.truncation < label.r) {
    throw std::invalid_argument("truncation level must be >= r so the relators relevant to "
                                "the instance are present");
  }
}

FamilyContext::FamilyContext(std::shared_ptr<ComputableF> f, Budget factor_wp_budget)
    : f_(std::move(f)), factor_wp_budget_(factor_wp_budget) {
  if (!f_) throw std::invalid_argument("null f");
}

FamilyContext FamilyContext::default_context() {
  return FamilyContext(ComputableF::halting_enumerator());
}

HallConfig FamilyContext::hall_config(Family family) const {
  return family == Family::C1 ? HallConfig::v1(f_) : HallConfig::v2(f_);
}

OracleSet FamilyContext::oracle_set(Family family) const {
  OracleSet set;
  set.add(std::make_shared<HallFactorOracle>("A", hall_config(family), factor_wp_budget_));
  set.add(std::make_shared<TableOracle>("B", TableGroup::cyclic(2, "y")));
  return set;
}

TorusSpec FamilyContext::torus_spec(Family family, const Int& r) const {
  if (r < 0) throw std::domain_error("instance index r must be >= 0");
  Word conjugator = (r == 0) ? Word() : z_word(r);
  return TorusSpec(oracle_set(family), Twist{"A", std::move(conjugator)});
}

FinitePresentation factor_presentation(const FamilyContext& ctx, Family family,
                                       const Int& truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation level must be >= 1");

  const Word aw = Word::letter(GeneratorSymbol{"a"}, Int(1));
  const Word bw = Word::letter(GeneratorSymbol{"b"}, Int(1));
  auto b_at = [&](const Int& i) { return conjugate(bw, aw.pow(i)); };
  auto c_at = [&](const Int& i, const Int& j) { return commutator(b_at(j), b_at(i)); };

  std::vector<Word> relators;
  for (Int j = 1; j <= truncation; ++j) {
    for (int k : {0, 1}) {
      relators.push_back(commutator(commutator(b_at(Int(0)), b_at(j)), b_at(Int(k))));
    }
  }
  for (Int m = 1; m <= truncation; ++m) {
    for (int k : {1, -1}) {
      relators.push_back(c_at(Int(k), Int(k) + m) * c_at(Int(0), m).inverse());
    }
  }
  if (family == Family::C1) {
    for (Int n = 1; n <= truncation; ++n) {
      Int fn = ctx.f()->eval(n);
      if (fn > 0) relators.push_back(z_word(fn).pow(n));
    }
  } else {
    for (Int n = 1; n <= truncation; ++n) {
      relators.push_back(z_word(n).pow(2));
    }
    for (Int n = 0; n <= truncation; ++n) {
      Int fn = ctx.f()->eval(n);
      if (fn > 0) relators.push_back(z_word(fn));
    }
  }
  return FinitePresentation({GeneratorSymbol{"a"}, GeneratorSymbol{"b"}}, std::move(relators));
}

FinitePresentation emit_c1(const FamilyContext& ctx, const InstanceLabel& label) {
  validate_label(label);
  require_family(label, Family::C1);
  TorusSpec spec = ctx.torus_spec(Family::C1, label.r);
  return k_presentation(spec, label.r, factor_presentation(ctx, Family::C1, label.truncation),
                        cyclic2_presentation());
}

FinitePresentation emit_c2(const FamilyContext& ctx, const InstanceLabel& label) {
  validate_label(label);
  require_family(label, Family::C2);
  TorusSpec spec = ctx.torus_spec(Family::C2, label.r);
  return torus_presentation(spec, factor_presentation(ctx, Family::C2, label.truncation),
                            cyclic2_presentation());
}

std::string emit_text(const FamilyContext& ctx, const InstanceLabel& label) {
  FinitePresentation p =
      label.family == Family::C1 ? emit_c1(ctx, label) : emit_c2(ctx, label);
  return serialize_presentation(p, {
                                       std::string("family: ") + family_tag(label.family),
                                       "r: " + label.r.str(),
                                       "truncation: " + label.truncation.str(),
                                       "f-mode: " + ctx.f_mode(),
                                   });
}

std::vector<FinitePresentation> enumerate_family(const FamilyContext& ctx, Family family,
                                                 std::size_t count, const Int& truncation) {
  std::vector<FinitePresentation> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    InstanceLabel label{family, Int(r), truncation};
    out.push_back(family == Family::C1 ? emit_c1(ctx, label) : emit_c2(ctx, label));
  }
  return out;
}

OracleAnswer class_wp(const FamilyContext& ctx, const InstanceLabel& label, const Word& w,
                      Budget budget) {
  validate_label(label);
  TorusSpec spec = ctx.torus_spec(label.family, label.r);

  TorusElement e = t_identity();
  Int u_exponent = 0;
  for (const Letter& l : w.letters()) {
    const std::string& name = l.gen.name();
    if (name == "t") {
      // The stable letter acts as (identity, -1): with this orientation the
      // emitted conjugation relators evaluate to the identity.
      e = t_mul(spec, e, TorusElement{FPWord(), -l.exponent});
    } else if (name == "u" && label.family == Family::C1) {
      u_exponent += l.exponent;
    } else if (name == "a" || name == "b") {
      e = t_mul(spec, e, TorusElement{FPWord::single("A", Word::letter(l.gen, l.exponent)),
                                      Int(0)});
    } else if (name == "y") {
      e = t_mul(spec, e, TorusElement{FPWord::single("B", Word::letter(l.gen, l.exponent)),
                                      Int(0)});
    } else {
      throw std::invalid_argument("generator '" + name + "' is not part of a " +
                                  family_tag(label.family) + " instance");
    }
  }

  if (label.family == Family::C1) {
    Int modulus = label.r + 1;
    Int residue = u_exponent % modulus;
    if (residue < 0) residue += modulus;
    if (residue != 0) {
      return OracleAnswer::no("u-exponent " + u_exponent.str() + " is not divisible by " +
                              modulus.str());
    }
  }
  return t_wp(spec, e, budget);
}

OracleAnswer iso_c1(const FamilyContext& ctx, const InstanceLabel& a, const InstanceLabel& b) {
  validate_label(a);
  validate_label(b);
  require_family(a, Family::C1);
  require_family(b, Family::C1);

  AbelianInvariants ia = abelian_invariants(emit_c1(ctx, a));
  AbelianInvariants ib = abelian_invariants(emit_c1(ctx, b));
  std::string report = format_invariants(ia) + " vs " + format_invariants(ib);
  if (a.r == b.r) {
    return OracleAnswer::yes("equal instance index r = " + a.r.str() + "; abelianizations " +
                             report);
  }
  return OracleAnswer::no("cyclic contributions differ: " + Int(a.r + 1).str() + " vs " +
                          Int(b.r + 1).str() + "; abelianizations " + report);
}

namespace {

// Index of the congruence subgroup that trivializes the side's twist in
// family C2: 1 when the conjugator is already empty, else 2 (squares of the
// central generators die by the exponent-2 relators).
Int c2_reduction_index(const InstanceLabel& label) { return label.r == 0 ? Int(1) : Int(2); }

}  // namespace

CommResult comm_c2(const FamilyContext& ctx, const InstanceLabel& a, const InstanceLabel& b) {
  validate_label(a);
  validate_label(b);
  require_family(a, Family::C2);
  require_family(b, Family::C2);

  Int k1 = c2_reduction_index(a);
  Int k2 = c2_reduction_index(b);
  TorusSpec w1 = reduce_twist(finite_index_subgroup(ctx.torus_spec(Family::C2, a.r), k1));
  TorusSpec w2 = reduce_twist(finite_index_subgroup(ctx.torus_spec(Family::C2, b.r), k2));
  if (!(w1 == w2)) throw std::logic_error("commensurability witnesses failed to reduce");

  std::string note = "index-" + k1.str() + " and index-" + k2.str() +
                     " congruence subgroups both reduce to the untwisted extension";
  CommResult result{OracleAnswer::yes(note), std::nullopt};
  result.certificate.emplace(CommCertificate{std::move(k1), std::move(k2), std::move(w1),
                                             std::move(w2), std::move(note)});
  return result;
}

CommResult comm_c1_semi(const FamilyContext& ctx, const InstanceLabel& label, Budget budget) {
  validate_label(label);
  require_family(label, Family::C1);

  TorusSpec base = reduce_twist(ctx.torus_spec(Family::C1, Int(0)));
  if (label.r == 0) {
    std::string note = "identity instance: both sides are the untwisted extension";
    CommResult result{OracleAnswer::yes(note), std::nullopt};
    result.certificate.emplace(CommCertificate{Int(1), Int(1), base, base, std::move(note)});
    return result;
  }

  OrderBound bound = order_bound_of_d(label.r, ctx.hall_config(Family::C1), budget);
  if (bound.kind != OrderBound::Kind::Finite) {
    return CommResult{OracleAnswer::unknown(budget), std::nullopt};
  }
  Int m = bound.value;
  TorusSpec w1 = reduce_twist(finite_index_subgroup(ctx.torus_spec(Family::C1, label.r), m));
  if (!(w1 == base)) throw std::logic_error("congruence subgroup failed to untwist");

  std::string note = "conjugator power " + m.str() +
                     " dies in the factor, so the index-" + m.str() +
                     " congruence subgroup is the untwisted extension; within the full "
                     "instance (cyclic factor of order " +
                     Int(label.r + 1).str() + ") the common subgroup has index " +
                     Int((label.r + 1) * m).str();
  CommResult result{OracleAnswer::yes(note), std::nullopt};
  result.certificate.emplace(
      CommCertificate{std::move(m), Int(1), std::move(w1), base, std::move(note)});
  return result;
}

OracleAnswer iso_c2_semi(const FamilyContext& ctx, const InstanceLabel& label, Budget budget) {
  validate_label(label);
  require_family(label, Family::C2);
  if (label.r == 0) return OracleAnswer::yes("identity instance");
  if (wp_v2_semi(z_word(label.r), ctx.hall_config(Family::C2), budget) == Triviality::Trivial) {
    return OracleAnswer::yes("twist conjugator is trivial in the factor, so the twist is the "
                             "identity automorphism");
  }
  return OracleAnswer::unknown(budget);
}

namespace {

InstanceLabel reduction_label(Family family, const Int& r) {
  Int truncation = r > 1 ? r : Int(1);
  return InstanceLabel{family, r, std::move(truncation)};
}

}  // namespace

OracleAnswer reduce_torsion_to_comm(const CommOracle& comm, const Int& r, Budget budget) {
  if (r < 0) throw std::domain_error("central generator index must be >= 0");
  return comm(reduction_label(Family::C1, r), reduction_label(Family::C1, Int(0)), budget);
}

OracleAnswer reduce_word_to_iso(const IsoOracle& iso, const Int& r, Budget budget) {
  if (r < 0) throw std::domain_error("central generator index must be >= 0");
  return iso(reduction_label(Family::C2, r), reduction_label(Family::C2, Int(0)), budget);
}

OracleAnswer triviality_from_iso(const MemberOracle& member, const PairOracle& iso,
                                 const FinitePresentation& g_ref, const FinitePresentation& a,
                                 Budget /*budget*/) {
  FinitePresentation h = free_product(g_ref, a);
  OracleAnswer in_class = member(h);
  if (in_class.is_no()) {
    return OracleAnswer::no("the free product with the reference group left the class");
  }
  if (in_class.is_unknown()) return OracleAnswer::unknown();
  OracleAnswer same = iso(h, g_ref);
  if (same.is_no()) {
    return OracleAnswer::no("the free product is in the class but not isomorphic to the "
                            "reference group");
  }
  if (same.is_unknown()) return OracleAnswer::unknown();
  return OracleAnswer::yes("the free product is isomorphic to the reference group, which "
                           "forces the free factor to be trivial");
}

OracleAnswer triviality_from_comm(const MemberOracle& member, const PairOracle& comm,
                                  const FinitePresentation& g_ref, const FinitePresentation& a,
                                  Budget /*budget*/) {
  FinitePresentation doubled = free_product(a, a);
  FinitePresentation h = free_product(g_ref, doubled);
  FinitePresentation f = direct_product(g_ref, doubled);

  OracleAnswer h_in = member(h);
  if (h_in.is_no()) return OracleAnswer::no("the free-product construction left the class");
  OracleAnswer f_in = member(f);
  if (f_in.is_no()) return OracleAnswer::no("the direct-product construction left the class");
  OracleAnswer related = comm(h, f);
  if (related.is_no()) {
    return OracleAnswer::no("the free- and direct-product constructions are not commensurable");
  }
  if (h_in.is_yes() && f_in.is_yes() && related.is_yes()) {
    return OracleAnswer::yes("free and direct products with the doubled group agree up to "
                             "commensurability, which forces the group to be trivial");
  }
  return OracleAnswer::unknown();
}

OracleAnswer toy_z_member(const FinitePresentation& p) {
  if (p.generators().size() == 1 && p.relators().empty()) {
    return OracleAnswer::yes("free of rank 1");
  }
  AbelianInvariants inv = abelian_invariants(p);
  if (inv.free_rank != 1 || !inv.torsion.empty()) {
    return OracleAnswer::no("abelianization is " + format_invariants(inv) +
                            ", not infinite cyclic");
  }
  return OracleAnswer::unknown();
}

OracleAnswer toy_z_iso(const FinitePresentation& p, const FinitePresentation& q) {
  OracleAnswer mp = toy_z_member(p);
  OracleAnswer mq = toy_z_member(q);
  if (mp.is_yes() && mq.is_yes()) return OracleAnswer::yes("both certified infinite cyclic");
  if ((mp.is_yes() && mq.is_no()) || (mp.is_no() && mq.is_yes())) {
    return OracleAnswer::no("exactly one side is certified outside the class");
  }
  return OracleAnswer::unknown();
}

OracleAnswer toy_z_comm(const FinitePresentation& p, const FinitePresentation& q) {
  if (toy_z_member(p).is_yes() && toy_z_member(q).is_yes()) {
    return OracleAnswer::yes("both certified infinite cyclic");
  }
  return OracleAnswer::unknown();
}

}  // namespace isocomm
