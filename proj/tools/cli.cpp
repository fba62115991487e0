#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "isocomm/classes.hpp"
#include "isocomm/hall.hpp"
#include "isocomm/machines.hpp"
#include "isocomm/presentation.hpp"
#include "isocomm/snf.hpp"
#include "isocomm/tietze.hpp"
#include "isocomm/torus.hpp"
#include "isocomm/word.hpp"

namespace isocomm::cli {

namespace {

// `--table ""` (unset) selects the default halting-enumerator mode; a spec
// like "2n+3" injects a decidable affine f.
std::shared_ptr<ComputableF> make_f(const std::string& table) {
  return table.empty() ? ComputableF::halting_enumerator() : ComputableF::parse_table_spec(table);
}

FamilyContext make_context(const std::string& table) {
  return FamilyContext(make_f(table));
}

Family parse_family(const std::string& tag) {
  return tag == "c1" ? Family::C1 : Family::C2;
}

// Truncation for labels the user addresses by index only: the smallest
// level at which the instance's own relators are present.
Int default_truncation(const Int& r) { return r > 1 ? r : Int(1); }

InstanceLabel make_label(Family family, long long r, long long truncation_flag) {
  Int truncation = truncation_flag >= 0 ? Int(truncation_flag) : default_truncation(Int(r));
  return InstanceLabel{family, Int(r), std::move(truncation)};
}

int answer_exit(const OracleAnswer& a) {
  if (a.is_yes()) return kExitYes;
  if (a.is_no()) return kExitNo;
  return kExitUnknown;
}

void print_answer(std::ostream& out, const OracleAnswer& a) {
  out << (a.is_yes() ? "yes" : a.is_no() ? "no" : "unknown") << "\n";
  if (a.certificate) out << "certificate: " << *a.certificate << "\n";
}

int print_triviality(std::ostream& out, Triviality t, const std::string& where) {
  switch (t) {
    case Triviality::Trivial:
      out << "yes: trivial in " << where << "\n";
      return kExitYes;
    case Triviality::Nontrivial:
      out << "no: nontrivial in " << where << "\n";
      return kExitNo;
    case Triviality::Unknown:
      out << "unknown: budget exhausted\n";
      return kExitUnknown;
  }
  return kExitInternal;
}

FinitePresentation read_presentation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

// Generator-to-factor map of the two-factor instances: a, b generate the
// variant factor, y the order-two factor.
const std::map<std::string, std::string>& instance_generator_map() {
  static const std::map<std::string, std::string> map{{"a", "A"}, {"b", "A"}, {"y", "B"}};
  return map;
}

struct EnumArgs {
  std::string family;
  long long count = 0;
  long long truncation = 0;
  std::string out_dir;
  std::string table;
};

int run_enum(const EnumArgs& a, std::ostream& out) {
  FamilyContext ctx = make_context(a.table);
  Family family = parse_family(a.family);
  if (a.count < 0) throw std::invalid_argument("--count must be >= 0");
  std::filesystem::create_directories(a.out_dir);

  std::vector<std::string> paths;
  for (long long r = 0; r < a.count; ++r) {
    InstanceLabel label{family, Int(r), Int(a.truncation)};
    std::string path = a.out_dir + "/" + a.family + "_r" + std::to_string(r) + ".pres";
    std::ofstream file(path, std::ios::binary);
    if (!file.good()) throw std::invalid_argument("cannot write file: " + path);
    file << emit_text(ctx, label);
    paths.push_back(std::move(path));
  }
  out << "ok: emitted " << a.count << " presentations to " << a.out_dir << "\n";
  for (const std::string& path : paths) out << "wrote: " << path << "\n";
  return kExitYes;
}

struct WpArgs {
  std::string variant;
  std::string word;
  std::uint64_t budget = 10000;
  std::string table;
};

int run_wp(const WpArgs& a, std::ostream& out) {
  Word w = parse_word(a.word);
  auto f = make_f(a.table);
  if (a.variant == "v1") {
    return print_triviality(out, wp_v1(w, HallConfig::v1(f)), "the variant-1 factor");
  }
  return print_triviality(out, wp_v2_semi(w, HallConfig::v2(f), a.budget),
                          "the variant-2 factor");
}

int run_abel(const std::string& path, std::ostream& out) {
  AbelianInvariants inv = abelian_invariants(read_presentation(path));
  out << "ok: free rank " << inv.free_rank << ", " << inv.torsion.size()
      << " torsion factors\n";
  out << "free-rank: " << inv.free_rank << "\n";
  out << "torsion:";
  for (const Int& d : inv.torsion) out << ' ' << d;
  out << "\n";
  return kExitYes;
}

struct PairArgs {
  std::string klass;
  long long r = 0;
  long long q = -1;  // -1: not given
  long long truncation = -1;
  std::uint64_t budget = 10000;
  std::string table;
};

int run_iso(const PairArgs& a, std::ostream& out) {
  FamilyContext ctx = make_context(a.table);
  if (a.klass == "c1") {
    if (a.q < 0) throw std::invalid_argument("iso --class c1 takes two instance indices R Q");
    long long max_r = std::max(a.r, a.q);
    InstanceLabel left = make_label(Family::C1, a.r, a.truncation < 0 ? -1 : a.truncation);
    InstanceLabel right = make_label(Family::C1, a.q, a.truncation < 0 ? -1 : a.truncation);
    if (a.truncation < 0) {
      left.truncation = right.truncation = default_truncation(Int(max_r));
    }
    OracleAnswer ans = iso_c1(ctx, left, right);
    print_answer(out, ans);
    return answer_exit(ans);
  }
  if (a.q >= 0) {
    throw std::invalid_argument(
        "iso --class c2 is a semi-decision against instance 0 and takes one index R");
  }
  OracleAnswer ans = iso_c2_semi(ctx, make_label(Family::C2, a.r, a.truncation), a.budget);
  print_answer(out, ans);
  return answer_exit(ans);
}

int run_comm(const PairArgs& a, std::ostream& out) {
  FamilyContext ctx = make_context(a.table);
  if (a.klass == "c2") {
    if (a.q < 0) throw std::invalid_argument("comm --class c2 takes two instance indices R Q");
    long long max_r = std::max(a.r, a.q);
    InstanceLabel left = make_label(Family::C2, a.r, a.truncation < 0 ? -1 : a.truncation);
    InstanceLabel right = make_label(Family::C2, a.q, a.truncation < 0 ? -1 : a.truncation);
    if (a.truncation < 0) {
      left.truncation = right.truncation = default_truncation(Int(max_r));
    }
    CommResult res = comm_c2(ctx, left, right);
    print_answer(out, res.answer);
    if (res.certificate) {
      out << "k1: " << res.certificate->k1 << "\n";
      out << "k2: " << res.certificate->k2 << "\n";
    }
    return answer_exit(res.answer);
  }
  if (a.q >= 0) {
    throw std::invalid_argument(
        "comm --class c1 is a semi-decision against instance 0 and takes one index R");
  }
  CommResult res = comm_c1_semi(ctx, make_label(Family::C1, a.r, a.truncation), a.budget);
  print_answer(out, res.answer);
  if (res.certificate) {
    out << "k1: " << res.certificate->k1 << "\n";
    out << "k2: " << res.certificate->k2 << "\n";
  }
  return answer_exit(res.answer);
}

struct FArgs {
  long long eval = -1;
  long long in_range = -1;
  bool has_eval = false;
  bool has_in_range = false;
  std::uint64_t budget = 10000;
  std::string table;
};

int run_f(const FArgs& a, std::ostream& out) {
  auto f = make_f(a.table);
  if (a.has_eval == a.has_in_range) {
    throw std::invalid_argument("f takes exactly one of --eval N or --in-range R");
  }
  if (a.has_eval) {
    Int value = f->eval(Int(a.eval));
    out << "ok: f(" << a.eval << ") = " << value << "\n";
    return kExitYes;
  }
  // Table modes answer membership definitively; the default mode is a
  // semi-decision and never refutes.
  ComputableF::RangeAnswer ans = a.table.empty()
                                     ? f->in_range_semi(Int(a.in_range), a.budget)
                                     : f->range_membership(Int(a.in_range), a.budget, Int(0));
  if (ans.verdict == Verdict::Yes) {
    out << "yes: " << a.in_range << " is in the range of f\n";
    out << "witness: " << *ans.witness << "\n";
    return kExitYes;
  }
  if (ans.verdict == Verdict::No) {
    out << "no: " << a.in_range << " is not in the range of f\n";
    return kExitNo;
  }
  out << "unknown\n";
  return kExitUnknown;
}

struct TorusArgs {
  std::string family = "c1";
  long long r = 0;
  std::string left;
  std::string right;
  std::string element;
  std::uint64_t budget = 10000;
  std::string table;
};

TorusSpec make_torus_spec(const TorusArgs& a) {
  if (a.r < 0) throw std::invalid_argument("--r must be >= 0");
  return make_context(a.table).torus_spec(parse_family(a.family), Int(a.r));
}

int run_torus_mul(const TorusArgs& a, std::ostream& out) {
  TorusSpec spec = make_torus_spec(a);
  TorusElement lhs = parse_torus_element(a.left, instance_generator_map());
  TorusElement rhs = parse_torus_element(a.right, instance_generator_map());
  TorusElement product = t_mul(spec, make_torus_element(spec, lhs.g, lhs.n),
                               make_torus_element(spec, rhs.g, rhs.n));
  out << "ok\n";
  out << "element: " << format_torus_element(product) << "\n";
  return kExitYes;
}

int run_torus_inv(const TorusArgs& a, std::ostream& out) {
  TorusSpec spec = make_torus_spec(a);
  TorusElement e = parse_torus_element(a.element, instance_generator_map());
  TorusElement inverse = t_inv(spec, make_torus_element(spec, e.g, e.n));
  out << "ok\n";
  out << "element: " << format_torus_element(inverse) << "\n";
  return kExitYes;
}

int run_torus_wp(const TorusArgs& a, std::ostream& out) {
  TorusSpec spec = make_torus_spec(a);
  TorusElement e = parse_torus_element(a.element, instance_generator_map());
  OracleAnswer ans = t_wp(spec, make_torus_element(spec, e.g, e.n), a.budget);
  print_answer(out, ans);
  return answer_exit(ans);
}

struct ReduceArgs {
  long long r = 0;
  std::uint64_t budget = 10000;
  std::string table;
  std::string file;
  std::string via = "iso";
};

int run_reduce_torsion(const ReduceArgs& a, std::ostream& out) {
  FamilyContext ctx = make_context(a.table);
  CommOracle oracle = [&ctx](const InstanceLabel& left, const InstanceLabel&, Budget budget) {
    return comm_c1_semi(ctx, left, budget).answer;
  };
  OracleAnswer ans = reduce_torsion_to_comm(oracle, Int(a.r), a.budget);
  print_answer(out, ans);
  return answer_exit(ans);
}

int run_reduce_word(const ReduceArgs& a, std::ostream& out) {
  FamilyContext ctx = make_context(a.table);
  IsoOracle oracle = [&ctx](const InstanceLabel& left, const InstanceLabel&, Budget budget) {
    return iso_c2_semi(ctx, left, budget);
  };
  OracleAnswer ans = reduce_word_to_iso(oracle, Int(a.r), a.budget);
  print_answer(out, ans);
  return answer_exit(ans);
}

int run_reduce_triviality(const ReduceArgs& a, std::ostream& out) {
  FinitePresentation p = read_presentation(a.file);
  FinitePresentation reference({GeneratorSymbol{"x"}}, {});
  OracleAnswer ans =
      a.via == "comm"
          ? triviality_from_comm(toy_z_member, toy_z_comm, reference, p, a.budget)
          : triviality_from_iso(toy_z_member, toy_z_iso, reference, p, a.budget);
  print_answer(out, ans);
  return answer_exit(ans);
}

struct TietzeArgs {
  std::string file;
  std::uint64_t budget = 3;
};

int run_tietze(const TietzeArgs& a, std::ostream& out) {
  FinitePresentation p = read_presentation(a.file);
  std::vector<FinitePresentation> neighbors = tietze_neighbors(p, a.budget);
  out << "ok: " << neighbors.size() << " neighbors at budget " << a.budget << "\n";
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    out << "# neighbor " << (i + 1) << "\n" << serialize_presentation(neighbors[i]);
  }
  return kExitYes;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Calculator for two-family mapping-torus instances: emission, word problems,\n"
               "isomorphism and commensurability deciders, and the reductions between them.\n"
               "Exit codes: 0 yes/trivial/success, 1 no/nontrivial, 2 unknown, 64 usage\n"
               "error, 65 parse error.",
               "isocomm"};
  app.require_subcommand(1);
  int code = kExitYes;

  EnumArgs enum_args;
  CLI::App* cmd_enum =
      app.add_subcommand("enum", "Write the first N instance presentations to a directory");
  cmd_enum->add_option("--family", enum_args.family, "Instance family")
      ->required()
      ->check(CLI::IsMember({"c1", "c2"}));
  cmd_enum->add_option("--count", enum_args.count, "Number of instances, r = 0..N-1")
      ->required();
  cmd_enum->add_option("--truncation", enum_args.truncation, "Relator truncation level T")
      ->required();
  cmd_enum->add_option("--out", enum_args.out_dir, "Output directory")->required();
  cmd_enum->add_option("--table", enum_args.table, "Injected affine f, e.g. '2n+3'");
  cmd_enum->callback([&] { code = run_enum(enum_args, out); });

  WpArgs wp_args;
  CLI::App* cmd_wp =
      app.add_subcommand("wp", "Word problem in the two-generator factor group");
  cmd_wp->add_option("--variant", wp_args.variant, "Factor variant")
      ->required()
      ->check(CLI::IsMember({"v1", "v2"}));
  cmd_wp->add_option("--word", wp_args.word, "Word over a, b (brackets allowed)")->required();
  cmd_wp->add_option("--budget", wp_args.budget, "Search budget for the v2 semi-decision");
  cmd_wp->add_option("--table", wp_args.table, "Injected affine f, e.g. '2n+3'");
  cmd_wp->callback([&] { code = run_wp(wp_args, out); });

  std::string abel_file;
  CLI::App* cmd_abel =
      app.add_subcommand("abel", "Abelian invariants of a presentation file");
  cmd_abel->add_option("file", abel_file, "Input .pres file")->required();
  cmd_abel->callback([&] { code = run_abel(abel_file, out); });

  PairArgs iso_args;
  CLI::App* cmd_iso = app.add_subcommand(
      "iso", "Isomorphism: --class c1 R Q decides; --class c2 R semi-decides against 0");
  cmd_iso->add_option("--class", iso_args.klass, "Instance class")
      ->required()
      ->check(CLI::IsMember({"c1", "c2"}));
  cmd_iso->add_option("r", iso_args.r, "First instance index")->required();
  cmd_iso->add_option("q", iso_args.q, "Second instance index (c1 only)");
  cmd_iso->add_option("--truncation", iso_args.truncation, "Relator truncation level");
  cmd_iso->add_option("--budget", iso_args.budget, "Search budget for the c2 semi-decision");
  cmd_iso->add_option("--table", iso_args.table, "Injected affine f, e.g. '2n+3'");
  cmd_iso->callback([&] { code = run_iso(iso_args, out); });

  PairArgs comm_args;
  CLI::App* cmd_comm = app.add_subcommand(
      "comm",
      "Commensurability: --class c2 R Q decides; --class c1 R semi-decides against 0");
  cmd_comm->add_option("--class", comm_args.klass, "Instance class")
      ->required()
      ->check(CLI::IsMember({"c1", "c2"}));
  cmd_comm->add_option("r", comm_args.r, "First instance index")->required();
  cmd_comm->add_option("q", comm_args.q, "Second instance index (c2 only)");
  cmd_comm->add_option("--truncation", comm_args.truncation, "Relator truncation level");
  cmd_comm->add_option("--budget", comm_args.budget, "Search budget for the c1 semi-decision");
  cmd_comm->add_option("--table", comm_args.table, "Injected affine f, e.g. '2n+3'");
  cmd_comm->callback([&] { code = run_comm(comm_args, out); });

  FArgs f_args;
  CLI::App* cmd_f = app.add_subcommand("f", "Evaluate f or test range membership");
  cmd_f->add_option("--eval", f_args.eval, "Compute f(N)");
  cmd_f->add_option("--in-range", f_args.in_range, "Is R in the range of f?");
  cmd_f->add_option("--budget", f_args.budget, "Search budget for default-mode membership");
  cmd_f->add_option("--table", f_args.table, "Injected affine f, e.g. '2n+3'");
  cmd_f->callback([&] {
    f_args.has_eval = cmd_f->count("--eval") > 0;
    f_args.has_in_range = cmd_f->count("--in-range") > 0;
    code = run_f(f_args, out);
  });

  TorusArgs torus_args;
  CLI::App* cmd_torus =
      app.add_subcommand("torus", "Arithmetic in a mapping-torus instance");
  cmd_torus->require_subcommand(1);
  auto add_torus_common = [&](CLI::App* sub) {
    sub->add_option("--family", torus_args.family, "Instance family (default c1)")
        ->check(CLI::IsMember({"c1", "c2"}));
    sub->add_option("--r", torus_args.r, "Instance index (default 0)");
    sub->add_option("--table", torus_args.table, "Injected affine f, e.g. '2n+3'");
  };
  CLI::App* cmd_torus_mul = cmd_torus->add_subcommand("mul", "Multiply two elements");
  add_torus_common(cmd_torus_mul);
  cmd_torus_mul->add_option("--left", torus_args.left, "Left element \"(word ; n)\"")
      ->required();
  cmd_torus_mul->add_option("--right", torus_args.right, "Right element \"(word ; n)\"")
      ->required();
  cmd_torus_mul->callback([&] { code = run_torus_mul(torus_args, out); });

  CLI::App* cmd_torus_inv = cmd_torus->add_subcommand("inv", "Invert an element");
  add_torus_common(cmd_torus_inv);
  cmd_torus_inv->add_option("--element", torus_args.element, "Element \"(word ; n)\"")
      ->required();
  cmd_torus_inv->callback([&] { code = run_torus_inv(torus_args, out); });

  CLI::App* cmd_torus_wp = cmd_torus->add_subcommand("wp", "Word problem for an element");
  add_torus_common(cmd_torus_wp);
  cmd_torus_wp->add_option("--element", torus_args.element, "Element \"(word ; n)\"")
      ->required();
  cmd_torus_wp->add_option("--budget", torus_args.budget, "Reported on unknown answers");
  cmd_torus_wp->callback([&] { code = run_torus_wp(torus_args, out); });

  ReduceArgs reduce_args;
  CLI::App* cmd_reduce =
      app.add_subcommand("reduce", "Reductions between word/torsion problems and the deciders");
  cmd_reduce->require_subcommand(1);
  CLI::App* cmd_rt = cmd_reduce->add_subcommand(
      "torsion-to-comm", "Finite order of the r-th central generator, via commensurability");
  cmd_rt->add_option("--r", reduce_args.r, "Central generator index")->required();
  cmd_rt->add_option("--budget", reduce_args.budget, "Search budget");
  cmd_rt->add_option("--table", reduce_args.table, "Injected affine f, e.g. '2n+3'");
  cmd_rt->callback([&] { code = run_reduce_torsion(reduce_args, out); });

  CLI::App* cmd_rw = cmd_reduce->add_subcommand(
      "word-to-iso", "Triviality of the r-th central generator, via isomorphism");
  cmd_rw->add_option("--r", reduce_args.r, "Central generator index")->required();
  cmd_rw->add_option("--budget", reduce_args.budget, "Search budget");
  cmd_rw->add_option("--table", reduce_args.table, "Injected affine f, e.g. '2n+3'");
  cmd_rw->callback([&] { code = run_reduce_word(reduce_args, out); });

  CLI::App* cmd_rv = cmd_reduce->add_subcommand(
      "triviality", "Triviality of a presented group, via toy class oracles");
  cmd_rv->add_option("file", reduce_args.file, "Input .pres file")->required();
  cmd_rv->add_option("--via", reduce_args.via, "Pair oracle to use (default iso)")
      ->check(CLI::IsMember({"iso", "comm"}));
  cmd_rv->add_option("--budget", reduce_args.budget, "Search budget");
  cmd_rv->callback([&] { code = run_reduce_triviality(reduce_args, out); });

  TietzeArgs tietze_args;
  CLI::App* cmd_tietze = app.add_subcommand(
      "tietze", "Enumerate presentations one bounded Tietze transformation away");
  cmd_tietze->add_option("file", tietze_args.file, "Input .pres file")->required();
  cmd_tietze->add_option("--budget", tietze_args.budget, "Bound on the consequence search");
  cmd_tietze->callback([&] { code = run_tietze(tietze_args, out); });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return code;
}

}  // namespace isocomm::cli
