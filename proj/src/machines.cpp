#include "isocomm/machines.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "isocomm/word.hpp"  // ParseError

namespace isocomm {

namespace {

// pair(x, y) = (x+y)(x+y+1)/2 + y, the classic bijection N^2 -> N.
Int cantor_pair(const Int& x, const Int& y) {
  Int s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Int, Int> cantor_unpair(const Int& z) {
  Int disc = 8 * z + 1;
  Int w = (boost::multiprecision::sqrt(disc) - 1) / 2;
  Int t = w * (w + 1) / 2;
  Int y = z - t;
  Int x = w - y;
  return {x, y};
}

std::size_t to_size(const Int& v, const char* what) {
  if (v < 0 || v > Int(1'000'000'000)) {
    throw std::out_of_range(std::string(what) + " out of supported range");
  }
  return static_cast<std::size_t>(static_cast<std::uint64_t>(v));
}

}  // namespace

Program Program::decode(const Int& index) {
  if (index < 0) throw std::out_of_range("program index must be nonnegative");

  std::vector<Int> opcodes;
  Int rest = index;
  while (rest > 0) {
    auto [head, tail] = cantor_unpair(rest - 1);
    opcodes.push_back(head);
    rest = tail;
  }
  if (opcodes.empty()) opcodes.push_back(0);  // empty list normalizes to halt

  Program p;
  const Int modulus = Int(opcodes.size()) + 1;  // position L is an implicit halt
  std::map<Int, std::size_t> slot_of;
  auto slot = [&](const Int& id) {
    auto it = slot_of.find(id);
    if (it != slot_of.end()) return it->second;
    std::size_t s = p.counter_ids_.size();
    p.counter_ids_.push_back(id);
    slot_of.emplace(id, s);
    return s;
  };

  for (const Int& op : opcodes) {
    Instruction ins;
    if (op == 0) {
      ins.kind = Instruction::Kind::Halt;
    } else {
      Int m = op - 1;
      if (m % 2 == 0) {
        auto [counter, next] = cantor_unpair(m / 2);
        ins.kind = Instruction::Kind::Inc;
        ins.counter = slot(counter);
        ins.next = to_size(next % modulus, "branch target");
      } else {
        auto [counter, targets] = cantor_unpair((m - 1) / 2);
        auto [next, jump] = cantor_unpair(targets);
        ins.kind = Instruction::Kind::DecJz;
        ins.counter = slot(counter);
        ins.next = to_size(next % modulus, "branch target");
        ins.jump = to_size(jump % modulus, "branch target");
      }
    }
    p.instructions_.push_back(ins);
  }
  return p;
}

Int Program::encode() const {
  std::vector<Int> opcodes;
  for (const Instruction& ins : instructions_) {
    switch (ins.kind) {
      case Instruction::Kind::Halt:
        opcodes.emplace_back(0);
        break;
      case Instruction::Kind::Inc:
        opcodes.push_back(1 + 2 * cantor_pair(counter_ids_[ins.counter], Int(ins.next)));
        break;
      case Instruction::Kind::DecJz:
        opcodes.push_back(
            2 + 2 * cantor_pair(counter_ids_[ins.counter],
                                cantor_pair(Int(ins.next), Int(ins.jump))));
        break;
    }
  }
  Int acc = 0;
  for (auto it = opcodes.rbegin(); it != opcodes.rend(); ++it) {
    acc = cantor_pair(*it, acc) + 1;
  }
  return acc;
}

Program Program::parse(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
      std::size_t begin = line.find_first_not_of(" \t\r");
      if (begin == std::string::npos) continue;
      std::size_t end = line.find_last_not_of(" \t\r");
      line = line.substr(begin, end - begin + 1);
      if (line.empty() || line[0] == '#') continue;
      lines.push_back(line);
    }
  }
  if (lines.empty()) throw ParseError("program parse error: no instructions");

  Program p;
  std::map<Int, std::size_t> slot_of;
  auto slot = [&](const Int& id) {
    auto it = slot_of.find(id);
    if (it != slot_of.end()) return it->second;
    std::size_t s = p.counter_ids_.size();
    p.counter_ids_.push_back(id);
    slot_of.emplace(id, s);
    return s;
  };

  const std::size_t max_target = lines.size();  // implicit halt position
  for (std::size_t no = 0; no < lines.size(); ++no) {
    std::istringstream is{lines[no]};
    auto fail = [&](const std::string& what) -> void {
      std::ostringstream os;
      os << "program parse error, instruction " << no << ": " << what;
      throw ParseError(os.str());
    };
    auto read_counter = [&]() {
      std::string tok;
      if (!(is >> tok) || tok.size() < 2 || tok[0] != 'c' ||
          tok.find_first_not_of("0123456789", 1) != std::string::npos) {
        fail("expected counter 'c<k>'");
      }
      return slot(Int(tok.substr(1)));
    };
    auto read_exact = [&](const std::string& expect) {
      std::string tok;
      if (!(is >> tok) || tok != expect) fail("expected '" + expect + "'");
    };
    auto read_target = [&]() {
      std::string tok;
      if (!(is >> tok) || tok.empty() ||
          tok.find_first_not_of("0123456789") != std::string::npos) {
        fail("expected a line number");
      }
      std::size_t v = to_size(Int(tok), "branch target");
      if (v > max_target) fail("branch target out of range");
      return v;
    };

    std::string op;
    is >> op;
    Instruction ins;
    if (op == "halt") {
      ins.kind = Instruction::Kind::Halt;
    } else if (op == "inc") {
      ins.kind = Instruction::Kind::Inc;
      ins.counter = read_counter();
      read_exact("->");
      ins.next = read_target();
    } else if (op == "decjz") {
      ins.kind = Instruction::Kind::DecJz;
      ins.counter = read_counter();
      read_exact("->");
      ins.next = read_target();
      read_exact("|");
      ins.jump = read_target();
    } else {
      fail("unknown instruction '" + op + "'");
    }
    std::string extra;
    if (is >> extra) fail("trailing input");
    p.instructions_.push_back(ins);
  }
  return p;
}

std::string Program::to_text() const {
  std::ostringstream os;
  for (const Instruction& ins : instructions_) {
    switch (ins.kind) {
      case Instruction::Kind::Halt:
        os << "halt\n";
        break;
      case Instruction::Kind::Inc:
        os << "inc c" << counter_ids_[ins.counter] << " -> " << ins.next << '\n';
        break;
      case Instruction::Kind::DecJz:
        os << "decjz c" << counter_ids_[ins.counter] << " -> " << ins.next << " | " << ins.jump
           << '\n';
        break;
    }
  }
  return os.str();
}

RunResult run_program(const Program& p, Budget budget) {
  std::vector<std::uint64_t> counters(p.counter_ids().size(), 0);
  const auto& ins = p.instructions();
  std::size_t pc = 0;
  for (Budget step = 0; step < budget; ++step) {
    if (pc >= ins.size()) return RunResult{true, step + 1};  // implicit halt position
    const Instruction& i = ins[pc];
    switch (i.kind) {
      case Instruction::Kind::Halt:
        return RunResult{true, step + 1};
      case Instruction::Kind::Inc:
        ++counters[i.counter];
        pc = i.next;
        break;
      case Instruction::Kind::DecJz:
        if (counters[i.counter] == 0) {
          pc = i.jump;
        } else {
          --counters[i.counter];
          pc = i.next;
        }
        break;
    }
  }
  return RunResult{false, budget};
}

namespace {

// Resumable canonical interleaving. Round k charges k steps to each of the
// programs 0..k; the stream can be pumped either to a total charge or to a
// discovery count, and both views agree because the order never varies.
class DovetailStream {
 public:
  struct Discovery {
    Int index;
    Budget charge;  // cumulative charge when this index was found
  };

  void pump_to_charge(Budget limit) {
    while (next_cost() <= limit && used_ <= limit - next_cost()) step();
  }

  void pump_to_count(std::size_t count) {
    while (found_.size() < count) step();
  }

  const std::vector<Discovery>& discovered() const { return found_; }
  Budget used() const { return used_; }

 private:
  Budget next_cost() const { return p_ > k_ ? k_ + 1 : k_; }

  void step() {
    if (p_ > k_) {
      ++k_;
      p_ = 0;
    }
    const Program& prog = program_at(p_);
    used_ += static_cast<Budget>(k_);
    RunResult r = run_program(prog, static_cast<Budget>(k_));
    if (r.halted && seen_.insert(p_).second) {
      found_.push_back(Discovery{Int(p_), used_});
    }
    ++p_;
  }

  const Program& program_at(std::size_t idx) {
    while (programs_.size() <= idx) programs_.push_back(Program::decode(Int(programs_.size())));
    return programs_[idx];
  }

  std::size_t k_ = 1;  // current round
  std::size_t p_ = 0;  // next program within the round
  Budget used_ = 0;
  std::vector<Program> programs_;
  std::vector<Discovery> found_;
  std::set<std::size_t> seen_;
};

}  // namespace

std::vector<Int> dovetail(Budget total_budget) {
  DovetailStream stream;
  stream.pump_to_charge(total_budget);
  std::vector<Int> out;
  out.reserve(stream.discovered().size());
  for (const auto& d : stream.discovered()) out.push_back(d.index);
  return out;
}

ComputableF::RangeAnswer ComputableF::in_range_semi(const Int& r, Budget budget) const {
  RangeAnswer a = range_membership(r, budget, Int(0));
  if (a.verdict == Verdict::No) {
    a.verdict = Verdict::Unknown;
    a.witness.reset();
  }
  return a;
}

namespace {

class HaltingEnumeratorF final : public ComputableF {
 public:
  Int eval(const Int& n) const override {
    std::size_t idx = to_size(n, "f argument");
    std::lock_guard<std::mutex> lock(mu_);
    stream_.pump_to_count(idx + 1);
    return stream_.discovered()[idx].index;
  }

  RangeAnswer range_membership(const Int& r, Budget budget, const Int& min_arg) const override {
    if (r < 0) return RangeAnswer{Verdict::No, std::nullopt, 0};
    std::lock_guard<std::mutex> lock(mu_);
    stream_.pump_to_charge(budget);
    for (std::size_t i = 0; i < stream_.discovered().size(); ++i) {
      const auto& d = stream_.discovered()[i];
      if (d.charge > budget) break;
      if (d.index == r && Int(i) >= min_arg) {
        return RangeAnswer{Verdict::Yes, Int(i), d.charge};
      }
    }
    return RangeAnswer{Verdict::Unknown, std::nullopt, budget};
  }

  std::string describe() const override { return "default"; }

 private:
  mutable std::mutex mu_;
  mutable DovetailStream stream_;
};

class AffineF final : public ComputableF {
 public:
  AffineF(Int a, Int b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_ < 1 || b_ < 0) {
      throw std::invalid_argument("affine table needs a >= 1, b >= 0 for injectivity");
    }
  }

  Int eval(const Int& n) const override {
    if (n < 0) throw std::out_of_range("f argument must be nonnegative");
    return a_ * n + b_;
  }

  RangeAnswer range_membership(const Int& r, Budget /*budget*/, const Int& min_arg) const override {
    Int d = r - b_;
    if (d >= 0 && d % a_ == 0 && d / a_ >= min_arg) {
      return RangeAnswer{Verdict::Yes, d / a_, 0};
    }
    return RangeAnswer{Verdict::No, std::nullopt, 0};
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "table:";
    if (a_ != 1) os << a_;
    os << 'n';
    if (b_ != 0) os << '+' << b_;
    return os.str();
  }

 private:
  Int a_;
  Int b_;
};

class FiniteTableF final : public ComputableF {
 public:
  explicit FiniteTableF(std::vector<Int> values) : values_(std::move(values)) {
    std::set<Int> seen;
    for (const Int& v : values_) {
      if (v < 0 || !seen.insert(v).second) {
        throw std::invalid_argument("finite table must list distinct nonnegative values");
      }
    }
  }

  Int eval(const Int& n) const override {
    if (n < 0 || n >= Int(values_.size())) {
      throw std::out_of_range("finite table argument outside the table");
    }
    return values_[static_cast<std::size_t>(static_cast<std::uint64_t>(n))];
  }

  RangeAnswer range_membership(const Int& r, Budget /*budget*/, const Int& min_arg) const override {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (Int(i) >= min_arg && values_[i] == r) return RangeAnswer{Verdict::Yes, Int(i), 0};
    }
    return RangeAnswer{Verdict::No, std::nullopt, 0};
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "table:[";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i > 0) os << ',';
      os << values_[i];
    }
    os << ']';
    return os.str();
  }

 private:
  std::vector<Int> values_;
};

}  // namespace

std::shared_ptr<ComputableF> ComputableF::halting_enumerator() {
  return std::make_shared<HaltingEnumeratorF>();
}

std::shared_ptr<ComputableF> ComputableF::affine(Int a, Int b) {
  return std::make_shared<AffineF>(std::move(a), std::move(b));
}

std::shared_ptr<ComputableF> ComputableF::finite_table(std::vector<Int> values) {
  return std::make_shared<FiniteTableF>(std::move(values));
}

std::shared_ptr<ComputableF> ComputableF::parse_table_spec(std::string_view spec) {
  std::size_t begin = spec.find_first_not_of(" \t");
  std::size_t end = spec.find_last_not_of(" \t");
  if (begin == std::string_view::npos) throw ParseError("empty table spec");
  spec = spec.substr(begin, end - begin + 1);

  std::size_t n_pos = spec.find('n');
  if (n_pos == std::string_view::npos) {
    throw ParseError("table spec must have the affine form 'an+b', e.g. '2n+3'");
  }
  auto digits = [&](std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
  };
  Int a = 1;
  if (n_pos > 0) {
    std::string_view coeff = spec.substr(0, n_pos);
    if (!digits(coeff)) throw ParseError("bad coefficient in table spec");
    a = Int(std::string(coeff));
  }
  Int b = 0;
  std::string_view rest = spec.substr(n_pos + 1);
  if (!rest.empty()) {
    if (rest[0] != '+' || !digits(rest.substr(1))) {
      throw ParseError("bad offset in table spec, expected '+<digits>'");
    }
    b = Int(std::string(rest.substr(1)));
  }
  try {
    return affine(std::move(a), std::move(b));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace isocomm
