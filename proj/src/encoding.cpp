#include "bss/encoding.hpp"

#include <array>
#include <cctype>

#include "bss/error.hpp"

namespace bss {

namespace {

constexpr std::array kSymbols{
    SymbolInfo{Symbol::Halt, "HALT"},     SymbolInfo{Symbol::Add, "ADD"},
    SymbolInfo{Symbol::Sub, "SUB"},       SymbolInfo{Symbol::Set, "SET"},
    SymbolInfo{Symbol::Eq, "EQ"},         SymbolInfo{Symbol::Ge, "GE"},
    SymbolInfo{Symbol::Copy, "COPY"},     SymbolInfo{Symbol::IdxSet, "IDXSET"},
    SymbolInfo{Symbol::Inc, "INC"},       SymbolInfo{Symbol::Ieq, "IEQ"},
    SymbolInfo{Symbol::Oracle, "ORACLE"}, SymbolInfo{Symbol::Z, "Z"},
    SymbolInfo{Symbol::I, "I"},           SymbolInfo{Symbol::Lbl, "LBL"},
    SymbolInfo{Symbol::C0, "C0"},         SymbolInfo{Symbol::C1, "C1"},
    SymbolInfo{Symbol::U, "U"},           SymbolInfo{Symbol::D0, "D0"},
    SymbolInfo{Symbol::D1, "D1"},         SymbolInfo{Symbol::Hdr, "HDR"},
};

constexpr std::uint8_t kMaxSymbol = static_cast<std::uint8_t>(Symbol::Hdr);
constexpr unsigned kMaxSubscriptBits = 62;

class Writer {
 public:
  void symbol(Symbol s) {
    auto v = static_cast<unsigned>(s);
    for (unsigned b = kSymbolWidth; b-- > 0;) bits_.push_back((v >> b) & 1u);
  }
  void subscript(std::size_t n) {
    unsigned length = 0;
    for (std::size_t v = n; v != 0; v >>= 1) ++length;
    for (unsigned i = 0; i < length; ++i) symbol(Symbol::U);
    for (unsigned b = length; b-- > 0;) symbol(((n >> b) & 1u) ? Symbol::D1 : Symbol::D0);
  }
  void reg(Symbol kind, std::size_t n) {
    symbol(kind);
    subscript(n);
  }
  void label(Label l) { reg(Symbol::Lbl, l); }

  std::vector<std::uint8_t> take() { return std::move(bits_); }

 private:
  std::vector<std::uint8_t> bits_;
};

class Reader {
 public:
  explicit Reader(const BitString& code) : code_(code) {}

  bool done() const { return pos_ >= code_.size(); }

  std::optional<Symbol> symbol() {
    if (pos_ + kSymbolWidth > code_.size()) return std::nullopt;
    unsigned v = 0;
    for (unsigned i = 0; i < kSymbolWidth; ++i) v = (v << 1) | code_[pos_++];
    if (v == 0 || v > kMaxSymbol) return std::nullopt;
    return static_cast<Symbol>(v);
  }
  std::optional<Symbol> peek() {
    std::size_t saved = pos_;
    auto s = symbol();
    pos_ = saved;
    return s;
  }
  bool expect(Symbol want) {
    auto s = symbol();
    return s && *s == want;
  }
  std::optional<std::size_t> subscript() {
    unsigned length = 0;
    while (peek() == Symbol::U) {
      symbol();
      if (++length > kMaxSubscriptBits) return std::nullopt;
    }
    if (length == 0) return std::nullopt;
    std::size_t n = 0;
    for (unsigned i = 0; i < length; ++i) {
      auto s = symbol();
      if (s != Symbol::D0 && s != Symbol::D1) return std::nullopt;
      if (i == 0 && s != Symbol::D1) return std::nullopt;  // canonical: leading 1
      n = (n << 1) | (s == Symbol::D1 ? 1u : 0u);
    }
    return n;
  }
  std::optional<std::size_t> reg(Symbol kind) {
    if (!expect(kind)) return std::nullopt;
    return subscript();
  }

 private:
  const BitString& code_;
  std::size_t pos_ = 0;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::optional<Instruction> read_instruction(Reader& r) {
  auto op = r.symbol();
  if (!op) return std::nullopt;
  auto z = [&] { return r.reg(Symbol::Z); };
  auto i = [&] { return r.reg(Symbol::I); };
  auto l = [&] { return r.reg(Symbol::Lbl); };
  switch (*op) {
    case Symbol::Halt:
      return instr::Halt{};
    case Symbol::Add:
    case Symbol::Sub: {
      auto d = z(), a = z(), b = z();
      if (!d || !a || !b) return std::nullopt;
      if (*op == Symbol::Add) return instr::Add{*d, *a, *b};
      return instr::Sub{*d, *a, *b};
    }
    case Symbol::Set: {
      auto d = z();
      auto c = r.symbol();
      if (!d || (c != Symbol::C0 && c != Symbol::C1)) return std::nullopt;
      return instr::SetConst{*d, RealValue(c == Symbol::C1 ? 1 : 0)};
    }
    case Symbol::Eq:
    case Symbol::Ge: {
      auto reg = z(), a = l(), b = l();
      if (!reg || !a || !b) return std::nullopt;
      if (*op == Symbol::Eq) return instr::EqTest{*reg, *a, *b};
      return instr::GeTest{*reg, *a, *b};
    }
    case Symbol::Copy: {
      auto d = i(), s = i();
      if (!d || !s) return std::nullopt;
      return instr::CopyIndirect{*d, *s};
    }
    case Symbol::IdxSet:
    case Symbol::Inc: {
      auto j = i();
      if (!j) return std::nullopt;
      if (*op == Symbol::IdxSet) return instr::IndexSet{*j};
      return instr::IndexInc{*j};
    }
    case Symbol::Ieq: {
      auto a = i(), b = i(), x = l(), y = l();
      if (!a || !b || !x || !y) return std::nullopt;
      return instr::IndexTest{*a, *b, *x, *y};
    }
    case Symbol::Oracle: {
      auto x = l(), y = l();
      if (!x || !y) return std::nullopt;
      return instr::OracleTest{*x, *y};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw Error(ErrorCode::InvalidValue, "bit strings hold only 0 and 1");
  }
}

BitString BitString::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    std::string len_text(text.substr(0, colon));
    std::string hex(text.substr(colon + 1));
    if (len_text.empty() || hex.empty() || len_text.size() > 9 ||
        !std::all_of(len_text.begin(), len_text.end(), ::isdigit)) {
      throw Error(ErrorCode::InvalidValue, "bad hex bit string '" + std::string(text) + "'");
    }
    std::size_t length = std::stoul(len_text);
    Integer c;
    if (c.set_str(hex, 16) != 0) {
      throw Error(ErrorCode::InvalidValue, "bad hex digits in '" + std::string(text) + "'");
    }
    if (mpz_sizeinbase(c.get_mpz_t(), 2) > length && c != 0) {
      throw Error(ErrorCode::InvalidValue, "hex value exceeds declared length");
    }
    for (std::size_t b = length; b-- > 0;) bits.push_back(mpz_tstbit(c.get_mpz_t(), b));
    return BitString(std::move(bits));
  }
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw Error(ErrorCode::InvalidValue, "bad binary digit in '" + std::string(text) + "'");
    }
    bits.push_back(ch == '1');
  }
  return BitString(std::move(bits));
}

std::string BitString::to_binary() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::string BitString::to_hex() const {
  std::string hex = value().get_str(16);
  std::size_t digits = (bits_.size() + 3) / 4;
  if (hex.size() < digits) hex.insert(0, digits - hex.size(), '0');
  return std::to_string(bits_.size()) + ":" + hex;
}

Integer BitString::value() const {
  Integer c = 0;
  for (auto b : bits_) {
    c <<= 1;
    if (b) c += 1;
  }
  return c;
}

std::span<const SymbolInfo> symbol_table() { return kSymbols; }

BitString encode(const Program& p) {
  Writer w;
  if (p.index_registers() > p.referenced_index_registers()) w.reg(Symbol::Hdr, p.index_registers());
  for (const auto& in : p.instructions()) {
    std::visit(
        overloaded{
            [&](const instr::Halt&) { w.symbol(Symbol::Halt); },
            [&](const instr::Add& a) {
              w.symbol(Symbol::Add);
              w.reg(Symbol::Z, a.dst), w.reg(Symbol::Z, a.lhs), w.reg(Symbol::Z, a.rhs);
            },
            [&](const instr::Sub& a) {
              w.symbol(Symbol::Sub);
              w.reg(Symbol::Z, a.dst), w.reg(Symbol::Z, a.lhs), w.reg(Symbol::Z, a.rhs);
            },
            [&](const instr::SetConst& a) {
              const RealValue& c = a.value;
              if (!c.is_rational() || (c.constant() != 0 && c.constant() != 1)) {
                throw Error(ErrorCode::NonBinaryConstant,
                            "NonBinaryConstant: constant " + c.to_string() + " has no bit code");
              }
              w.symbol(Symbol::Set);
              w.reg(Symbol::Z, a.dst);
              w.symbol(c.constant() == 1 ? Symbol::C1 : Symbol::C0);
            },
            [&](const instr::EqTest& a) {
              w.symbol(Symbol::Eq);
              w.reg(Symbol::Z, a.reg), w.label(a.if_zero), w.label(a.otherwise);
            },
            [&](const instr::GeTest& a) {
              w.symbol(Symbol::Ge);
              w.reg(Symbol::Z, a.reg), w.label(a.if_nonneg), w.label(a.otherwise);
            },
            [&](const instr::CopyIndirect& a) {
              w.symbol(Symbol::Copy);
              w.reg(Symbol::I, a.dst_index), w.reg(Symbol::I, a.src_index);
            },
            [&](const instr::IndexSet& a) {
              w.symbol(Symbol::IdxSet);
              w.reg(Symbol::I, a.index);
            },
            [&](const instr::IndexInc& a) {
              w.symbol(Symbol::Inc);
              w.reg(Symbol::I, a.index);
            },
            [&](const instr::IndexTest& a) {
              w.symbol(Symbol::Ieq);
              w.reg(Symbol::I, a.lhs), w.reg(Symbol::I, a.rhs);
              w.label(a.if_equal), w.label(a.otherwise);
            },
            [&](const instr::OracleTest& a) {
              w.symbol(Symbol::Oracle);
              w.label(a.if_member), w.label(a.otherwise);
            },
        },
        in);
  }
  return BitString(w.take());
}

std::optional<Program> decode(const BitString& code) {
  if (code.empty() || code.size() % kSymbolWidth != 0) return std::nullopt;
  Reader r(code);
  std::optional<std::size_t> declared;
  if (r.peek() == Symbol::Hdr) {
    r.symbol();
    declared = r.subscript();
    if (!declared) return std::nullopt;
  }
  std::vector<Instruction> instructions;
  while (!r.done()) {
    auto in = read_instruction(r);
    if (!in) return std::nullopt;
    instructions.push_back(std::move(*in));
  }
  if (instructions.empty()) return std::nullopt;
  try {
    Program p(std::move(instructions), declared.value_or(0));
    // The header is only written when it says something.
    if (declared && *declared <= p.referenced_index_registers()) return std::nullopt;
    return p;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Integer index_of_code(const BitString& code) {
  Integer k = 1;
  k <<= code.size();
  return k + code.value();
}

std::optional<BitString> code_of_index(const Integer& k) {
  if (k <= 1) return std::nullopt;
  std::size_t length = mpz_sizeinbase(k.get_mpz_t(), 2) - 1;
  std::vector<std::uint8_t> bits;
  bits.reserve(length);
  for (std::size_t b = length; b-- > 0;) bits.push_back(mpz_tstbit(k.get_mpz_t(), b));
  return BitString(std::move(bits));
}

Integer godel_index(const Program& p) { return index_of_code(encode(p)); }

Program machine_at(const Integer& k, Dialect dialect) {
  if (auto code = code_of_index(k)) {
    if (auto p = decode(*code); p && dialect.admits(p->dialect())) return *p;
  }
  return trivial_program();
}

std::vector<std::pair<Integer, Program>> enumerate_machines(Dialect dialect, std::size_t n) {
  std::vector<std::pair<Integer, Program>> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Integer index = static_cast<unsigned long>(k);
    out.emplace_back(index, machine_at(index, dialect));
  }
  return out;
}

}  // namespace bss
