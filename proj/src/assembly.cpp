#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "bss/error.hpp"
#include "bss/program.hpp"

namespace bss {

namespace {

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct LabelRef {
  Label target;
  Position where;
};

struct IndexRef {
  RegIndex index;
  Position where;
};

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  Position here() const { return {line_, pos_ + 1}; }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '.')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number(const char* what) {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    if (pos_ - start > 18) fail(std::string(what) + " too large");
    return std::stoull(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) {
      fail("expected '" + std::string(token) + "'");
    }
    pos_ += token.size();
  }

  RegIndex reg(char prefix) {
    skip_space();
    Position at = here();
    if (pos_ >= text_.size() || text_[pos_] != prefix) {
      fail(std::string("expected ") + prefix + "<n>");
    }
    ++pos_;
    RegIndex r = number("subscript");
    if (r == 0) fail_at(at, ErrorCode::IndexOutOfRange, "subscripts start at 1");
    return r;
  }

  std::string_view rest() {
    skip_space();
    return text_.substr(pos_);
  }
  std::size_t offset() const { return pos_; }

  [[noreturn]] void fail(const std::string& message) const {
    fail_at(here(), ErrorCode::Syntax, message);
  }
  [[noreturn]] static void fail_at(Position at, ErrorCode code, const std::string& message) {
    throw ParseError(code, at.line, at.column, message);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
  std::vector<Instruction> instructions;
  std::vector<LabelRef> jumps;
  std::vector<IndexRef> index_uses;
  std::optional<std::size_t> declared_indices;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    LineParser lp(line, line_no);
    if (lp.at_end()) continue;

    Position line_start = lp.here();
    auto label_ref = [&] {
      lp.skip_space();
      Position at = lp.here();
      jumps.push_back({lp.number("label"), at});
      return jumps.back().target;
    };
    auto index_reg = [&] {
      lp.skip_space();
      Position at = lp.here();
      RegIndex r = lp.reg('I');
      index_uses.push_back({r, at});
      return r;
    };

    if (line.find_first_not_of(" \t\r") != std::string_view::npos &&
        line[line.find_first_not_of(" \t\r")] == '.') {
      std::string directive = lp.word();
      if (directive != ".indices") lp.fail("unknown directive '" + directive + "'");
      if (declared_indices) lp.fail("duplicate .indices directive");
      if (!instructions.empty()) lp.fail(".indices must precede the instructions");
      declared_indices = lp.number("index register count");
      if (*declared_indices == 0) lp.fail(".indices must be >= 1");
      if (!lp.at_end()) lp.fail("trailing text");
      continue;
    }

    std::size_t label = lp.number("label");
    if (label != instructions.size() + 1) {
      LineParser::fail_at(line_start, ErrorCode::Syntax,
                          "expected label " + std::to_string(instructions.size() + 1) +
                              ", found " + std::to_string(label));
    }
    lp.expect(":");
    std::string op = lp.word();

    Instruction in;
    if (op == "add" || op == "sub") {
      RegIndex dst = lp.reg('Z');
      lp.expect("=");
      RegIndex lhs = lp.reg('Z');
      lp.expect(op == "add" ? "+" : "-");
      RegIndex rhs = lp.reg('Z');
      in = op == "add" ? Instruction(instr::Add{dst, lhs, rhs})
                       : Instruction(instr::Sub{dst, lhs, rhs});
    } else if (op == "set") {
      RegIndex dst = lp.reg('Z');
      lp.expect("=");
      Position at = lp.here();
      std::string_view value_text = lp.rest();
      if (value_text.empty()) lp.fail("expected a constant");
      try {
        in = instr::SetConst{dst, parse_real(value_text)};
      } catch (const ParseError& e) {
        LineParser::fail_at({line_no, at.column + e.column() - 1}, ErrorCode::Syntax, e.what());
      } catch (const Error& e) {
        LineParser::fail_at(at, ErrorCode::Syntax, e.what());
      }
      instructions.push_back(std::move(in));
      continue;
    } else if (op == "eq" || op == "ge") {
      RegIndex reg = lp.reg('Z');
      lp.expect("->");
      Label l1 = label_ref();
      lp.expect(",");
      Label l2 = label_ref();
      in = op == "eq" ? Instruction(instr::EqTest{reg, l1, l2})
                      : Instruction(instr::GeTest{reg, l1, l2});
    } else if (op == "copy") {
      lp.expect("Z");
      lp.expect("[");
      RegIndex dst = index_reg();
      lp.expect("]");
      lp.expect("=");
      lp.expect("Z");
      lp.expect("[");
      RegIndex src = index_reg();
      lp.expect("]");
      in = instr::CopyIndirect{dst, src};
    } else if (op == "idx") {
      RegIndex j = index_reg();
      lp.expect("=");
      lp.expect("1");
      in = instr::IndexSet{j};
    } else if (op == "inc") {
      in = instr::IndexInc{index_reg()};
    } else if (op == "ieq") {
      RegIndex a = index_reg();
      lp.expect(",");
      RegIndex b = index_reg();
      lp.expect("->");
      Label l1 = label_ref();
      lp.expect(",");
      Label l2 = label_ref();
      in = instr::IndexTest{a, b, l1, l2};
    } else if (op == "oracle") {
      lp.expect("->");
      Label l1 = label_ref();
      lp.expect(",");
      Label l2 = label_ref();
      in = instr::OracleTest{l1, l2};
    } else if (op == "halt") {
      in = instr::Halt{};
    } else if (op.empty()) {
      lp.fail("expected an instruction");
    } else {
      LineParser::fail_at(line_start, ErrorCode::Syntax, "unknown instruction '" + op + "'");
    }
    if (!lp.at_end()) lp.fail("trailing text");
    instructions.push_back(std::move(in));
  }

  if (instructions.empty()) throw ParseError(ErrorCode::Syntax, line_no, 1, "empty program");
  for (const auto& j : jumps) {
    if (j.target == 0 || j.target > instructions.size()) {
      throw ParseError(ErrorCode::UndefinedLabel, j.where.line, j.where.column,
                       "UndefinedLabel(" + std::to_string(j.target) + ")");
    }
  }
  if (declared_indices) {
    for (const auto& use : index_uses) {
      if (use.index > *declared_indices) {
        throw ParseError(ErrorCode::IndexOutOfRange, use.where.line, use.where.column,
                         "I" + std::to_string(use.index) + " exceeds .indices " +
                             std::to_string(*declared_indices));
      }
    }
  }
  return Program(std::move(instructions), declared_indices.value_or(0));
}

}  // namespace bss
