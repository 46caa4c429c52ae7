#include "bss/error.hpp"

namespace bss {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::UndefinedLabel: return "UndefinedLabel";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OracleMissing: return "OracleMissing";
    case ErrorCode::NonBinaryConstant: return "NonBinaryConstant";
    case ErrorCode::SymbolicOverflow: return "SymbolicOverflow";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidValue: return "InvalidValue";
  }
  return "Unknown";
}

}  // namespace bss
