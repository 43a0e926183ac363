#pragma once

#include <string>
#include <string_view>

#include "marpa/grammar.hpp"

namespace marpa {

class BnfError : public GrammarError {
 public:
  BnfError(const std::string& msg, int line, int col)
      : GrammarError(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// Grammar text format: one rule per line, `LHS ::= rhs...`, alternatives
/// separated by `|`, `LHS ::= ;` for an empty rule, quoted literals ('a')
/// auto-declaring terminal symbols, a `:start <name>` directive and `#`
/// comments. Unquoted symbols with rules are not scannable as tokens.
Grammar load_bnf(std::string_view text);

Grammar load_bnf_file(const std::string& path);

}  // namespace marpa
