#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "marpa/grammar.hpp"

namespace marpa {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A token occupies the half-open earleme interval [start, start + length).
struct Token {
  SymbolId symbol = no_symbol;
  std::int32_t start = 0;
  std::int32_t length = 1;
  std::int32_t end() const { return start + length; }
};

/// Generalized earleme input: tokens may be ambiguous (several starting at
/// one location), variable-length and overlapping, but every earleme of the
/// input must be covered by some token. Restriction (1) bounds token length
/// and restriction (2) bounds the number of tokens sharing a start, both by
/// the constant c, so the recognizer's complexity bounds stand.
class InputStream {
 public:
  explicit InputStream(const Grammar& g, std::int32_t restriction_c = 64)
      : grammar_(&g), c_(restriction_c) {}

  void push_token(Token t);

  std::int32_t furthest_end() const { return furthest_end_; }
  bool empty() const { return token_count_ == 0; }
  std::int64_t token_count() const { return token_count_; }
  std::int32_t restriction_c() const { return c_; }

  std::span<const Token> tokens_ending_at(std::int32_t i) const;

  /// Some token's interval contains earleme coordinate x.
  bool covers(std::int32_t x) const;

  /// Some token starts strictly before i and ends strictly after it.
  bool spans(std::int32_t i) const;

 private:
  const Grammar* grammar_;
  std::int32_t c_;
  std::vector<std::vector<Token>> by_end_;
  std::vector<std::int32_t> starts_;
  std::vector<std::int32_t> cover_;
  std::int32_t furthest_end_ = 0;
  std::int64_t token_count_ = 0;
};

/// Maps each character to the token (symbol named by that character, i, 1).
/// Characters without a matching grammar symbol are reported through
/// `unknown_at` (first offending position) and not pushed.
InputStream tokens_from_text(const Grammar& g, std::string_view text,
                             std::int32_t* unknown_at = nullptr);

/// One token per line: `<symbol> <start> <length>`. '#' starts a comment.
InputStream tokens_from_file_text(const Grammar& g, std::string_view contents);

}  // namespace marpa
