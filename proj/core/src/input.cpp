#include "marpa/input.hpp"

#include <sstream>

namespace marpa {

void InputStream::push_token(Token t) {
  if (t.symbol < 0 || static_cast<std::size_t>(t.symbol) >= grammar_->symbols.size())
    throw InputError("token symbol id out of range");
  if (!grammar_->symbol(t.symbol).terminal_allowed)
    throw InputError("symbol " + grammar_->name_of(t.symbol) + " is not allowed as a token");
  if (t.start < 0) throw InputError("token start must be non-negative");
  if (t.length < 1) throw InputError("token length must be at least 1");
  if (t.length >= c_)
    throw InputError("restriction 1 violated: token length " + std::to_string(t.length) +
                     " not below c = " + std::to_string(c_));
  if (static_cast<std::size_t>(t.start) >= starts_.size()) starts_.resize(static_cast<std::size_t>(t.start) + 1, 0);
  if (starts_[static_cast<std::size_t>(t.start)] + 1 >= c_)
    throw InputError("restriction 2 violated: more than c - 1 = " + std::to_string(c_ - 1) +
                     " tokens start at earleme " + std::to_string(t.start));
  ++starts_[static_cast<std::size_t>(t.start)];

  std::int32_t e = t.end();
  if (static_cast<std::size_t>(e) >= by_end_.size()) by_end_.resize(static_cast<std::size_t>(e) + 1);
  by_end_[static_cast<std::size_t>(e)].push_back(t);
  if (static_cast<std::size_t>(e) > cover_.size()) cover_.resize(static_cast<std::size_t>(e), 0);
  for (std::int32_t x = t.start; x < e; ++x) ++cover_[static_cast<std::size_t>(x)];
  furthest_end_ = std::max(furthest_end_, e);
  ++token_count_;
}

std::span<const Token> InputStream::tokens_ending_at(std::int32_t i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= by_end_.size()) return {};
  return by_end_[static_cast<std::size_t>(i)];
}

bool InputStream::covers(std::int32_t x) const {
  return x >= 0 && static_cast<std::size_t>(x) < cover_.size() && cover_[static_cast<std::size_t>(x)] > 0;
}

bool InputStream::spans(std::int32_t i) const {
  for (std::size_t e = static_cast<std::size_t>(i) + 1; e < by_end_.size(); ++e)
    for (const Token& t : by_end_[e])
      if (t.start < i) return true;
  return false;
}

InputStream tokens_from_text(const Grammar& g, std::string_view text, std::int32_t* unknown_at) {
  InputStream in(g);
  if (unknown_at) *unknown_at = -1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto sym = g.find_symbol(std::string_view(&text[i], 1));
    if (!sym || !g.symbol(*sym).terminal_allowed) {
      if (unknown_at && *unknown_at < 0) *unknown_at = static_cast<std::int32_t>(i);
      continue;
    }
    in.push_token({*sym, static_cast<std::int32_t>(i), 1});
  }
  return in;
}

InputStream tokens_from_file_text(const Grammar& g, std::string_view contents) {
  InputStream in(g);
  std::istringstream is{std::string(contents)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    std::int32_t start = 0, length = 0;
    if (!(ls >> start >> length))
      throw InputError("token file line " + std::to_string(lineno) +
                       ": expected `<symbol> <start> <length>`");
    auto sym = g.find_symbol(name);
    if (!sym)
      throw InputError("token file line " + std::to_string(lineno) + ": unknown symbol " + name);
    in.push_token({*sym, start, length});
  }
  return in;
}

}  // namespace marpa
