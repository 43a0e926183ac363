#include "marpa/bnf.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace marpa {

namespace {

bool name_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;  // UTF-8 continuation bytes pass through
}

struct LineToken {
  enum class Kind { name, literal, define, pipe, semicolon, directive };
  Kind kind;
  std::string text;
  int col;
};

std::vector<LineToken> lex_line(const std::string& line, int lineno) {
  std::vector<LineToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    int col = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '|') {
      out.push_back({LineToken::Kind::pipe, "|", col});
      ++i;
      continue;
    }
    if (c == ';') {
      out.push_back({LineToken::Kind::semicolon, ";", col});
      ++i;
      continue;
    }
    if (line.compare(i, 3, "::=") == 0) {
      out.push_back({LineToken::Kind::define, "::=", col});
      i += 3;
      continue;
    }
    if (c == '\'') {
      std::size_t close = line.find('\'', i + 1);
      if (close == std::string::npos) throw BnfError("unterminated literal", lineno, col);
      if (close == i + 1) throw BnfError("empty literal", lineno, col);
      out.push_back({LineToken::Kind::literal, line.substr(i + 1, close - i - 1), col});
      i = close + 1;
      continue;
    }
    if (c == ':') {
      std::size_t j = i + 1;
      while (j < line.size() && name_char(line[j])) ++j;
      out.push_back({LineToken::Kind::directive, line.substr(i + 1, j - i - 1), col});
      i = j;
      continue;
    }
    if (name_char(c)) {
      std::size_t j = i;
      while (j < line.size() && name_char(line[j])) ++j;
      out.push_back({LineToken::Kind::name, line.substr(i, j - i), col});
      i = j;
      continue;
    }
    throw BnfError(std::string("unexpected character '") + c + "'", lineno, col);
  }
  return out;
}

}  // namespace

Grammar load_bnf(std::string_view text) {
  struct Sym {
    bool quoted = false;
    bool has_rules = false;
    std::size_t order;
  };
  std::map<std::string, Sym> syms;
  std::vector<std::string> order;
  auto declare = [&](const std::string& name, bool quoted) {
    auto [it, fresh] = syms.emplace(name, Sym{quoted, false, order.size()});
    if (fresh) order.push_back(name);
    it->second.quoted = it->second.quoted || quoted;
  };

  std::vector<RuleDecl> rules;
  std::string start;

  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::vector<LineToken> toks = lex_line(line, lineno);
    if (toks.empty()) continue;

    if (toks[0].kind == LineToken::Kind::directive) {
      if (toks[0].text != "start")
        throw BnfError("unknown directive :" + toks[0].text, lineno, toks[0].col);
      if (toks.size() != 2 ||
          (toks[1].kind != LineToken::Kind::name && toks[1].kind != LineToken::Kind::literal))
        throw BnfError(":start expects one symbol", lineno, toks[0].col);
      start = toks[1].text;
      declare(start, toks[1].kind == LineToken::Kind::literal);
      continue;
    }

    if (toks.size() < 2 ||
        (toks[0].kind != LineToken::Kind::name && toks[0].kind != LineToken::Kind::literal) ||
        toks[1].kind != LineToken::Kind::define)
      throw BnfError("expected `LHS ::= ...`", lineno, toks[0].col);

    const std::string lhs = toks[0].text;
    declare(lhs, toks[0].kind == LineToken::Kind::literal);
    syms[lhs].has_rules = true;

    std::vector<std::vector<std::string>> alts(1);
    std::vector<bool> explicit_empty(1, false);
    for (std::size_t k = 2; k < toks.size(); ++k) {
      switch (toks[k].kind) {
        case LineToken::Kind::pipe:
          alts.emplace_back();
          explicit_empty.push_back(false);
          break;
        case LineToken::Kind::semicolon:
          if (!alts.back().empty())
            throw BnfError("`;` marks an empty right-hand side", lineno, toks[k].col);
          explicit_empty.back() = true;
          break;
        case LineToken::Kind::name:
        case LineToken::Kind::literal:
          declare(toks[k].text, toks[k].kind == LineToken::Kind::literal);
          alts.back().push_back(toks[k].text);
          break;
        default:
          throw BnfError("unexpected token " + toks[k].text, lineno, toks[k].col);
      }
    }
    for (std::size_t a = 0; a < alts.size(); ++a) {
      if (alts[a].empty() && !explicit_empty[a])
        throw BnfError("empty alternative; write `;` for an empty right-hand side", lineno,
                       toks.back().col);
      rules.push_back(RuleDecl{lhs, alts[a]});
    }
  }

  if (rules.empty()) throw BnfError("no rules", lineno == 0 ? 1 : lineno, 1);
  if (start.empty()) start = rules.front().lhs;

  std::vector<SymbolDecl> decls;
  for (const std::string& n : order) {
    const Sym& s = syms[n];
    decls.push_back(SymbolDecl{n, s.quoted || !s.has_rules});
  }
  return build_grammar(decls, rules, start);
}

Grammar load_bnf_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GrammarError("cannot open grammar file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return load_bnf(ss.str());
}

}  // namespace marpa
