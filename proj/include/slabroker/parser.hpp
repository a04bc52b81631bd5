#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slabroker/fact.hpp"
#include "slabroker/rules.hpp"

namespace slabroker {

// Concrete syntax for knowledge-base (.kb) and SLA (.sla) files.
//
//   rule R3 { if AT = "CBPS" and throughput >= 10k notif/s then CPU_usage <= 80 pct }
//   rule R13 { if region = ?x then insert ?x into regions }
//   context App = "E-SilboPS"
//   slo SLO1: throughput >= 30k notif/s
//
// Keywords: rule if then and or not insert into in context slo. Comparisons:
// = != < <= > >=, with range sugar `30 ms <= latency < 50 ms`. Symbols are
// double-quoted, pattern variables are written ?x, and `#` starts a comment.
// `or` groups symbol equalities on one variable and binds tighter than `and`.

namespace dsl {

enum class TokType {
  ident,
  number,
  string,
  pattern,
  lbrace,
  rbrace,
  comma,
  colon,
  cmp,  // = != < <= > >=
  end,
};

struct Token {
  TokType type = TokType::end;
  std::string text;
  double value = 0.0;
  SourcePos pos;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  Token next() {
    skip_space_and_comments();
    Token tok;
    tok.pos = {line_, col_};
    if (at_end()) return tok;
    char c = peek_char();
    if (c == '{') return punct(TokType::lbrace, "{");
    if (c == '}') return punct(TokType::rbrace, "}");
    if (c == ',') return punct(TokType::comma, ",");
    if (c == ':') return punct(TokType::colon, ":");
    if (c == '"') return lex_string(tok);
    if (c == '?') return lex_pattern(tok);
    if (c == '=' || c == '<' || c == '>' || c == '!') return lex_cmp(tok);
    if (is_digit(c)) return lex_number(tok);
    if (is_ident_start(c)) return lex_ident(tok);
    throw err("unexpected character '" + std::string(1, c) + "'", tok.pos);
  }

  Error err(const std::string& message, SourcePos pos) const {
    return Error(Error::Kind::syntax, message, pos, file_);
  }
  const std::string& file() const { return file_; }

 private:
  bool at_end() const { return idx_ >= src_.size(); }
  char peek_char() const { return src_[idx_]; }
  char take() {
    char c = src_[idx_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c) || c == '/'; }

  void skip_space_and_comments() {
    while (!at_end()) {
      char c = peek_char();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '#') {
        while (!at_end() && peek_char() != '\n') take();
      } else {
        break;
      }
    }
  }

  Token punct(TokType type, const char* text) {
    Token tok{type, text, 0.0, {line_, col_}};
    take();
    return tok;
  }

  Token lex_string(Token tok) {
    take();  // opening quote
    std::string out;
    while (true) {
      if (at_end()) throw err("unterminated string", tok.pos);
      char c = take();
      if (c == '"') break;
      if (c == '\n') throw err("unterminated string", tok.pos);
      out += c;
    }
    tok.type = TokType::string;
    tok.text = out;
    return tok;
  }

  Token lex_pattern(Token tok) {
    take();  // '?'
    if (at_end() || !is_ident_start(peek_char()))
      throw err("expected variable name after '?'", tok.pos);
    std::string out;
    while (!at_end() && is_ident_char(peek_char()) && peek_char() != '/') out += take();
    tok.type = TokType::pattern;
    tok.text = out;
    return tok;
  }

  Token lex_cmp(Token tok) {
    char c = take();
    std::string op(1, c);
    if ((c == '<' || c == '>' || c == '!') && !at_end() && peek_char() == '=') op += take();
    if (op == "!") throw err("expected '!='", tok.pos);
    tok.type = TokType::cmp;
    tok.text = op;
    return tok;
  }

  // A number with an optional decimal part and an optional k multiplier
  // (10k = 10000). A digit run followed by other identifier characters is an
  // error here; metric-style names never appear in rule files.
  Token lex_number(Token tok) {
    std::string digits;
    while (!at_end() && (is_digit(peek_char()) || peek_char() == '.')) digits += take();
    double value = 0.0;
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size())
      throw err("malformed number '" + digits + "'", tok.pos);
    bool kilo = false;
    if (!at_end() && peek_char() == 'k') {
      size_t save_idx = idx_;
      int save_line = line_, save_col = col_;
      take();
      if (!at_end() && is_ident_char(peek_char())) {
        idx_ = save_idx;  // part of an identifier-like tail, not a multiplier
        line_ = save_line;
        col_ = save_col;
      } else {
        kilo = true;
      }
    }
    if (!at_end() && is_ident_char(peek_char()) && !kilo)
      throw err("malformed number '" + digits + "'", tok.pos);
    tok.type = TokType::number;
    tok.value = kilo ? value * 1000.0 : value;
    return tok;
  }

  Token lex_ident(Token tok) {
    std::string out;
    while (!at_end() && is_ident_char(peek_char())) out += take();
    tok.type = TokType::ident;
    tok.text = out;
    return tok;
  }

  std::string_view src_;
  std::string file_;
  size_t idx_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, std::string file) : lexer_(src, std::move(file)) { advance(); }

  KnowledgeBase parse_kb() {
    KnowledgeBase kb;
    while (cur_.type != TokType::end) {
      expect_keyword("rule");
      kb.push_back(parse_rule());
    }
    for (size_t i = 0; i < kb.size(); ++i)
      for (size_t j = i + 1; j < kb.size(); ++j)
        if (kb[i].id == kb[j].id)
          throw Error(Error::Kind::duplicate_id, "duplicate rule id '" + kb[i].id + "'",
                      kb[j].pos, lexer_.file());
    return kb;
  }

  SlaDocument parse_sla() {
    SlaDocument doc;
    while (cur_.type != TokType::end) {
      if (is_keyword("context")) {
        advance();
        ConstraintAtom atom = parse_ground_atom();
        doc.context_facts.push_back(atom);
        doc.seed_facts.push_back({atom, "context"});
      } else if (is_keyword("slo")) {
        advance();
        std::string id = expect(TokType::ident, "objective id").text;
        for (const auto& o : doc.objectives)
          if (o.id == id)
            throw Error(Error::Kind::duplicate_id, "duplicate objective id '" + id + "'",
                        prev_pos_, lexer_.file());
        expect(TokType::colon, "':'");
        SlaDocument::Objective obj{id, {}};
        obj.atoms.push_back(parse_ground_atom());
        while (is_keyword("and")) {
          advance();
          obj.atoms.push_back(parse_ground_atom());
        }
        for (const auto& atom : obj.atoms) doc.seed_facts.push_back({atom, id});
        doc.objectives.push_back(std::move(obj));
      } else {
        throw lexer_.err("expected 'context' or 'slo', found " + describe(cur_), cur_.pos);
      }
    }
    return doc;
  }

 private:
  // --- rule parsing ---

  ProductionRule parse_rule() {
    ProductionRule rule;
    rule.pos = prev_pos_;
    rule.id = expect(TokType::ident, "rule id").text;
    expect(TokType::lbrace, "'{'");
    expect_keyword("if");
    rule.antecedent.push_back(parse_antecedent_atom());
    while (is_keyword("and")) {
      advance();
      rule.antecedent.push_back(parse_antecedent_atom());
    }
    expect_keyword("then");
    rule.consequent.push_back(parse_assertion());
    while (cur_.type == TokType::comma) {
      advance();
      rule.consequent.push_back(parse_assertion());
    }
    expect(TokType::rbrace, "'}'");
    validate_rule(rule);
    return rule;
  }

  ConstraintAtom parse_antecedent_atom() {
    if (is_keyword("not")) {
      SourcePos pos = cur_.pos;
      advance();
      ConstraintAtom inner = parse_base_atom(/*antecedent=*/true);
      return Negated{to_simple(inner, pos), pos};
    }
    ConstraintAtom first = parse_base_atom(true);
    if (!is_keyword("or")) return first;
    // or-chain: symbol equalities over one variable
    Disjunction dis;
    dis.pos = atom_pos(first);
    append_disjunct(dis, first);
    while (is_keyword("or")) {
      advance();
      append_disjunct(dis, parse_base_atom(true));
    }
    return dis;
  }

  void append_disjunct(Disjunction& dis, const ConstraintAtom& atom) {
    const auto* eq = std::get_if<SymbolEquality>(&atom);
    if (!eq || eq->pattern)
      throw lexer_.err("'or' chains only symbol equalities", atom_pos(atom));
    if (dis.var.empty()) dis.var = eq->var;
    if (dis.var != eq->var)
      throw lexer_.err("'or' alternatives must constrain the same variable ('" + dis.var +
                           "' vs '" + eq->var + "')",
                       eq->pos);
    dis.symbols.push_back(eq->symbol);
  }

  // membership | range | comparison
  ConstraintAtom parse_base_atom(bool antecedent) {
    SourcePos pos = cur_.pos;
    if (cur_.type == TokType::string) {
      std::string element = cur_.text;
      advance();
      expect_keyword("in");
      std::string var = expect(TokType::ident, "set variable").text;
      return SetMembership{element, var, pos};
    }
    if (cur_.type == TokType::number) {
      // range sugar: `30 ms <= latency < 50 ms`
      Quantity lo = parse_quantity();
      Token op1 = expect(TokType::cmp, "comparison");
      if (op1.text != "<" && op1.text != "<=")
        throw lexer_.err("range bounds use '<' or '<='", op1.pos);
      std::string var = expect(TokType::ident, "variable").text;
      Token op2 = expect(TokType::cmp, "comparison");
      if (op2.text != "<" && op2.text != "<=")
        throw lexer_.err("range bounds use '<' or '<='", op2.pos);
      Quantity hi = parse_quantity();
      if (unit_dimension(lo.unit) != unit_dimension(hi.unit))
        throw Error(Error::Kind::dimension_mismatch,
                    "range bounds of '" + var + "' have incompatible units", pos, lexer_.file());
      Interval iv{{lo.value, op1.text == "<"}, {hi.value, op2.text == "<"}};
      return NumericConstraint{var, iv, lo.unit.empty() ? hi.unit : lo.unit, pos};
    }
    std::string var = expect(TokType::ident, "variable").text;
    Token op = expect(TokType::cmp, "comparison");
    if (cur_.type == TokType::lbrace) {
      if (antecedent)
        throw lexer_.err("set literals are not allowed in antecedents", cur_.pos);
      if (op.text != "=") throw lexer_.err("sets use '='", op.pos);
      return parse_set_literal(var, pos);
    }
    if (cur_.type == TokType::string) {
      std::string symbol = cur_.text;
      advance();
      if (op.text == "=") return SymbolEquality{var, symbol, false, pos};
      if (op.text == "!=") return Negated{SymbolEquality{var, symbol, false, pos}, pos};
      throw lexer_.err("symbols compare with '=' or '!='", op.pos);
    }
    if (cur_.type == TokType::pattern) {
      std::string name = cur_.text;
      advance();
      if (op.text != "=") throw lexer_.err("pattern variables bind with '='", op.pos);
      return SymbolEquality{var, name, true, pos};
    }
    if (cur_.type == TokType::number) {
      Quantity q = parse_quantity();
      Interval iv;
      if (op.text == "=")
        iv = Interval::point(q.value);
      else if (op.text == "<")
        iv = Interval::at_most(q.value, true);
      else if (op.text == "<=")
        iv = Interval::at_most(q.value, false);
      else if (op.text == ">")
        iv = Interval::at_least(q.value, true);
      else if (op.text == ">=")
        iv = Interval::at_least(q.value, false);
      else
        throw lexer_.err("'!=' is not supported for numeric constraints", op.pos);
      return NumericConstraint{var, iv, q.unit, pos};
    }
    throw lexer_.err("expected quantity, symbol, pattern variable or set, found " + describe(cur_),
                     cur_.pos);
  }

  ConstraintAtom parse_set_literal(const std::string& var, SourcePos pos) {
    expect(TokType::lbrace, "'{'");
    SetAssignment set{var, {}, false, pos};
    while (true) {
      if (cur_.type == TokType::string) {
        set.elements.push_back({cur_.text, false});
        advance();
      } else if (cur_.type == TokType::pattern) {
        throw lexer_.err("pattern variables appear in set insertions, not set literals",
                         cur_.pos);
      } else {
        throw lexer_.err("expected set element, found " + describe(cur_), cur_.pos);
      }
      if (cur_.type == TokType::comma) {
        advance();
        continue;
      }
      break;
    }
    expect(TokType::rbrace, "'}'");
    return set;
  }

  ConstraintAtom parse_assertion() {
    SourcePos pos = cur_.pos;
    if (is_keyword("insert")) {
      advance();
      SetElement element;
      if (cur_.type == TokType::pattern) {
        element = {cur_.text, true};
      } else if (cur_.type == TokType::string) {
        element = {cur_.text, false};
      } else {
        throw lexer_.err("expected symbol or pattern variable after 'insert'", cur_.pos);
      }
      advance();
      expect_keyword("into");
      std::string var = expect(TokType::ident, "set variable").text;
      return SetAssignment{var, {element}, true, pos};
    }
    if (is_keyword("not"))
      throw lexer_.err("negation is not allowed in consequents", cur_.pos);
    ConstraintAtom atom = parse_base_atom(/*antecedent=*/false);
    if (is_keyword("or")) throw lexer_.err("disjunction is not allowed in consequents", cur_.pos);
    if (const auto* eq = std::get_if<SymbolEquality>(&atom); eq && eq->pattern)
      throw lexer_.err("consequent symbol equalities must be ground", eq->pos);
    if (std::holds_alternative<Negated>(atom))
      throw lexer_.err("negation is not allowed in consequents", pos);
    return atom;
  }

  ConstraintAtom parse_ground_atom() {
    if (is_keyword("not") || cur_.type == TokType::cmp)
      throw lexer_.err("SLA atoms must be ground facts", cur_.pos);
    ConstraintAtom atom = parse_base_atom(/*antecedent=*/false);
    if (is_keyword("or")) throw lexer_.err("SLA atoms cannot be disjunctions", cur_.pos);
    if (const auto* eq = std::get_if<SymbolEquality>(&atom); eq && eq->pattern)
      throw lexer_.err("SLA atoms must be ground (no pattern variables)", eq->pos);
    return atom;
  }

  Quantity parse_quantity() {
    Token num = expect(TokType::number, "number");
    std::string unit;
    if (cur_.type == TokType::ident) {
      if (cur_.text == "k") {
        // separated multiplier: `30 k notif/s`
        SourcePos kpos = cur_.pos;
        advance();
        if (cur_.type == TokType::ident && find_unit(cur_.text)) {
          unit = cur_.text;
          advance();
        } else {
          throw lexer_.err("expected unit after 'k' multiplier", kpos);
        }
        Quantity q = normalize_quantity({num.value * 1000.0, unit});
        return q;
      }
      if (find_unit(cur_.text)) {
        unit = cur_.text;
        advance();
      }
    }
    return normalize_quantity({num.value, unit});
  }

  void validate_rule(const ProductionRule& rule) {
    // Pattern variables: bound exactly once in the antecedent, used only in
    // consequent set insertions.
    std::map<std::string, int> bound;
    for (const auto& atom : rule.antecedent)
      if (const auto* eq = std::get_if<SymbolEquality>(&atom); eq && eq->pattern)
        ++bound[eq->symbol];
    for (const auto& [name, count] : bound)
      if (count > 1)
        throw Error(Error::Kind::unbound_variable,
                    "pattern variable '?" + name + "' bound more than once in rule " + rule.id,
                    rule.pos, lexer_.file());
    for (const auto& atom : rule.consequent) {
      if (const auto* set = std::get_if<SetAssignment>(&atom)) {
        for (const auto& e : set->elements)
          if (e.pattern && !bound.count(e.value))
            throw Error(Error::Kind::unbound_variable,
                        "pattern variable '?" + e.value + "' in rule " + rule.id +
                            " is not bound by the antecedent",
                        set->pos, lexer_.file());
      }
    }
  }

  // --- token plumbing ---

  static SourcePos atom_pos(const ConstraintAtom& atom) {
    return std::visit([](const auto& a) { return a.pos; }, atom);
  }

  static SimpleAtom to_simple(const ConstraintAtom& atom, SourcePos pos) {
    if (const auto* n = std::get_if<NumericConstraint>(&atom)) return *n;
    if (const auto* s = std::get_if<SymbolEquality>(&atom)) {
      if (s->pattern) throw Error(Error::Kind::syntax, "cannot negate a pattern binding", pos);
      return *s;
    }
    if (const auto* m = std::get_if<SetMembership>(&atom)) return *m;
    throw Error(Error::Kind::syntax, "cannot negate this construct", pos);
  }

  bool is_keyword(std::string_view kw) const {
    return cur_.type == TokType::ident && cur_.text == kw;
  }

  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw))
      throw lexer_.err("expected '" + std::string(kw) + "', found " + describe(cur_), cur_.pos);
    advance();
  }

  Token expect(TokType type, const std::string& what) {
    if (cur_.type != type)
      throw lexer_.err("expected " + what + ", found " + describe(cur_), cur_.pos);
    Token tok = cur_;
    advance();
    return tok;
  }

  static std::string describe(const Token& tok) {
    switch (tok.type) {
      case TokType::end:
        return "end of input";
      case TokType::number:
        return "number " + format_number(tok.value);
      case TokType::string:
        return "\"" + tok.text + "\"";
      case TokType::pattern:
        return "?" + tok.text;
      default:
        return "'" + tok.text + "'";
    }
  }

  void advance() {
    prev_pos_ = cur_.pos;
    cur_ = lexer_.next();
  }

  Lexer lexer_;
  Token cur_;
  SourcePos prev_pos_;
};

}  // namespace dsl

inline KnowledgeBase parse_kb(std::string_view text, std::string file = "<kb>") {
  return dsl::Parser(text, std::move(file)).parse_kb();
}

inline SlaDocument parse_sla(std::string_view text, std::string file = "<sla>") {
  return dsl::Parser(text, std::move(file)).parse_sla();
}

// --- pretty printer -----------------------------------------------------------

inline std::string render_rule(const ProductionRule& rule) {
  std::string out = "rule " + rule.id + " { if ";
  for (size_t i = 0; i < rule.antecedent.size(); ++i) {
    if (i) out += " and ";
    out += render_atom(rule.antecedent[i], RenderStyle::dsl);
  }
  out += " then ";
  for (size_t i = 0; i < rule.consequent.size(); ++i) {
    if (i) out += ", ";
    out += render_atom(rule.consequent[i], RenderStyle::dsl);
  }
  return out + " }";
}

inline std::string render_kb(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& rule : kb) out += render_rule(rule) + "\n";
  return out;
}

inline std::string render_sla(const SlaDocument& doc) {
  std::string out;
  for (const auto& atom : doc.context_facts)
    out += "context " + render_atom(atom, RenderStyle::dsl) + "\n";
  for (const auto& obj : doc.objectives) {
    out += "slo " + obj.id + ": ";
    for (size_t i = 0; i < obj.atoms.size(); ++i) {
      if (i) out += " and ";
      out += render_atom(obj.atoms[i], RenderStyle::dsl);
    }
    out += "\n";
  }
  return out;
}

}  // namespace slabroker
