#include "durcsp/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace durcsp {

const Duration kDefaultPrefixBound = Rat(1000000);

// ---------------------------------------------------------------------------
// Term construction

namespace {
ProcPtr make(Process&& p) { return std::make_shared<const Process>(std::move(p)); }
}  // namespace

ProcPtr Process::stop() { return make({.kind = Stop}); }
ProcPtr Process::skip(Duration u) { return make({.kind = Skip, .bound = u}); }
ProcPtr Process::prefix(Action a, Duration u, ProcPtr cont) {
  return make({.kind = Prefix, .action = std::move(a), .bound = u, .left = std::move(cont)});
}
ProcPtr Process::choice(ProcPtr l, ProcPtr r) {
  return make({.kind = Choice, .left = std::move(l), .right = std::move(r)});
}
ProcPtr Process::par(ProcPtr l, std::set<std::string> s, ProcPtr r) {
  return make({.kind = Par, .left = std::move(l), .right = std::move(r), .sync = std::move(s)});
}
ProcPtr Process::hide(ProcPtr p, std::set<std::string> hidden) {
  return make({.kind = Hide, .left = std::move(p), .sync = std::move(hidden)});
}
ProcPtr Process::interrupt(ProcPtr l, ProcPtr r) {
  return make({.kind = Interrupt, .left = std::move(l), .right = std::move(r)});
}
ProcPtr Process::delay(Duration d, ProcPtr p) {
  return make({.kind = Delay, .bound = d, .left = std::move(p)});
}
ProcPtr Process::refine(Action a, ProcPtr body, ProcPtr scope) {
  return make({.kind = Refine, .action = std::move(a), .left = std::move(body),
               .right = std::move(scope)});
}
ProcPtr Process::partial_seq(ProcPtr l, uint32_t anchor, ProcPtr r) {
  return make({.kind = PartialSeq, .left = std::move(l), .right = std::move(r), .anchor = anchor});
}
ProcPtr Process::ref(std::string name) { return make({.kind = Ref, .name = std::move(name)}); }

bool equal(const ProcPtr& a, const ProcPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->action != b->action || a->bound != b->bound ||
      a->sync != b->sync || a->name != b->name || a->anchor != b->anchor)
    return false;
  return equal(a->left, b->left) && equal(a->right, b->right);
}

size_t hash_value(const ProcPtr& p) {
  if (!p) return 0x9e37;
  size_t h = std::hash<int>{}(p->kind);
  hash_combine(h, std::hash<int>{}(p->action.kind));
  hash_combine(h, std::hash<std::string>{}(p->action.name));
  hash_combine(h, RatHash{}(p->bound));
  hash_combine(h, std::hash<std::string>{}(p->name));
  hash_combine(h, p->anchor);
  for (const auto& s : p->sync) hash_combine(h, std::hash<std::string>{}(s));
  hash_combine(h, hash_value(p->left));
  hash_combine(h, hash_value(p->right));
  return h;
}

Duration Spec::duration_of(const Action& a) const {
  if (a.kind != Action::Visible) return Rat(0);
  auto it = durations.find(a.name);
  if (it == durations.end())
    throw EngineError("no duration entry for action '" + a.name + "'");
  return it->second;
}

ProcPtr Spec::main_process() const {
  auto it = processes.find(main);
  if (it == processes.end()) throw EngineError("unknown main process '" + main + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Ident, Number,
  KwDurations, KwMain, KwProcess, KwEndproc, KwStop, KwSkip, KwDelay, KwRho, KwIn,
  Semi, Plus, Assign, Equals, Comma, LBrace, RBrace, LParen, RParen,
  ParOpen,    // |[
  ParClose,   // ]|
  Interleave, // |||
  DisableOp,  // [>
  Backslash,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const std::map<std::string, Tok> kKeywords = {
    {"durations", Tok::KwDurations}, {"main", Tok::KwMain},   {"process", Tok::KwProcess},
    {"endproc", Tok::KwEndproc},     {"stop", Tok::KwStop},   {"skip", Tok::KwSkip},
    {"delay", Tok::KwDelay},         {"rho", Tok::KwRho},     {"in", Tok::KwIn},
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto pos = [&] { return SourcePos{line, col}; };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') { ++line; col = 1; } else { ++col; }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos p = pos();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '-'))
        ++j;
      std::string word = src.substr(i, j - i);
      auto kw = kKeywords.find(word);
      out.push_back({kw == kKeywords.end() ? Tok::Ident : kw->second, word, p});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && (src[j] == '/' || src[j] == '.') && j + 1 < src.size() &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      out.push_back({Tok::Number, src.substr(i, j - i), p});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    auto three = src.substr(i, 3);
    if (three == "|||") { out.push_back({Tok::Interleave, three, p}); advance(3); continue; }
    if (two == "|[") { out.push_back({Tok::ParOpen, two, p}); advance(2); continue; }
    if (two == "]|") { out.push_back({Tok::ParClose, two, p}); advance(2); continue; }
    if (two == "[>") { out.push_back({Tok::DisableOp, two, p}); advance(2); continue; }
    if (two == ":=") { out.push_back({Tok::Assign, two, p}); advance(2); continue; }
    switch (c) {
      case ';': out.push_back({Tok::Semi, ";", p}); break;
      case '+': out.push_back({Tok::Plus, "+", p}); break;
      case '=': out.push_back({Tok::Equals, "=", p}); break;
      case ',': out.push_back({Tok::Comma, ",", p}); break;
      case '{': out.push_back({Tok::LBrace, "{", p}); break;
      case '}': out.push_back({Tok::RBrace, "}", p}); break;
      case '(': out.push_back({Tok::LParen, "(", p}); break;
      case ')': out.push_back({Tok::RParen, ")", p}); break;
      case '\\': out.push_back({Tok::Backslash, "\\", p}); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", p);
    }
    advance(1);
  }
  out.push_back({Tok::End, "<end>", SourcePos{line, col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Spec parse() {
    Spec spec;
    while (peek().kind != Tok::End) {
      switch (peek().kind) {
        case Tok::KwDurations: parse_durations(spec); break;
        case Tok::KwMain: {
          next();
          if (!spec.main.empty()) throw ParseError("duplicate main declaration", peek().pos);
          spec.main = expect_name("process name");
          expect(Tok::Semi, "';'");
          break;
        }
        case Tok::KwProcess: {
          next();
          SourcePos p = peek().pos;
          std::string name = expect_name("process name");
          if (spec.processes.count(name))
            throw ParseError("duplicate definition of process '" + name + "'", p);
          expect(Tok::Assign, "':='");
          ProcPtr body = parse_proc();
          expect(Tok::KwEndproc, "'endproc'");
          spec.processes.emplace(std::move(name), std::move(body));
          break;
        }
        default:
          throw ParseError("expected 'durations', 'main' or 'process', got '" + peek().text + "'",
                           peek().pos);
      }
    }
    return spec;
  }

 private:
  std::vector<Token> toks_;
  size_t at_ = 0;

  const Token& peek(size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(at_++, toks_.size() - 1)]; }
  void expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      throw ParseError("expected " + what + ", got '" + peek().text + "'", peek().pos);
    next();
  }
  std::string expect_name(const std::string& what) {
    if (peek().kind != Tok::Ident)
      throw ParseError("expected " + what + ", got '" + peek().text + "'", peek().pos);
    const Token& t = next();
    if (t.text == "delta" || t.text == "i")
      throw ParseError("'" + t.text + "' is reserved and cannot be used as a name", t.pos);
    return t.text;
  }
  Rat expect_number() {
    if (peek().kind != Tok::Number)
      throw ParseError("expected a number, got '" + peek().text + "'", peek().pos);
    const Token& t = next();
    auto r = parse_rat(t.text);
    if (!r) throw ParseError("malformed number '" + t.text + "'", t.pos);
    return *r;
  }

  void parse_durations(Spec& spec) {
    next();  // durations
    while (peek().kind == Tok::Ident) {
      SourcePos p = peek().pos;
      std::string name = expect_name("action name");
      expect(Tok::Equals, "'='");
      Rat d = expect_number();
      if (!spec.durations.emplace(name, d).second)
        throw ParseError("duplicate duration entry for '" + name + "'", p);
    }
    expect(Tok::Semi, "';'");
  }

  std::set<std::string> parse_name_set(bool allow_empty) {
    std::set<std::string> out;
    if (peek().kind == Tok::Ident) {
      out.insert(expect_name("action name"));
      while (peek().kind == Tok::Comma) {
        next();
        out.insert(expect_name("action name"));
      }
    }
    if (out.empty() && !allow_empty)
      throw ParseError("expected at least one action name", peek().pos);
    return out;
  }

  ProcPtr parse_proc() { return parse_choice(); }

  ProcPtr parse_choice() {
    ProcPtr l = parse_interrupt();
    while (peek().kind == Tok::Plus) {
      next();
      l = Process::choice(std::move(l), parse_interrupt());
    }
    return l;
  }

  ProcPtr parse_interrupt() {
    ProcPtr l = parse_par();
    while (peek().kind == Tok::DisableOp) {
      next();
      l = Process::interrupt(std::move(l), parse_par());
    }
    return l;
  }

  ProcPtr parse_par() {
    ProcPtr l = parse_hide();
    while (peek().kind == Tok::ParOpen || peek().kind == Tok::Interleave) {
      std::set<std::string> sync;
      if (peek().kind == Tok::ParOpen) {
        next();
        sync = parse_name_set(true);
        expect(Tok::ParClose, "']|'");
      } else {
        next();
      }
      l = Process::par(std::move(l), std::move(sync), parse_hide());
    }
    return l;
  }

  ProcPtr parse_hide() {
    ProcPtr p = parse_seq();
    while (peek().kind == Tok::Backslash) {
      next();
      expect(Tok::LBrace, "'{'");
      auto hidden = parse_name_set(false);
      expect(Tok::RBrace, "'}'");
      p = Process::hide(std::move(p), std::move(hidden));
    }
    return p;
  }

  Rat parse_braced_number() {
    expect(Tok::LBrace, "'{'");
    Rat r = expect_number();
    expect(Tok::RBrace, "'}'");
    return r;
  }

  ProcPtr parse_seq() {
    SourcePos p = peek().pos;
    switch (peek().kind) {
      case Tok::KwStop:
        next();
        return Process::stop();
      case Tok::KwSkip: {
        next();
        return Process::skip(parse_braced_number());
      }
      case Tok::KwDelay: {
        next();
        Rat d = parse_braced_number();
        return Process::delay(d, parse_seq());
      }
      case Tok::KwRho: {
        next();
        std::string a = expect_name("action name");
        expect(Tok::Assign, "':='");
        ProcPtr body = parse_proc();
        expect(Tok::KwIn, "'in'");
        ProcPtr scope = parse_proc();
        return Process::refine(Action::visible(a), std::move(body), std::move(scope));
      }
      case Tok::LParen: {
        next();
        ProcPtr inner = parse_proc();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: {
        std::string name = expect_name("action or process name");
        if (peek().kind == Tok::LBrace) {
          Rat u = parse_braced_number();
          expect(Tok::Semi, "';'");
          return Process::prefix(Action::visible(name), u, parse_seq());
        }
        if (peek().kind == Tok::Semi) {
          next();
          return Process::prefix(Action::visible(name), kDefaultPrefixBound, parse_seq());
        }
        return Process::ref(name);
      }
      default:
        throw ParseError("expected a process term, got '" + peek().text + "'", p);
    }
  }
};

}  // namespace

Spec parse_spec(const std::string& source) { return Parser(lex(source)).parse(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Binding strength: choice < interrupt < par < hide < seq atoms.
int level_of(const ProcPtr& p) {
  switch (p->kind) {
    case Process::Choice: return 0;
    case Process::Interrupt: return 1;
    case Process::Par: return 2;
    case Process::Hide: return 3;
    case Process::Refine:
    case Process::PartialSeq: return 0;  // always parenthesized as operands
    default: return 4;
  }
}

void render_into(const ProcPtr& p, int min_level, std::string& out) {
  bool parens = level_of(p) < min_level;
  if (parens) out += "(";
  switch (p->kind) {
    case Process::Stop: out += "stop"; break;
    case Process::Skip: out += "skip{" + to_string(p->bound) + "}"; break;
    case Process::Prefix:
      out += p->action.display() + "{" + to_string(p->bound) + "}; ";
      render_into(p->left, 4, out);
      break;
    case Process::Delay:
      out += "delay{" + to_string(p->bound) + "} ";
      render_into(p->left, 4, out);
      break;
    case Process::Choice:
      render_into(p->left, 0, out);
      out += " + ";
      render_into(p->right, 1, out);
      break;
    case Process::Interrupt:
      render_into(p->left, 1, out);
      out += " [> ";
      render_into(p->right, 2, out);
      break;
    case Process::Par: {
      render_into(p->left, 2, out);
      if (p->sync.empty()) {
        out += " ||| ";
      } else {
        out += " |[";
        bool first = true;
        for (const auto& a : p->sync) {
          if (!first) out += ",";
          out += a;
          first = false;
        }
        out += "]| ";
      }
      render_into(p->right, 3, out);
      break;
    }
    case Process::Hide: {
      render_into(p->left, 3, out);
      out += " \\{";
      bool first = true;
      for (const auto& a : p->sync) {
        if (!first) out += ",";
        out += a;
        first = false;
      }
      out += "}";
      break;
    }
    case Process::Refine:
      out += "rho " + p->action.display() + " := ";
      render_into(p->left, 0, out);
      out += " in ";
      render_into(p->right, 0, out);
      break;
    case Process::PartialSeq:
      render_into(p->left, 4, out);
      out += " >>^e" + std::to_string(p->anchor) + " ";
      render_into(p->right, 4, out);
      break;
    case Process::Ref: out += p->name; break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string render(const ProcPtr& p) {
  std::string out;
  render_into(p, 0, out);
  return out;
}

std::string render(const Spec& s) {
  std::string out;
  if (!s.durations.empty()) {
    out += "durations";
    for (const auto& [name, d] : s.durations) out += " " + name + "=" + to_string(d);
    out += ";\n";
  }
  if (!s.main.empty()) out += "main " + s.main + ";\n";
  for (const auto& [name, body] : s.processes)
    out += "process " + name + " := " + render(body) + " endproc\n";
  return out;
}

// ---------------------------------------------------------------------------
// Validation

std::string to_string(Diagnostic::Category c) {
  switch (c) {
    case Diagnostic::MissingDuration: return "MissingDuration";
    case Diagnostic::UnknownReference: return "UnknownReference";
    case Diagnostic::UnguardedRecursion: return "UnguardedRecursion";
    case Diagnostic::DuplicateDefinition: return "DuplicateDefinition";
    case Diagnostic::UnknownMain: return "UnknownMain";
    case Diagnostic::ReservedName: return "ReservedName";
    case Diagnostic::NestedRefinementBody: return "NestedRefinementBody";
    case Diagnostic::EmptySet: return "EmptySet";
  }
  return "?";
}

std::set<std::string> used_actions(const ProcPtr& p) {
  std::set<std::string> out;
  if (!p) return out;
  if (p->kind == Process::Prefix && p->action.is_visible()) out.insert(p->action.name);
  if (p->kind == Process::Refine && p->action.is_visible()) out.insert(p->action.name);
  for (const auto& child : {p->left, p->right})
    if (child)
      for (auto& a : used_actions(child)) out.insert(a);
  return out;
}

namespace {

void collect_refs(const ProcPtr& p, std::set<std::string>& out) {
  if (!p) return;
  if (p->kind == Process::Ref) out.insert(p->name);
  collect_refs(p->left, out);
  collect_refs(p->right, out);
}

// References reachable without passing through a prefix continuation; these
// are the positions canonicalization unfolds eagerly, so a cycle here means
// unfolding diverges.
void collect_unguarded_refs(const ProcPtr& p, std::set<std::string>& out) {
  if (!p) return;
  switch (p->kind) {
    case Process::Ref: out.insert(p->name); return;
    case Process::Prefix: return;  // continuation is guarded
    default:
      collect_unguarded_refs(p->left, out);
      collect_unguarded_refs(p->right, out);
  }
}

bool contains_refine(const Spec& s, const ProcPtr& p, std::set<std::string>& visited) {
  if (!p) return false;
  if (p->kind == Process::Refine) return true;
  if (p->kind == Process::Ref) {
    if (!visited.insert(p->name).second) return false;
    auto it = s.processes.find(p->name);
    return it != s.processes.end() && contains_refine(s, it->second, visited);
  }
  return contains_refine(s, p->left, visited) || contains_refine(s, p->right, visited);
}

void check_refine_bodies(const Spec& s, const ProcPtr& p, std::vector<Diagnostic>& out) {
  if (!p) return;
  if (p->kind == Process::Refine) {
    std::set<std::string> visited;
    if (contains_refine(s, p->left, visited))
      out.push_back({Diagnostic::NestedRefinementBody,
                     "refining body of '" + p->action.display() + "' contains a refinement",
                     p->pos});
  }
  check_refine_bodies(s, p->left, out);
  check_refine_bodies(s, p->right, out);
}

}  // namespace

std::vector<Diagnostic> validate(const Spec& s) {
  std::vector<Diagnostic> out;

  std::set<std::string> actions, refs;
  for (const auto& [name, body] : s.processes) {
    for (auto& a : used_actions(body)) actions.insert(a);
    collect_refs(body, refs);
    check_refine_bodies(s, body, out);
  }

  for (const auto& a : actions)
    if (!s.durations.count(a))
      out.push_back({Diagnostic::MissingDuration, "no duration for action '" + a + "'", {}});

  for (const auto& r : refs)
    if (!s.processes.count(r))
      out.push_back({Diagnostic::UnknownReference, "reference to undefined process '" + r + "'", {}});

  if (s.main.empty())
    out.push_back({Diagnostic::UnknownMain, "no main process declared", {}});
  else if (!s.processes.count(s.main))
    out.push_back({Diagnostic::UnknownMain, "main process '" + s.main + "' is not defined", {}});

  // Unguarded-recursion detection: DFS for cycles in the unguarded-ref graph.
  std::map<std::string, std::set<std::string>> graph;
  for (const auto& [name, body] : s.processes) collect_unguarded_refs(body, graph[name]);
  std::set<std::string> reported;
  for (const auto& [start, _] : graph) {
    // 0 = unvisited, 1 = on stack, 2 = done
    std::map<std::string, int> mark;
    std::vector<std::string> stack{start};
    std::function<void(const std::string&)> dfs = [&](const std::string& n) {
      mark[n] = 1;
      for (const auto& m : graph[n]) {
        if (!graph.count(m)) continue;
        if (mark[m] == 1) {
          if (reported.insert(m).second)
            out.push_back({Diagnostic::UnguardedRecursion,
                           "recursion through '" + m + "' never passes an action prefix", {}});
        } else if (mark[m] == 0) {
          dfs(m);
        }
      }
      mark[n] = 2;
    };
    dfs(start);
  }
  return out;
}

}  // namespace durcsp
