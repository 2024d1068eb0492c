#include "treelab/context.hpp"

#include <algorithm>
#include <cctype>

#include "treelab/errors.hpp"

namespace treelab {

Context Context::hole() {
  static const Context h(std::make_shared<const Node>(Node{"", true, {}, 0, 1}));
  return h;
}

Context Context::leaf(std::string symbol) {
  return node(std::move(symbol), {});
}

Context Context::node(std::string symbol, std::vector<Context> children) {
  Node n;
  n.symbol = std::move(symbol);
  n.hole = false;
  n.size = 1;
  n.holes = 0;
  for (const Context& c : children) {
    n.size += c.size();
    n.holes += c.hole_count();
  }
  n.children = std::move(children);
  return Context(std::make_shared<const Node>(std::move(n)));
}

namespace {

// Rebuilds `c` replacing holes numbered in [next, ...) according to `parts`;
// `next` is the preorder index of the next hole to be met.
Context fill_walk(const Context& c, std::span<const Context> parts, int& next) {
  if (c.is_hole()) return parts[static_cast<size_t>(next++)];
  if (c.hole_count() == 0) return c;
  std::vector<Context> kids;
  kids.reserve(c.children().size());
  for (const Context& k : c.children()) kids.push_back(fill_walk(k, parts, next));
  return Context::node(c.symbol(), std::move(kids));
}

Context fill_at_walk(const Context& c, const Context& part, int index, int& seen) {
  if (c.is_hole()) {
    ++seen;
    return seen == index ? part : c;
  }
  if (c.hole_count() == 0 || seen + c.hole_count() < index) {
    seen += c.hole_count();
    return c;
  }
  std::vector<Context> kids;
  kids.reserve(c.children().size());
  for (const Context& k : c.children()) kids.push_back(fill_at_walk(k, part, index, seen));
  return Context::node(c.symbol(), std::move(kids));
}

}  // namespace

Context Context::fill(std::span<const Context> parts) const {
  if (static_cast<int>(parts.size()) != hole_count())
    throw ArityError("fill: got " + std::to_string(parts.size()) + " parts for " +
                     std::to_string(hole_count()) + " holes");
  int next = 0;
  return fill_walk(*this, parts, next);
}

Context Context::fill(std::initializer_list<Context> parts) const {
  return fill(std::span<const Context>(parts.begin(), parts.size()));
}

Context Context::fill_at(const Context& part, int index) const {
  if (index < 1 || index > hole_count())
    throw DomainError("fill_at: hole index " + std::to_string(index) +
                      " out of range 1.." + std::to_string(hole_count()));
  int seen = 0;
  return fill_at_walk(*this, part, index, seen);
}

void Context::validate(const RankedAlphabet& alphabet) const {
  if (is_hole()) return;
  int r = alphabet.rank(symbol());
  if (r != static_cast<int>(children().size()))
    throw ArityError("terminal " + symbol() + " has rank " + std::to_string(r) +
                     " but is used with " + std::to_string(children().size()) +
                     " children");
  for (const Context& c : children()) c.validate(alphabet);
}

bool Context::operator==(const Context& other) const {
  if (node_ == other.node_) return true;
  if (is_hole() != other.is_hole()) return false;
  if (is_hole()) return true;
  if (symbol() != other.symbol()) return false;
  if (children().size() != other.children().size()) return false;
  for (size_t i = 0; i < children().size(); ++i)
    if (!(children()[i] == other.children()[i])) return false;
  return true;
}

std::strong_ordering Context::operator<=>(const Context& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (is_hole() != other.is_hole())
    return is_hole() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (is_hole()) return std::strong_ordering::equal;
  if (auto c = symbol() <=> other.symbol(); c != 0) return c;
  size_t n = std::min(children().size(), other.children().size());
  for (size_t i = 0; i < n; ++i)
    if (auto c = children()[i] <=> other.children()[i]; c != 0) return c;
  return children().size() <=> other.children().size();
}

namespace {

void print_walk(const Context& c, std::string& out) {
  if (c.is_hole()) {
    out += '_';
    return;
  }
  out += c.symbol();
  if (!c.children().empty()) {
    out += '(';
    for (size_t i = 0; i < c.children().size(); ++i) {
      if (i) out += ',';
      print_walk(c.children()[i], out);
    }
    out += ')';
  }
}

struct LiteralParser {
  std::string_view text;
  size_t pos = 0;
  int line = 1, col = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) advance();
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() const { return text[pos]; }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    advance();
  }

  // ident := [A-Za-z][A-Za-z0-9_$]* ( '{' non-brace* '}' )?
  // `$` appears in the fresh nonterminals minted by rule splitting.
  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
      fail("expected identifier");
    std::string out;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '$')) {
      out += text[pos];
      advance();
    }
    if (pos < text.size() && text[pos] == '{') {
      out += '{';
      advance();
      while (pos < text.size() && text[pos] != '}') {
        if (text[pos] == '{') fail("nested '{' in identifier");
        out += text[pos];
        advance();
      }
      if (pos >= text.size()) fail("unterminated '{' in identifier");
      out += '}';
      advance();
    }
    return out;
  }

  Context node() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '_') {
      advance();
      if (pos < text.size() &&
          (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        fail("identifiers may not start with '_'");
      return Context::hole();
    }
    std::string name = ident();
    skip_ws();
    std::vector<Context> kids;
    if (pos < text.size() && text[pos] == '(') {
      advance();
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        advance();  // explicit nullary `a()`
      } else {
        kids.push_back(node());
        skip_ws();
        while (pos < text.size() && text[pos] == ',') {
          advance();
          kids.push_back(node());
          skip_ws();
        }
        expect(')');
      }
    }
    return Context::node(std::move(name), std::move(kids));
  }
};

}  // namespace

std::string Context::str() const {
  std::string out;
  print_walk(*this, out);
  return out;
}

Context Context::parse(std::string_view text) {
  LiteralParser p{text};
  Context c = p.node();
  if (!p.eof()) p.fail("trailing input after tree literal");
  return c;
}

namespace {

// Matches `c` against the subtree rooted at `s`; holes of `c` match anything.
bool match_at(const Context& c, const Context& s) {
  if (c.is_hole()) return true;
  if (s.is_hole()) return false;
  if (c.symbol() != s.symbol()) return false;
  for (size_t i = 0; i < c.children().size(); ++i)
    if (!match_at(c.children()[i], s.children()[i])) return false;
  return true;
}

bool scan(const Context& c, const Context& s) {
  if (match_at(c, s)) return true;
  if (s.is_hole()) return false;
  for (const Context& k : s.children())
    if (scan(c, k)) return true;
  return false;
}

}  // namespace

bool is_subcontext(const Context& c, const Context& c2) { return scan(c, c2); }

namespace {

void serialize_walk(const Context& u, Word& out) {
  if (u.is_hole()) {
    out.push_back("[]");
    return;
  }
  out.push_back("<" + u.symbol() + ">");
  for (const Context& k : u.children()) serialize_walk(k, out);
  out.push_back("</" + u.symbol() + ">");
}

}  // namespace

Word serialize_affine(const Context& u) {
  if (u.hole_count() >= 2)
    throw ArityError("serialize_affine: context has " + std::to_string(u.hole_count()) +
                     " holes, at most 1 allowed");
  Word out;
  out.reserve(static_cast<size_t>(2 * u.size() + u.hole_count()));
  serialize_walk(u, out);
  return out;
}

bool find_subword(const Word& w, const Word& pattern) {
  if (pattern.empty()) return true;
  return std::search(w.begin(), w.end(), pattern.begin(), pattern.end()) != w.end();
}

}  // namespace treelab
