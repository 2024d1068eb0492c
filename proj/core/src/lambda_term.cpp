#include "treelab/lambda/term.hpp"

#include <cctype>
#include <functional>
#include <map>

#include "treelab/errors.hpp"

namespace treelab::lambda {

LambdaTerm LambdaTerm::var(std::string name) {
  Node n;
  n.kind = Kind::Var;
  n.name = std::move(name);
  n.size = 1;
  n.free = {n.name};
  return LambdaTerm(std::make_shared<const Node>(std::move(n)));
}

LambdaTerm LambdaTerm::abs(std::optional<std::string> binder, SimpleType type, LambdaTerm body) {
  Node n;
  n.kind = Kind::Abs;
  n.binder_name = std::move(binder);
  n.type = std::move(type);
  n.size = body.size() + 1;
  n.free = body.free_vars();
  if (n.binder_name) n.free.erase(*n.binder_name);
  n.sub.push_back(std::move(body));
  return LambdaTerm(std::make_shared<const Node>(std::move(n)));
}

LambdaTerm LambdaTerm::app(LambdaTerm fn, LambdaTerm arg) {
  Node n;
  n.kind = Kind::App;
  n.size = fn.size() + arg.size() + 1;
  n.free = fn.free_vars();
  n.free.insert(arg.free_vars().begin(), arg.free_vars().end());
  n.sub.push_back(std::move(fn));
  n.sub.push_back(std::move(arg));
  return LambdaTerm(std::make_shared<const Node>(std::move(n)));
}

bool LambdaTerm::operator==(const LambdaTerm& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Var:
      return name() == other.name();
    case Kind::Abs:
      return binder() == other.binder() && binder_type() == other.binder_type() &&
             body() == other.body();
    case Kind::App:
      return fn() == other.fn() && arg() == other.arg();
  }
  return false;
}

namespace {

void print_walk(const LambdaTerm& t, std::string& out) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      out += t.name();
      break;
    case LambdaTerm::Kind::Abs:
      out += '\\';
      out += t.binder() ? *t.binder() : "*";
      out += ':';
      out += t.binder_type().str();
      out += '.';
      print_walk(t.body(), out);
      break;
    case LambdaTerm::Kind::App: {
      bool lp = t.fn().kind() == LambdaTerm::Kind::Abs;
      if (lp) out += '(';
      print_walk(t.fn(), out);
      if (lp) out += ')';
      out += ' ';
      bool rp = t.arg().kind() != LambdaTerm::Kind::Var;
      if (rp) out += '(';
      print_walk(t.arg(), out);
      if (rp) out += ')';
      break;
    }
  }
}

struct TermParser {
  std::string_view text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("term syntax: " + msg + " at offset " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_atom_start() {
    skip_ws();
    if (pos >= text.size()) return false;
    char c = text[pos];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '\\';
  }

  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
      fail("expected identifier");
    std::string out;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      out += text[pos++];
    return out;
  }

  SimpleType type_until_dot() {
    skip_ws();
    size_t start = pos;
    int depth = 0;
    while (pos < text.size() && (depth > 0 || text[pos] != '.')) {
      if (text[pos] == '(') ++depth;
      if (text[pos] == ')') --depth;
      ++pos;
    }
    if (pos >= text.size()) fail("expected '.' after binder type");
    SimpleType t = SimpleType::parse(text.substr(start, pos - start));
    ++pos;  // consume '.'
    return t;
  }

  LambdaTerm term() {
    skip_ws();
    if (pos < text.size() && text[pos] == '\\') {
      ++pos;
      skip_ws();
      std::optional<std::string> binder;
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
      } else {
        binder = ident();
      }
      skip_ws();
      if (pos >= text.size() || text[pos] != ':') fail("expected ':' after binder");
      ++pos;
      SimpleType ty = type_until_dot();
      return LambdaTerm::abs(std::move(binder), std::move(ty), term());
    }
    LambdaTerm head = atom();
    while (at_atom_start()) head = LambdaTerm::app(std::move(head), atom());
    return head;
  }

  LambdaTerm atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] == '(') {
      ++pos;
      LambdaTerm t = term();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return t;
    }
    if (text[pos] == '\\') return term();
    return LambdaTerm::var(ident());
  }
};

}  // namespace

std::string LambdaTerm::str() const {
  std::string out;
  print_walk(*this, out);
  return out;
}

LambdaTerm LambdaTerm::parse(std::string_view text) {
  TermParser p{text};
  LambdaTerm t = p.term();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

namespace {

bool alpha_walk(const LambdaTerm& a, const LambdaTerm& b,
                std::map<std::string, int>& da, std::map<std::string, int>& db, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case LambdaTerm::Kind::Var: {
      auto ia = da.find(a.name());
      auto ib = db.find(b.name());
      if ((ia != da.end()) != (ib != db.end())) return false;
      if (ia != da.end()) return ia->second == ib->second;
      return a.name() == b.name();
    }
    case LambdaTerm::Kind::Abs: {
      if (!(a.binder_type() == b.binder_type())) return false;
      std::optional<int> olda, oldb;
      if (a.binder()) {
        if (auto it = da.find(*a.binder()); it != da.end()) olda = it->second;
        da[*a.binder()] = depth;
      }
      if (b.binder()) {
        if (auto it = db.find(*b.binder()); it != db.end()) oldb = it->second;
        db[*b.binder()] = depth;
      }
      bool ok = alpha_walk(a.body(), b.body(), da, db, depth + 1);
      if (a.binder()) {
        if (olda)
          da[*a.binder()] = *olda;
        else
          da.erase(*a.binder());
      }
      if (b.binder()) {
        if (oldb)
          db[*b.binder()] = *oldb;
        else
          db.erase(*b.binder());
      }
      return ok;
    }
    case LambdaTerm::Kind::App:
      return alpha_walk(a.fn(), b.fn(), da, db, depth) &&
             alpha_walk(a.arg(), b.arg(), da, db, depth);
  }
  return false;
}

}  // namespace

bool alpha_eq(const LambdaTerm& a, const LambdaTerm& b) {
  std::map<std::string, int> da, db;
  return alpha_walk(a, b, da, db, 0);
}

namespace {

void key_walk(const LambdaTerm& t, std::map<std::string, int>& bound, int depth,
              std::string& out) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var: {
      auto it = bound.find(t.name());
      if (it != bound.end()) {
        out += '#';
        out += std::to_string(depth - it->second);  // de Bruijn-style level
      } else {
        out += '$';
        out += t.name();
      }
      break;
    }
    case LambdaTerm::Kind::Abs: {
      out += 'L';
      out += t.binder_type().str();
      out += '.';
      std::optional<int> old;
      if (t.binder()) {
        if (auto it = bound.find(*t.binder()); it != bound.end()) old = it->second;
        bound[*t.binder()] = depth;
      }
      key_walk(t.body(), bound, depth + 1, out);
      if (t.binder()) {
        if (old)
          bound[*t.binder()] = *old;
        else
          bound.erase(*t.binder());
      }
      break;
    }
    case LambdaTerm::Kind::App:
      out += '(';
      key_walk(t.fn(), bound, depth, out);
      out += ' ';
      key_walk(t.arg(), bound, depth, out);
      out += ')';
      break;
  }
}

}  // namespace

std::string alpha_key(const LambdaTerm& t) {
  std::string out;
  std::map<std::string, int> bound;
  key_walk(t, bound, 0, out);
  return out;
}

LambdaTerm swap_names(const LambdaTerm& t, const std::string& a, const std::string& b) {
  auto swap_one = [&](const std::string& n) { return n == a ? b : (n == b ? a : n); };
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return LambdaTerm::var(swap_one(t.name()));
    case LambdaTerm::Kind::Abs: {
      std::optional<std::string> binder = t.binder();
      if (binder) binder = swap_one(*binder);
      return LambdaTerm::abs(std::move(binder), t.binder_type(), swap_names(t.body(), a, b));
    }
    case LambdaTerm::Kind::App:
      return LambdaTerm::app(swap_names(t.fn(), a, b), swap_names(t.arg(), a, b));
  }
  throw Error("unreachable");
}

namespace {

std::string pool_name(int i) { return "x" + std::to_string(i); }

LambdaTerm rename_walk(const LambdaTerm& t) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return t;
    case LambdaTerm::Kind::Abs: {
      if (!t.binder() || t.body().free_vars().count(*t.binder()) == 0)
        return LambdaTerm::abs(std::nullopt, t.binder_type(), rename_walk(t.body()));
      // Least pool name not free in the whole abstraction.
      const std::set<std::string>& live = t.free_vars();
      int i = 1;
      while (live.count(pool_name(i))) ++i;
      std::string fresh = pool_name(i);
      LambdaTerm body = *t.binder() == fresh ? t.body() : swap_names(t.body(), fresh, *t.binder());
      return LambdaTerm::abs(fresh, t.binder_type(), rename_walk(body));
    }
    case LambdaTerm::Kind::App:
      return LambdaTerm::app(rename_walk(t.fn()), rename_walk(t.arg()));
  }
  throw Error("unreachable");
}

void collect_names(const LambdaTerm& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      out.insert(t.name());
      break;
    case LambdaTerm::Kind::Abs:
      if (t.binder()) out.insert(*t.binder());
      collect_names(t.body(), out);
      break;
    case LambdaTerm::Kind::App:
      collect_names(t.fn(), out);
      collect_names(t.arg(), out);
      break;
  }
}

}  // namespace

LambdaTerm rename_minimal(const LambdaTerm& t) { return rename_walk(t); }

int num_vars(const LambdaTerm& t) {
  std::set<std::string> names;
  collect_names(rename_minimal(t), names);
  return static_cast<int>(names.size());
}

}  // namespace treelab::lambda
