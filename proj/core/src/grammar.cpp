#include "treelab/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "treelab/errors.hpp"

namespace treelab {

std::string ContextType::str() const {
  std::string out;
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i];
  }
  out += "=>";
  out += result;
  return out;
}

Grammar::Grammar(RankedAlphabet alphabet, std::vector<std::string> nonterminals,
                 std::vector<Rule> rules)
    : alphabet_(std::move(alphabet)),
      nonterminals_(std::move(nonterminals)),
      rules_(std::move(rules)) {
  nonterminal_set_.insert(nonterminals_.begin(), nonterminals_.end());
  // Deduplicate the rule set, keeping first occurrences in order.
  std::set<Rule> seen;
  std::vector<Rule> unique;
  unique.reserve(rules_.size());
  for (Rule& r : rules_)
    if (seen.insert(r).second) unique.push_back(std::move(r));
  rules_ = std::move(unique);
  for (size_t i = 0; i < rules_.size(); ++i) rules_by_lhs_[rules_[i].lhs].push_back(i);
  validate();
}

void Grammar::validate() const {
  for (const std::string& nt : nonterminals_)
    if (alphabet_.contains(nt))
      throw DomainError("name " + nt + " is both a terminal and a nonterminal");
  for (const Rule& r : rules_) {
    if (!is_nonterminal(r.lhs))
      throw DomainError("rule left-hand side " + r.lhs + " is not a declared nonterminal");
    if (r.rhs.hole_count() != 0)
      throw DomainError("rule right-hand side may not contain holes");
    // Every rhs symbol must be a terminal at its rank or a nullary nonterminal.
    auto walk = [&](auto&& self, const Tree& t) -> void {
      if (is_nonterminal(t.symbol())) {
        if (!t.children().empty())
          throw ArityError("nonterminal " + t.symbol() + " used with children");
        return;
      }
      if (!is_terminal(t.symbol()))
        throw DomainError("undeclared symbol " + t.symbol() + " in rule for " + r.lhs);
      int rank = alphabet_.rank(t.symbol());
      if (rank != static_cast<int>(t.children().size()))
        throw ArityError("terminal " + t.symbol() + " has rank " + std::to_string(rank) +
                         " but is used with " + std::to_string(t.children().size()) +
                         " children in rule for " + r.lhs);
      for (const Tree& k : t.children()) self(self, k);
    };
    walk(walk, r.rhs);
  }
}

const std::vector<size_t>& Grammar::rules_for(const std::string& nt) const {
  static const std::vector<size_t> empty;
  auto it = rules_by_lhs_.find(nt);
  return it == rules_by_lhs_.end() ? empty : it->second;
}

bool Grammar::is_canonical() const {
  for (const Rule& r : rules_) {
    if (is_nonterminal(r.rhs.symbol())) return false;
    for (const Tree& k : r.rhs.children())
      if (!is_nonterminal(k.symbol())) return false;
  }
  return true;
}

bool Grammar::is_semi_canonical() const {
  for (const Rule& r : rules_) {
    if (is_nonterminal(r.rhs.symbol())) continue;  // unit rule
    for (const Tree& k : r.rhs.children())
      if (!is_nonterminal(k.symbol())) return false;
  }
  return true;
}

Grammar Grammar::with_sorted_rules() const {
  std::vector<Rule> sorted = rules_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> nts = nonterminals_;
  std::sort(nts.begin(), nts.end());
  return Grammar(alphabet_, std::move(nts), std::move(sorted));
}

std::vector<std::string> Grammar::rhs_nonterminals(const Tree& rhs) const {
  std::vector<std::string> out;
  auto walk = [&](auto&& self, const Tree& t) -> void {
    if (is_nonterminal(t.symbol())) {
      out.push_back(t.symbol());
      return;
    }
    for (const Tree& k : t.children()) self(self, k);
  };
  walk(walk, rhs);
  return out;
}

int Grammar::rhs_terminal_size(const Tree& rhs) const {
  int n = 0;
  auto walk = [&](auto&& self, const Tree& t) -> void {
    if (is_nonterminal(t.symbol())) return;
    ++n;
    for (const Tree& k : t.children()) self(self, k);
  };
  walk(walk, rhs);
  return n;
}

std::string Grammar::str() const {
  std::ostringstream out;
  for (const auto& [name, rank] : alphabet_.symbols())
    out << "terminal " << name << " " << rank << "\n";
  for (const Rule& r : rules_) out << "rule " << r.lhs << " -> " << r.rhs.str() << "\n";
  return out.str();
}

Grammar parse_grammar(std::string_view text) {
  std::map<std::string, int> terminals;
  std::vector<std::pair<std::string, std::string>> rule_texts;  // lhs, rhs literal
  std::vector<int> rule_lines;

  int lineno = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string line(text.substr(start, end == std::string_view::npos ? end : end - start));
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream in(line);
    std::string kw;
    if (!(in >> kw)) continue;
    if (kw == "terminal") {
      std::string name;
      int rank;
      if (!(in >> name >> rank))
        throw ParseError("expected `terminal <name> <rank>`", lineno, 1);
      if (terminals.count(name))
        throw ParseError("terminal " + name + " declared twice", lineno, 1);
      if (rank < 0) throw ParseError("negative rank for terminal " + name, lineno, 1);
      terminals[name] = rank;
    } else if (kw == "rule") {
      std::string lhs, arrow;
      if (!(in >> lhs >> arrow) || arrow != "->")
        throw ParseError("expected `rule <NT> -> <tree>`", lineno, 1);
      std::string rest;
      std::getline(in, rest);
      rule_texts.emplace_back(lhs, rest);
      rule_lines.push_back(lineno);
    } else {
      throw ParseError("unknown directive `" + kw + "`", lineno, 1);
    }
  }

  if (terminals.empty()) throw ParseError("grammar declares no terminals");
  RankedAlphabet alphabet{terminals};

  std::set<std::string> lhs_set;
  for (const auto& [lhs, rhs] : rule_texts) lhs_set.insert(lhs);

  std::vector<std::string> nonterminals(lhs_set.begin(), lhs_set.end());
  std::vector<Rule> rules;
  for (size_t i = 0; i < rule_texts.size(); ++i) {
    const auto& [lhs, rhs_text] = rule_texts[i];
    if (terminals.count(lhs))
      throw ParseError("rule left-hand side " + lhs + " is declared as a terminal",
                       rule_lines[i], 1);
    Tree rhs = Tree::parse(rhs_text);
    // Undeclared identifiers are nonterminals only if some rule defines them.
    auto walk = [&](auto&& self, const Tree& t) -> void {
      if (t.is_hole()) throw ParseError("hole not allowed in rule", rule_lines[i], 1);
      if (!terminals.count(t.symbol()) && !lhs_set.count(t.symbol()))
        throw ParseError("undeclared symbol " + t.symbol() + " (not a terminal, and no rule defines it)",
                         rule_lines[i], 1);
      for (const Tree& k : t.children()) self(self, k);
    };
    walk(walk, rhs);
    rules.push_back(Rule{lhs, std::move(rhs)});
  }
  try {
    return Grammar(std::move(alphabet), std::move(nonterminals), std::move(rules));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Grammar load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open grammar file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grammar(buf.str());
}

}  // namespace treelab
