#include "treelab/second_order.hpp"

#include <functional>

#include "treelab/errors.hpp"

namespace treelab {

SecondOrderContext SecondOrderContext::term(std::string symbol,
                                            std::vector<SecondOrderContext> children) {
  Node n;
  n.is_hole = false;
  n.symbol = std::move(symbol);
  n.size = 1;
  for (const auto& c : children) {
    n.size += c.size();
    n.holes += c.hole_count();
  }
  n.children = std::move(children);
  return SecondOrderContext(std::make_shared<const Node>(std::move(n)));
}

SecondOrderContext SecondOrderContext::hole(HoleSpec spec,
                                            std::vector<SecondOrderContext> children) {
  if (static_cast<int>(children.size()) != spec.arity)
    throw ArityError("second-order hole of arity " + std::to_string(spec.arity) + " given " +
                     std::to_string(children.size()) + " children");
  if (spec.type && static_cast<int>(spec.type->args.size()) != spec.arity)
    throw ArityError("hole type arity disagrees with hole arity");
  Node n;
  n.is_hole = true;
  n.spec = std::move(spec);
  n.size = n.spec.declared_size;
  n.holes = 1;
  for (const auto& c : children) {
    n.size += c.size();
    n.holes += c.hole_count();
  }
  n.children = std::move(children);
  return SecondOrderContext(std::make_shared<const Node>(std::move(n)));
}

SecondOrderContext SecondOrderContext::from_tree(const Tree& t) {
  if (t.is_hole()) throw DomainError("first-order hole cannot become a second-order context");
  std::vector<SecondOrderContext> kids;
  kids.reserve(t.children().size());
  for (const Tree& k : t.children()) kids.push_back(from_tree(k));
  return term(t.symbol(), std::move(kids));
}

std::vector<HoleSpec> SecondOrderContext::holes() const {
  std::vector<HoleSpec> out;
  std::function<void(const SecondOrderContext&)> walk = [&](const SecondOrderContext& e) {
    if (e.is_hole()) out.push_back(e.spec());
    for (const auto& k : e.children()) walk(k);
  };
  walk(*this);
  return out;
}

namespace {

// Grafts second-order contexts into the first-order holes of `part`
// (left-to-right).
SecondOrderContext graft(const Context& part, const std::vector<SecondOrderContext>& at_holes,
                         size_t& next) {
  if (part.is_hole()) return at_holes[next++];
  std::vector<SecondOrderContext> kids;
  kids.reserve(part.children().size());
  for (const Context& k : part.children()) kids.push_back(graft(k, at_holes, next));
  return SecondOrderContext::term(part.symbol(), std::move(kids));
}

}  // namespace

SecondOrderContext SecondOrderContext::fill_first(const Context& part) const {
  if (hole_count() == 0) throw ArityError("no second-order hole to fill");
  if (is_hole()) {
    if (part.hole_count() != spec().arity)
      throw ArityError("part has " + std::to_string(part.hole_count()) +
                       " holes, hole expects arity " + std::to_string(spec().arity));
    if (part.size() != spec().declared_size)
      throw DomainError("part has size " + std::to_string(part.size()) +
                        ", hole declares size " + std::to_string(spec().declared_size));
    size_t next = 0;
    return graft(part, children(), next);
  }
  std::vector<SecondOrderContext> kids = children();
  for (auto& k : kids) {
    if (k.hole_count() >= 1) {
      k = k.fill_first(part);
      return term(symbol(), std::move(kids));
    }
  }
  throw Error("internal: hole_count positive but no child has a hole");
}

SecondOrderContext SecondOrderContext::untyped() const {
  std::vector<SecondOrderContext> kids;
  kids.reserve(children().size());
  for (const auto& k : children()) kids.push_back(k.untyped());
  if (!is_hole()) return term(symbol(), std::move(kids));
  HoleSpec s = spec();
  s.type.reset();
  return hole(std::move(s), std::move(kids));
}

Tree SecondOrderContext::to_tree() const {
  if (hole_count() != 0) throw ArityError("second-order context still has holes");
  std::vector<Context> kids;
  kids.reserve(children().size());
  for (const auto& k : children()) kids.push_back(k.to_tree());
  return Tree::node(symbol(), std::move(kids));
}

std::string SecondOrderContext::str() const {
  std::string out;
  std::function<void(const SecondOrderContext&)> walk = [&](const SecondOrderContext& e) {
    if (e.is_hole()) {
      out += "[[";
      if (e.spec().type)
        out += e.spec().type->str();
      else
        out += std::to_string(e.spec().arity);
      out += ":";
      out += std::to_string(e.spec().declared_size);
      out += "]]";
    } else {
      out += e.symbol();
    }
    if (!e.children().empty()) {
      out += '(';
      for (size_t i = 0; i < e.children().size(); ++i) {
        if (i) out += ',';
        walk(e.children()[i]);
      }
      out += ')';
    }
  };
  walk(*this);
  return out;
}

bool SecondOrderContext::operator==(const SecondOrderContext& other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

std::strong_ordering SecondOrderContext::operator<=>(const SecondOrderContext& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (is_hole() != other.is_hole())
    return is_hole() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (is_hole()) {
    if (auto c = spec().arity <=> other.spec().arity; c != 0) return c;
    if (auto c = spec().declared_size <=> other.spec().declared_size; c != 0) return c;
    bool a = spec().type.has_value(), b = other.spec().type.has_value();
    if (a != b) return a <=> b;
    if (a)
      if (auto c = *spec().type <=> *other.spec().type; c != 0)
        return c == std::partial_ordering::less ? std::strong_ordering::less
                                                : std::strong_ordering::greater;
  } else {
    if (auto c = symbol() <=> other.symbol(); c != 0) return c;
  }
  size_t n = std::min(children().size(), other.children().size());
  for (size_t i = 0; i < n; ++i)
    if (auto c = children()[i] <=> other.children()[i]; c != 0) return c;
  return children().size() <=> other.children().size();
}

SecondOrderContext recompose(const SecondOrderContext& e, std::span<const Context> parts) {
  if (static_cast<int>(parts.size()) != e.hole_count())
    throw ArityError("recompose: got " + std::to_string(parts.size()) + " parts for " +
                     std::to_string(e.hole_count()) + " holes");
  SecondOrderContext cur = e;
  for (size_t i = 0; i < parts.size(); ++i) {
    try {
      cur = cur.fill_first(parts[i]);
    } catch (const Error& err) {
      throw DomainError("recompose: hole " + std::to_string(i + 1) + ": " + err.what());
    }
  }
  return cur;
}

SecondOrderContext recompose(const SecondOrderContext& e, std::initializer_list<Context> parts) {
  return recompose(e, std::span<const Context>(parts.begin(), parts.size()));
}

}  // namespace treelab
