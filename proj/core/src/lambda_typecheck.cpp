#include "treelab/lambda/typecheck.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace treelab::lambda {

namespace {

// A small unification engine over simple types with metavariables (needed
// only for free variables; binder annotations are ground).
class Unifier {
 public:
  int fresh() {
    cells_.push_back({Kind::Var, -1, -1, static_cast<int>(cells_.size())});
    return static_cast<int>(cells_.size()) - 1;
  }

  int base() {
    cells_.push_back({Kind::Base, -1, -1, static_cast<int>(cells_.size())});
    return static_cast<int>(cells_.size()) - 1;
  }

  int arrow(int a, int b) {
    cells_.push_back({Kind::Arrow, a, b, static_cast<int>(cells_.size())});
    return static_cast<int>(cells_.size()) - 1;
  }

  int ground(const SimpleType& t) {
    if (t.is_base()) return base();
    return arrow(ground(t.arg()), ground(t.result()));
  }

  int find(int i) {
    while (cells_[static_cast<size_t>(i)].link != i) {
      cells_[static_cast<size_t>(i)].link = cells_[static_cast<size_t>(cells_[static_cast<size_t>(i)].link)].link;
      i = cells_[static_cast<size_t>(i)].link;
    }
    return i;
  }

  bool occurs(int var, int t) {
    t = find(t);
    if (t == var) return true;
    const Cell& c = cells_[static_cast<size_t>(t)];
    return c.kind == Kind::Arrow && (occurs(var, c.a) || occurs(var, c.b));
  }

  bool unify(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return true;
    Cell& cx = cells_[static_cast<size_t>(x)];
    Cell& cy = cells_[static_cast<size_t>(y)];
    if (cx.kind == Kind::Var) {
      if (occurs(x, y)) return false;
      cx.link = y;
      return true;
    }
    if (cy.kind == Kind::Var) return unify(y, x);
    if (cx.kind != cy.kind) return false;
    if (cx.kind == Kind::Base) {
      cx.link = y;
      return true;
    }
    // Unify children before merging the roots; linking first can hide an
    // occurs violation behind the fresh link and build a cyclic term.
    int a1 = cx.a, b1 = cx.b, a2 = cy.a, b2 = cy.b;
    if (!unify(a1, a2) || !unify(b1, b2)) return false;
    int rx = find(x), ry = find(y);
    if (rx != ry) cells_[static_cast<size_t>(rx)].link = ry;
    return true;
  }

  /// Resolved type; unconstrained metavariables default to the base type.
  SimpleType resolve(int i) {
    i = find(i);
    const Cell& c = cells_[static_cast<size_t>(i)];
    if (c.kind == Kind::Arrow) return SimpleType::arrow(resolve(c.a), resolve(c.b));
    return SimpleType::base();
  }

 private:
  enum class Kind { Var, Base, Arrow };
  struct Cell {
    Kind kind;
    int a, b;
    int link;
  };
  std::vector<Cell> cells_;
};

struct Inference {
  Unifier u;
  std::map<std::string, int> free_cells;
  std::vector<int> node_cells;  // one per subterm judgment
  bool failed = false;

  int infer(const LambdaTerm& t, std::map<std::string, std::vector<int>>& bound) {
    if (failed) return 0;
    int cell = 0;
    switch (t.kind()) {
      case LambdaTerm::Kind::Var: {
        auto it = bound.find(t.name());
        if (it != bound.end() && !it->second.empty()) {
          cell = it->second.back();
        } else {
          auto [fit, inserted] = free_cells.try_emplace(t.name(), 0);
          if (inserted) fit->second = u.fresh();
          cell = fit->second;
        }
        break;
      }
      case LambdaTerm::Kind::Abs: {
        int anno = u.ground(t.binder_type());
        if (t.binder()) bound[*t.binder()].push_back(anno);
        int body = infer(t.body(), bound);
        if (t.binder()) bound[*t.binder()].pop_back();
        cell = u.arrow(anno, body);
        break;
      }
      case LambdaTerm::Kind::App: {
        int f = infer(t.fn(), bound);
        int a = infer(t.arg(), bound);
        int r = u.fresh();
        if (!u.unify(f, u.arrow(a, r))) {
          failed = true;
          return 0;
        }
        cell = r;
        break;
      }
    }
    node_cells.push_back(cell);
    return cell;
  }
};

}  // namespace

std::optional<Judgment> typecheck(const LambdaTerm& t) {
  Inference inf;
  std::map<std::string, std::vector<int>> bound;
  int root = inf.infer(t, bound);
  if (inf.failed) return std::nullopt;

  Judgment j;
  j.type = inf.u.resolve(root);
  for (const auto& [name, cell] : inf.free_cells) j.env[name] = inf.u.resolve(cell);
  for (int cell : inf.node_cells) {
    SimpleType ty = inf.u.resolve(cell);
    j.order = std::max(j.order, ty.order());
    j.internal_arity = std::max(j.internal_arity, ty.internal_arity());
  }
  return j;
}

}  // namespace treelab::lambda
