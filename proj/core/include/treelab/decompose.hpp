#pragma once

#include <string>
#include <vector>

#include "treelab/enumerate.hpp"
#include "treelab/second_order.hpp"

namespace treelab {

/// True iff `u` is affine, has size at least m, and is rooted at a terminal
/// all of whose immediate subcontexts have size below m.
bool good_for(const Context& u, int m);

/// Result of the auxiliary decomposition: a 1-context shell, a second-order
/// remainder, and the extracted parts (in second-order hole order).
struct AuxDecomposition {
  Context shell;  // 1-context, size < m
  SecondOrderContext remainder;
  std::vector<Context> parts;
};

/// The bottom-up auxiliary decomposition. Guarantees: parts match the
/// remainder's holes, the shell is a 1-context of size < m, grafting the
/// remainder into the shell and filling the parts restores the tree, and
/// every part is good for m.
AuxDecomposition decompose_aux(const Tree& t, int m);

struct Decomposition {
  SecondOrderContext frame;
  std::vector<Context> parts;
};

/// The closed decomposition: frame = shell[remainder], same parts. The frame
/// has the tree's size, and len(parts) >= |t| / (2*r*m) whenever m <= |t|.
Decomposition decompose(const Tree& t, int m);

/// For a canonical unambiguous grammar: the unique nonterminals (N1..Nk)
/// with c in L(G, N1..Nk => n0) and subtrees[i] in L(G, Ni), given that
/// filling c with the subtrees lands in L(G, n0).
std::vector<std::string> infer_child_types(const Grammar& g, const Context& c,
                                           const std::vector<Tree>& subtrees,
                                           const std::string& n0);

/// The grammar-respecting decomposition: decompose, then annotate the frame
/// with the unique context types making it type-check at `nt` with the parts
/// inhabiting their holes.
Decomposition refine(const Grammar& g, const std::string& nt, const Tree& t, int m);

/// Derivability of `|- e : nt` under the hole/terminal typing rules.
bool typecheck_frame(const Grammar& g, const SecondOrderContext& e, const std::string& nt);

/// True iff c inhabits the context type under the canonical grammar.
bool context_member(const Grammar& g, const Context& c, const ContextType& type);

/// recompose() with the additional check that each part inhabits its hole's
/// annotated context type; mismatches name the 1-based hole index.
SecondOrderContext recompose_typed(const Grammar& g, const SecondOrderContext& e,
                                   std::span<const Context> parts);

struct BijectionReport {
  bool pass = true;
  std::string detail;              // first counterexample, when failing
  unsigned long long trees = 0;    // |L_n(G, N)|
  unsigned long long frames = 0;   // number of distinct typed frames
};

/// Exhaustively checks the coproduct/product decomposition of L_n(G, N) at
/// cutoff m: injectivity of the typed decomposition, per-frame part tuples
/// forming the full cartesian product of good typed contexts, and the total
/// cardinality identity.
BijectionReport verify_bijection(const Grammar& g, const std::string& nt, int n, int m,
                                 long long budget = 4'000'000);

}  // namespace treelab
