#pragma once

#include "treelab/lambda/term.hpp"

namespace treelab::lambda {

/// The order-k twice combinator \f:T(k-1).\x:T(k-2).f (f x), k >= 2, where
/// T(0) = o and T(j) = T(j-1) -> T(j-1).
LambdaTerm twice(int k);

/// The duplicating term \x:o.(\x:o.\*:o.x) x x.
LambdaTerm duplicator();

/// The identity \x:o.x.
LambdaTerm identity();

/// The explosive term of parameters m >= 1, k >= 2: an order-k closed term
/// of type o->o and size 8m + 8k - 2 whose maximal beta-reduction length is
/// at least the k-fold iterated exponential of m. For k >= 3 this is
/// \x.((Twice_k^m Twice_{k-1}) Twice_{k-2} ... Twice_2 D (I x)); at k = 2
/// the chain degenerates to \x.((Twice_2^m D) (I x)).
LambdaTerm explosive(int m, int k);

/// exp_k(x): exp_0(x) = x, exp_{k+1}(x) = 2^exp_k(x). Throws on overflow of
/// long long.
long long iterated_exp(int k, long long x);

}  // namespace treelab::lambda
