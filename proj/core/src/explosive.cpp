#include "treelab/lambda/explosive.hpp"

#include "treelab/errors.hpp"

namespace treelab::lambda {

namespace {

SimpleType twice_type(int j) {
  SimpleType t = SimpleType::base();
  for (int i = 0; i < j; ++i) t = SimpleType::arrow(t, t);
  return t;
}

}  // namespace

LambdaTerm twice(int k) {
  if (k < 2) throw DomainError("twice is defined for k >= 2");
  LambdaTerm f = LambdaTerm::var("f");
  LambdaTerm x = LambdaTerm::var("x");
  LambdaTerm body = LambdaTerm::app(f, LambdaTerm::app(f, x));
  return LambdaTerm::abs("f", twice_type(k - 1),
                         LambdaTerm::abs("x", twice_type(k - 2), std::move(body)));
}

LambdaTerm duplicator() {
  SimpleType o = SimpleType::base();
  LambdaTerm x = LambdaTerm::var("x");
  LambdaTerm k_comb = LambdaTerm::abs("x", o, LambdaTerm::abs(std::nullopt, o, x));
  return LambdaTerm::abs("x", o, LambdaTerm::app(LambdaTerm::app(k_comb, x), x));
}

LambdaTerm identity() {
  return LambdaTerm::abs("x", SimpleType::base(), LambdaTerm::var("x"));
}

LambdaTerm explosive(int m, int k) {
  if (m < 1) throw DomainError("explosive requires m >= 1");
  if (k < 2) throw DomainError("explosive requires k >= 2");
  LambdaTerm seed = k == 2 ? duplicator() : twice(k - 1);
  LambdaTerm chain = seed;
  for (int i = 0; i < m; ++i) chain = LambdaTerm::app(twice(k), std::move(chain));
  if (k >= 3) {
    for (int j = k - 2; j >= 2; --j) chain = LambdaTerm::app(std::move(chain), twice(j));
    chain = LambdaTerm::app(std::move(chain), duplicator());
  }
  chain = LambdaTerm::app(std::move(chain),
                          LambdaTerm::app(identity(), LambdaTerm::var("x")));
  return LambdaTerm::abs("x", SimpleType::base(), std::move(chain));
}

long long iterated_exp(int k, long long x) {
  if (k == 0) return x;
  long long inner = iterated_exp(k - 1, x);
  if (inner >= 62) throw DomainError("iterated exponential overflows long long");
  return 1LL << inner;
}

}  // namespace treelab::lambda
