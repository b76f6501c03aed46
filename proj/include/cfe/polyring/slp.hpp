#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "cfe/exactnum/rational.hpp"

namespace cfe {

struct SlpNode;
using SlpPtr = std::shared_ptr<const SlpNode>;

/// One instruction of a straight-line program. Nodes are shared, so a program
/// is a DAG; identical subexpressions built once are counted once.
struct SlpNode {
  enum class Op { Var, Const, Add, Sub, Mul };
  Op op;
  std::string var;  // Var
  Rational value;   // Const
  SlpPtr lhs;
  SlpPtr rhs;
};

SlpPtr slp_var(const std::string& name);
SlpPtr slp_const(const Rational& c);
/// Builds `lhs op rhs`, folding the result to a constant when both operands
/// are constants.
SlpPtr slp_binary(SlpNode::Op op, SlpPtr lhs, SlpPtr rhs);

/// Number of structurally distinct non-constant nodes reachable from `root`
/// (repeated reads of a variable, or a subexpression built twice, count once).
/// Constants are free, except that a program consisting of a single nonzero
/// constant has length 1.
std::size_t slp_length(const SlpPtr& root);

/// Rebuilds the program with variables replaced by the given programs,
/// preserving sharing. Unmapped variables are kept.
SlpPtr slp_substitute(const SlpPtr& root, const std::map<std::string, SlpPtr>& replacement);

/// Evaluates the program bottom-up with caller-supplied leaf and operation
/// handlers; every shared node is evaluated once.
template <class T>
T slp_fold(const SlpPtr& root, const std::function<T(const SlpNode&)>& leaf,
           const std::function<T(SlpNode::Op, const T&, const T&)>& combine) {
  std::map<const SlpNode*, T> memo;
  std::function<T(const SlpPtr&)> go = [&](const SlpPtr& n) -> T {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    T result = (n->op == SlpNode::Op::Var || n->op == SlpNode::Op::Const) ? leaf(*n)
                                                                          : combine(n->op, go(n->lhs), go(n->rhs));
    memo.emplace(n.get(), result);
    return result;
  };
  return go(root);
}

}  // namespace cfe
