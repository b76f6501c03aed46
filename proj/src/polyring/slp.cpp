#include "cfe/polyring/slp.hpp"

#include <functional>
#include <tuple>
#include <unordered_map>

namespace cfe {

SlpPtr slp_var(const std::string& name) {
  return std::make_shared<SlpNode>(SlpNode{SlpNode::Op::Var, name, Rational(0), nullptr, nullptr});
}

SlpPtr slp_const(const Rational& c) {
  return std::make_shared<SlpNode>(SlpNode{SlpNode::Op::Const, {}, c, nullptr, nullptr});
}

SlpPtr slp_binary(SlpNode::Op op, SlpPtr lhs, SlpPtr rhs) {
  if (lhs->op == SlpNode::Op::Const && rhs->op == SlpNode::Op::Const) {
    switch (op) {
      case SlpNode::Op::Add: return slp_const(lhs->value + rhs->value);
      case SlpNode::Op::Sub: return slp_const(lhs->value - rhs->value);
      case SlpNode::Op::Mul: return slp_const(lhs->value * rhs->value);
      default: break;
    }
  }
  return std::make_shared<SlpNode>(SlpNode{op, {}, Rational(0), std::move(lhs), std::move(rhs)});
}

std::size_t slp_length(const SlpPtr& root) {
  if (!root) return 0;
  if (root->op == SlpNode::Op::Const) return sgn(root->value) != 0 ? 1 : 0;
  // Structural ids: equal subexpressions get the same id however often they
  // were built. Constants get negative ids and are not counted.
  using Key = std::tuple<int, std::string, long, long>;
  std::map<Key, long> ids;
  std::map<Rational, long> constants;
  std::unordered_map<const SlpNode*, long> memo;
  std::function<long(const SlpNode*)> id_of = [&](const SlpNode* n) -> long {
    if (n->op == SlpNode::Op::Const)
      return constants.emplace(n->value, -static_cast<long>(constants.size()) - 1).first->second;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Key key = n->op == SlpNode::Op::Var ? Key{0, n->var, 0, 0}
                                        : Key{static_cast<int>(n->op), {}, id_of(n->lhs.get()), id_of(n->rhs.get())};
    auto [it, inserted] = ids.emplace(key, static_cast<long>(ids.size()) + 1);
    memo.emplace(n, it->second);
    return it->second;
  };
  id_of(root.get());
  return ids.size();
}

SlpPtr slp_substitute(const SlpPtr& root, const std::map<std::string, SlpPtr>& replacement) {
  return slp_fold<SlpPtr>(
      root,
      [&](const SlpNode& n) -> SlpPtr {
        if (n.op == SlpNode::Op::Var) {
          if (auto it = replacement.find(n.var); it != replacement.end()) return it->second;
          return slp_var(n.var);
        }
        return slp_const(n.value);
      },
      [](SlpNode::Op op, const SlpPtr& a, const SlpPtr& b) { return slp_binary(op, a, b); });
}

}  // namespace cfe
