#include "mulingua/logic.hpp"

#include <algorithm>

namespace mulingua {

Verdict well_formed_formula(const Signature& sig, const Context& ctx, const Formula& f) {
  try {
    checker::well_formed_formula(sig, ctx, f);
    return Verdict::success();
  } catch (const TypeError& e) {
    return Verdict::failure(e.what());
  }
}

std::size_t formula_depth(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::And:
    case K::Or:
    case K::Implies:
      return 1 + std::max(formula_depth(f.left()), formula_depth(f.right()));
    case K::Not:
    case K::Forall:
    case K::Exists:
      return 1 + formula_depth(f.body());
    default:
      return 0;
  }
}

void for_each_subformula(const Formula& f, const std::function<void(const Formula&)>& visit) {
  visit(f);
  for (const auto& sub : f.node().formulas) for_each_subformula(sub, visit);
}

std::pair<Context, Formula> split_universal_prefix(const Formula& f) {
  Context ctx;
  Formula body = f;
  while (body.kind() == Formula::Kind::Forall) {
    ctx.entries.push_back({body.name(), body.type()});
    body = body.body();
  }
  return {ctx, body};
}

}  // namespace mulingua
