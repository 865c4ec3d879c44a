#include <iostream>

#include "sydy/hopf.hpp"
#include "sydy/suite.hpp"

int main() {
  using namespace sydy;

  const CheckReport ybe = check_sybe(build_r(Var::u));
  std::cout << "ybe        " << to_string(ybe.verdict) << "\n";

  const LOperator l = build_eval_L(Var::w);
  std::cout << "rll-eval   " << to_string(check_rll(l).verdict) << "\n";

  const CurrentSet c = transform_currents(gauss_decompose(l));
  std::cout << "K(u)       " << c.K.to_string() << "\n";
  std::cout << "E(u)       " << c.E.to_string() << "\n";

  const RepContext ctx = RepContext::evaluation();
  const Relation rel = parse_relation("[K+(u), H+(v)] = 0");
  std::cout << render_relation(rel) << "  " << to_string(check_relation_rational(rel, ctx).verdict) << "\n";

  const Relation bad = parse_relation("[k1+(u), e+(v)] = 0");
  const CheckReport r = check_relation_rational(bad, ctx);
  std::cout << render_relation(bad) << "  " << to_string(r.verdict);
  if (r.witness) std::cout << " at " << r.witness->location;
  std::cout << "\n";

  return ybe.passed() && !r.passed() ? 0 : 1;
}
