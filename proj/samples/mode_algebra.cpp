#include <iostream>

#include "sydy/modealg.hpp"

int main() {
  using namespace sydy;

  const auto rels = extract_mode_relations(Family::plus_plus, 2);
  const std::vector<FreeElement> elems = relation_elements(rels);
  std::cout << rels.size() << " coefficient identities, " << elems.size() << " nonzero\n";

  const CheckReport rep = check_relations_in_rep(Family::plus_plus, 2);
  std::cout << "evaluation rep: " << to_string(rep.verdict) << "\n";

  bool ok = rep.passed();
  for (const auto& [name, cand] : standard_candidates(2)) {
    const MembershipResult m = ideal_membership(cand, elems, 2);
    std::cout << name << ": " << (m.member ? "member" : "not a member") << ", " << m.certificate.size()
              << " terms\n";
    ok = ok && m.member;
  }

  const FreeElement single = parse_free_element("l11^0");
  const MembershipResult m = ideal_membership(single, elems, 2);
  std::cout << "l11^0 residual: " << m.residual.to_string() << "\n";
  return ok && !m.member ? 0 : 1;
}
