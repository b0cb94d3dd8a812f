// Prints the Cayley transport factors for a few test functions: the Bloch
// seminorm halves under pullback and the L1 norm picks up 2^-alpha.

#include <cstdio>

#include "uhp/battery.hpp"
#include "uhp/groups.hpp"
#include "uhp/spaces.hpp"

int main() {
  using namespace uhp;
  QuadSpec q;
  const double alpha = 0.5;

  std::printf("%-32s %12s %12s\n", "function", "||.||_U", "0.5*||.||_D");
  for (const auto& item : default_predual_battery()) {
    const double on_u = bloch_seminorm(item.f, Domain::halfplane, q).value;
    const Expr pulled = mobius_comp(cayley_map(), item.f);
    const double on_d = bloch_seminorm(pulled, Domain::disk, q).value;
    std::printf("%-32s %12.8f %12.8f\n", item.name.c_str(), on_u, 0.5 * on_d);
  }

  std::printf("\nL1 transport at alpha = %.2f (factor 2^-alpha):\n", alpha);
  for (const auto& item : default_bergman_battery()) {
    const MeasureSpec m(alpha, Domain::halfplane);
    const double direct = l1_norm(item.f, m, q).value;
    const Expr s_psi_f = weighted_composition(cayley_map(), alpha + 2.0, item.f);
    const double pulled = std::pow(2.0, -alpha) * l1_norm_disk(s_psi_f, alpha, q).value;
    std::printf("%-32s %12.8f %12.8f\n", item.name.c_str(), direct, pulled);
  }
  return 0;
}
