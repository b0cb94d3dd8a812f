// Computes the scaling-group resolvent of h(w) = (w+i)^-2 at a few points,
// checks it against the defining ODE, and samples the spectral circle of
// the resolvent operator.

#include <cstdio>

#include "uhp/spectral.hpp"

int main() {
  using namespace uhp;
  QuadSpec q;
  const cplx lambda{2.0, 0.0};
  const Expr h = power(shift_arg(imag_unit, variable()), cplx{-2.0});

  ResolventQuery query{lambda, h, {{0.0, 2.0}, {0.3, 2.0}, {0.0, 1.5}}, q};
  const auto values = resolvent_closed(query);
  for (std::size_t k = 0; k < values.size(); ++k)
    std::printf("R(%g)h at probe %zu = %+.10f %+.10fi\n", lambda.real(), k,
                values[k].real(), values[k].imag());
  std::printf("ODE residual: %.3e\n", resolvent_identity_residual(query));

  std::vector<double> rs;
  for (int k = 0; k <= 100; ++k) rs.push_back(-20.0 + 0.4 * k);
  std::printf("circle deviation for 1/(lambda - ir): %.3e\n",
              spectral_circle_check(lambda, rs));
  std::printf("circle center/radius: %.6f\n", 1.0 / (2.0 * lambda.real()));
  return 0;
}
