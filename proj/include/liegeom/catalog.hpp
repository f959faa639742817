#pragma once

#include <span>
#include <string>
#include <vector>

#include "liegeom/algebra.hpp"

namespace liegeom::catalog {

LieAlgebra abelian(int n);
/// [e1,e2] = c e3.
LieAlgebra heisenberg3(double c = 1.0);
/// [e1,e2] = e5, [e3,e4] = e5.
LieAlgebra heisenberg5();
/// Frame of ds^2 = dw^2 + (dx - a y dw)^2 + (dy - a z dw)^2 + dz^2:
/// [e1,e3] = -a e2, [e1,e4] = -a e3.
LieAlgebra nil4(double a = 1.0);
/// [X0, Xi] = Xi for i = 1..n-1, X0 first in the basis.
LieAlgebra hyperbolic(int n);
/// C^k_{ij} = epsilon_{ijk}.
LieAlgebra su2();
/// [e1,e2] = 2 e2, [e1,e3] = -2 e3, [e2,e3] = e1.
LieAlgebra sl2r();

/// Names accepted by lookup().
const std::vector<std::string> &names();

/// Lookup by name with optional numeric parameters (dimension for abelian and
/// hyperbolic, the scale for heisenberg3 and nil4). Throws UnknownName.
LieAlgebra lookup(const std::string &name, std::span<const double> params = {});

/// One representative per catalog entry, at default parameters.
std::vector<std::pair<std::string, LieAlgebra>> defaults();

} // namespace liegeom::catalog
