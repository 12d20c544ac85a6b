#pragma once

#include "levinf/algebroid.hpp"

namespace testsupport {

using namespace levinf;

/// Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
StructureConstants sl2();
LeviAlgebraData sl2_data();
/// sl(2) acting on K^2 by the standard representation; n = 5, m = 3.
LeviAlgebraData sl2_k2_data();
/// [e1,e2] = e3 and cyclic; semisimple over Q.
LeviAlgebraData so3_data();
/// sl(2) x sl(2), m = 6.
LeviAlgebraData sl2_sl2_data();
/// [x,y] = z, nilpotent.
StructureConstants heisenberg();
/// Anchor matrices of the sl(2) action on K^2 (anchor(i) = rho_i^T).
std::vector<DenseMatrix> sl2_standard_anchor();
AlgebroidData sl2_action_algebroid(int max_degree);
/// Fiber algebra sl(2) x K^2 acting on K^2 through its sl(2) quotient; the
/// v-sections have zero anchor. N = 5, n = 2.
AlgebroidData sl2_k2_action_algebroid(int max_degree);

}  // namespace testsupport
