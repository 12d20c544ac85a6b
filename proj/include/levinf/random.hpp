#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "levinf/linalg.hpp"
#include "levinf/polynomial.hpp"

namespace levinf {

using Rng = std::mt19937_64;

/// p/q with p uniform in [-max_num, max_num] \ {0} and q in [1, max_den].
Scalar random_rational(Rng& rng, int max_num = 9, int max_den = 5);

/// Vector with up to `terms` nonzero random entries.
Vector random_sparse_vector(Rng& rng, std::size_t dim, std::size_t terms);

/// Sum of `terms` random monomials with degrees in [min_degree, max_degree].
Polynomial random_polynomial(Rng& rng, std::size_t nvars, int min_degree, int max_degree, std::size_t terms);

/// Id + psi with psi random of degrees [min_degree, max_degree].
PolyMap random_near_identity(Rng& rng, std::size_t n, int min_degree, int max_degree, std::size_t terms);

}  // namespace levinf
