#include "levinf/random.hpp"

#include "levinf/error.hpp"

namespace levinf {

Scalar random_rational(Rng& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  std::bernoulli_distribution neg(0.5);
  const int p = num(rng);
  return Scalar::ratio(neg(rng) ? -p : p, den(rng));
}

Vector random_sparse_vector(Rng& rng, std::size_t dim, std::size_t terms) {
  Vector v = zero_vector(dim);
  if (dim == 0) return v;
  std::uniform_int_distribution<std::size_t> pos(0, dim - 1);
  for (std::size_t t = 0; t < terms; ++t) v[pos(rng)] += random_rational(rng);
  return v;
}

Polynomial random_polynomial(Rng& rng, std::size_t nvars, int min_degree, int max_degree, std::size_t terms) {
  if (min_degree > max_degree || min_degree < 0) throw InputError("invalid degree range");
  Polynomial p(nvars);
  if (nvars == 0) return p;
  std::uniform_int_distribution<int> deg(min_degree, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) {
      const std::size_t v = var(rng);
      m.set(v, m[v] + 1);
    }
    p.add_term(m, random_rational(rng));
  }
  return p;
}

PolyMap random_near_identity(Rng& rng, std::size_t n, int min_degree, int max_degree, std::size_t terms) {
  if (min_degree < 2) throw InputError("near-identity perturbations start at degree 2");
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < n; ++i)
    comps.push_back(Polynomial::variable(n, i) + random_polynomial(rng, n, min_degree, max_degree, terms));
  return PolyMap(std::move(comps), MapRole::CoordinateChange);
}

}  // namespace levinf
