#include <doctest.h>

#include "catalog.hpp"
#include "levinf/error.hpp"
#include "levinf/random.hpp"
#include "oracle.hpp"

using namespace levinf;
using namespace testsupport;

namespace {

DenseMatrix random_invertible(Rng& rng, std::size_t n) {
  while (true) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rng() % 2) m(i, j) = random_rational(rng, 3, 2);
    if (!determinant(m).is_zero()) return m;
  }
}

bool solvable(const StructureConstants& c) {
  // derived series of the whole algebra reaches 0
  DenseMatrix span = DenseMatrix::identity(c.dim());
  for (std::size_t step = 0; step <= c.dim(); ++step) {
    if (span.cols() == 0) return true;
    DenseMatrix next(c.dim(), span.cols() * span.cols());
    for (std::size_t a = 0; a < span.cols(); ++a)
      for (std::size_t b = 0; b < span.cols(); ++b) {
        const Vector v = c.bracket(span.column(a), span.column(b));
        for (std::size_t k = 0; k < c.dim(); ++k) next(k, a * span.cols() + b) = v[k];
      }
    const auto ech = row_reduce(next);
    DenseMatrix basis(c.dim(), ech.pivots.size());
    for (std::size_t p = 0; p < ech.pivots.size(); ++p)
      for (std::size_t k = 0; k < c.dim(); ++k) basis(k, p) = next(k, ech.pivots[p]);
    if (basis.cols() == span.cols()) return false;
    span = basis;
  }
  return span.cols() == 0;
}

}  // namespace

TEST_CASE("validation of Levi input") {
  CHECK(validate_levi_input(sl2_data()).ok());
  CHECK(validate_levi_input(sl2_k2_data()).ok());
  CHECK(validate_levi_input(so3_data()).ok());

  StructureConstants sym(3);
  sym(0, 1, 2) = 1;
  sym(1, 0, 2) = 1;
  const auto r1 = validate_levi_input(LeviAlgebraData(3, sym));
  REQUIRE_FALSE(r1.ok());
  CHECK(r1.violations.front().find("antisymmetr") != std::string::npos);

  const auto r2 = validate_levi_input(LeviAlgebraData(1, StructureConstants(1)));
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.violations.front().find("not semisimple") != std::string::npos);

  StructureConstants bad(3);
  bad.set_bracket(0, 1, 2, 1);
  bad.set_bracket(2, 0, 0, 1);
  CHECK_FALSE(bad.jacobi_violation().empty());
  CHECK_FALSE(validate_levi_input(LeviAlgebraData(0, bad)).ok());
}

TEST_CASE("Killing form against the trace oracle") {
  const DenseMatrix k = killing_form(sl2());
  CHECK(k == ref_killing(sl2()));
  CHECK(k(0, 0) == Scalar(8));
  CHECK(k(1, 2) == Scalar(4));
  CHECK(k(2, 1) == Scalar(4));
  CHECK(k(0, 1).is_zero());
  CHECK(k(1, 1).is_zero());

  const DenseMatrix ks = killing_form(so3_data().full);
  CHECK(ks == ref_killing(so3_data().full));
  DenseMatrix minus2(3, 3);
  for (std::size_t i = 0; i < 3; ++i) minus2(i, i) = -2;
  CHECK(ks == minus2);
  CHECK(killing_form(StructureConstants(4)) == DenseMatrix(4, 4));
  CHECK(killing_form(sl2_k2_data().full) == ref_killing(sl2_k2_data().full));
  CHECK(killing_form(sl2_k2_data().full) == killing_form(sl2_k2_data().full).transpose());
}

TEST_CASE("Casimir element on modules") {
  const CasimirElement g = casimir(sl2());
  // natural module: h = diag(1,-1), e = E12, f = E21
  std::vector<SparseMatrix> rho;
  rho.push_back(SparseMatrix::from_triplets(2, 2, {{0, 0, Scalar(1)}, {1, 1, Scalar(-1)}}));
  rho.push_back(SparseMatrix::from_triplets(2, 2, {{0, 1, Scalar(1)}}));
  rho.push_back(SparseMatrix::from_triplets(2, 2, {{1, 0, Scalar(1)}}));
  const SparseMatrix c = casimir_operator(g, rho);
  DenseMatrix expect(2, 2);
  expect(0, 0) = Scalar::ratio(3, 8);
  expect(1, 1) = Scalar::ratio(3, 8);
  CHECK(c.to_dense() == expect);
  std::vector<SparseMatrix> trivial(3, SparseMatrix(1, 1));
  CHECK(casimir_operator(g, trivial).is_zero());
  CHECK_THROWS_AS(casimir(heisenberg()), DomainError);
}

TEST_CASE("Levi-Malcev split of split and scrambled algebras") {
  const LeviSplit same = levi_malcev_split(sl2_k2_data().full);
  CHECK(same.basis == DenseMatrix::identity(5));
  CHECK(same.data == sl2_k2_data());

  StructureConstants solv(2);
  solv.set_bracket(0, 1, 1, 1);
  const LeviSplit s2 = levi_malcev_split(solv);
  CHECK(s2.data.m == 0);

  // sl(2) + K, and sl(2) x K^2, in scrambled bases
  StructureConstants sum(4);
  sum.set_bracket(0, 1, 1, 2);
  sum.set_bracket(0, 2, 2, -2);
  sum.set_bracket(1, 2, 0, 1);
  Rng rng(12);
  for (const StructureConstants& l : {sum, sl2_k2_data().full}) {
    for (int t = 0; t < 3; ++t) {
      const DenseMatrix p = random_invertible(rng, l.dim());
      const StructureConstants scrambled = l.change_basis(p);
      const LeviSplit split = levi_malcev_split(scrambled);
      CHECK(split.data.m == 3);
      CHECK(validate_levi_input(split.data).ok());
      CHECK(scrambled.change_basis(split.basis) == split.data.full);
      CHECK_FALSE(determinant(killing_form(split.data.levi_factor())).is_zero());
      StructureConstants radical(l.dim() - 3);
      for (std::size_t i = 0; i < radical.dim(); ++i)
        for (std::size_t j = 0; j < radical.dim(); ++j)
          for (std::size_t k = 0; k < radical.dim(); ++k) radical(i, j, k) = split.data.b(i, j, k);
      CHECK(solvable(radical));
    }
  }
}
