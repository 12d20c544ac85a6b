#include "catalog.hpp"

namespace testsupport {

StructureConstants sl2() {
  StructureConstants c(3);
  c.set_bracket(0, 1, 1, 2);
  c.set_bracket(0, 2, 2, -2);
  c.set_bracket(1, 2, 0, 1);
  return c;
}

LeviAlgebraData sl2_data() { return LeviAlgebraData(3, sl2()); }

LeviAlgebraData sl2_k2_data() {
  StructureConstants c(5);
  c.set_bracket(0, 1, 1, 2);
  c.set_bracket(0, 2, 2, -2);
  c.set_bracket(1, 2, 0, 1);
  c.set_bracket(0, 3, 3, 1);
  c.set_bracket(0, 4, 4, -1);
  c.set_bracket(1, 4, 3, 1);
  c.set_bracket(2, 3, 4, 1);
  return LeviAlgebraData(3, c);
}

LeviAlgebraData so3_data() {
  StructureConstants c(3);
  c.set_bracket(0, 1, 2, 1);
  c.set_bracket(1, 2, 0, 1);
  c.set_bracket(2, 0, 1, 1);
  return LeviAlgebraData(3, c);
}

LeviAlgebraData sl2_sl2_data() {
  StructureConstants c(6);
  for (std::size_t o : {0u, 3u}) {
    c.set_bracket(o, o + 1, o + 1, 2);
    c.set_bracket(o, o + 2, o + 2, -2);
    c.set_bracket(o + 1, o + 2, o, 1);
  }
  return LeviAlgebraData(6, c);
}

StructureConstants heisenberg() {
  StructureConstants c(3);
  c.set_bracket(0, 1, 2, 1);
  return c;
}

std::vector<DenseMatrix> sl2_standard_anchor() {
  std::vector<DenseMatrix> b(3, DenseMatrix(2, 2));
  b[0](0, 0) = 1;
  b[0](1, 1) = -1;
  b[1](1, 0) = 1;
  b[2](0, 1) = 1;
  return b;
}

AlgebroidData sl2_action_algebroid(int max_degree) {
  return action_algebroid(sl2(), sl2_standard_anchor(), max_degree);
}

AlgebroidData sl2_k2_action_algebroid(int max_degree) {
  std::vector<DenseMatrix> b = sl2_standard_anchor();
  b.resize(5, DenseMatrix(2, 2));
  return action_algebroid(sl2_k2_data().full, b, max_degree);
}

}  // namespace testsupport
