#include "tginv/fixtures.hpp"

namespace tginv::fixtures {

namespace {

Tensor cube(Index n, std::initializer_list<double> entries) {
  VectorXc e(static_cast<Index>(entries.size()));
  Index i = 0;
  for (double v : entries) e[i++] = v;
  return Tensor(Shape::square(3, n), std::move(e));
}

}  // namespace

Tensor ex41_A() {
  return cube(3, {1,  2, 3, 2, 4, 6, 3,  6,  9,    //
                  16, 8, 4, 8, 4, 2, 4,  2,  1,    //
                  4,  6, 8, 6, 9, 12, 8, 12, 16});
}

Tensor ex41_B_printed() {
  return cube(3, {5,   -5, 0, 5,  1,  0, 0, 0, -4,  //
                  -14, 14, 0, 14, -2, 0, 0, 0, 11,  //
                  8,   -8, 0, 8,  1,  0, 0, 0, -6});
}

Tensor ex41_Bfix() {
  return cube(3, {5,   -5, 0, 5,   1,  0, 0, 0, -4,  //
                  -14, 14, 0, -14, -2, 0, 0, 0, 11,  //
                  8,   -8, 0, 8,   1,  0, 0, 0, -6});
}

MatrixXc ex41_M() {
  MatrixXc m(3, 3);
  m << 5, 1, -4, -14, -2, 11, 8, 1, -6;
  return m;
}

Tensor ex42_A() { return cube(2, {25, -15, -15, 9, 100, -60, -60, 36}); }

Tensor ex42_B() { return cube(2, {9, -6, -6, 4, 36, -24, -24, 16}); }

std::vector<std::pair<std::string, Tensor>> all() {
  std::vector<std::pair<std::string, Tensor>> out = {
      {"ex41_A", ex41_A()},   {"ex41_B_printed", ex41_B_printed()}, {"ex41_Bfix", ex41_Bfix()},
      {"ex42_A", ex42_A()},   {"ex42_B", ex42_B()},
  };
  for (int t : {2, 3, 4}) {
    for (Index n : {2, 3}) {
      out.emplace_back("unit_t" + std::to_string(t) + "_n" + std::to_string(n), unit_tensor(t, n));
    }
  }
  out.emplace_back("diag_t3_4_0", diagonal_tensor(3, VectorXc{{4.0, 0.0}}));
  out.emplace_back("diag_t3_1_1_0", diagonal_tensor(3, VectorXc{{1.0, 1.0, 0.0}}));
  out.emplace_back("diag_t3_m1", diagonal_tensor(3, VectorXc{{-1.0}}));
  out.emplace_back("diag_t3_1_0", diagonal_tensor(3, VectorXc{{1.0, 0.0}}));
  return out;
}

}  // namespace tginv::fixtures
