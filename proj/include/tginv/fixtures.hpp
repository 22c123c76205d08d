#pragma once

// Worked-example tensors. Each 3 x 3 x 3 (or 2 x 2 x 2) tensor is listed slice by slice:
// slice i holds a_{i, :, :}.

#include <string>
#include <utility>
#include <vector>

#include "tginv/tensor.hpp"

namespace tginv::fixtures {

/// sum_i e_i (x) alpha_i (x) alpha_i with alpha = (1,2,3), (4,2,1), (2,3,4).
Tensor ex41_A();
/// The inverse as printed; its slice-2 cross pair (14, 14) does not cancel.
Tensor ex41_B_printed();
/// ex41_B_printed with b_{221} = -14, so X . w^2 = M w^[2] for M = (alpha^T)^-1.
Tensor ex41_Bfix();
/// M = [[5,1,-4],[-14,-2,11],[8,1,-6]], the inverse of the transposed alpha matrix.
MatrixXc ex41_M();
/// (u^2, 4u^2) with u = 5 y1 - 3 y2.
Tensor ex42_A();
/// (u^2, 4u^2) with u = 3 y1 - 2 y2.
Tensor ex42_B();

/// Every bundled tensor, by file stem.
std::vector<std::pair<std::string, Tensor>> all();

}  // namespace tginv::fixtures
