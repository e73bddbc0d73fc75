#pragma once

#include <vector>

#include "circ/scalar.hpp"

namespace circ {

using Matrix = std::vector<std::vector<Scalar>>;

// Rank of a matrix over the exact scalar field. Fraction-free (Bareiss)
// elimination; purely rational matrices take an integer path where each row is
// cleared of denominators first (row scaling leaves the rank unchanged) and
// every division is an exact integer division. No floating point is involved
// at any stage.
int exact_rank(Matrix m);

}  // namespace circ
