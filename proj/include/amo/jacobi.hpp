#pragma once

#include <vector>

namespace amo {

// Eigenvalues of a dense symmetric n x n matrix (row-major, only used for
// n <= ~800) by cyclic Jacobi rotations.  Ascending order.  Serves as the
// independent counting oracle for the IDS; deliberately not backed by any
// external linear-algebra package.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

}  // namespace amo
