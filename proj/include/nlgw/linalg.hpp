#pragma once

#include "nlgw/rational.hpp"

#include <vector>

namespace nlgw {

// Dense exact matrices, row major.
using RMatrix = std::vector<std::vector<Rational>>;
using RVector = std::vector<Rational>;

struct Echelon {
    RMatrix rows;               // reduced row echelon form, zero rows removed
    std::vector<size_t> pivots; // pivot column of each row
};

Echelon rref(RMatrix m);
size_t rank(const RMatrix& m);
Rational determinant(RMatrix m);
// Basis of {x : m x = 0}.
std::vector<RVector> nullspace(const RMatrix& m, size_t ncols);
RMatrix transpose(const RMatrix& m);

struct SolveResult {
    bool consistent = false;
    bool unique = false;
    RVector x;  // a particular solution when consistent
    size_t rank = 0;
};
// Solve a x = b.
SolveResult solve(const RMatrix& a, const RVector& b, size_t ncols);

}  // namespace nlgw
