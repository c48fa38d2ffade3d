#ifndef QELLR_LINALG_HPP
#define QELLR_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace qellr {

using IntMatrix = std::vector<std::vector<int64_t>>;

// Smith-type diagonalisation over Z/m: U*A*V = diag(d), U and V invertible mod m.
struct ModSmith {
    int64_t modulus = 1;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<int64_t> diag;  // length = number of pivots
    IntMatrix V;                // cols x cols
};

ModSmith mod_smith(IntMatrix A, int64_t m, std::vector<int64_t>* rhs = nullptr);

// Solve A x = b over Z/m; empty if unsolvable.
std::optional<std::vector<int64_t>> solve_mod(const IntMatrix& A, const std::vector<int64_t>& b, int64_t m);

// Generators of the kernel of A over Z/m (A has the given number of columns).
std::vector<std::vector<int64_t>> kernel_mod(const IntMatrix& A, size_t cols, int64_t m);

// Invariant factors of an integer matrix (nonzero ones, in divisibility order).
std::vector<int64_t> integer_invariant_factors(IntMatrix A);

// Rank of an integer matrix over Q.
size_t rational_rank(const IntMatrix& A);

}  // namespace qellr

#endif
