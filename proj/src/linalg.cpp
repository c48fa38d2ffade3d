#include "qellr/linalg.hpp"

#include <numeric>
#include <stdexcept>

#include "qellr/rational.hpp"

namespace qellr {

namespace {

// g = x*a + y*b with g = gcd(a, b) >= 0
int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        int64_t q = a / b;
        int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    if (m < (int64_t(1) << 31) && a >= 0 && b >= 0 && a < m && b < m) return a * b % m;
    return static_cast<int64_t>(((__int128)a * b) % m);
}

}  // namespace

ModSmith mod_smith(IntMatrix A, int64_t m, std::vector<int64_t>* rhs) {
    ModSmith res;
    res.modulus = m;
    res.rows = A.size();
    res.cols = res.rows ? A[0].size() : 0;
    size_t R = res.rows, C = res.cols;
    for (auto& row : A)
        for (auto& v : row) v = mod(v, m);
    if (rhs)
        for (auto& v : *rhs) v = mod(v, m);
    res.V.assign(C, std::vector<int64_t>(C, 0));
    for (size_t i = 0; i < C; ++i) res.V[i][i] = 1 % m;

    auto row_combine = [&](size_t r1, size_t r2, int64_t a, int64_t b, int64_t c, int64_t d) {
        // r1 <- a r1 + b r2 ; r2 <- c r1 + d r2
        for (size_t j = 0; j < C; ++j) {
            int64_t u = A[r1][j], v = A[r2][j];
            if (u == 0 && v == 0) continue;
            A[r1][j] = mod(mulmod(a, u, m) + mulmod(b, v, m), m);
            A[r2][j] = mod(mulmod(c, u, m) + mulmod(d, v, m), m);
        }
        if (rhs) {
            int64_t u = (*rhs)[r1], v = (*rhs)[r2];
            (*rhs)[r1] = mod(mulmod(a, u, m) + mulmod(b, v, m), m);
            (*rhs)[r2] = mod(mulmod(c, u, m) + mulmod(d, v, m), m);
        }
    };
    auto col_combine = [&](size_t c1, size_t c2, int64_t a, int64_t b, int64_t c, int64_t d) {
        // c1 <- a c1 + b c2 ; c2 <- c c1 + d c2
        for (size_t i = 0; i < R; ++i) {
            int64_t u = A[i][c1], v = A[i][c2];
            if (u == 0 && v == 0) continue;
            A[i][c1] = mod(mulmod(a, u, m) + mulmod(b, v, m), m);
            A[i][c2] = mod(mulmod(c, u, m) + mulmod(d, v, m), m);
        }
        for (size_t i = 0; i < C; ++i) {
            int64_t u = res.V[i][c1], v = res.V[i][c2];
            res.V[i][c1] = mod(mulmod(a, u, m) + mulmod(b, v, m), m);
            res.V[i][c2] = mod(mulmod(c, u, m) + mulmod(d, v, m), m);
        }
    };

    size_t t = 0;
    while (t < R && t < C) {
        // pivot: entry with smallest gcd with m
        size_t pr = R, pc = C;
        int64_t best = m + 1;
        for (size_t i = t; i < R && best > 1; ++i)
            for (size_t j = t; j < C; ++j) {
                if (A[i][j] == 0) continue;
                int64_t g = std::gcd(A[i][j], m);
                if (g < best) {
                    best = g;
                    pr = i;
                    pc = j;
                    if (g == 1) break;
                }
            }
        if (pr == R) break;
        if (pr != t) {
            std::swap(A[pr], A[t]);
            if (rhs) std::swap((*rhs)[pr], (*rhs)[t]);
        }
        if (pc != t) col_combine(pc, t, 0, 1, 1, 0);
        if (best == 1) {
            // unit pivot: normalise, clear the column by row ops, then the row by column ops
            int64_t x, y;
            ext_gcd(A[t][t], m, x, y);
            int64_t inv = mod(x, m);
            std::vector<size_t> nz;
            for (size_t j = t; j < C; ++j)
                if (A[t][j] != 0) {
                    A[t][j] = mulmod(A[t][j], inv, m);
                    nz.push_back(j);
                }
            if (rhs) (*rhs)[t] = mulmod((*rhs)[t], inv, m);
            for (size_t i = t + 1; i < R; ++i) {
                int64_t f = A[i][t];
                if (f == 0) continue;
                int64_t nf = m - f;
                for (size_t j : nz) A[i][j] = (A[i][j] + mulmod(nf, A[t][j], m)) % m;
                if (rhs) (*rhs)[i] = ((*rhs)[i] + mulmod(nf, (*rhs)[t], m)) % m;
            }
            for (size_t j : nz) {
                if (j == t) continue;
                int64_t nf = m - A[t][j];
                for (size_t i = 0; i < C; ++i)
                    if (res.V[i][t] != 0) res.V[i][j] = (res.V[i][j] + mulmod(nf, res.V[i][t], m)) % m;
                A[t][j] = 0;
            }
            res.diag.push_back(1 % m);
            ++t;
            continue;
        }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < R; ++i) {
                if (A[i][t] == 0) continue;
                int64_t a = A[t][t], b = A[i][t], x, y;
                int64_t g = ext_gcd(a, b, x, y);
                row_combine(t, i, mod(x, m), mod(y, m), mod(-(b / g), m), mod(a / g, m));
            }
            for (size_t j = t + 1; j < C; ++j) {
                if (A[t][j] == 0) continue;
                int64_t a = A[t][t], b = A[t][j], x, y;
                int64_t g = ext_gcd(a, b, x, y);
                col_combine(t, j, mod(x, m), mod(y, m), mod(-(b / g), m), mod(a / g, m));
                dirty = true;
            }
            if (dirty) {
                dirty = false;
                for (size_t i = t + 1; i < R; ++i)
                    if (A[i][t] != 0) dirty = true;
            }
        }
        res.diag.push_back(A[t][t]);
        ++t;
    }
    return res;
}

std::optional<std::vector<int64_t>> solve_mod(const IntMatrix& A, const std::vector<int64_t>& b, int64_t m) {
    std::vector<int64_t> c = b;
    ModSmith s = mod_smith(A, m, &c);
    std::vector<int64_t> y(s.cols, 0);
    for (size_t i = 0; i < s.rows; ++i) {
        if (i < s.diag.size()) {
            int64_t d = s.diag[i];
            int64_t g = std::gcd(d, m);
            if (c[i] % g != 0) return std::nullopt;
            int64_t mg = m / g, x, yy;
            ext_gcd(mod(d / g, mg), mg, x, yy);
            y[i] = mod(mulmod(mod(c[i] / g, mg), mod(x, mg), mg), m);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<int64_t> x(s.cols, 0);
    for (size_t i = 0; i < s.cols; ++i) {
        int64_t acc = 0;
        for (size_t j = 0; j < s.cols; ++j) acc = mod(acc + mulmod(s.V[i][j], y[j], m), m);
        x[i] = acc;
    }
    return x;
}

std::vector<std::vector<int64_t>> kernel_mod(const IntMatrix& A, size_t cols, int64_t m) {
    IntMatrix B = A;
    if (B.empty()) B.push_back(std::vector<int64_t>(cols, 0));
    ModSmith s = mod_smith(B, m);
    std::vector<std::vector<int64_t>> gens;
    for (size_t j = 0; j < cols; ++j) {
        int64_t scale = 1;
        if (j < s.diag.size()) scale = m / std::gcd(s.diag[j], m);
        if (scale % m == 0) continue;
        std::vector<int64_t> v(cols);
        for (size_t i = 0; i < cols; ++i) v[i] = mod(mulmod(s.V[i][j], scale, m), m);
        gens.push_back(v);
    }
    return gens;
}

std::vector<int64_t> integer_invariant_factors(IntMatrix A) {
    size_t R = A.size(), C = R ? A[0].size() : 0;
    std::vector<int64_t> d;
    size_t t = 0;
    auto check = [](__int128 v) {
        if (v > INT64_MAX || v < -INT64_MAX) throw std::overflow_error("integer Smith form overflow");
        return static_cast<int64_t>(v);
    };
    while (t < R && t < C) {
        size_t pr = R, pc = C;
        int64_t best = 0;
        for (size_t i = t; i < R; ++i)
            for (size_t j = t; j < C; ++j) {
                int64_t v = A[i][j] < 0 ? -A[i][j] : A[i][j];
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr == R) break;
        std::swap(A[pr], A[t]);
        for (auto& row : A) std::swap(row[pc], row[t]);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < R; ++i) {
                if (A[i][t] == 0) continue;
                int64_t a = A[t][t], b = A[i][t], x, y;
                if (b % a == 0) {
                    int64_t q = b / a;
                    for (size_t j = 0; j < C; ++j) A[i][j] = check(A[i][j] - (__int128)q * A[t][j]);
                    continue;
                }
                int64_t g = ext_gcd(a, b, x, y);
                int64_t c1 = -(b / g), c2 = a / g;
                for (size_t j = 0; j < C; ++j) {
                    int64_t u = A[t][j], v = A[i][j];
                    A[t][j] = check((__int128)x * u + (__int128)y * v);
                    A[i][j] = check((__int128)c1 * u + (__int128)c2 * v);
                }
            }
            for (size_t j = t + 1; j < C; ++j) {
                if (A[t][j] == 0) continue;
                int64_t a = A[t][t], b = A[t][j], x, y;
                if (b % a == 0) {
                    int64_t q = b / a;
                    for (size_t i = 0; i < R; ++i) A[i][j] = check(A[i][j] - (__int128)q * A[i][t]);
                    continue;
                }
                int64_t g = ext_gcd(a, b, x, y);
                int64_t c1 = -(b / g), c2 = a / g;
                for (size_t i = 0; i < R; ++i) {
                    int64_t u = A[i][t], v = A[i][j];
                    A[i][t] = check((__int128)x * u + (__int128)y * v);
                    A[i][j] = check((__int128)c1 * u + (__int128)c2 * v);
                }
                dirty = true;
            }
            for (size_t i = t + 1; i < R && !dirty; ++i)
                if (A[i][t] != 0) dirty = true;
        }
        d.push_back(A[t][t] < 0 ? -A[t][t] : A[t][t]);
        ++t;
    }
    // enforce divisibility chain
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) {
            int64_t g = std::gcd(d[i], d[j]);
            int64_t l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    return d;
}

size_t rational_rank(const IntMatrix& A) {
    std::vector<std::vector<Rational>> M;
    for (const auto& row : A) {
        std::vector<Rational> r;
        for (auto v : row) r.emplace_back(v);
        M.push_back(r);
    }
    size_t R = M.size(), C = R ? M[0].size() : 0, rank = 0;
    for (size_t j = 0; j < C && rank < R; ++j) {
        size_t p = rank;
        while (p < R && M[p][j].is_zero()) ++p;
        if (p == R) continue;
        std::swap(M[p], M[rank]);
        for (size_t i = rank + 1; i < R; ++i) {
            if (M[i][j].is_zero()) continue;
            Rational f = M[i][j] / M[rank][j];
            for (size_t k = j; k < C; ++k) M[i][k] -= f * M[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace qellr
