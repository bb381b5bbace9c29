#include "zdense/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zdense {

std::vector<std::size_t> rref(Matrix<Rational>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

std::size_t rank(Matrix<Rational> rows) { return rref(rows).size(); }

Matrix<Rational> nullspace(Matrix<Rational> rows, std::size_t cols) {
    auto pivots = rref(rows);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Matrix<Rational> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix<Rational> left_kernel(const Matrix<Rational>& m) {
    if (m.empty()) return {};
    const std::size_t r = m.size(), c = m.front().size();
    Matrix<Rational> t(c, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
    return nullspace(std::move(t), r);
}

bool in_row_space(const Matrix<Rational>& rows, const std::vector<Rational>& v) {
    Matrix<Rational> extended = rows;
    std::size_t before = rank(rows);
    extended.push_back(v);
    return rank(std::move(extended)) == before;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::domain_error("inverse of zero mod p");
    return powmod(a, p - 2, p);
}

std::vector<std::size_t> rref_mod_p(Matrix<std::uint64_t>& rows, std::uint64_t p) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] % p == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        std::uint64_t inv = invmod(rows[r][c], p);
        for (auto& x : rows[r]) x = mulmod(x, inv, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            std::uint64_t f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                rows[i][j] = (rows[i][j] + p - mulmod(f, rows[r][j], p)) % p;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

Matrix<std::uint64_t> nullspace_mod_p(Matrix<std::uint64_t> rows, std::size_t cols,
                                      std::uint64_t p) {
    auto pivots = rref_mod_p(rows, p);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Matrix<std::uint64_t> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint64_t> v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - rows[i][free]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t complex_rank(Matrix<std::complex<double>> rows, double rel_tol) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    double scale = 0;
    for (const auto& row : rows)
        for (const auto& x : row) scale = std::max(scale, std::abs(x));
    if (scale == 0) return 0;
    const double tol = rel_tol * scale;
    std::size_t r = 0;
    std::vector<bool> used_col(cols, false);
    while (r < rows.size()) {
        double best = 0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = r; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (!used_col[j] && std::abs(rows[i][j]) > best) {
                    best = std::abs(rows[i][j]);
                    bi = i;
                    bj = j;
                }
        if (best <= tol) break;
        std::swap(rows[r], rows[bi]);
        used_col[bj] = true;
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            auto f = rows[i][bj] / rows[r][bj];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

std::size_t real_rank(Matrix<Real> rows, const Real& margin) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    std::vector<bool> used_col(cols, false);
    while (r < rows.size()) {
        Real best = 0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = r; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (!used_col[j] && abs(rows[i][j]) > best) {
                    best = abs(rows[i][j]);
                    bi = i;
                    bj = j;
                }
        if (best <= margin) break;
        std::swap(rows[r], rows[bi]);
        used_col[bj] = true;
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            Real f = rows[i][bj] / rows[r][bj];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace zdense
