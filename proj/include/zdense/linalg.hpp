#pragma once

#include "zdense/numeric.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace zdense {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Reduced row echelon form over Q. Returns the pivot columns.
std::vector<std::size_t> rref(Matrix<Rational>& rows);

std::size_t rank(Matrix<Rational> rows);

/// Basis of {x : rows * x = 0}; `cols` is needed when `rows` is empty.
Matrix<Rational> nullspace(Matrix<Rational> rows, std::size_t cols);

/// Basis (as rows) of the left kernel {y : y^T * m = 0}.
Matrix<Rational> left_kernel(const Matrix<Rational>& m);

/// Row-space membership over Q.
bool in_row_space(const Matrix<Rational>& rows, const std::vector<Rational>& v);

/// Arithmetic in Z/pZ with 64-bit p.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

std::vector<std::size_t> rref_mod_p(Matrix<std::uint64_t>& rows, std::uint64_t p);
Matrix<std::uint64_t> nullspace_mod_p(Matrix<std::uint64_t> rows, std::size_t cols,
                                      std::uint64_t p);

/// Numerical rank over C using complete pivoting with absolute tolerance
/// scaled by the largest entry.
std::size_t complex_rank(Matrix<std::complex<double>> rows, double rel_tol = 1e-9);

/// Numerical rank of a real high-precision matrix with explicit pivot margin.
std::size_t real_rank(Matrix<Real> rows, const Real& margin);

}  // namespace zdense
