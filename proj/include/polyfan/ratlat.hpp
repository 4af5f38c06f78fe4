#pragma once

// Exact integer and rational linear algebra. Everything above this layer is
// built on these dense vectors; ambient dimensions are small, so no sparse or
// floating-point paths exist.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace polyfan {

using Int = mpz_class;
using Rational = mpq_class;
using LatticeVector = std::vector<Int>;
using RationalVector = std::vector<Rational>;
using IntegerMatrix = std::vector<LatticeVector>;  // row-major, rows of equal length
using RationalMatrix = std::vector<RationalVector>;

LatticeVector zero_lattice(std::size_t n);
LatticeVector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const LatticeVector& v);
bool is_zero(const RationalVector& v);

RationalVector to_rational(const LatticeVector& v);
// Integral vector on the same ray as v (clears denominators, then primitive).
// The zero vector maps to the zero vector.
LatticeVector scale_to_primitive(const RationalVector& v);
// v / gcd(v). Throws ZeroVector on 0.
LatticeVector primitive(const LatticeVector& v);

Int dot(const LatticeVector& a, const LatticeVector& b);
Rational dot(const LatticeVector& a, const RationalVector& b);
Rational dot(const RationalVector& a, const LatticeVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);

LatticeVector add(const LatticeVector& a, const LatticeVector& b);
LatticeVector sub(const LatticeVector& a, const LatticeVector& b);
LatticeVector neg(const LatticeVector& a);
LatticeVector scale(const Int& k, const LatticeVector& a);
RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector sub(const RationalVector& a, const RationalVector& b);
RationalVector scale(const Rational& k, const RationalVector& a);

struct SmithForm {
    std::vector<Int> divisors;  // nonzero elementary divisors d1 | d2 | ...
    IntegerMatrix left;         // unimodular, rows x rows
    IntegerMatrix right;        // unimodular, cols x cols
    IntegerMatrix diagonal;     // left * M * right
};

SmithForm smith_normal_form(const IntegerMatrix& m, std::size_t cols);
inline SmithForm smith_normal_form(const IntegerMatrix& m) {
    return smith_normal_form(m, m.empty() ? 0 : m.front().size());
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);
Int determinant(const IntegerMatrix& m);

// Rows are linearly independent and extend to a Z-basis of Z^n.
bool spans_saturated_basis(const IntegerMatrix& rows);

std::size_t rank(const RationalMatrix& m);
std::size_t rank(const IntegerMatrix& m);
// Reduced row echelon form with zero rows dropped.
RationalMatrix rref(RationalMatrix m);
// Canonical basis of the row space: rref rows scaled to primitive integers.
IntegerMatrix canonical_row_basis(const IntegerMatrix& rows, std::size_t n);
// Basis of {x : m x = 0}, canonical (rref-derived, primitive rows).
IntegerMatrix kernel(const IntegerMatrix& m, std::size_t n);
// Z-basis of the lattice {x in Z^n : m x = 0}.
IntegerMatrix integer_kernel(const IntegerMatrix& m, std::size_t n);

std::optional<RationalVector> solve_rational(const RationalMatrix& a, const RationalVector& b);

// Orthogonal projection of v onto the complement of span(basis).
RationalVector project_out(const RationalVector& v, const IntegerMatrix& basis);

Int lcm_of_denominators(const RationalVector& v);

std::string to_string(const LatticeVector& v);
std::string to_string(const RationalVector& v);

}  // namespace polyfan
