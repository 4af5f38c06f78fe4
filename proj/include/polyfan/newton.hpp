#pragma once

// Polynomials over Q or F_p with a designated variable z: ord/in/ps calculus,
// Newton polyhedra, z-Weierstrass and z-simple classification, z-removable
// faces and the substitution loop that clears them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyfan/error.hpp"
#include "polyfan/polyhedron.hpp"

namespace polyfan {

struct Field {
    unsigned long characteristic = 0;  // 0 or a prime

    static Field rationals() { return {}; }
    static Field prime(unsigned long p);  // throws ParseError unless p is prime
    // Canonical representative: itself over Q, the residue in [0, p) over F_p.
    Rational reduce(const Rational& c) const;
    Rational inverse(const Rational& c) const;
    std::string str() const;
    friend bool operator==(const Field&, const Field&) = default;
};

using Exponent = std::vector<long>;

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(Field f, std::vector<std::string> vars, std::size_t z);

    static Polynomial constant(const Polynomial& like, const Rational& c);
    static Polynomial monomial(const Polynomial& like, const Exponent& e, const Rational& c = 1);
    static Polynomial variable(const Polynomial& like, std::size_t i);

    const Field& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t z_index() const { return z_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    Rational coefficient(const Exponent& e) const;
    void add_term(const Exponent& e, const Rational& c);
    std::vector<LatticeVector> support() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned long k) const;
    // Coefficient of z^d as a polynomial without z.
    Polynomial z_coefficient(long d) const;
    long z_degree() const;
    // Divides every exponent by the monomial e; throws Internal if some term is not divisible.
    Polynomial divide_monomial(const Exponent& e) const;
    // z -> z + s, where s does not involve z.
    Polynomial shift_z(const Polynomial& s) const;
    bool involves_z() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Terms by descending z-degree, then descending exponent; "0" for zero.
    std::string str() const;

private:
    void check_compatible(const Polynomial& o) const;
    Field field_;
    std::vector<std::string> vars_;
    std::size_t z_ = 0;
    std::map<Exponent, Rational> terms_;  // no zero coefficients
};

// Text syntax: sums of products of rational numbers, variables and parenthesized
// groups, with nonnegative integer powers. Variables are the non-z names in sorted
// order followed by z; "x" is added when z would otherwise be alone.
Polynomial parse_polynomial(const std::string& text, const Field& field = {}, const std::string& z = "z");
Polynomial polynomial_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Polynomial& p);

struct OrdIn {
    std::optional<Rational> ord;  // nullopt is ∞
    Polynomial in;
};
// Throws NegativeWeight unless every coordinate of ω is ≥ 0.
OrdIn ord_in(const RationalVector& omega, const Polynomial& phi);
Polynomial partial_sum(const PseudoPolyhedron& face, const Polynomial& phi);
Polynomial partial_sum(const std::vector<LatticeVector>& exponents, const Polynomial& phi);
// conv(supp φ) + positive orthant. Throws ZeroPolynomial.
PseudoPolyhedron newton_polyhedron(const Polynomial& phi);

struct RemovableFace {
    PseudoPolyhedron face;
    LatticeVector witness;  // weight whose initial face is this face
    std::size_t dim = 0;
    Rational unit;          // ps = unit · z^b · x^{a₁'} · (z + χ)^h
    Polynomial chi;
};

struct ZReport {
    bool weierstrass = false;
    Int b = 0;
    Int h = 0;
    std::optional<LatticeVector> top_vertex;
    bool z_simple = false;
    std::vector<LatticeVector> skeleton;
    std::vector<RemovableFace> removable;
};

// Throws ZeroPolynomial, TooFewVariables.
ZReport z_report(const Polynomial& phi);
// Throws NotWeierstrass, HeightZero.
std::vector<RemovableFace> z_removable_faces(const Polynomial& psi);
// Slope form of the z-simplicity test on a z-Weierstrass Newton polyhedron's vertices.
bool z_simple_by_slopes(const std::vector<LatticeVector>& vertices, std::size_t z);

struct EliminationStep {
    LatticeVector witness;
    Polynomial chi;
    LatticeVector c;  // exponent of the single term of χ
    Int weight;       // ⟨δ̄₀, c⟩, the total x-degree of χ
};

struct EliminationResult {
    Polynomial chi_bar;  // accumulated; the result is ψ(z − χ̄)
    Polynomial result;
    std::vector<EliminationStep> steps;
};

class IterationCapError : public Error {
public:
    IterationCapError(std::string msg, EliminationResult partial)
        : Error(ErrorKind::IterationCapExceeded, std::move(msg)), partial_(std::move(partial)) {}
    const EliminationResult& partial() const { return partial_; }

private:
    EliminationResult partial_;
};

// Repeatedly substitutes z -> z − χ(F) for the dimension-one removable face F of
// least ⟨δ̄₀, c(F)⟩ (ties by c lex). Throws NotWeierstrass or IterationCapError.
EliminationResult eliminate_removable(const Polynomial& psi, std::size_t max_iter = 64);

}  // namespace polyfan
