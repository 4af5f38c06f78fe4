#pragma once

// H-simple fans and their structure constants, heights and strata of a triple
// (H, C, S), the characteristic function γ with its compatible mapping, the
// recursive upward subdivision, and checks of both height inequalities.
//
// Conventions: H is a ray of C, C lives in the dual space of S, and b_X is the
// primitive generator of a ray X. floor/ceil have their usual meaning.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyfan/fan.hpp"
#include "polyfan/polyhedron.hpp"
#include "polyfan/subdivide.hpp"

namespace polyfan {

// dim Δ ≥ dim D − 1 for every Δ whose relative interior lies in that of |D|.
// The H-variants need |D| simplicial with H one of its rays. Throws BadSupport.
bool is_semisimple(const Fan& d);
bool is_H_weierstrass(const Fan& d, const Cone& h);
bool is_H_simple(const Fan& d, const Cone& h);

struct StructureConstants {
    std::vector<Cone> top;       // D⁰ in H-order; top.back() contains H
    std::vector<Cone> skeleton;  // interior walls and H^op, in H-order; skeleton.front() is H^op
    std::vector<Cone> edges;     // rays of |D| other than H, lex
    std::vector<std::vector<Rational>> c;  // c[i][k]: b_edges[k] + c·b_H ∈ vect(skeleton[i])

    std::size_t r() const { return top.size(); }
    // 1-based i as in c(D, i, E).
    const Rational& at(std::size_t i, const Cone& e) const;
};
// Throws NotHSimple.
StructureConstants structure_constants(const Fan& d, const Cone& h);

struct TripleContext {
    Cone H;
    Fan C;
    PseudoPolyhedron S;
};

// Throws InvalidContext unless (H, C) is admissible for S: C simplicial and pure
// with dim C = dim vect|C| ≥ 2, H a ray in every maximal cone, |C| ⊂ stab(S)∨,
// and D(S + Δ∨) H-simple for each maximal Δ.
void validate_context(const TripleContext& ctx);

// S + Θ∨; its face cone decomposition is D(S) ∧ F(Θ).
PseudoPolyhedron restrict_dual(const PseudoPolyhedron& s, const Cone& theta);

// max − min of ⟨b_G, ·⟩ over the skeleton of S.
Rational polyhedron_height(const Cone& g, const PseudoPolyhedron& s);

// A cone Δ(F, S) ∩ Δ meeting a maximal Δ ∈ C full-dimensionally, tagged with ⟨b_H, F⟩.
struct HeightPiece {
    Rational value;
    Cone cone;
};

struct HeightData {
    std::vector<Rational> heights;  // ascending
    Rational min, max, height;
    Int den;
    std::vector<RationalVector> skeleton;  // representatives of the minimal faces that count
    std::vector<HeightPiece> pieces;
};
// No admissibility check; heights() validates first.
HeightData height_data(const Cone& h, const Fan& c, const PseudoPolyhedron& s);
HeightData heights(const TripleContext& ctx);

struct Stratum {
    Rational h;
    Fan E;                     // pieces at exactly h, face closed
    Fan D;                     // pieces at ≥ h, face closed
    std::vector<Cone> upper;   // facets of D making up its H-upper boundary
    std::vector<Cone> lower;
};
// Throws NotAHeight.
Stratum strata(const TripleContext& ctx, const Rational& h);
Stratum stratum_from(const HeightData& hd, const Cone& h_ray, std::size_t n, const Rational& h);

// {t : a + t·b ∈ Λ} for each maximal Λ of d that meets the line.
std::vector<LineSection> fan_line_sections(const Fan& d, const RationalVector& a, const LatticeVector& b);

struct CharacteristicFunction {
    std::vector<Cone> rays;                    // rays of C − C/H, lex
    std::vector<Rational> gamma;               // parallel to rays
    std::vector<std::optional<Rational>> h;    // set exactly where gamma is fractional
    std::size_t m = 0;                         // Σ ceil γ
    std::size_t mbar = 0;                      // Σ floor γ
    std::vector<Cone> R;                       // rays with fractional γ, lex
    std::vector<Rational> height_set;

    const Rational& gamma_of(const Cone& ray) const;
};
// Throws HeightZero, InconsistentGamma.
CharacteristicFunction characteristic_function(const TripleContext& ctx);
CharacteristicFunction characteristic_function(const TripleContext& ctx, const HeightData& hd);

// Canonical compatible mapping: floor γ copies of each ray in lex order, then the
// fractional rays by descending h and lex.
std::vector<Cone> compatible_mapping(const CharacteristicFunction& cf);
bool is_compatible(const CharacteristicFunction& cf, const std::vector<Cone>& e);

struct UsdLevel {
    std::size_t depth = 0;
    Cone H;
    std::size_t max_cones = 0;
    Rational height;
    std::vector<Rational> height_set;
    std::vector<Cone> rays;  // rays of C − C/H with γ below
    std::vector<Rational> gamma;
    std::vector<Cone> E;
    std::size_t m = 0, mbar = 0;
    std::vector<Rational> sub_heights;  // height(H(i), C̄(i), S), i = 1..m+1
    std::size_t M = 0;
};

struct USDResult {
    std::size_t M = 0;
    std::vector<Cone> centers;
    Fan final_fan;
    std::vector<UsdLevel> trace;  // preorder over the recursion
    // Keyed by the rays of the final fan outside |C − C/H|.
    std::map<Cone, std::size_t> I;
    std::map<Cone, Fan> A;
    std::map<Cone, std::vector<Cone>> A_main;
};

struct UsdOptions {
    // Adds 1 to the first positive γ at the top level; a negative control.
    bool corrupt_gamma = false;
};

// Throws InvalidContext, HeightNotDecreased, InconsistentGamma, Internal.
USDResult upward_subdivide(const TripleContext& ctx, const UsdOptions& opts = {});

struct VerificationReport {
    bool ok = true;
    std::size_t checked = 0;
    std::size_t equality_cases = 0;
    std::vector<Rational> sub_heights;
    std::vector<std::string> violations;
};

// Every B(i) has height below height(H, C, S); the first mbar are zero and the
// maximal cones of B(mbar+1) give H(mbar+1)-simple intersections with D(S).
VerificationReport verify_height_inequality(const TripleContext& ctx, const BasicSubdivision& basic,
                                            std::size_t mbar);
// For each Θ of the final fan outside |C − C/H|: constancy when dim Λ = dim Δ,
// the interval bound and its equality characterization when dim Λ = dim Δ − 1.
VerificationReport verify_hard_height_inequality(const TripleContext& ctx, const USDResult& usd);

// The standard setup for a polynomial: C = F(orthant), H = ray(e_z).
TripleContext orthant_context(const PseudoPolyhedron& s, std::size_t z);

}  // namespace polyfan
