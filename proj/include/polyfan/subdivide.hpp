#pragma once

// Star subdivisions of simplicial fans, center sequences, H-boundaries of a
// cone and the basic subdivision that stacks rays E(i) along b_H.

#include <optional>
#include <vector>

#include "polyfan/fan.hpp"

namespace polyfan {

// D*F. Requires D simplicial and F ∈ D. dim F = 1 returns D unchanged.
// Throws NotInFan, NotSimplicial, InvalidCenter (dim F = 0).
Fan star_subdivision(const Fan& d, const Cone& f);

// D*F(1)*…*F(m); every center must be a simplicial cone of dim ≥ 2 in the
// current fan. Throws InvalidCenter naming the 1-based step.
Fan iterated(const Fan& d, const std::vector<Cone>& centers);

// {t : a + t·b ∈ c}, a closed interval with optional ends (nullopt is ±∞).
struct LineSection {
    std::optional<Rational> lo, hi;
    bool contains(const Rational& t) const { return (!lo || *lo <= t) && (!hi || t <= *hi); }
};
std::optional<LineSection> line_section(const Cone& c, const RationalVector& a, const LatticeVector& b);

struct HBoundaries {
    std::vector<Cone> upper;  // facets Λ with b_H ∉ Δ + vect(Λ)
    std::vector<Cone> lower;  // the same for −b_H
};
// Throws LinealityMismatch unless vect(H) ⊂ vect(Δ).
HBoundaries h_boundaries(const Cone& delta, const Cone& h);

// Index i of the vectors below stands for i+1 in the usual 1-based numbering.
struct BasicSubdivision {
    Cone H;
    Fan C;
    std::vector<Cone> E;          // E(1..m), rays of C − C/H
    std::vector<Cone> base_rays;  // (C − C/H)₁ in lex order
    // s[i][k] = #{j ≤ i : E(j) = base_rays[k]}, for i = 0..m
    std::vector<std::vector<Int>> s;
    std::vector<Cone> F, G;    // F(1..m), G(1..m)
    std::vector<Cone> Hseq;    // H(1..m+1); H(m+1) = H
    Fan B;                     // C*F(1)*…*F(m)
    std::vector<Fan> Bsub;     // B(1..m+1)
    std::vector<std::vector<Cone>> Bmain;  // B°(1..m+1), cones of B

    std::size_t m() const { return E.size(); }
};

// Requires C simplicial and pure with dim C = dim vect|C| ≥ 2, H a ray of C
// and every maximal cone of C containing H. Throws BadPrerequisites, BadE.
BasicSubdivision basic_subdivision(const Cone& h, const Fan& c, const std::vector<Cone>& e);

// All faces of the given cones, as a fan (the cones must come from one fan).
Fan face_closure_of(std::size_t n, const std::vector<Cone>& cones);

}  // namespace polyfan
