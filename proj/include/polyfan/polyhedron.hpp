#pragma once

// Convex pseudo polyhedra S = conv(X) + convcone(Y) in Q^n and their face cone
// decompositions D(S|V) in the dual space.

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "polyfan/cone.hpp"
#include "polyfan/fan.hpp"

namespace polyfan {

// x + L, with x the orthogonal projection off L (so the representative is canonical).
struct MinimalFace {
    RationalVector point;
    Cone face_cone;  // Δ(F, S|V), a maximal cone of D(S|V)
};

class PseudoPolyhedron;

struct PolyFace {
    std::shared_ptr<const PseudoPolyhedron> face;
    Cone face_cone;          // Δ(F, S|V)
    LatticeVector witness;   // a point of the open face cone
};

class PseudoPolyhedron {
public:
    PseudoPolyhedron() = default;
    // Prunes X down to one representative per minimal face. Throws EmptyX.
    static PseudoPolyhedron construct(const std::vector<RationalVector>& x, const std::vector<LatticeVector>& y);
    static PseudoPolyhedron construct(std::size_t n, const std::vector<RationalVector>& x, const Cone& stab);

    std::size_t ambient_dim() const { return d_->n; }
    std::size_t dim() const;
    const Cone& stabilizer() const { return d_->stab; }
    std::size_t lineality_dim() const { return d_->stab.lineality_dim(); }
    const std::vector<MinimalFace>& minimal_faces() const { return d_->minimal; }
    std::vector<RationalVector> skeleton() const;  // minimal-face representatives
    std::size_t characteristic_number() const { return d_->minimal.size(); }
    bool is_compact() const { return d_->stab.is_zero(); }
    // Newton polyhedron over Z^n: simplicial full-dimensional stabilizer, integral skeleton.
    bool is_newton_polyhedron() const;
    // Minimal positive m with m·a ∈ Z^n + L for every skeleton point a.
    Int denominator() const;

    bool contains(const RationalVector& p) const;
    bool bounded_below(const RationalVector& omega) const { return d_->stab.dual().contains(omega); }
    // Throws Unbounded if ω ∉ stab(S)∨.
    Rational ord(const RationalVector& omega) const;
    Rational ord(const LatticeVector& omega) const { return ord(to_rational(omega)); }
    PseudoPolyhedron face(const RationalVector& omega) const;
    PseudoPolyhedron face(const LatticeVector& omega) const { return face(to_rational(omega)); }

    // D(S|V) through the homogenizing cone and projected dual faces.
    const Fan& face_cone_decomposition() const;
    // D(S|V) as the face closure of the minimal faces' normal cones.
    Fan face_cone_decomposition_direct() const;
    // One entry per cone of D(S|V), in fan order.
    std::vector<PolyFace> faces() const;
    // cone((X,1) ∪ (Y,0)) in Q^{n+1}, height in the last coordinate.
    Cone homogenize() const;

    friend bool operator==(const PseudoPolyhedron& a, const PseudoPolyhedron& b);
    std::string str() const;

private:
    struct Data {
        std::size_t n = 0;
        Cone stab;
        std::vector<MinimalFace> minimal;
        mutable std::once_flag fan_once;
        mutable Fan fan;
    };
    std::shared_ptr<const Data> d_ = std::make_shared<Data>();
};

PseudoPolyhedron minkowski_sum(const PseudoPolyhedron& s, const PseudoPolyhedron& t);
// Reads the height-one slice of a homogenizing cone back as conv(X) + convcone(Y).
PseudoPolyhedron dehomogenize(const Cone& c);

}  // namespace polyfan
