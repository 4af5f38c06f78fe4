#pragma once

// Rational polyhedral cones in Q^n, held in both V- and H-representation.
//
// Canonical form (used for equality, ordering and hashing into fans):
//   lineality  : rref basis of S ∩ (-S), rows primitive
//   rays       : extreme rays of the pointed part, projected orthogonally off
//                the lineality, primitive, lex-sorted
//   equations  : rref basis of vect(S)^⊥
//   facets     : extreme rays of S∨ projected off vect(S)^⊥, lex-sorted
// The cone {0} has no rays, no lineality, and n equations.

#include <memory>
#include <mutex>
#include <vector>

#include "polyfan/ratlat.hpp"

namespace polyfan {

class Cone;

struct Face {
    std::shared_ptr<const Cone> cone;
    LatticeVector witness;  // ω ∈ S∨ with Δ(ω, S) = this face
};

class Cone {
public:
    Cone() = default;  // the cone {0} in Q^0; only useful as a placeholder

    static Cone generated(std::size_t n, const std::vector<LatticeVector>& gens);
    static Cone from_inequalities(std::size_t n, const std::vector<LatticeVector>& ineqs,
                                  const std::vector<LatticeVector>& eqs = {});
    static Cone zero(std::size_t n);
    static Cone whole_space(std::size_t n);
    static Cone orthant(std::size_t n);
    static Cone ray(const LatticeVector& v);

    std::size_t ambient_dim() const { return d_->n; }
    std::size_t dim() const { return d_->n - d_->equations.size(); }
    std::size_t lineality_dim() const { return d_->lineality.size(); }
    const std::vector<LatticeVector>& rays() const { return d_->rays; }
    const std::vector<LatticeVector>& lineality() const { return d_->lineality; }
    const std::vector<LatticeVector>& facets() const { return d_->facets; }
    const std::vector<LatticeVector>& equations() const { return d_->equations; }
    // rays, lineality and negated lineality: a generating set of the cone
    std::vector<LatticeVector> generators() const;
    bool is_zero() const { return d_->rays.empty() && d_->lineality.empty(); }
    bool is_pointed() const { return d_->lineality.empty(); }

    bool contains(const RationalVector& v) const;
    bool contains(const LatticeVector& v) const { return contains(to_rational(v)); }
    bool contains(const Cone& other) const;
    bool interior_contains(const RationalVector& v) const;
    bool interior_contains(const LatticeVector& v) const { return interior_contains(to_rational(v)); }
    // A lattice point of the relative interior: the sum of the rays.
    LatticeVector relint_point() const;

    Cone dual() const;
    Cone linear_span() const;
    Cone face_of(const LatticeVector& omega) const;
    Cone face_of(const RationalVector& omega) const;
    // All faces, sorted by (dim, canonical order); includes the lineality and the cone itself.
    std::vector<Face> face_lattice() const;
    std::vector<Cone> faces_of_dim(std::size_t d) const;
    // Smallest face containing the given subcone; throws if other ⊄ this.
    Cone smallest_face_containing(const Cone& other) const;
    bool is_face(const Cone& f) const;
    // Δ(F, S) = {ω ∈ S∨ : ⟨ω, F⟩ = 0} for a face F of this cone.
    Cone face_cone(const Cone& f) const;

    bool is_simplicial() const;
    LatticeVector barycenter() const;
    Cone opposite_face(const Cone& f) const;

    friend bool operator==(const Cone& a, const Cone& b);
    friend bool operator<(const Cone& a, const Cone& b);
    friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }

    std::string str() const;

private:
    struct Data {
        std::size_t n = 0;
        std::vector<LatticeVector> rays, lineality, facets, equations;
        mutable std::once_flag faces_once;
        mutable std::vector<Face> faces;
    };
    std::shared_ptr<const Data> d_ = std::make_shared<Data>();

    static Cone build(std::size_t n, std::vector<LatticeVector> lin, std::vector<LatticeVector> rays,
                      std::vector<LatticeVector> eqs, std::vector<LatticeVector> facets);
    void compute_faces() const;
};

Cone sum(const Cone& a, const Cone& b);
Cone intersection(const Cone& a, const Cone& b);
Cone intersection(const std::vector<Cone>& cs, std::size_t n);

// Generating set of {x : A x ≥ 0} by the double description method.
struct DDResult {
    std::vector<LatticeVector> lineality;
    std::vector<LatticeVector> rays;  // extreme modulo lineality
};
DDResult double_description(std::size_t n, const std::vector<LatticeVector>& ineqs,
                            const std::vector<LatticeVector>& eqs = {});

}  // namespace polyfan
