#pragma once

// Finite face-closed cone decompositions. A Fan stores every cone (not only the
// maximal ones) in canonical order; two cones meet in a common face.

#include <optional>
#include <set>
#include <vector>

#include "polyfan/cone.hpp"

namespace polyfan {

class Fan {
public:
    // Checks face-closure and the common-face condition; throws NotFaceClosed,
    // BadIntersection or Empty with the offending cones in the message.
    static Fan validate(std::size_t n, const std::vector<Cone>& cones);
    // Adds all faces after checking the common-face condition on the input.
    static Fan face_closure(std::size_t n, const std::vector<Cone>& cones);
    // Trusted constructor: the caller guarantees the fan conditions.
    static Fan from_cones_unchecked(std::size_t n, std::vector<Cone> cones);
    static Fan of_cone(const Cone& c);  // F(c)

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const;
    const std::vector<Cone>& cones() const { return cones_; }
    std::size_t size() const { return cones_.size(); }
    bool contains(const Cone& c) const;
    const std::vector<Cone>& maximal() const { return max_; }
    std::vector<Cone> of_dim(std::size_t d) const;
    // One-dimensional cones, lex order of their primitive generators.
    std::vector<Cone> rays() const;
    std::vector<LatticeVector> ray_vectors() const;
    bool is_simplicial() const;
    // D\X = {Δ ∈ D : Δ ⊂ X}
    Fan restrict(const Cone& x) const;
    // {Δ ∈ D : Δ ⊂ Λ for some Λ ∈ E}; equals D\|E| when D refines a fan containing E.
    Fan restrict(const Fan& e) const;
    // D/F = {Δ ∈ D : Δ ⊃ F}
    std::vector<Cone> star(const Cone& f) const;
    // The cone whose relative interior holds v, if v ∈ |D|.
    std::optional<Cone> locate(const RationalVector& v) const;
    std::optional<Cone> locate(const LatticeVector& v) const { return locate(to_rational(v)); }
    // Cones of this fan minus the given ones.
    Fan minus(const std::vector<Cone>& cs) const;

    friend bool operator==(const Fan& a, const Fan& b) { return a.n_ == b.n_ && a.cones_ == b.cones_; }
    friend bool operator!=(const Fan& a, const Fan& b) { return !(a == b); }

private:
    std::size_t n_ = 0;
    std::vector<Cone> cones_;  // sorted, unique
    std::vector<Cone> max_;
};

// Every Δ ∈ D lies in some Λ ∈ E.
bool is_subdivision(const Fan& d, const Fan& e);
// Subdivision with |D| = |E|.
bool is_full_subdivision(const Fan& d, const Fan& e);
// |D\Λ| = Λ, tested by the codimension-one wall count inside Λ.
bool covers(const Fan& d, const Cone& lambda);
Fan real_intersection(const std::vector<Fan>& fans, std::size_t n);
// Cone set |D| when it is convex: the cone generated by all rays, checked by covers().
std::optional<Cone> convex_support(const Fan& d);

}  // namespace polyfan
