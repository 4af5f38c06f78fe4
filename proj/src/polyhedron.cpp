#include "polyfan/polyhedron.hpp"

#include <algorithm>
#include <numeric>

#include "polyfan/error.hpp"

namespace polyfan {

namespace {

LatticeVector lift(const RationalVector& x, const Rational& t) {
    RationalVector h = x;
    h.push_back(t);
    return scale_to_primitive(h);
}

bool is_integral(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

}  // namespace

PseudoPolyhedron PseudoPolyhedron::construct(const std::vector<RationalVector>& x, const std::vector<LatticeVector>& y) {
    if (x.empty()) fail(ErrorKind::EmptyX, "a pseudo polyhedron needs a point");
    std::size_t n = x.front().size();
    for (const auto& g : y)
        if (g.size() != n) fail(ErrorKind::DimensionMismatch, "recession generator " + to_string(g));
    return construct(n, x, Cone::generated(n, y));
}

PseudoPolyhedron PseudoPolyhedron::construct(std::size_t n, const std::vector<RationalVector>& x, const Cone& stab) {
    if (x.empty()) fail(ErrorKind::EmptyX, "a pseudo polyhedron needs a point");
    if (stab.ambient_dim() != n) fail(ErrorKind::DimensionMismatch, "stabilizer " + stab.str());
    for (const auto& p : x)
        if (p.size() != n) fail(ErrorKind::DimensionMismatch, "point " + to_string(p));

    // Representatives modulo L; equal projections lie on the same translate of L.
    std::vector<RationalVector> pts;
    for (const auto& p : x) pts.push_back(project_out(p, stab.lineality()));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto data = std::make_shared<Data>();
    data->n = n;
    data->stab = stab;
    const std::size_t target = n - stab.lineality_dim();
    auto stab_gens = stab.generators();
    // p spans a minimal face iff its normal cone {ω ∈ stab∨ : ⟨ω, q − p⟩ ≥ 0 ∀q} is full in stab∨.
    for (const auto& p : pts) {
        std::vector<LatticeVector> ineqs = stab_gens;
        for (const auto& q : pts)
            if (q != p) ineqs.push_back(scale_to_primitive(sub(q, p)));
        Cone normal = Cone::from_inequalities(n, ineqs);
        if (normal.dim() == target) data->minimal.push_back({p, normal});
    }
    PseudoPolyhedron s;
    s.d_ = std::move(data);
    return s;
}

std::size_t PseudoPolyhedron::dim() const {
    const auto& m = d_->minimal;
    IntegerMatrix rows = d_->stab.generators();
    for (std::size_t i = 1; i < m.size(); ++i) rows.push_back(scale_to_primitive(sub(m[i].point, m[0].point)));
    return rank(rows);
}

std::vector<RationalVector> PseudoPolyhedron::skeleton() const {
    std::vector<RationalVector> out;
    for (const auto& f : d_->minimal) out.push_back(f.point);
    return out;
}

bool PseudoPolyhedron::is_newton_polyhedron() const {
    const Cone& s = d_->stab;
    if (s.dim() != d_->n || !s.is_pointed() || !s.is_simplicial()) return false;
    return std::all_of(d_->minimal.begin(), d_->minimal.end(), [](const MinimalFace& f) { return is_integral(f.point); });
}

Int PseudoPolyhedron::denominator() const {
    const auto& lin = d_->stab.lineality();
    // m·a ∈ Z^n + L  ⇔  ⟨u, m·a⟩ ∈ Z for a Z-basis u of Z^n ∩ L^⊥
    IntegerMatrix basis = lin.empty() ? IntegerMatrix{} : integer_kernel(lin, d_->n);
    if (lin.empty())
        for (std::size_t i = 0; i < d_->n; ++i) basis.push_back(unit_vector(d_->n, i));
    Int den = 1;
    for (const auto& f : d_->minimal)
        for (const auto& u : basis) {
            Rational v = dot(u, f.point);
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
        }
    return den;
}

Cone PseudoPolyhedron::homogenize() const {
    std::vector<LatticeVector> gens;
    for (const auto& f : d_->minimal) gens.push_back(lift(f.point, 1));
    for (const auto& g : d_->stab.generators()) gens.push_back(lift(to_rational(g), 0));
    return Cone::generated(d_->n + 1, gens);
}

bool PseudoPolyhedron::contains(const RationalVector& p) const {
    if (p.size() != d_->n) fail(ErrorKind::DimensionMismatch, "contains");
    RationalVector h = p;
    h.push_back(1);
    return homogenize().contains(h);
}

Rational PseudoPolyhedron::ord(const RationalVector& omega) const {
    if (omega.size() != d_->n) fail(ErrorKind::DimensionMismatch, "ord");
    if (!bounded_below(omega)) fail(ErrorKind::Unbounded, "ω = " + to_string(omega) + " is not in stab∨");
    Rational best = dot(omega, d_->minimal.front().point);
    for (const auto& f : d_->minimal) best = std::min(best, dot(omega, f.point));
    return best;
}

PseudoPolyhedron PseudoPolyhedron::face(const RationalVector& omega) const {
    Rational m = ord(omega);
    std::vector<RationalVector> pts;
    for (const auto& f : d_->minimal)
        if (dot(omega, f.point) == m) pts.push_back(f.point);
    return construct(d_->n, pts, d_->stab.face_of(omega));
}

const Fan& PseudoPolyhedron::face_cone_decomposition() const {
    std::call_once(d_->fan_once, [this] {
        const std::size_t n = d_->n;
        Cone hom = homogenize();
        std::vector<Cone> cones;
        for (const auto& lam : hom.face_lattice()) {
            const auto& rays = lam.cone->rays();
            // faces inside the height-zero hyperplane are faces at infinity
            if (std::none_of(rays.begin(), rays.end(), [&](const LatticeVector& r) { return r[n] > 0; })) continue;
            std::vector<LatticeVector> gens;
            for (auto g : hom.face_cone(*lam.cone).generators()) {
                g.pop_back();
                gens.push_back(std::move(g));
            }
            cones.push_back(Cone::generated(n, gens));
        }
        d_->fan = Fan::from_cones_unchecked(n, cones);
    });
    return d_->fan;
}

Fan PseudoPolyhedron::face_cone_decomposition_direct() const {
    std::vector<Cone> all;
    for (const auto& f : d_->minimal)
        for (const auto& face : f.face_cone.face_lattice()) all.push_back(*face.cone);
    return Fan::from_cones_unchecked(d_->n, all);
}

std::vector<PolyFace> PseudoPolyhedron::faces() const {
    std::vector<PolyFace> out;
    for (const auto& c : face_cone_decomposition().cones()) {
        LatticeVector w = c.relint_point();
        out.push_back({std::make_shared<const PseudoPolyhedron>(face(w)), c, w});
    }
    return out;
}

bool operator==(const PseudoPolyhedron& a, const PseudoPolyhedron& b) {
    return a.d_->n == b.d_->n && a.d_->stab == b.d_->stab && a.skeleton() == b.skeleton();
}

std::string PseudoPolyhedron::str() const {
    std::string s = "conv{";
    for (std::size_t i = 0; i < d_->minimal.size(); ++i) s += (i ? "," : "") + to_string(d_->minimal[i].point);
    return s + "} + " + d_->stab.str();
}

PseudoPolyhedron minkowski_sum(const PseudoPolyhedron& s, const PseudoPolyhedron& t) {
    if (s.ambient_dim() != t.ambient_dim()) fail(ErrorKind::DimensionMismatch, "minkowski_sum");
    std::vector<RationalVector> pts;
    for (const auto& a : s.skeleton())
        for (const auto& b : t.skeleton()) pts.push_back(add(a, b));
    return PseudoPolyhedron::construct(s.ambient_dim(), pts, sum(s.stabilizer(), t.stabilizer()));
}

PseudoPolyhedron dehomogenize(const Cone& c) {
    if (c.ambient_dim() == 0) fail(ErrorKind::DimensionMismatch, "dehomogenize");
    const std::size_t n = c.ambient_dim() - 1;
    std::vector<RationalVector> pts;
    std::vector<LatticeVector> rec;
    for (const auto& g : c.generators()) {
        if (g[n] < 0) fail(ErrorKind::Unbounded, "generator below height zero: " + to_string(g));
        LatticeVector base(g.begin(), g.end() - 1);
        if (g[n] == 0) {
            if (!is_zero(base)) rec.push_back(base);
            continue;
        }
        RationalVector p;
        for (const auto& v : base) p.push_back(Rational(v, g[n]));
        for (auto& q : p) q.canonicalize();
        pts.push_back(p);
    }
    if (pts.empty()) fail(ErrorKind::EmptyX, "cone has no point at height one");
    return PseudoPolyhedron::construct(n, pts, Cone::generated(n, rec));
}

}  // namespace polyfan
