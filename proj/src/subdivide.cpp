#include "polyfan/subdivide.hpp"

#include <algorithm>

#include "polyfan/error.hpp"

namespace polyfan {

Fan face_closure_of(std::size_t n, const std::vector<Cone>& cones) {
    std::vector<Cone> all;
    for (const auto& c : cones)
        for (const auto& f : c.face_lattice()) all.push_back(*f.cone);
    return Fan::from_cones_unchecked(n, std::move(all));
}

Fan star_subdivision(const Fan& d, const Cone& f) {
    if (!d.contains(f)) fail(ErrorKind::NotInFan, f.str());
    if (!d.is_simplicial()) fail(ErrorKind::NotSimplicial, "star subdivision needs a simplicial fan");
    if (f.dim() == 0) fail(ErrorKind::InvalidCenter, "the zero cone is not a center");
    if (f.dim() == 1) return d;

    const std::size_t n = d.ambient_dim();
    const LatticeVector b = f.barycenter();
    std::vector<Cone> maximal;
    for (const auto& lam : d.maximal()) {
        if (!lam.contains(f)) {
            maximal.push_back(lam);
            continue;
        }
        // Λ ⊇ F splits into one cone per ray of F, with that ray replaced by b_F.
        for (const auto& r : f.rays()) {
            std::vector<LatticeVector> gens{b};
            for (const auto& g : lam.rays())
                if (g != r) gens.push_back(g);
            maximal.push_back(Cone::generated(n, gens));
        }
    }
    return face_closure_of(n, maximal);
}

Fan iterated(const Fan& d, const std::vector<Cone>& centers) {
    Fan cur = d;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const Cone& f = centers[i];
        std::string where = "center " + std::to_string(i + 1) + " " + f.str();
        if (f.dim() < 2) fail(ErrorKind::InvalidCenter, where + " has dim < 2");
        if (!f.is_simplicial()) fail(ErrorKind::InvalidCenter, where + " is not simplicial");
        if (!cur.contains(f)) fail(ErrorKind::InvalidCenter, where + " is not in the current fan");
        cur = star_subdivision(cur, f);
    }
    return cur;
}

std::optional<LineSection> line_section(const Cone& c, const RationalVector& a, const LatticeVector& b) {
    if (a.size() != c.ambient_dim() || b.size() != c.ambient_dim())
        fail(ErrorKind::DimensionMismatch, "line_section");
    LineSection out;
    auto tighten_lo = [&](const Rational& t) { if (!out.lo || *out.lo < t) out.lo = t; };
    auto tighten_hi = [&](const Rational& t) { if (!out.hi || t < *out.hi) out.hi = t; };
    // e·a + t·e·b = 0 and f·a + t·f·b ≥ 0
    for (const auto& e : c.equations()) {
        Rational ea = dot(e, a), eb = Rational(dot(e, b));
        if (eb == 0) {
            if (ea != 0) return std::nullopt;
            continue;
        }
        Rational t = -ea / eb;
        tighten_lo(t);
        tighten_hi(t);
    }
    for (const auto& f : c.facets()) {
        Rational fa = dot(f, a), fb = Rational(dot(f, b));
        if (fb == 0) {
            if (fa < 0) return std::nullopt;
        } else if (fb > 0) {
            tighten_lo(-fa / fb);
        } else {
            tighten_hi(-fa / fb);
        }
    }
    if (out.lo && out.hi && *out.hi < *out.lo) return std::nullopt;
    return out;
}

HBoundaries h_boundaries(const Cone& delta, const Cone& h) {
    if (h.dim() != 1 || !h.is_pointed()) fail(ErrorKind::DimensionMismatch, "H must be a ray: " + h.str());
    const LatticeVector& bh = h.rays().front();
    if (!delta.linear_span().contains(bh)) fail(ErrorKind::LinealityMismatch, h.str() + " ⊄ vect " + delta.str());
    HBoundaries out;
    if (delta.dim() == 0) return out;
    for (const auto& lam : delta.faces_of_dim(delta.dim() - 1)) {
        Cone tangent = sum(delta, lam.linear_span());
        if (!tangent.contains(bh)) out.upper.push_back(lam);
        if (!tangent.contains(neg(bh))) out.lower.push_back(lam);
    }
    return out;
}

namespace {

Cone ray_of(const LatticeVector& v) { return Cone::ray(scale_to_primitive(to_rational(v))); }

std::size_t vect_rank(const Fan& c) {
    IntegerMatrix rows;
    for (const auto& m : c.maximal()) {
        auto g = m.generators();
        rows.insert(rows.end(), g.begin(), g.end());
    }
    return rows.empty() ? 0 : rank(rows);
}

}  // namespace

BasicSubdivision basic_subdivision(const Cone& h, const Fan& c, const std::vector<Cone>& e) {
    const std::size_t n = c.ambient_dim();
    if (!c.is_simplicial()) fail(ErrorKind::BadPrerequisites, "C is not simplicial");
    if (c.dim() < 2 || c.dim() != vect_rank(c)) fail(ErrorKind::BadPrerequisites, "need dim C = dim vect|C| ≥ 2");
    for (const auto& m : c.maximal()) {
        if (m.dim() != c.dim()) fail(ErrorKind::BadPrerequisites, "C is not pure: " + m.str());
        if (!m.contains(h)) fail(ErrorKind::BadPrerequisites, "maximal cone " + m.str() + " misses H");
    }
    if (h.dim() != 1 || !c.contains(h)) fail(ErrorKind::BadPrerequisites, "H is not a ray of C: " + h.str());

    BasicSubdivision out;
    out.H = h;
    out.C = c;
    out.E = e;
    for (const auto& r : c.rays())
        if (r != h) out.base_rays.push_back(r);

    const std::size_t m = e.size();
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto it = std::find(out.base_rays.begin(), out.base_rays.end(), e[i]);
        if (it == out.base_rays.end())
            fail(ErrorKind::BadE, "E(" + std::to_string(i + 1) + ") = " + e[i].str() + " is not a ray of C − C/H");
        idx[i] = static_cast<std::size_t>(it - out.base_rays.begin());
    }

    out.s.assign(m + 1, std::vector<Int>(out.base_rays.size(), 0));
    for (std::size_t i = 1; i <= m; ++i) {
        out.s[i] = out.s[i - 1];
        out.s[i][idx[i - 1]] += 1;
    }

    const LatticeVector& bh = h.rays().front();
    Fan cur = c;
    for (std::size_t i = 1; i <= m; ++i) {
        const LatticeVector& be = e[i - 1].rays().front();
        Int before = out.s[i - 1][idx[i - 1]], after = out.s[i][idx[i - 1]];
        Cone g = ray_of(add(be, scale(before, bh)));
        Cone hi = ray_of(add(be, scale(after, bh)));
        Cone f = Cone::generated(n, {g.rays().front(), bh});
        out.G.push_back(g);
        out.Hseq.push_back(hi);
        out.F.push_back(f);
        if (!cur.contains(f)) fail(ErrorKind::Internal, "F(" + std::to_string(i) + ") = " + f.str() + " not in the fan");
        cur = star_subdivision(cur, f);
    }
    out.Hseq.push_back(h);
    out.B = cur;

    for (std::size_t i = 1; i <= m + 1; ++i) {
        Cone top = i <= m ? Cone::generated(n, {out.G[i - 1].rays().front(), out.Hseq[i - 1].rays().front()}) : h;
        if (!out.B.contains(top)) fail(ErrorKind::Internal, "B(" + std::to_string(i) + ") apex " + top.str() + " not in B");
        Fan sub = face_closure_of(n, out.B.star(top));
        std::vector<Cone> main;
        if (i <= m) {
            for (const auto& x : sub.cones())
                if (x.contains(out.G[i - 1])) main.push_back(x);
        } else {
            main = sub.cones();
        }
        out.Bsub.push_back(std::move(sub));
        out.Bmain.push_back(std::move(main));
    }
    return out;
}

}  // namespace polyfan
