#include "polyfan/cone.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <map>
#include <set>
#include <sstream>

#include "polyfan/error.hpp"

namespace polyfan {

using Bits = boost::dynamic_bitset<>;

DDResult double_description(std::size_t n, const std::vector<LatticeVector>& ineqs,
                            const std::vector<LatticeVector>& eqs) {
    std::vector<LatticeVector> lin;
    for (std::size_t i = 0; i < n; ++i) lin.push_back(unit_vector(n, i));
    std::vector<LatticeVector> rays;
    std::vector<Bits> tight;  // tight[r][c]: processed constraint c vanishes on ray r
    std::size_t processed = 0;

    auto process = [&](const LatticeVector& a, bool equality) {
        if (a.size() != n) fail(ErrorKind::DimensionMismatch, "double_description");
        if (is_zero(a)) return;
        std::size_t idx = processed++;
        for (auto& t : tight) t.resize(processed);

        // A lineality direction not orthogonal to a: the constraint cuts the space.
        for (std::size_t p = 0; p < lin.size(); ++p) {
            Int a0 = dot(a, lin[p]);
            if (a0 == 0) continue;
            LatticeVector l0 = lin[p];
            if (a0 < 0) {
                l0 = neg(l0);
                a0 = -a0;
            }
            std::vector<LatticeVector> nl;
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (i == p) continue;
                nl.push_back(primitive(sub(scale(a0, lin[i]), scale(dot(a, lin[i]), l0))));
            }
            lin = std::move(nl);
            for (std::size_t r = 0; r < rays.size(); ++r) {
                Int s = dot(a, rays[r]);
                if (s != 0) rays[r] = primitive(sub(scale(a0, rays[r]), scale(s, l0)));
                tight[r].set(idx);
            }
            if (!equality) {
                rays.push_back(l0);
                Bits b(processed);
                b.set();
                b.reset(idx);
                tight.push_back(b);
            }
            return;
        }

        std::vector<std::size_t> plus, zero, minus;
        std::vector<Int> val(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(a, rays[r]);
            if (val[r] > 0) plus.push_back(r);
            else if (val[r] == 0) zero.push_back(r);
            else minus.push_back(r);
        }
        std::vector<LatticeVector> nr;
        std::vector<Bits> nt;
        for (auto r : zero) {
            nr.push_back(rays[r]);
            Bits b = tight[r];
            b.set(idx);
            nt.push_back(b);
        }
        if (!equality)
            for (auto r : plus) {
                nr.push_back(rays[r]);
                nt.push_back(tight[r]);
            }
        for (auto p : plus)
            for (auto m : minus) {
                Bits common = tight[p] & tight[m];
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == m) continue;
                    if (common.is_subset_of(tight[r])) adjacent = false;
                }
                if (!adjacent) continue;
                nr.push_back(primitive(sub(scale(val[p], rays[m]), scale(val[m], rays[p]))));
                common.set(idx);
                nt.push_back(common);
            }
        rays = std::move(nr);
        tight = std::move(nt);
    };

    for (const auto& e : eqs) process(e, true);
    for (const auto& a : ineqs) process(a, false);
    return DDResult{lin, rays};
}

Cone Cone::build(std::size_t n, std::vector<LatticeVector> lin, std::vector<LatticeVector> rays,
                 std::vector<LatticeVector> eqs, std::vector<LatticeVector> facets) {
    auto data = std::make_shared<Data>();
    data->n = n;
    data->lineality = canonical_row_basis(lin, n);
    data->equations = canonical_row_basis(eqs, n);
    auto canon = [&](const std::vector<LatticeVector>& vs, const std::vector<LatticeVector>& off) {
        std::vector<LatticeVector> out;
        for (const auto& v : vs) {
            LatticeVector p = scale_to_primitive(project_out(to_rational(v), off));
            if (!polyfan::is_zero(p)) out.push_back(p);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    data->rays = canon(rays, data->lineality);
    data->facets = canon(facets, data->equations);
    Cone c;
    c.d_ = data;
    return c;
}

Cone Cone::generated(std::size_t n, const std::vector<LatticeVector>& gens) {
    for (const auto& g : gens)
        if (g.size() != n) fail(ErrorKind::DimensionMismatch, "Cone::generated");
    DDResult dual = double_description(n, gens);
    DDResult primal = double_description(n, dual.rays, dual.lineality);
    return build(n, primal.lineality, primal.rays, dual.lineality, dual.rays);
}

Cone Cone::from_inequalities(std::size_t n, const std::vector<LatticeVector>& ineqs,
                             const std::vector<LatticeVector>& eqs) {
    DDResult primal = double_description(n, ineqs, eqs);
    DDResult dual = double_description(n, primal.rays, primal.lineality);
    return build(n, primal.lineality, primal.rays, dual.lineality, dual.rays);
}

Cone Cone::zero(std::size_t n) {
    std::vector<LatticeVector> eqs;
    for (std::size_t i = 0; i < n; ++i) eqs.push_back(unit_vector(n, i));
    return build(n, {}, {}, eqs, {});
}

Cone Cone::whole_space(std::size_t n) {
    std::vector<LatticeVector> lin;
    for (std::size_t i = 0; i < n; ++i) lin.push_back(unit_vector(n, i));
    return build(n, lin, {}, {}, {});
}

Cone Cone::orthant(std::size_t n) {
    std::vector<LatticeVector> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(unit_vector(n, i));
    return build(n, {}, e, {}, e);
}

Cone Cone::ray(const LatticeVector& v) { return generated(v.size(), {primitive(v)}); }

std::vector<LatticeVector> Cone::generators() const {
    std::vector<LatticeVector> g = d_->rays;
    for (const auto& l : d_->lineality) {
        g.push_back(l);
        g.push_back(neg(l));
    }
    return g;
}

bool Cone::contains(const RationalVector& v) const {
    if (v.size() != d_->n) fail(ErrorKind::DimensionMismatch, "Cone::contains");
    for (const auto& e : d_->equations)
        if (dot(e, v) != 0) return false;
    for (const auto& f : d_->facets)
        if (dot(f, v) < 0) return false;
    return true;
}

bool Cone::contains(const Cone& other) const {
    if (other.ambient_dim() != d_->n) fail(ErrorKind::DimensionMismatch, "Cone::contains");
    for (const auto& g : other.generators())
        if (!contains(g)) return false;
    return true;
}

bool Cone::interior_contains(const RationalVector& v) const {
    if (v.size() != d_->n) fail(ErrorKind::DimensionMismatch, "Cone::interior_contains");
    for (const auto& e : d_->equations)
        if (dot(e, v) != 0) return false;
    for (const auto& f : d_->facets)
        if (dot(f, v) <= 0) return false;
    return true;
}

LatticeVector Cone::relint_point() const {
    LatticeVector s = zero_lattice(d_->n);
    for (const auto& r : d_->rays) s = add(s, r);
    return s;
}

Cone Cone::dual() const { return build(d_->n, d_->equations, d_->facets, d_->lineality, d_->rays); }

Cone Cone::linear_span() const {
    std::vector<LatticeVector> span = d_->rays;
    span.insert(span.end(), d_->lineality.begin(), d_->lineality.end());
    return build(d_->n, span, {}, d_->equations, {});
}

Cone Cone::face_of(const RationalVector& omega) const { return face_of(scale_to_primitive(omega)); }

Cone Cone::face_of(const LatticeVector& omega) const {
    if (omega.size() != d_->n) fail(ErrorKind::DimensionMismatch, "face_of");
    std::vector<LatticeVector> keep;
    for (const auto& g : generators()) {
        Int s = dot(omega, g);
        if (s < 0) fail(ErrorKind::NotInDual, "witness " + to_string(omega) + " negative on " + to_string(g));
        if (s == 0) keep.push_back(g);
    }
    return generated(d_->n, keep);
}

void Cone::compute_faces() const {
    const auto& rs = d_->rays;
    const auto& fs = d_->facets;
    std::size_t k = rs.size();
    std::vector<Bits> zero_set(fs.size(), Bits(k));
    for (std::size_t j = 0; j < fs.size(); ++j)
        for (std::size_t r = 0; r < k; ++r)
            if (dot(fs[j], rs[r]) == 0) zero_set[j].set(r);
    Bits all(k);
    all.set();
    std::set<Bits> seen{all};
    std::vector<Bits> queue{all};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (const auto& z : zero_set) {
            Bits t = queue[q] & z;
            if (seen.insert(t).second) queue.push_back(t);
        }
    }
    std::vector<Face> out;
    for (const auto& t : seen) {
        std::vector<LatticeVector> gens;
        for (std::size_t r = 0; r < k; ++r)
            if (t.test(r)) gens.push_back(rs[r]);
        for (const auto& l : d_->lineality) {
            gens.push_back(l);
            gens.push_back(neg(l));
        }
        LatticeVector w = zero_lattice(d_->n);
        for (std::size_t j = 0; j < fs.size(); ++j)
            if (t.is_subset_of(zero_set[j])) w = add(w, fs[j]);
        out.push_back(Face{std::make_shared<const Cone>(generated(d_->n, gens)), w});
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return *a.cone < *b.cone; });
    d_->faces = std::move(out);
}

std::vector<Face> Cone::face_lattice() const {
    std::call_once(d_->faces_once, [this] { compute_faces(); });
    return d_->faces;
}

std::vector<Cone> Cone::faces_of_dim(std::size_t d) const {
    std::vector<Cone> out;
    for (const auto& f : face_lattice())
        if (f.cone->dim() == d) out.push_back(*f.cone);
    return out;
}

Cone Cone::smallest_face_containing(const Cone& other) const {
    if (!contains(other)) fail(ErrorKind::NotAFace, other.str() + " is not inside " + str());
    auto og = other.generators();
    std::vector<LatticeVector> gens = d_->rays;
    for (const auto& f : d_->facets) {
        bool vanishes = std::all_of(og.begin(), og.end(), [&](const LatticeVector& g) { return dot(f, g) == 0; });
        if (!vanishes) continue;
        std::vector<LatticeVector> kept;
        for (const auto& r : gens)
            if (dot(f, r) == 0) kept.push_back(r);
        gens = std::move(kept);
    }
    for (const auto& l : d_->lineality) {
        gens.push_back(l);
        gens.push_back(neg(l));
    }
    return generated(d_->n, gens);
}

bool Cone::is_face(const Cone& f) const {
    if (f.ambient_dim() != d_->n || !contains(f)) return false;
    return smallest_face_containing(f) == f;
}

Cone Cone::face_cone(const Cone& f) const {
    if (!is_face(f)) fail(ErrorKind::NotAFace, f.str() + " in " + str());
    auto fg = f.generators();
    std::vector<LatticeVector> gens;
    for (const auto& w : d_->facets)
        if (std::all_of(fg.begin(), fg.end(), [&](const LatticeVector& g) { return dot(w, g) == 0; }))
            gens.push_back(w);
    for (const auto& e : d_->equations) {
        gens.push_back(e);
        gens.push_back(neg(e));
    }
    return generated(d_->n, gens);
}

bool Cone::is_simplicial() const {
    if (!is_pointed()) return false;
    if (rank(d_->rays) != d_->rays.size()) return false;
    return spans_saturated_basis(d_->rays);
}

LatticeVector Cone::barycenter() const {
    if (!is_simplicial()) fail(ErrorKind::NotSimplicial, str());
    return relint_point();
}

Cone Cone::opposite_face(const Cone& f) const {
    if (!is_simplicial()) fail(ErrorKind::NotSimplicial, str());
    if (!is_face(f)) fail(ErrorKind::NotAFace, f.str() + " in " + str());
    std::vector<LatticeVector> gens;
    for (const auto& r : d_->rays)
        if (!f.contains(r)) gens.push_back(r);
    return generated(d_->n, gens);
}

bool operator==(const Cone& a, const Cone& b) {
    if (a.d_ == b.d_) return true;
    return a.d_->n == b.d_->n && a.d_->rays == b.d_->rays && a.d_->lineality == b.d_->lineality;
}

bool operator<(const Cone& a, const Cone& b) {
    if (a.d_->n != b.d_->n) return a.d_->n < b.d_->n;
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.d_->rays != b.d_->rays) return a.d_->rays < b.d_->rays;
    return a.d_->lineality < b.d_->lineality;
}

std::string Cone::str() const {
    std::ostringstream os;
    os << "cone{";
    for (std::size_t i = 0; i < d_->rays.size(); ++i) os << (i ? "," : "") << to_string(d_->rays[i]);
    os << '}';
    if (!d_->lineality.empty()) {
        os << "+lin{";
        for (std::size_t i = 0; i < d_->lineality.size(); ++i)
            os << (i ? "," : "") << to_string(d_->lineality[i]);
        os << '}';
    }
    return os.str();
}

Cone sum(const Cone& a, const Cone& b) {
    if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::DimensionMismatch, "sum");
    auto g = a.generators();
    auto h = b.generators();
    g.insert(g.end(), h.begin(), h.end());
    return Cone::generated(a.ambient_dim(), g);
}

Cone intersection(const Cone& a, const Cone& b) {
    if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::DimensionMismatch, "intersection");
    auto f = a.facets();
    f.insert(f.end(), b.facets().begin(), b.facets().end());
    auto e = a.equations();
    e.insert(e.end(), b.equations().begin(), b.equations().end());
    return Cone::from_inequalities(a.ambient_dim(), f, e);
}

Cone intersection(const std::vector<Cone>& cs, std::size_t n) {
    std::vector<LatticeVector> f, e;
    for (const auto& c : cs) {
        if (c.ambient_dim() != n) fail(ErrorKind::DimensionMismatch, "intersection");
        f.insert(f.end(), c.facets().begin(), c.facets().end());
        e.insert(e.end(), c.equations().begin(), c.equations().end());
    }
    return Cone::from_inequalities(n, f, e);
}

}  // namespace polyfan
