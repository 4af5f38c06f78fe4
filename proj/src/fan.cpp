#include "polyfan/fan.hpp"

#include <algorithm>

#include "polyfan/error.hpp"

namespace polyfan {

namespace {

void sort_unique(std::vector<Cone>& cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
}

bool sorted_contains(const std::vector<Cone>& cs, const Cone& c) { return std::binary_search(cs.begin(), cs.end(), c); }

void check_common_face(const Cone& a, const Cone& b) {
    Cone k = intersection(a, b);
    if (!a.is_face(k) || !b.is_face(k))
        fail(ErrorKind::BadIntersection, a.str() + " ∩ " + b.str() + " = " + k.str() + " is not a common face");
}

std::vector<Cone> maximal_of(const std::vector<Cone>& cs) {
    std::vector<Cone> out;
    for (const auto& c : cs) {
        bool is_max = true;
        for (const auto& d : cs)
            if (d.dim() > c.dim() && d.contains(c)) {
                is_max = false;
                break;
            }
        if (is_max) out.push_back(c);
    }
    return out;
}

}  // namespace

Fan Fan::from_cones_unchecked(std::size_t n, std::vector<Cone> cones) {
    for (const auto& c : cones)
        if (c.ambient_dim() != n) fail(ErrorKind::DimensionMismatch, "fan cone " + c.str());
    sort_unique(cones);
    Fan f;
    f.n_ = n;
    f.cones_ = std::move(cones);
    f.max_ = maximal_of(f.cones_);
    return f;
}

Fan Fan::validate(std::size_t n, const std::vector<Cone>& input) {
    Fan f = from_cones_unchecked(n, input);
    if (f.cones_.empty()) fail(ErrorKind::Empty, "a fan needs at least one cone");
    for (const auto& c : f.cones_)
        for (const auto& face : c.face_lattice())
            if (!sorted_contains(f.cones_, *face.cone))
                fail(ErrorKind::NotFaceClosed, c.str() + " is missing its face " + face.cone->str());
    auto mx = f.maximal();
    for (const auto& c : f.cones_)
        for (const auto& m : mx)
            if (c != m) check_common_face(c, m);
    return f;
}

Fan Fan::face_closure(std::size_t n, const std::vector<Cone>& input) {
    std::vector<Cone> in = input;
    sort_unique(in);
    if (in.empty()) fail(ErrorKind::Empty, "face closure of nothing");
    for (std::size_t i = 0; i < in.size(); ++i)
        for (std::size_t j = i + 1; j < in.size(); ++j) check_common_face(in[i], in[j]);
    std::vector<Cone> all;
    for (const auto& c : in)
        for (const auto& face : c.face_lattice()) all.push_back(*face.cone);
    return from_cones_unchecked(n, all);
}

Fan Fan::of_cone(const Cone& c) {
    std::vector<Cone> all;
    for (const auto& face : c.face_lattice()) all.push_back(*face.cone);
    return from_cones_unchecked(c.ambient_dim(), all);
}

std::size_t Fan::dim() const {
    std::size_t d = 0;
    for (const auto& c : cones_) d = std::max(d, c.dim());
    return d;
}

bool Fan::contains(const Cone& c) const { return sorted_contains(cones_, c); }

std::vector<Cone> Fan::of_dim(std::size_t d) const {
    std::vector<Cone> out;
    for (const auto& c : cones_)
        if (c.dim() == d) out.push_back(c);
    return out;
}

std::vector<Cone> Fan::rays() const {
    std::vector<Cone> out;
    for (const auto& c : cones_)
        if (c.dim() == 1 && c.is_pointed()) out.push_back(c);
    return out;
}

std::vector<LatticeVector> Fan::ray_vectors() const {
    std::vector<LatticeVector> out;
    for (const auto& r : rays()) out.push_back(r.rays().front());
    std::sort(out.begin(), out.end());
    return out;
}

bool Fan::is_simplicial() const {
    return std::all_of(cones_.begin(), cones_.end(), [](const Cone& c) { return c.is_simplicial(); });
}

Fan Fan::restrict(const Cone& x) const {
    std::vector<Cone> out;
    for (const auto& c : cones_)
        if (x.contains(c)) out.push_back(c);
    return from_cones_unchecked(n_, out);
}

Fan Fan::restrict(const Fan& e) const {
    auto mx = e.maximal();
    std::vector<Cone> out;
    for (const auto& c : cones_)
        if (std::any_of(mx.begin(), mx.end(), [&](const Cone& m) { return m.contains(c); })) out.push_back(c);
    return from_cones_unchecked(n_, out);
}

std::vector<Cone> Fan::star(const Cone& f) const {
    std::vector<Cone> out;
    for (const auto& c : cones_)
        if (c.contains(f)) out.push_back(c);
    return out;
}

std::optional<Cone> Fan::locate(const RationalVector& v) const {
    if (v.size() != n_) fail(ErrorKind::DimensionMismatch, "locate");
    Cone point = Cone::generated(n_, {scale_to_primitive(v)});
    for (const auto& m : maximal()) {
        if (!m.contains(v)) continue;
        Cone f = m.smallest_face_containing(point);
        if (!contains(f)) fail(ErrorKind::Internal, "fan is not face closed at " + f.str());
        return f;
    }
    return std::nullopt;
}

Fan Fan::minus(const std::vector<Cone>& cs) const {
    std::vector<Cone> drop = cs;
    sort_unique(drop);
    std::vector<Cone> out;
    for (const auto& c : cones_)
        if (!sorted_contains(drop, c)) out.push_back(c);
    return from_cones_unchecked(n_, out);
}

bool is_subdivision(const Fan& d, const Fan& e) {
    if (d.ambient_dim() != e.ambient_dim()) return false;
    auto em = e.maximal();
    for (const auto& c : d.maximal())
        if (std::none_of(em.begin(), em.end(), [&](const Cone& m) { return m.contains(c); })) return false;
    return true;
}

bool covers(const Fan& d, const Cone& lambda) {
    if (d.contains(lambda)) return true;
    std::size_t k = lambda.dim();
    std::vector<Cone> full;
    for (const auto& c : d.cones())
        if (c.dim() == k && lambda.contains(c)) full.push_back(c);
    if (full.empty()) return false;
    // Inside a fan, the top-dimensional cones in Λ cover Λ iff every wall not on
    // the boundary of Λ is shared by exactly two of them.
    for (const auto& c : full) {
        for (const auto& wall : c.faces_of_dim(k - 1)) {
            auto wg = wall.generators();
            bool on_boundary = std::any_of(lambda.facets().begin(), lambda.facets().end(), [&](const LatticeVector& f) {
                return std::all_of(wg.begin(), wg.end(), [&](const LatticeVector& g) { return dot(f, g) == 0; });
            });
            if (on_boundary) continue;
            std::size_t sharing = 0;
            for (const auto& o : full)
                if (o.contains(wall)) ++sharing;
            if (sharing != 2) return false;
        }
    }
    return true;
}

bool is_full_subdivision(const Fan& d, const Fan& e) {
    if (!is_subdivision(d, e)) return false;
    for (const auto& m : e.maximal())
        if (!covers(d, m)) return false;
    return true;
}

Fan real_intersection(const std::vector<Fan>& fans, std::size_t n) {
    if (fans.empty()) return Fan::of_cone(Cone::whole_space(n));
    for (const auto& f : fans)
        if (f.ambient_dim() != n) fail(ErrorKind::DimensionMismatch, "real_intersection");
    Fan cur = fans.front();
    for (std::size_t i = 1; i < fans.size(); ++i) {
        std::vector<Cone> pieces;
        auto next = fans[i].maximal();
        for (const auto& a : cur.maximal())
            for (const auto& b : next) pieces.push_back(intersection(a, b));
        sort_unique(pieces);
        std::vector<Cone> all;
        for (const auto& p : pieces)
            for (const auto& face : p.face_lattice()) all.push_back(*face.cone);
        cur = Fan::from_cones_unchecked(n, all);
    }
    return cur;
}

std::optional<Cone> convex_support(const Fan& d) {
    std::vector<LatticeVector> gens;
    for (const auto& m : d.maximal()) {
        auto g = m.generators();
        gens.insert(gens.end(), g.begin(), g.end());
    }
    Cone s = Cone::generated(d.ambient_dim(), gens);
    if (!covers(d, s)) return std::nullopt;
    return s;
}

}  // namespace polyfan
