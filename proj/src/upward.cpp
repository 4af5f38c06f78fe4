#include "polyfan/upward.hpp"

#include <algorithm>
#include <set>

#include "polyfan/error.hpp"

namespace polyfan {

namespace {

const LatticeVector& gen(const Cone& ray) { return ray.rays().front(); }

Cone support_of(const Fan& d) {
    auto s = convex_support(d);
    if (!s) fail(ErrorKind::BadSupport, "the support is not convex");
    if (!s->is_simplicial()) fail(ErrorKind::BadSupport, "the support " + s->str() + " is not simplicial");
    return *s;
}

std::size_t vect_rank(const Fan& c) {
    IntegerMatrix rows;
    for (const auto& m : c.maximal()) {
        auto g = m.generators();
        rows.insert(rows.end(), g.begin(), g.end());
    }
    return rows.empty() ? 0 : rank(rows);
}

Int floor_q(const Rational& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int ceil_q(const Rational& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::string q_str(const Rational& q) { return q.get_str(); }

// Sorts xs by the H-order: Δ ≤ Λ iff Δ + H ⊇ Λ + H. Throws NotHSimple if not total.
void h_order(std::vector<Cone>& xs, const Cone& h) {
    std::vector<Cone> sums;
    for (const auto& x : xs) sums.push_back(sum(x, h));
    std::vector<std::pair<std::size_t, Cone>> ranked;
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::size_t pos = 0;
        for (std::size_t j = 0; j < xs.size(); ++j) pos += sums[j].contains(sums[i]);
        if (!seen.insert(pos).second) fail(ErrorKind::NotHSimple, "H-order is not total at " + xs[i].str());
        ranked.emplace_back(pos, xs[i]);
    }
    std::sort(ranked.begin(), ranked.end());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ranked[i].first != i + 1) fail(ErrorKind::NotHSimple, "H-order is not total");
        xs[i] = ranked[i].second;
    }
}

// Γ ⊄ |C − C/H|: the cone of C holding b_Γ in its relative interior contains H.
bool outside_lower(const Fan& c, const Cone& h, const LatticeVector& v) {
    auto loc = c.locate(v);
    if (!loc) fail(ErrorKind::Internal, to_string(v) + " is outside |C|");
    return loc->contains(h);
}

}  // namespace

bool is_semisimple(const Fan& d) {
    Cone sup = support_of(d);
    const std::size_t top = d.dim();
    for (const auto& c : d.cones())
        if (c.dim() + 1 < top && sup.interior_contains(c.relint_point())) return false;
    return true;
}

bool is_H_weierstrass(const Fan& d, const Cone& h) {
    Cone sup = support_of(d);
    if (h.dim() != 1 || !sup.is_face(h)) fail(ErrorKind::BadSupport, h.str() + " is not an edge of " + sup.str());
    Cone hop = sup.opposite_face(h);
    return d.restrict(hop) == Fan::of_cone(hop);
}

bool is_H_simple(const Fan& d, const Cone& h) { return is_semisimple(d) && is_H_weierstrass(d, h); }

const Rational& StructureConstants::at(std::size_t i, const Cone& e) const {
    if (i == 0 || i > c.size()) fail(ErrorKind::DimensionMismatch, "structure constant index " + std::to_string(i));
    auto it = std::find(edges.begin(), edges.end(), e);
    if (it == edges.end()) fail(ErrorKind::NotAFace, e.str() + " is not an edge of the support");
    return c[i - 1][static_cast<std::size_t>(it - edges.begin())];
}

StructureConstants structure_constants(const Fan& d, const Cone& h) {
    if (!is_H_simple(d, h)) fail(ErrorKind::NotHSimple, "fan is not H-simple for H = " + h.str());
    Cone sup = support_of(d);
    Cone hop = sup.opposite_face(h);
    const std::size_t top = d.dim();

    StructureConstants out;
    out.top = d.of_dim(top);
    for (const auto& w : d.of_dim(top - 1))
        if (sup.interior_contains(w.relint_point())) out.skeleton.push_back(w);
    out.skeleton.push_back(hop);
    if (out.top.size() != out.skeleton.size())
        fail(ErrorKind::NotHSimple, "#D⁰ = " + std::to_string(out.top.size()) + " but #skeleton = " +
                                        std::to_string(out.skeleton.size()));
    h_order(out.top, h);
    h_order(out.skeleton, h);
    if (out.skeleton.front() != hop) fail(ErrorKind::Internal, "H^op is not first in the H-order");

    const LatticeVector& bh = gen(h);
    for (const auto& r : sup.rays())
        if (r != bh) out.edges.push_back(Cone::ray(r));
    for (const auto& wall : out.skeleton) {
        const auto& eqs = wall.equations();
        auto pick = std::find_if(eqs.begin(), eqs.end(), [&](const LatticeVector& e) { return dot(e, bh) != 0; });
        if (pick == eqs.end()) fail(ErrorKind::Internal, "H lies in vect " + wall.str());
        std::vector<Rational> row;
        for (const auto& e : out.edges) {
            Rational c = -Rational(dot(*pick, gen(e))) / Rational(dot(*pick, bh));
            for (const auto& q : eqs)
                if (Rational(dot(q, gen(e))) + c * Rational(dot(q, bh)) != 0)
                    fail(ErrorKind::Internal, "no structure constant for " + e.str() + " at " + wall.str());
            row.push_back(c);
        }
        out.c.push_back(std::move(row));
    }
    return out;
}

PseudoPolyhedron restrict_dual(const PseudoPolyhedron& s, const Cone& theta) {
    return PseudoPolyhedron::construct(s.ambient_dim(), s.skeleton(), theta.dual());
}

Rational polyhedron_height(const Cone& g, const PseudoPolyhedron& s) {
    auto sk = s.skeleton();
    Rational lo = dot(gen(g), sk.front()), hi = lo;
    for (const auto& p : sk) {
        Rational v = dot(gen(g), p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

void validate_context(const TripleContext& ctx) {
    const Fan& c = ctx.C;
    const std::size_t n = ctx.S.ambient_dim();
    auto bad = [](const std::string& why) { fail(ErrorKind::InvalidContext, why); };
    if (c.ambient_dim() != n || ctx.H.ambient_dim() != n) bad("dimension mismatch");
    if (!c.is_simplicial()) bad("C is not simplicial");
    if (c.dim() < 2 || c.dim() != vect_rank(c)) bad("need dim C = dim vect|C| ≥ 2");
    if (ctx.H.dim() != 1 || !c.contains(ctx.H)) bad(ctx.H.str() + " is not a ray of C");
    Cone dual_stab = ctx.S.stabilizer().dual();
    for (const auto& m : c.maximal()) {
        if (m.dim() != c.dim()) bad("C is not pure at " + m.str());
        if (!m.contains(ctx.H)) bad("maximal cone " + m.str() + " misses H");
        if (!dual_stab.contains(m)) bad(m.str() + " ⊄ stab(S)∨");
        if (!is_H_simple(restrict_dual(ctx.S, m).face_cone_decomposition(), ctx.H))
            bad("D(S) ∧ F(" + m.str() + ") is not H-simple");
    }
}

HeightData height_data(const Cone& h, const Fan& c, const PseudoPolyhedron& s) {
    const LatticeVector& bh = gen(h);
    HeightData out;
    std::set<Rational> values;
    for (const auto& f : s.minimal_faces()) {
        bool kept = false;
        Rational v = dot(bh, f.point);
        for (const auto& delta : c.maximal()) {
            Cone x = intersection(f.face_cone, delta);
            if (x.dim() != delta.dim()) continue;
            out.pieces.push_back({v, x});
            kept = true;
        }
        if (kept) {
            out.skeleton.push_back(f.point);
            values.insert(v);
        }
    }
    if (values.empty()) fail(ErrorKind::InvalidContext, "no minimal face meets C");
    out.heights.assign(values.begin(), values.end());
    out.min = out.heights.front();
    out.max = out.heights.back();
    out.height = out.max - out.min;
    out.den = s.denominator();
    return out;
}

HeightData heights(const TripleContext& ctx) {
    validate_context(ctx);
    return height_data(ctx.H, ctx.C, ctx.S);
}

Stratum stratum_from(const HeightData& hd, const Cone& h_ray, std::size_t n, const Rational& h) {
    if (!std::binary_search(hd.heights.begin(), hd.heights.end(), h))
        fail(ErrorKind::NotAHeight, q_str(h) + " is not in the height set");
    std::vector<Cone> at, above;
    for (const auto& p : hd.pieces) {
        if (p.value == h) at.push_back(p.cone);
        if (p.value >= h) above.push_back(p.cone);
    }
    Stratum out{h, face_closure_of(n, at), face_closure_of(n, above), {}, {}};
    const LatticeVector& bh = gen(h_ray);
    const auto& mx = out.D.maximal();
    for (const auto& phi : out.D.of_dim(out.D.dim() - 1)) {
        Cone span = phi.linear_span();
        bool up = true, down = true, any = false;
        for (const auto& lam : mx) {
            if (!lam.contains(phi)) continue;
            any = true;
            Cone tangent = sum(lam, span);
            if (tangent.contains(bh)) up = false;
            if (tangent.contains(neg(bh))) down = false;
        }
        if (!any) continue;
        if (up) out.upper.push_back(phi);
        if (down) out.lower.push_back(phi);
    }
    return out;
}

Stratum strata(const TripleContext& ctx, const Rational& h) {
    return stratum_from(heights(ctx), ctx.H, ctx.S.ambient_dim(), h);
}

std::vector<LineSection> fan_line_sections(const Fan& d, const RationalVector& a, const LatticeVector& b) {
    std::vector<LineSection> out;
    for (const auto& lam : d.maximal())
        if (auto s = line_section(lam, a, b)) out.push_back(*s);
    return out;
}

const Rational& CharacteristicFunction::gamma_of(const Cone& ray) const {
    auto it = std::find(rays.begin(), rays.end(), ray);
    if (it == rays.end()) fail(ErrorKind::NotAFace, ray.str() + " is not a ray of C − C/H");
    return gamma[static_cast<std::size_t>(it - rays.begin())];
}

CharacteristicFunction characteristic_function(const TripleContext& ctx) {
    return characteristic_function(ctx, heights(ctx));
}

CharacteristicFunction characteristic_function(const TripleContext& ctx, const HeightData& hd) {
    if (hd.height == 0) fail(ErrorKind::HeightZero, "height(H, C, S) = 0");
    const std::size_t n = ctx.S.ambient_dim();
    const LatticeVector& bh = gen(ctx.H);
    auto inconsistent = [](const std::string& why) { fail(ErrorKind::InconsistentGamma, why); };

    std::vector<Stratum> strat;
    for (const auto& h : hd.heights) strat.push_back(stratum_from(hd, ctx.H, n, h));
    const Fan& top = strat.back().D;

    CharacteristicFunction cf;
    cf.height_set = hd.heights;
    for (const auto& r : ctx.C.rays())
        if (r != ctx.H) cf.rays.push_back(r);
    for (const auto& e : cf.rays) {
        auto secs = fan_line_sections(top, to_rational(gen(e)), bh);
        Rational g = 0;
        if (!secs.empty()) {
            for (std::size_t k = 0; k < secs.size(); ++k) {
                if (!secs[k].hi) inconsistent("the line through " + e.str() + " has no upper boundary point");
                if (k == 0 || *secs[k].hi > g) g = *secs[k].hi;
            }
        }
        if (g < 0) inconsistent("γ(" + e.str() + ") = " + q_str(g) + " < 0");
        cf.gamma.push_back(g);
    }
    if (std::all_of(cf.gamma.begin(), cf.gamma.end(), [](const Rational& g) { return g == 0; }))
        inconsistent("every γ vanishes although the height is positive");

    // On each maximal Δ whose H-shadow lies under D(max), γ is the second structure constant of D(S + Δ∨).
    for (const auto& delta : ctx.C.maximal()) {
        Cone hop = delta.opposite_face(ctx.H);
        bool inside = !fan_line_sections(top, to_rational(hop.relint_point()), bh).empty();
        bool positive = false;
        for (const auto& r : hop.rays()) positive = positive || cf.gamma_of(Cone::ray(r)) > 0;
        if (inside != positive)
            inconsistent(delta.str() + ": shadow test says " + (inside ? "inside" : "outside") +
                         " but γ positivity disagrees");
        if (!inside) continue;
        auto sc = structure_constants(restrict_dual(ctx.S, delta).face_cone_decomposition(), ctx.H);
        if (sc.r() < 2) inconsistent(delta.str() + ": D(S + Δ∨) has a single maximal cone");
        for (const auto& r : hop.rays()) {
            Cone e = Cone::ray(r);
            if (sc.at(2, e) != cf.gamma_of(e))
                inconsistent("γ(" + e.str() + ") = " + q_str(cf.gamma_of(e)) + " but c(2) on " + delta.str() + " is " +
                             q_str(sc.at(2, e)));
        }
    }

    for (std::size_t k = 0; k < cf.rays.size(); ++k) {
        const Rational& g = cf.gamma[k];
        Int lo = floor_q(g), hi = ceil_q(g);
        cf.mbar += lo.get_ui();
        cf.m += hi.get_ui();
        if (lo == hi) {
            cf.h.emplace_back();
            continue;
        }
        cf.R.push_back(cf.rays[k]);
        RationalVector p = to_rational(add(gen(cf.rays[k]), scale(hi, bh)));
        std::vector<bool> member;
        for (const auto& st : strat) {
            auto secs = fan_line_sections(st.D, p, bh);
            bool in = std::any_of(secs.begin(), secs.end(), [](const LineSection& s) { return s.contains(0); });
            bool rises = std::any_of(secs.begin(), secs.end(), [](const LineSection& s) { return !s.hi || *s.hi > 0; });
            member.push_back(in && rises);
        }
        // The members must be exactly the heights up to some h(Ē) < max.
        std::size_t count = static_cast<std::size_t>(std::count(member.begin(), member.end(), true));
        if (count == 0 || !std::all_of(member.begin(), member.begin() + count, [](bool b) { return b; }))
            inconsistent("heights with the point above " + cf.rays[k].str() + " inside are not an initial segment");
        if (count == member.size()) inconsistent("h(" + cf.rays[k].str() + ") is the maximal height");
        cf.h.emplace_back(hd.heights[count - 1]);
    }
    return cf;
}

std::vector<Cone> compatible_mapping(const CharacteristicFunction& cf) {
    std::vector<Cone> e;
    for (std::size_t k = 0; k < cf.rays.size(); ++k)
        for (Int i = 0; i < floor_q(cf.gamma[k]); ++i) e.push_back(cf.rays[k]);
    std::vector<std::pair<Rational, Cone>> tail;
    for (std::size_t k = 0; k < cf.rays.size(); ++k)
        if (cf.h[k]) tail.emplace_back(*cf.h[k], cf.rays[k]);
    std::stable_sort(tail.begin(), tail.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (const auto& t : tail) e.push_back(t.second);
    return e;
}

bool is_compatible(const CharacteristicFunction& cf, const std::vector<Cone>& e) {
    if (e.size() != cf.m) return false;
    for (std::size_t k = 0; k < cf.rays.size(); ++k) {
        auto head = std::count(e.begin(), e.begin() + static_cast<long>(cf.mbar), cf.rays[k]);
        if (Int(static_cast<long>(head)) != floor_q(cf.gamma[k])) return false;
    }
    std::vector<Cone> tail(e.begin() + static_cast<long>(cf.mbar), e.end());
    std::vector<Cone> sorted = tail;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted != cf.R) return false;
    auto h_of = [&](const Cone& r) {
        auto it = std::find(cf.rays.begin(), cf.rays.end(), r);
        return *cf.h[static_cast<std::size_t>(it - cf.rays.begin())];
    };
    for (std::size_t i = 0; i + 1 < tail.size(); ++i)
        if (h_of(tail[i]) < h_of(tail[i + 1])) return false;
    return true;
}

namespace {

USDResult usd_rec(const TripleContext& ctx, const HeightData& hd, std::size_t depth, bool corrupt,
                  std::vector<UsdLevel>& trace) {
    const std::size_t n = ctx.S.ambient_dim();
    USDResult res;
    std::size_t slot = trace.size();
    {
        UsdLevel lvl;
        lvl.depth = depth;
        lvl.H = ctx.H;
        lvl.max_cones = ctx.C.maximal().size();
        lvl.height = hd.height;
        lvl.height_set = hd.heights;
        trace.push_back(std::move(lvl));
    }
    if (hd.height == 0) {
        res.final_fan = ctx.C;
        res.I[ctx.H] = 1;
        res.A[ctx.H] = ctx.C;
        res.A_main[ctx.H] = ctx.C.cones();
        return res;
    }

    CharacteristicFunction cf = characteristic_function(ctx, hd);
    if (corrupt) {
        auto it = std::find_if(cf.gamma.begin(), cf.gamma.end(), [](const Rational& g) { return g > 0; });
        *it += 1;
        cf.m += 1;
        cf.mbar += 1;
    }
    std::vector<Cone> e = compatible_mapping(cf);
    BasicSubdivision basic = basic_subdivision(ctx.H, ctx.C, e);
    const std::size_t m = cf.m, mbar = cf.mbar;
    trace[slot].rays = cf.rays;
    trace[slot].gamma = cf.gamma;
    trace[slot].E = e;
    trace[slot].m = m;
    trace[slot].mbar = mbar;

    Fan cur = basic.B;
    std::vector<Cone> centers = basic.F;
    std::vector<std::size_t> big_m(m + 2, m);  // M(0..m+1); M(i) = m for i ≤ mbar
    for (std::size_t i = 1; i <= m + 1; ++i) {
        TripleContext sub{basic.Hseq[i - 1], cur.restrict(basic.Bsub[i - 1]), ctx.S};
        std::string where = "level " + std::to_string(depth) + ", B(" + std::to_string(i) + ")";
        try {
            validate_context(sub);
        } catch (const Error& err) {
            fail(ErrorKind::InvalidContext, where + ": " + err.what());
        }
        HeightData sub_hd = height_data(sub.H, sub.C, sub.S);
        trace[slot].sub_heights.push_back(sub_hd.height);
        if (!(sub_hd.height < hd.height))
            fail(ErrorKind::HeightNotDecreased, where + ": height " + q_str(sub_hd.height) + " is not below " +
                                                    q_str(hd.height));
        if (i <= mbar && sub_hd.height != 0)
            fail(ErrorKind::HeightNotDecreased, where + ": height " + q_str(sub_hd.height) + " should be 0");

        USDResult sr = usd_rec(sub, sub_hd, depth + 1, false, trace);
        for (const auto& f : sr.centers) {
            cur = star_subdivision(cur, f);
            centers.push_back(f);
        }
        big_m[i] = big_m[i - 1] + sr.M;
        for (const auto& [gamma, idx] : sr.I) {
            res.I[gamma] = (i - 1) + big_m[i - 1] - m + idx;
            res.A[gamma] = sr.A.at(gamma);
            const auto& sub_main = sr.A_main.at(gamma);
            if (i == m + 1) {
                res.A_main[gamma] = sub_main;
                continue;
            }
            std::vector<Cone> kept;
            for (const auto& theta : sub_main) {
                auto host = basic.B.locate(theta.relint_point());
                if (host && host->contains(basic.G[i - 1])) kept.push_back(theta);
            }
            res.A_main[gamma] = std::move(kept);
        }
    }
    res.M = big_m[m + 1];
    res.centers = std::move(centers);
    res.final_fan = std::move(cur);
    trace[slot].M = res.M;

    // Bookkeeping that must hold for any upward center sequence.
    const Fan& out = res.final_fan;
    if (out.rays().size() != ctx.C.rays().size() + res.M) fail(ErrorKind::Internal, "ray count is not #C₁ + M");
    std::set<Cone> upper_rays;
    for (const auto& r : out.rays())
        if (outside_lower(ctx.C, ctx.H, gen(r))) upper_rays.insert(r);
    std::set<Cone> keys;
    std::set<std::size_t> values;
    for (const auto& [g, i] : res.I) {
        keys.insert(g);
        values.insert(i);
    }
    if (upper_rays != keys || values.size() != res.M + 1 || *values.begin() != 1 || *values.rbegin() != res.M + 1)
        fail(ErrorKind::Internal, "the enumeration I is not a bijection onto 1..M+1");
    if (res.I.at(ctx.H) != res.M + 1) fail(ErrorKind::Internal, "I(H) ≠ M + 1");
    Fan dc = real_intersection({ctx.S.face_cone_decomposition(), ctx.C}, n);
    if (!is_subdivision(out, dc)) fail(ErrorKind::Internal, "result does not subdivide D(S) ∧ C");
    return res;
}

}  // namespace

USDResult upward_subdivide(const TripleContext& ctx, const UsdOptions& opts) {
    validate_context(ctx);
    HeightData hd = height_data(ctx.H, ctx.C, ctx.S);
    USDResult res;
    std::vector<UsdLevel> trace;
    res = usd_rec(ctx, hd, 0, opts.corrupt_gamma && hd.height > 0, trace);
    res.trace = std::move(trace);
    return res;
}

VerificationReport verify_height_inequality(const TripleContext& ctx, const BasicSubdivision& basic,
                                            std::size_t mbar) {
    VerificationReport rep;
    auto violate = [&](const std::string& why) {
        rep.ok = false;
        rep.violations.push_back(why);
    };
    const Rational top = height_data(ctx.H, ctx.C, ctx.S).height;
    for (std::size_t i = 1; i <= basic.m() + 1; ++i) {
        Rational h = height_data(basic.Hseq[i - 1], basic.Bsub[i - 1], ctx.S).height;
        rep.sub_heights.push_back(h);
        ++rep.checked;
        std::string where = "B(" + std::to_string(i) + ") at " + basic.Hseq[i - 1].str();
        if (!(h < top)) violate(where + ": height " + q_str(h) + " ≥ " + q_str(top));
        if (i <= mbar && h != 0) violate(where + ": height " + q_str(h) + " ≠ 0");
    }
    if (mbar < basic.m() + 1) {
        const Cone& hn = basic.Hseq[mbar];
        for (const auto& theta : basic.Bsub[mbar].maximal()) {
            ++rep.checked;
            bool simple = false;
            try {
                simple = is_H_simple(restrict_dual(ctx.S, theta).face_cone_decomposition(), hn);
            } catch (const Error&) {
            }
            if (!simple) violate("D(S) ∧ F(" + theta.str() + ") is not " + hn.str() + "-simple");
        }
    }
    return rep;
}

VerificationReport verify_hard_height_inequality(const TripleContext& ctx, const USDResult& usd) {
    VerificationReport rep;
    auto violate = [&](const Cone& theta, const std::string& why) {
        rep.ok = false;
        rep.violations.push_back("Θ = " + theta.str() + ": " + why);
    };
    const std::size_t n = ctx.S.ambient_dim();
    Fan dc = real_intersection({ctx.S.face_cone_decomposition(), ctx.C}, n);
    std::map<Cone, std::vector<Cone>> owners;
    for (const auto& [g, cones] : usd.A_main)
        for (const auto& theta : cones) owners[theta].push_back(g);

    struct PerDelta {
        PseudoPolyhedron s;
        Rational height;
        bool equality_shape;  // c = 2 and integral second structure constants
    };
    std::map<Cone, PerDelta> cache;
    auto per_delta = [&](const Cone& delta) -> const PerDelta& {
        auto it = cache.find(delta);
        if (it != cache.end()) return it->second;
        PerDelta pd{restrict_dual(ctx.S, delta), 0, false};
        pd.height = polyhedron_height(ctx.H, pd.s);
        if (pd.s.characteristic_number() == 2) {
            auto sc = structure_constants(pd.s.face_cone_decomposition(), ctx.H);
            pd.equality_shape = std::all_of(sc.edges.begin(), sc.edges.end(),
                                            [&](const Cone& e) { return sc.at(2, e).get_den() == 1; });
        }
        return cache.emplace(delta, std::move(pd)).first->second;
    };

    for (const auto& theta : usd.final_fan.cones()) {
        LatticeVector w = theta.relint_point();
        auto delta = ctx.C.locate(w);
        if (!delta) {
            violate(theta, "not inside |C|");
            continue;
        }
        if (!delta->contains(ctx.H)) continue;  // Θ ⊂ |C − C/H|
        ++rep.checked;
        auto lambda = dc.locate(w);
        if (!lambda) {
            violate(theta, "not inside |D(S) ∧ C|");
            continue;
        }
        auto own = owners.find(theta);
        if (own == owners.end() || own->second.size() != 1) {
            violate(theta, "does not lie in exactly one lower main part");
            continue;
        }
        const Cone& g = own->second.front();
        if (!delta->contains(g)) violate(theta, "Γ = " + g.str() + " ⊄ Δ = " + delta->str());

        const PerDelta& pd = per_delta(*delta);
        if (pd.s.face_cone_decomposition().locate(w) != lambda)
            violate(theta, "the face of S + Δ∨ at Θ is not dual to Λ = " + lambda->str());
        auto pts = pd.s.face(w).skeleton();

        if (lambda->dim() == delta->dim()) {
            for (const auto& r : delta->rays()) {
                Rational v0 = dot(r, pts.front());
                for (const auto& p : pts)
                    if (dot(r, p) != v0) violate(theta, "⟨ω, ·⟩ is not constant for ω = " + to_string(r));
            }
            continue;
        }
        if (lambda->dim() + 1 != delta->dim()) {
            violate(theta, "dim Λ = " + std::to_string(lambda->dim()) + " against dim Δ = " + std::to_string(delta->dim()));
            continue;
        }
        if (!(pd.height > 0)) violate(theta, "height(H, S + Δ∨) = 0 across a wall");
        Cone span = lambda->linear_span();
        if (span.contains(g)) violate(theta, "Γ ⊂ vect Λ");
        if (sum(span, g) != sum(span, ctx.H)) violate(theta, "vect Λ + Γ ≠ vect Λ + H");
        Cone joined = sum(theta, g);
        const auto& main = usd.A_main.at(g);
        if (std::find(main.begin(), main.end(), joined) == main.end()) violate(theta, "Θ + Γ ∉ A°(Γ)");
        if (pts.size() != 2) violate(theta, std::to_string(pts.size()) + " minimal faces over a wall");

        Rational lo = dot(gen(g), pts.front()), hi = lo;
        for (const auto& p : pts) {
            Rational v = dot(gen(g), p);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        Rational spread = hi - lo;
        if (spread > pd.height)
            violate(theta, "spread " + q_str(spread) + " exceeds height " + q_str(pd.height));
        bool equal = spread == pd.height;
        if (equal != pd.equality_shape)
            violate(theta, std::string("equality ") + (equal ? "holds" : "fails") + " but the structure constants say " +
                               (pd.equality_shape ? "it should hold" : "it should fail"));
        if (equal) {
            ++rep.equality_cases;
            if (theta != *lambda || g != ctx.H) violate(theta, "equality without Θ = Λ and Γ = H");
        }
    }
    return rep;
}

TripleContext orthant_context(const PseudoPolyhedron& s, std::size_t z) {
    const std::size_t n = s.ambient_dim();
    return {Cone::ray(unit_vector(n, z)), Fan::of_cone(Cone::orthant(n)), s};
}

}  // namespace polyfan
