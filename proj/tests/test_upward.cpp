#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polyfan/cli.hpp"
#include "polyfan/error.hpp"
#include "polyfan/newton.hpp"
#include "polyfan/upward.hpp"
#include "test_util.hpp"

using namespace polyfan;
using testutil::lv;
using testutil::qv;

namespace {

Cone gen2(const LatticeVector& a, const LatticeVector& b) { return Cone::generated(a.size(), {a, b}); }

std::vector<Cone> sorted(std::vector<Cone> v) {
    std::sort(v.begin(), v.end());
    return v;
}

TripleContext context_of(const std::string& text) {
    Polynomial p = parse_polynomial(text);
    return orthant_context(newton_polyhedron(p), p.z_index());
}

}  // namespace

TEST_CASE("worked case: heights, strata and γ") {
    auto ctx = context_of("z^2 + x^3");
    auto hd = heights(ctx);
    CHECK(hd.heights == std::vector<Rational>{0, 2});
    CHECK(hd.height == 2);
    CHECK(hd.den == 1);

    auto top = strata(ctx, 2);
    CHECK(top.D.maximal() == std::vector<Cone>{gen2(lv({1, 0}), lv({2, 3}))});
    CHECK(top.upper == std::vector<Cone>{Cone::ray(lv({2, 3}))});
    CHECK(top.E == top.D);
    auto bottom = strata(ctx, 0);
    CHECK(bottom.upper.empty());
    CHECK(bottom.D == real_intersection({ctx.S.face_cone_decomposition(), ctx.C}, 2));
    CHECK_THROWS_AS(strata(ctx, 1), Error);

    auto sc = structure_constants(ctx.S.face_cone_decomposition(), ctx.H);
    CHECK(sc.r() == 2);
    CHECK(sc.at(1, Cone::ray(lv({1, 0}))) == 0);
    CHECK(sc.at(2, Cone::ray(lv({1, 0}))) == Rational(3, 2));

    auto cf = characteristic_function(ctx);
    CHECK(cf.rays == std::vector<Cone>{Cone::ray(lv({1, 0}))});
    CHECK(cf.gamma == std::vector<Rational>{Rational(3, 2)});
    CHECK(cf.m == 2);
    CHECK(cf.mbar == 1);
    CHECK(cf.R == cf.rays);
    CHECK(cf.h.front() == Rational(0));
    auto e = compatible_mapping(cf);
    CHECK(e == std::vector<Cone>{Cone::ray(lv({1, 0})), Cone::ray(lv({1, 0}))});
    CHECK(is_compatible(cf, e));
}

TEST_CASE("worked case: the upward subdivision") {
    auto ctx = context_of("z^2 + x^3");
    auto usd = upward_subdivide(ctx);
    CHECK(usd.M == 3);
    CHECK(usd.centers == std::vector<Cone>{Cone::orthant(2), gen2(lv({1, 1}), lv({0, 1})), gen2(lv({1, 1}), lv({1, 2}))});
    CHECK(usd.final_fan.ray_vectors() ==
          std::vector<LatticeVector>{lv({0, 1}), lv({1, 0}), lv({1, 1}), lv({1, 2}), lv({2, 3})});
    CHECK(is_subdivision(usd.final_fan, ctx.S.face_cone_decomposition()));
    CHECK(iterated(ctx.C, usd.centers) == usd.final_fan);
    REQUIRE(usd.trace.size() >= 4);
    CHECK(usd.trace[0].height == 2);
    CHECK(usd.trace[0].sub_heights == std::vector<Rational>{0, 1, 0});
    // the middle level runs over cone{(1,1),(1,2)} with H = ray(1,2)
    const UsdLevel* mid = nullptr;
    for (const auto& l : usd.trace)
        if (l.depth == 1 && l.height == 1) mid = &l;
    REQUIRE(mid != nullptr);
    CHECK(mid->H == Cone::ray(lv({1, 2})));
    CHECK(mid->gamma == std::vector<Rational>{1});
    CHECK(mid->rays == std::vector<Cone>{Cone::ray(lv({1, 1}))});

    CHECK(usd.I.at(ctx.H) == 4);
    CHECK(usd.I.at(Cone::ray(lv({1, 1}))) == 1);

    auto basic = basic_subdivision(ctx.H, ctx.C, usd.trace[0].E);
    auto rep = verify_height_inequality(ctx, basic, usd.trace[0].mbar);
    CHECK(rep.ok);
    CHECK(rep.sub_heights == std::vector<Rational>{0, 1, 0});
    auto hard = verify_hard_height_inequality(ctx, usd);
    for (const auto& v : hard.violations) MESSAGE(v);
    CHECK(hard.ok);
    CHECK(oracle::usd_violations(ctx, usd).empty());
}

TEST_CASE("random z-simple polynomials: upward subdivision and both height inequalities") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 12; ++t) {
        std::size_t nv = 2 + t % 2;
        long h = 2 + t % 3;
        Polynomial p = random_z_simple(rng, nv, h);
        auto ctx = orthant_context(newton_polyhedron(p), p.z_index());
        INFO(p.str());
        auto usd = upward_subdivide(ctx);
        CHECK(heights(ctx).height == h);
        auto hard = verify_hard_height_inequality(ctx, usd);
        for (const auto& v : hard.violations) MESSAGE(v);
        CHECK(hard.ok);
        for (const auto& v : oracle::usd_violations(ctx, usd)) FAIL_CHECK(v);
        auto basic = basic_subdivision(ctx.H, ctx.C, usd.trace[0].E);
        auto rep = verify_height_inequality(ctx, basic, usd.trace[0].mbar);
        for (const auto& v : rep.violations) FAIL_CHECK(v);
        CHECK(oracle::basic_subdivision_violations(basic, oracle::random_points_in(rng, ctx.C, 20)).empty());
    }
}

TEST_CASE("height zero: no centers and the fan is unchanged") {
    for (const char* text : {"z^2", "x*z", "y*z^3 + x*y*z^3"}) {
        auto ctx = context_of(text);
        CHECK(heights(ctx).height == 0);
        auto usd = upward_subdivide(ctx);
        CHECK(usd.M == 0);
        CHECK(usd.centers.empty());
        CHECK(usd.final_fan == ctx.C);
        CHECK(usd.I.at(ctx.H) == 1);
        CHECK_THROWS_AS(characteristic_function(ctx), Error);
    }
}

TEST_CASE("a corrupted γ is caught by the height check") {
    auto ctx = context_of("z^2 + x^3");
    try {
        upward_subdivide(ctx, {.corrupt_gamma = true});
        FAIL("corrupted run completed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HeightNotDecreased);
    }
    // When the extra floor copy happens to give an admissible sequence anyway (e.g.
    // γ = 1 → 2 on one ray), the run completes but its recorded γ fails the audit.
    std::mt19937_64 rng(5);
    int thrown = 0;
    for (int t = 0; t < 6; ++t) {
        auto p = random_z_simple(rng, 2 + t % 2, 2 + t % 3);
        auto ctx = orthant_context(newton_polyhedron(p), p.z_index());
        try {
            auto usd = upward_subdivide(ctx, {.corrupt_gamma = true});
            CHECK(usd.trace[0].gamma != characteristic_function(ctx).gamma);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::HeightNotDecreased);
            ++thrown;
        }
    }
    CHECK(thrown > 0);
}

TEST_CASE("equality in the hard inequality: z^2 + x^2*y^2") {
    auto ctx = context_of("z^2 + x^2*y^2");
    auto usd = upward_subdivide(ctx);
    auto hard = verify_hard_height_inequality(ctx, usd);
    for (const auto& v : hard.violations) MESSAGE(v);
    CHECK(hard.ok);
    CHECK(hard.equality_cases > 0);
    CHECK(oracle::usd_violations(ctx, usd).empty());
}

TEST_CASE("semisimplicity fails for a fan with an interior codimension-two cone") {
    // Four 3-cones around the ray (1,1,1) inside the orthant: the ray is interior
    // to the support and has dimension 1 < 3 − 1.
    std::size_t n = 3;
    LatticeVector c = lv({1, 1, 1});
    auto e = [&](std::size_t i) { return unit_vector(n, i); };
    Fan d = Fan::face_closure(n, {Cone::generated(n, {c, e(0), e(1)}), Cone::generated(n, {c, e(1), e(2)}),
                                  Cone::generated(n, {c, e(2), e(0)})});
    CHECK_FALSE(is_semisimple(d));
    CHECK(is_semisimple(Fan::of_cone(Cone::orthant(3))));
}

TEST_CASE("structure constants start at zero and increase along the H-order") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        auto p = random_z_simple(rng, 2 + t % 2, 2 + t % 3);
        auto ctx = orthant_context(newton_polyhedron(p), p.z_index());
        for (const auto& delta : ctx.C.maximal()) {
            Fan d = restrict_dual(ctx.S, delta).face_cone_decomposition();
            auto sc = structure_constants(d, ctx.H);
            for (std::size_t k = 0; k < sc.edges.size(); ++k) {
                CHECK(sc.c[0][k] == 0);
                for (std::size_t i = 1; i < sc.r(); ++i) CHECK(sc.c[i - 1][k] <= sc.c[i][k]);
            }
        }
    }
}

TEST_CASE("strata are nested and heights shrink under restriction") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 8; ++t) {
        auto p = random_z_simple(rng, 2 + t % 2, 2 + t % 3);
        auto ctx = orthant_context(newton_polyhedron(p), p.z_index());
        auto hd = heights(ctx);
        for (std::size_t k = 1; k < hd.heights.size(); ++k) {
            auto lo = strata(ctx, hd.heights[k - 1]), hi = strata(ctx, hd.heights[k]);
            for (const auto& c : hi.D.cones()) CHECK(lo.D.contains(c));
            for (const auto& c : hi.E.cones()) CHECK(hi.D.contains(c));
        }
        // A star subdivision away from H keeps (H, C) admissible and cannot raise the height.
        auto sub = ctx;
        for (const auto& x : ctx.C.cones())
            if (x.dim() == 2 && !x.contains(ctx.H)) {
                sub.C = star_subdivision(ctx.C, x);
                break;
            }
        CHECK(heights(sub).height <= hd.height);
    }
}
