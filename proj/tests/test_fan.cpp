#include <random>

#include "doctest.h"
#include "polyfan/error.hpp"
#include "polyfan/fan.hpp"
#include "test_util.hpp"

using namespace polyfan;
using testutil::lv;

namespace {

Cone c2(std::initializer_list<long> a, std::initializer_list<long> b) { return Cone::generated(2, {lv(a), lv(b)}); }

// Complete fan of the plane with the given (counterclockwise-sorted) rays.
Fan plane_fan(const std::vector<LatticeVector>& rays) {
    std::vector<Cone> cs;
    for (std::size_t i = 0; i < rays.size(); ++i) cs.push_back(Cone::generated(2, {rays[i], rays[(i + 1) % rays.size()]}));
    return Fan::face_closure(2, cs);
}

}  // namespace

TEST_CASE("validate diagnoses each failing fan condition") {
    CHECK_NOTHROW(Fan::validate(3, [] {
        std::vector<Cone> v;
        for (const auto& f : Cone::orthant(3).face_lattice()) v.push_back(*f.cone);
        return v;
    }()));
    try {
        Fan::validate(2, {Cone::orthant(2)});
        FAIL("expected NotFaceClosed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFaceClosed);
    }
    std::vector<Cone> bad;
    for (const auto& f : c2({1, 0}, {1, 1}).face_lattice()) bad.push_back(*f.cone);
    for (const auto& f : c2({1, 0}, {0, 1}).face_lattice()) bad.push_back(*f.cone);
    try {
        Fan::validate(2, bad);
        FAIL("expected BadIntersection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadIntersection);
    }
    try {
        Fan::validate(2, {});
        FAIL("expected Empty");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Empty);
    }
}

TEST_CASE("face closure") {
    CHECK(Fan::face_closure(2, {Cone::orthant(2)}).size() == 4);
    Fan f = Fan::face_closure(2, {c2({1, 0}, {1, 1}), c2({1, 1}, {0, 1})});
    // two 2-cones, three rays, {0}
    CHECK(f.size() == 6);
    CHECK(Fan::face_closure(2, f.cones()) == f);
    CHECK(Fan::face_closure(2, f.maximal()) == f);
}

TEST_CASE("restriction, star and locate") {
    Fan o = Fan::of_cone(Cone::orthant(2));
    CHECK(o.locate(lv({1, 1})) == Cone::orthant(2));
    CHECK_FALSE(o.locate(lv({-1, 0})));
    auto st = o.star(Cone::ray(lv({1, 0})));
    CHECK(st.size() == 2);
    CHECK(o.restrict(Cone::ray(lv({1, 0}))).size() == 2);
}

TEST_CASE("real intersection") {
    CHECK(real_intersection({}, 2) == Fan::of_cone(Cone::whole_space(2)));
    Fan a = Fan::face_closure(2, {c2({1, 0}, {1, 1}), c2({1, 1}, {0, 1})});
    CHECK(real_intersection({a, a}, 2) == a);
    Fan b = Fan::face_closure(2, {c2({1, 0}, {2, 3}), c2({2, 3}, {0, 1})});
    Fan ab = real_intersection({a, b}, 2);
    std::vector<Cone> expect{c2({1, 0}, {1, 1}), c2({1, 1}, {2, 3}), c2({2, 3}, {0, 1})};
    std::sort(expect.begin(), expect.end());
    CHECK(ab.maximal() == expect);
    CHECK(is_full_subdivision(ab, a));
    CHECK(is_full_subdivision(ab, b));
}

TEST_CASE("subdivision predicates are reflexive, transitive and antisymmetric") {
    Fan o = Fan::of_cone(Cone::orthant(2));
    Fan a = Fan::face_closure(2, {c2({1, 0}, {1, 1}), c2({1, 1}, {0, 1})});
    Fan b = Fan::face_closure(2, {c2({1, 0}, {2, 1}), c2({2, 1}, {1, 1}), c2({1, 1}, {0, 1})});
    CHECK(is_full_subdivision(o, o));
    CHECK(is_full_subdivision(a, o));
    CHECK(is_full_subdivision(b, a));
    CHECK(is_full_subdivision(b, o));
    CHECK_FALSE(is_subdivision(o, a));
    Fan part = Fan::face_closure(2, {c2({1, 0}, {1, 1})});
    CHECK(is_subdivision(part, o));
    CHECK_FALSE(is_full_subdivision(part, o));
}

TEST_CASE("random plane fans: locate partitions the support, meets subdivide both factors") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> d(1, 6);
    auto quadrant_rays = [&] {
        std::set<LatticeVector> inner;
        while (inner.size() < 2) inner.insert(primitive(lv({d(rng), d(rng)})));
        std::vector<LatticeVector> r{lv({1, 0})};
        // slope-sorted so consecutive pairs form a fan of the first quadrant
        std::vector<LatticeVector> in(inner.begin(), inner.end());
        std::sort(in.begin(), in.end(), [](const LatticeVector& p, const LatticeVector& q) {
            return p[1] * q[0] < q[1] * p[0];
        });
        r.insert(r.end(), in.begin(), in.end());
        r.push_back(lv({0, 1}));
        return r;
    };
    for (int t = 0; t < 20; ++t) {
        auto ra = quadrant_rays(), rb = quadrant_rays();
        std::vector<Cone> ca, cb;
        for (std::size_t i = 0; i + 1 < ra.size(); ++i) ca.push_back(Cone::generated(2, {ra[i], ra[i + 1]}));
        for (std::size_t i = 0; i + 1 < rb.size(); ++i) cb.push_back(Cone::generated(2, {rb[i], rb[i + 1]}));
        Fan fa = Fan::face_closure(2, ca), fb = Fan::face_closure(2, cb);
        Fan m = real_intersection({fa, fb}, 2);
        CHECK_NOTHROW(Fan::validate(2, m.cones()));
        CHECK(is_full_subdivision(m, fa));
        CHECK(is_full_subdivision(m, fb));
        for (int s = 0; s < 10; ++s) {
            LatticeVector p = lv({d(rng) - 1, d(rng) - 1});
            std::size_t hits = 0;
            for (const auto& c : m.cones()) hits += c.interior_contains(p);
            CHECK(hits == 1);
            auto loc = m.locate(p);
            REQUIRE(loc);
            CHECK(loc->interior_contains(p));
        }
    }
    CHECK(plane_fan({lv({1, 0}), lv({0, 1}), lv({-1, 0}), lv({0, -1})}).maximal().size() == 4);
}
