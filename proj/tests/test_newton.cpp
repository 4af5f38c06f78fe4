#include <random>

#include "doctest.h"
#include "polyfan/newton.hpp"
#include "test_util.hpp"

using namespace polyfan;
using testutil::lv;
using testutil::qv;

namespace {

Polynomial P(const std::string& s, Field f = {}) { return parse_polynomial(s, f); }

// Random polynomial in x, (y,) z with up to five terms of total degree ≤ 5.
Polynomial random_poly(std::mt19937& rng, const Polynomial& ring) {
    std::uniform_int_distribution<long> deg(0, 5), coef(-3, 3), terms(1, 5), den(1, 3);
    Polynomial p = Polynomial::constant(ring, 0);
    while (p.is_zero()) {
        for (long t = terms(rng); t > 0; --t) {
            Exponent e(ring.nvars());
            long budget = deg(rng);
            for (auto& x : e) {
                x = std::uniform_int_distribution<long>(0, budget)(rng);
                budget -= x;
            }
            Rational c(coef(rng), den(rng));
            c.canonicalize();
            if (ring.field().characteristic != 0 && c.get_den() % ring.field().characteristic == 0) continue;
            p.add_term(e, c);
        }
    }
    return p;
}

Polynomial ring_of(std::size_t nvars, Field f) {
    std::vector<std::string> names{"x", "y", "z"};
    if (nvars == 2) names = {"x", "z"};
    return Polynomial(f, names, nvars - 1);
}

RationalVector random_weight(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> d(0, 4), q(1, 3);
    RationalVector w(n);
    for (auto& x : w) {
        x = Rational(d(rng), q(rng));
        x.canonicalize();
    }
    return w;
}

}  // namespace

TEST_CASE("parsing, printing and JSON round-trips") {
    Polynomial p = P("3*x^2*z - 1/2*y*z^3 + 7");
    CHECK(p.vars() == std::vector<std::string>{"x", "y", "z"});
    CHECK(p.str() == "-1/2*y*z^3 + 3*x^2*z + 7");
    CHECK(P(p.str()) == p);
    CHECK(polynomial_from_json(to_json(p)) == p);
    CHECK(P("(z+x)^2 + x^3") == P("z^2 + 2*x*z + x^2 + x^3"));
    CHECK(P("x/2") == P("1/2*x"));
    CHECK(P("z^2").vars() == std::vector<std::string>{"x", "z"});
    CHECK(P("6*x", Field::prime(5)) == P("x", Field::prime(5)));
    CHECK(P("1/2*x", Field::prime(5)).str() == "3*x");
    CHECK_THROWS_AS(P("z^"), Error);
    CHECK_THROWS_AS(P("z $ x"), Error);
    CHECK_THROWS_AS(P("x/z"), Error);
    CHECK_THROWS_AS(Field::prime(6), Error);
    CHECK_THROWS_AS(P("1/5*x", Field::prime(5)), Error);

    auto j = nlohmann::json::parse(R"({"field":{"char":0},"vars":["x","y","z"],"z":"z","terms":[{"c":"3","e":[2,0,1]}]})");
    CHECK(polynomial_from_json(j) == P("3*x^2*z + 0*y"));
    j["z"] = "w";
    CHECK_THROWS_AS(polynomial_from_json(j), Error);

    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        Field f = t % 2 ? Field::prime(5) : Field::rationals();
        Polynomial q = random_poly(rng, ring_of(2 + t % 2, f));
        CHECK(parse_polynomial(q.str(), f).str() == q.str());
        CHECK(polynomial_from_json(to_json(q)) == q);
    }
}

TEST_CASE("ord and initial sums") {
    Polynomial p = P("z^2 + x^3");  // variables (x, z)
    auto r = ord_in(qv({1, 1}), p);
    CHECK(*r.ord == 2);
    CHECK(r.in == P("z^2"));
    r = ord_in(qv({2, 3}), p);
    CHECK(*r.ord == 6);
    CHECK(r.in == p);
    r = ord_in(qv({1, 1}), Polynomial::constant(p, 0));
    CHECK_FALSE(r.ord);
    CHECK(r.in.is_zero());
    CHECK_THROWS_AS(ord_in(qv({-1, 1}), p), Error);
}

TEST_CASE("random pairs: ord is additive, in is multiplicative, the sum rule holds") {
    std::mt19937 rng(5);
    for (int t = 0; t < 120; ++t) {
        Field f = t % 2 ? Field::prime(5) : Field::rationals();
        Polynomial ring = ring_of(2 + t % 2, f);
        Polynomial a = random_poly(rng, ring), b = random_poly(rng, ring);
        RationalVector w = random_weight(rng, ring.nvars());
        auto oa = ord_in(w, a), ob = ord_in(w, b), oab = ord_in(w, a * b);
        CHECK(*oab.ord == *oa.ord + *ob.ord);
        CHECK(oab.in == oa.in * ob.in);
        CHECK(ord_in(w, oa.in).in == oa.in);

        auto os = ord_in(w, a + b);
        if (*oa.ord != *ob.ord) {
            const auto& lo = *oa.ord < *ob.ord ? oa : ob;
            CHECK(*os.ord == *lo.ord);
            CHECK(os.in == lo.in);
        } else if (!(oa.in + ob.in).is_zero()) {
            CHECK(*os.ord == *oa.ord);
            CHECK(os.in == oa.in + ob.in);
        } else {
            CHECK((!os.ord || *os.ord > *oa.ord));
        }
    }
}

TEST_CASE("partial sums and Newton polyhedra") {
    Polynomial p = P("z^2 + 2*x*z + x^2 + x^3");
    CHECK(partial_sum(p.support(), p) == p);
    CHECK(partial_sum(std::vector<LatticeVector>{}, p).is_zero());
    auto edge = newton_polyhedron(p).face(lv({1, 1}));
    CHECK(partial_sum(edge, p) == P("z^2 + 2*x*z + x^2"));

    auto mono = newton_polyhedron(P("x*z"));
    CHECK(mono.characteristic_number() == 1);
    CHECK(mono.skeleton() == std::vector<RationalVector>{qv({1, 1})});
    CHECK(mono.is_newton_polyhedron());
    auto cusp = newton_polyhedron(P("z^2 + x^3"));
    CHECK(cusp.skeleton() == std::vector<RationalVector>{qv({0, 2}), qv({3, 0})});
    auto prod = newton_polyhedron(P("(z^2 + x^3)*(z + x)"));
    CHECK(prod.skeleton() == std::vector<RationalVector>{qv({0, 3}), qv({1, 2}), qv({4, 0})});
    CHECK(prod == minkowski_sum(cusp, newton_polyhedron(P("z + x"))));
    CHECK_THROWS_AS(newton_polyhedron(P("0")), Error);
}

TEST_CASE("random pairs: Newton polyhedron of a product is the Minkowski sum") {
    std::mt19937 rng(17);
    for (int t = 0; t < 60; ++t) {
        Field f = t % 3 == 0 ? Field::prime(5) : Field::rationals();
        Polynomial ring = ring_of(2 + t % 2, f);
        Polynomial a = random_poly(rng, ring), b = random_poly(rng, ring);
        auto ga = newton_polyhedron(a), gb = newton_polyhedron(b), gab = newton_polyhedron(a * b);
        CHECK(gab == minkowski_sum(ga, gb));
        CHECK(gab.face_cone_decomposition() ==
              real_intersection({ga.face_cone_decomposition(), gb.face_cone_decomposition()}, ring.nvars()));
    }
}

TEST_CASE("z-reports") {
    auto r = z_report(P("z^3"));
    CHECK(r.weierstrass);
    CHECK(r.b == 3);
    CHECK(r.h == 0);
    CHECK(*r.top_vertex == lv({0, 3}));
    CHECK(r.z_simple);
    CHECK(r.removable.empty());

    r = z_report(P("z^2 + x^3"));
    CHECK(r.weierstrass);
    CHECK(r.b == 0);
    CHECK(r.h == 2);
    CHECK(r.z_simple);
    CHECK(r.removable.empty());

    r = z_report(P("z^2 + 2*x*z + x^2 + x^3"));
    CHECK(r.h == 2);
    REQUIRE(r.removable.size() == 1);
    CHECK(r.removable[0].chi == P("x"));
    CHECK(r.removable[0].dim == 1);

    // no vertex minimizes both x and y
    r = z_report(P("x + y"));
    CHECK_FALSE(r.weierstrass);
    CHECK_FALSE(r.z_simple);
    CHECK_FALSE(r.top_vertex);

    // a compact 2-face: z^2, x^2, y^2 span a triangle
    r = z_report(P("z^2 + x^2 + y^2"));
    CHECK(r.weierstrass);
    CHECK_FALSE(r.z_simple);

    CHECK_THROWS_AS(z_report(P("0")), Error);
    Polynomial lone(Field{}, {"z"}, 0);
    lone.add_term({2}, 1);
    CHECK_THROWS_AS(z_report(lone), Error);
}

TEST_CASE("random polynomials: every two-variable Newton polyhedron is z-simple") {
    std::mt19937 rng(23);
    for (int t = 0; t < 60; ++t) {
        Polynomial p = random_poly(rng, ring_of(2, Field{}));
        auto r = z_report(p);
        CHECK(r.weierstrass);
        CHECK(r.z_simple);
    }
    // three variables: z_report cross-checks the slope and face criteria internally
    for (int t = 0; t < 60; ++t) {
        Polynomial p = random_poly(rng, ring_of(3, Field{}));
        ZReport r;
        CHECK_NOTHROW(r = z_report(p));
        if (r.z_simple) CHECK(r.weierstrass);
        if (r.weierstrass) CHECK((r.h == 0) == (r.skeleton.size() == 1));
    }
}

TEST_CASE("removable faces") {
    auto faces = z_removable_faces(P("z^2 + 2*x*z + x^2 + x^3"));
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].chi == P("x"));
    CHECK(z_removable_faces(P("z^2 + x^3")).empty());
    CHECK(z_removable_faces(P("z^2 - x^2")).empty());
    CHECK_THROWS_AS(z_removable_faces(P("x + y")), Error);
    CHECK_THROWS_AS(z_removable_faces(P("z^2")), Error);

    // monomial and unit factors: 3·x·z·(z + x·y)^2
    faces = z_removable_faces(P("3*x*z*(z + x*y)^2 + x^5*z"));
    bool found = std::any_of(faces.begin(), faces.end(), [](const RemovableFace& f) {
        return f.chi == P("x*y") && f.unit == 3 && f.dim == 1;
    });
    CHECK(found);

    // characteristic p dividing h: the χ block sits at z^{h − p^δ}
    Field f2 = Field::prime(2), f3 = Field::prime(3);
    faces = z_removable_faces(P("(z + x)^2 + x^3", f2));
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].chi == P("x", f2));
    faces = z_removable_faces(P("(z + x^2)^6 + x^13", f3));
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].chi == P("x^2", f3));
    CHECK(z_removable_faces(P("z^2 + x^3", f2)).empty());
}

TEST_CASE("eliminating removable faces") {
    auto r = eliminate_removable(P("z^2 + 2*x*z + x^2 + x^3"));
    CHECK(r.steps.size() == 1);
    CHECK(r.result == P("z^2 + x^3"));
    CHECK(r.chi_bar == P("x"));

    r = eliminate_removable(P("z^2 + x^3"));
    CHECK(r.steps.empty());
    CHECK(r.result == P("z^2 + x^3"));

    Polynomial psi = P("(z + x + x^2)^2");
    r = eliminate_removable(psi);
    REQUIRE(r.steps.size() == 2);
    CHECK(r.steps[0].chi == P("x"));
    CHECK(r.steps[1].chi == P("x^2"));
    CHECK(r.steps[0].weight == 1);
    CHECK(r.steps[1].weight == 2);
    CHECK(r.result == P("z^2"));
    CHECK(r.chi_bar == P("x + x^2"));
    CHECK(psi.shift_z(-r.chi_bar) == r.result);
    CHECK(z_removable_faces(P("z^2 + x^3")).empty());

    // a genuine root z = -x/(1-x) never terminates on a finite window
    Polynomial root = P("((1 - x)*z + x)^2");
    try {
        eliminate_removable(root, 5);
        FAIL("expected IterationCapExceeded");
    } catch (const IterationCapError& e) {
        CHECK(e.kind() == ErrorKind::IterationCapExceeded);
        CHECK(e.partial().steps.size() == 5);
        for (std::size_t i = 0; i + 1 < e.partial().steps.size(); ++i)
            CHECK(e.partial().steps[i].weight < e.partial().steps[i + 1].weight);
    }
    CHECK_THROWS_AS(eliminate_removable(P("x + y")), Error);
}

TEST_CASE("random squares: elimination leaves no removable faces and weights increase") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> c(1, 3), e(1, 3);
    for (int t = 0; t < 20; ++t) {
        Polynomial ring = ring_of(2 + t % 2, Field{});
        // (z + χ₁)^2 + remainder with χ₁ a sum of two monomials in the non-z variables
        Polynomial chi = Polynomial::constant(ring, 0);
        for (int k = 0; k < 2; ++k) {
            Exponent ex(ring.nvars(), 0);
            ex[0] = e(rng);
            if (ring.nvars() == 3) ex[1] = e(rng) - 1;
            chi.add_term(ex, c(rng));
        }
        Exponent tail(ring.nvars(), 0);
        tail[0] = 9;
        Polynomial psi = (Polynomial::variable(ring, ring.z_index()) + chi).pow(2) + Polynomial::monomial(ring, tail);
        auto r = eliminate_removable(psi);
        CHECK(z_removable_faces(r.result).empty());
        CHECK(psi.shift_z(-r.chi_bar) == r.result);
        for (std::size_t i = 0; i + 1 < r.steps.size(); ++i) CHECK(r.steps[i].weight <= r.steps[i + 1].weight);
    }
}
