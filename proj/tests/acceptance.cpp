// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Time budgets are fixed here and count as part of the criterion.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "polyfan/cli.hpp"
#include "polyfan/newton.hpp"
#include "polyfan/subdivide.hpp"
#include "polyfan/upward.hpp"
#include "test_util.hpp"

using namespace polyfan;
using testutil::lv;

namespace {

struct Outcome {
    std::vector<std::string> failures;
    std::string summary;

    void require(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok) ++failed;
    }
    std::size_t failed = 0;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;  // 0: no time bound
    std::function<Outcome()> run;
};

Cone gen2(const LatticeVector& a, const LatticeVector& b) { return Cone::generated(a.size(), {a, b}); }
Cone gen3(const LatticeVector& a, const LatticeVector& b, const LatticeVector& c) {
    return Cone::generated(a.size(), {a, b, c});
}

Polynomial ring_of(std::size_t nvars, Field f) {
    std::vector<std::string> names = nvars == 2 ? std::vector<std::string>{"x", "z"}
                                                : std::vector<std::string>{"x", "y", "z"};
    return Polynomial(f, names, nvars - 1);
}

Outcome duality() {
    Outcome o;
    std::mt19937 rng(101);
    std::size_t cones = 0;
    for (int t = 0; t < 240; ++t) {
        std::size_t n = 2 + t % 3;
        Cone s = Cone::generated(n, testutil::random_vectors(rng, n, 1 + t % 5, 3));
        Cone u = Cone::generated(n, testutil::random_vectors(rng, n, 1 + (t / 5) % 5, 3));
        cones += 2;
        o.require(s.dual().dual() == s, "dual(dual(C)) ≠ C for " + s.str());
        o.require(sum(s, u).dual() == intersection(s.dual(), u.dual()), "(S+T)∨ ≠ S∨∩T∨ for " + s.str() + ", " + u.str());
        o.require(intersection(s, u).dual() == sum(s.dual(), u.dual()), "(S∩T)∨ ≠ S∨+T∨ for " + s.str() + ", " + u.str());
    }
    o.summary = std::to_string(cones) + " cones";
    return o;
}

Outcome ord_in_calculus() {
    Outcome o;
    std::mt19937_64 rng(202);
    std::size_t pairs = 0;
    for (int t = 0; t < 120; ++t) {
        Field f = t % 2 ? Field::prime(5) : Field::rationals();
        Polynomial ring = ring_of(2 + t % 2, f);
        Polynomial a = random_polynomial(rng, ring), b = random_polynomial(rng, ring);
        RationalVector w(ring.nvars());
        std::uniform_int_distribution<long> num(0, 4), den(1, 3);
        for (auto& x : w) {
            x = Rational(num(rng), den(rng));
            x.canonicalize();
        }
        ++pairs;
        const std::string tag = " for (" + a.str() + ", " + b.str() + ") over " + f.str() + " at " + to_string(w);
        auto oa = ord_in(w, a), ob = ord_in(w, b), oab = ord_in(w, a * b);
        o.require(*oab.ord == *oa.ord + *ob.ord, "ord not additive" + tag);
        o.require(oab.in == oa.in * ob.in, "in not multiplicative" + tag);
        auto os = ord_in(w, a + b);
        if (*oa.ord != *ob.ord) {
            const auto& lo = *oa.ord < *ob.ord ? oa : ob;
            o.require(*os.ord == *lo.ord && os.in == lo.in, "sum rule (distinct orders)" + tag);
        } else if (!(oa.in + ob.in).is_zero()) {
            o.require(*os.ord == *oa.ord && os.in == oa.in + ob.in, "sum rule (equal orders)" + tag);
        } else {
            o.require(!os.ord || *os.ord > *oa.ord, "sum rule (cancelling initial forms)" + tag);
        }
    }
    o.summary = std::to_string(pairs) + " pairs";
    return o;
}

Outcome newton_minkowski() {
    Outcome o;
    std::mt19937_64 rng(303);
    for (int t = 0; t < 60; ++t) {
        Field f = t % 3 == 0 ? Field::prime(5) : Field::rationals();
        Polynomial ring = ring_of(2 + t % 2, f);
        Polynomial a = random_polynomial(rng, ring), b = random_polynomial(rng, ring);
        auto ga = newton_polyhedron(a), gb = newton_polyhedron(b), gab = newton_polyhedron(a * b);
        const std::string tag = " for (" + a.str() + ", " + b.str() + ")";
        o.require(gab == minkowski_sum(ga, gb), "Γ₊(φψ) ≠ Γ₊(φ)+Γ₊(ψ)" + tag);
        o.require(gab.face_cone_decomposition() ==
                      real_intersection({ga.face_cone_decomposition(), gb.face_cone_decomposition()}, ring.nvars()),
                  "D(Γ₊(φψ)) is not the real intersection" + tag);
    }
    o.summary = "60 pairs";
    return o;
}

Outcome face_cone_oracles() {
    Outcome o;
    std::mt19937 rng(404);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 2 + t % 3;
        auto s = testutil::random_polyhedron(rng, n);
        o.require(s.face_cone_decomposition() == s.face_cone_decomposition_direct(),
                  "direct and homogenized D(S|V) differ in dim " + std::to_string(n));
    }
    o.summary = "60 polyhedra, dims 2-4";
    return o;
}

Outcome fixtures() {
    Outcome o;
    const std::size_t n = 3;
    LatticeVector b1 = lv({1, 0, 0}), b2 = lv({0, 1, 0}), b3 = lv({0, 0, 1});
    LatticeVector b12 = add(b1, b2), b13 = add(b1, b3), b23 = add(b2, b3), b123 = add(b12, b3);
    std::vector<Cone> t{gen3(b1, b12, b13),   gen3(b2, b23, b12),   gen3(b3, b13, b23),
                        gen3(b123, b12, b13), gen3(b123, b23, b12), gen3(b123, b13, b23)};
    Fan e = Fan::face_closure(n, t);
    Cone s = Cone::orthant(n);
    Fan fs = Fan::of_cone(s);
    o.require(e.is_simplicial(), "the displayed fan is not simplicial");
    o.require(is_full_subdivision(e, fs), "the displayed fan is not a full subdivision of F(S)");
    for (const auto& f : s.faces_of_dim(2))
        o.require(!is_subdivision(e, star_subdivision(fs, f)), "it subdivides F(S) * " + f.str());
    o.require(!is_subdivision(e, star_subdivision(fs, s)), "it subdivides F(S) * S");

    Cone f1 = gen2(b1, b3), f2 = gen2(b2, b3);
    Fan left = iterated(fs, {f1, f2, gen2(b13, b2)}), right = iterated(fs, {f2, f1, gen2(b23, b1)});
    o.require(left == right, "the two iterated subdivisions differ");
    o.require(left.rays().size() == 6, "the iterated subdivision does not have 6 rays");
    o.summary = "T(1..6) fan and the two-order iterated subdivision";
    return o;
}

Outcome basic_contract() {
    Outcome o;
    std::mt19937 rng(606);
    std::size_t count = 0;
    for (int t = 0; t < 36; ++t) {
        std::size_t n = 2 + t % 2;
        auto hc = oracle::random_hc(rng, n, t % 3);
        std::vector<Cone> base;
        for (const auto& r : hc.C.rays())
            if (r != hc.H) base.push_back(r);
        std::uniform_int_distribution<std::size_t> pick(0, base.size() - 1), len(0, 4);
        std::vector<Cone> e;
        for (std::size_t k = len(rng); k > 0; --k) e.push_back(base[pick(rng)]);
        auto b = basic_subdivision(hc.H, hc.C, e);
        ++count;
        for (const auto& v : oracle::basic_subdivision_violations(b, oracle::random_points_in(rng, hc.C, 25)))
            o.require(false, "dim " + std::to_string(n) + ", m = " + std::to_string(e.size()) + ": " + v);
    }
    o.summary = std::to_string(count) + " sextuplets";
    return o;
}

Outcome worked_example() {
    Outcome o;
    Polynomial p = parse_polynomial("z^2 + x^3");
    TripleContext ctx = orthant_context(newton_polyhedron(p), p.z_index());
    auto cf = characteristic_function(ctx);
    o.require(cf.gamma == std::vector<Rational>{Rational(3, 2)}, "γ ≠ 3/2");
    o.require(cf.m == 2 && cf.mbar == 1, "(m, m̄) ≠ (2, 1)");
    auto usd = upward_subdivide(ctx);
    o.require(usd.M == 3, "M ≠ 3");
    o.require(usd.final_fan.ray_vectors() ==
                  std::vector<LatticeVector>{lv({0, 1}), lv({1, 0}), lv({1, 1}), lv({1, 2}), lv({2, 3})},
              "final ray set differs");
    o.require(is_subdivision(usd.final_fan, real_intersection({ctx.S.face_cone_decomposition(), ctx.C}, 2)),
              "final fan does not subdivide D(S|V)");
    o.require(usd.trace.front().height == 2, "top height ≠ 2");
    o.require(usd.trace.front().sub_heights == std::vector<Rational>{0, 1, 0}, "sub-heights ≠ {0, 1, 0}");
    for (const auto& l : usd.trace)
        if (l.depth == 1 && l.height > 0)
            o.require(l.sub_heights == std::vector<Rational>{0, 0}, "the height-1 level does not drop to 0");
    for (const auto& v : oracle::usd_violations(ctx, usd)) o.require(false, v);
    o.summary = "γ = 3/2, m = 2, m̄ = 1, M = 3";
    return o;
}

Outcome height_battery() {
    Outcome o;
    std::mt19937_64 rng(808);
    std::size_t count = 0, equality = 0, levels = 0, thetas = 0;
    for (int t = 0; t < 30; ++t) {
        std::size_t nv = 2 + t % 2;
        long h = 2 + t % 3;
        Polynomial p = random_z_simple(rng, nv, h);
        const std::string tag = " for " + p.str();
        try {
            TripleContext ctx = orthant_context(newton_polyhedron(p), p.z_index());
            auto usd = upward_subdivide(ctx);
            ++count;
            o.require(usd.trace.front().height == h, "height ≠ " + std::to_string(h) + tag);
            for (const auto& l : usd.trace) {
                if (l.height == 0) continue;
                ++levels;
                for (std::size_t i = 0; i < l.sub_heights.size(); ++i) {
                    o.require(l.sub_heights[i] < l.height, "a sub-height does not drop" + tag);
                    if (i < l.mbar) o.require(l.sub_heights[i] == 0, "B(i) for i ≤ m̄ has nonzero height" + tag);
                }
            }
            const auto& top = usd.trace.front();
            auto soft = verify_height_inequality(ctx, basic_subdivision(ctx.H, ctx.C, top.E), top.mbar);
            for (const auto& v : soft.violations) o.require(false, v + tag);
            auto hard = verify_hard_height_inequality(ctx, usd);
            for (const auto& v : hard.violations) o.require(false, v + tag);
            equality += hard.equality_cases;
            thetas += hard.checked;
        } catch (const Error& e) {
            o.require(false, e.what() + tag);
        }
    }
    o.summary = std::to_string(count) + " polynomials, " + std::to_string(levels) + " levels, " +
                std::to_string(thetas) + " cones, " + std::to_string(equality) + " equality cases";
    o.require(count >= 25, "fewer than 25 polynomials completed");
    return o;
}

Outcome removable_elimination() {
    Outcome o;
    auto one = eliminate_removable(parse_polynomial("(z+x)^2 + x^3"));
    o.require(one.steps.size() == 1, "(z+x)²+x³ took " + std::to_string(one.steps.size()) + " steps");
    o.require(one.result == parse_polynomial("z^2 + x^3"), "(z+x)²+x³ gave " + one.result.str());
    auto two = eliminate_removable(parse_polynomial("(z+x+x^2)^2"));
    o.require(two.steps.size() == 2, "(z+x+x²)² took " + std::to_string(two.steps.size()) + " steps");
    o.require(two.result == parse_polynomial("z^2"), "(z+x+x²)² gave " + two.result.str());
    for (std::size_t i = 1; i < two.steps.size(); ++i)
        o.require(two.steps[i - 1].weight < two.steps[i].weight, "⟨δ̄₀, c(F)⟩ does not increase");
    o.require(z_removable_faces(parse_polynomial("z^2 - x^2")).empty(), "z²−x² over Q has a removable face");
    o.summary = "1 step, 2 steps, none";
    return o;
}

Outcome determinism() {
    Outcome o;
    RunConfig cfg;
    std::vector<std::string> inputs{"z^2 + x^3", "z^2 + x^2*y^2", "z^2 + x*y"};
    std::mt19937_64 rng(cfg.seed);
    for (int t = 0; t < 4; ++t) inputs.push_back(random_z_simple(rng, 2 + t % 2, 2 + t % 3).str());
    for (const auto& in : inputs) {
        auto a = cmd_usd(in, cfg), b = cmd_usd(in, cfg);
        o.require(a.exit_code == ExitCode::Ok, "usd failed on " + in + ": " + a.err);
        o.require(a.out == b.out, "two usd runs differ on " + in);
        auto r = cmd_replay(a.out, cfg);
        o.require(r.exit_code == ExitCode::Ok, "replay does not reproduce the fan of " + in);
    }
    cfg.battery = 10;
    o.require(cmd_verify(cfg).out == cmd_verify(cfg).out, "two seeded verify runs differ");
    o.summary = std::to_string(inputs.size()) + " traces";
    return o;
}

}  // namespace

int main() {
    std::vector<Criterion> all{
        {1, "exact duality", 5, duality},
        {2, "ord/in calculus", 5, ord_in_calculus},
        {3, "Newton-Minkowski", 0, newton_minkowski},
        {4, "face-cone oracle agreement", 0, face_cone_oracles},
        {5, "subdivision fixtures", 0, fixtures},
        {6, "basic-subdivision contract", 0, basic_contract},
        {7, "worked end-to-end z^2+x^3", 1, worked_example},
        {8, "height-inequality battery", 60, height_battery},
        {9, "removable-face elimination", 0, removable_elimination},
        {10, "determinism and replay", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("threw: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && secs >= c.budget_s) o.require(false, "over the time budget");
        bool pass = o.failed == 0;
        failed += !pass;
        std::ostringstream line;
        line << (pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << "  " << c.name << ": " << o.summary
             << " (" << std::fixed << std::setprecision(3) << secs << " s";
        if (c.budget_s > 0) line << " of " << c.budget_s << " s";
        line << ")";
        std::cout << line.str() << "\n";
        for (const auto& f : o.failures) std::cout << "      " << f << "\n";
        if (o.failed > o.failures.size()) std::cout << "      ... " << o.failed - o.failures.size() << " more\n";
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
    return failed == 0 ? 0 : 1;
}
