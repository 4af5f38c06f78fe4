#include "polyfan/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "polyfan/error.hpp"

namespace polyfan {

using nlohmann::json;

namespace {

json int_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

json vec_json(const LatticeVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(int_json(x));
    return a;
}

json qlist_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

const LatticeVector& ray_gen(const Cone& r) { return r.rays().front(); }

std::size_t index_in(const std::vector<LatticeVector>& table, const LatticeVector& v) {
    auto it = std::lower_bound(table.begin(), table.end(), v);
    if (it == table.end() || *it != v) fail(ErrorKind::Internal, "ray " + to_string(v) + " missing from the ray table");
    return static_cast<std::size_t>(it - table.begin());
}

json report_json(const VerificationReport& r) {
    return {{"ok", r.ok},
            {"checked", r.checked},
            {"equality_cases", r.equality_cases},
            {"sub_heights", qlist_json(r.sub_heights)},
            {"violations", r.violations}};
}

// Scalars and scalar arrays print inline; objects and object arrays expand into dotted paths.
void flatten(const json& j, const std::string& path, std::ostringstream& os) {
    auto scalar_array = [](const json& a) {
        return std::none_of(a.begin(), a.end(), [](const json& x) { return x.is_object(); });
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
    } else if (j.is_array() && !scalar_array(j)) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

std::string render(const json& doc, const RunConfig& cfg) {
    if (cfg.format == OutputFormat::Json) return doc.dump(2) + "\n";
    std::ostringstream os;
    flatten(doc, "", os);
    return os.str();
}

int exit_code_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParseError:
        case ErrorKind::ZeroPolynomial:
        case ErrorKind::TooFewVariables:
            return ExitCode::UsageOrParse;
        case ErrorKind::IterationCapExceeded:
            return ExitCode::IterationCap;
        case ErrorKind::HeightNotDecreased:
        case ErrorKind::InconsistentGamma:
        case ErrorKind::Internal:
            return ExitCode::VerificationFailed;
        default:
            return ExitCode::Precondition;
    }
}

// Runs a handler body, turning library errors into an error document and exit code.
CommandOutput guarded(const RunConfig& cfg, const std::function<CommandOutput()>& body) {
    try {
        return body();
    } catch (const IterationCapError& e) {
        const auto& part = e.partial();
        json steps = json::array();
        for (const auto& s : part.steps) steps.push_back({{"chi", s.chi.str()}, {"weight", int_json(s.weight)}});
        json doc = {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}},
                    {"partial", {{"chi_bar", part.chi_bar.str()}, {"result", part.result.str()}, {"steps", steps}}}};
        return {ExitCode::IterationCap, render(doc, cfg), std::string(e.what()) + "\n"};
    } catch (const Error& e) {
        json doc = {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
        return {exit_code_of(e.kind()), render(doc, cfg), std::string(e.what()) + "\n"};
    }
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

json timing_json(std::chrono::steady_clock::time_point start) {
    auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
    return us.count() / 1000.0;
}

}  // namespace

json fan_to_json(const Fan& f) {
    auto table = f.ray_vectors();
    json rays = json::array(), cones = json::array();
    for (const auto& r : table) rays.push_back(vec_json(r));
    for (const auto& c : f.maximal()) {
        json idx = json::array();
        std::vector<std::size_t> ids;
        for (const auto& r : c.rays()) ids.push_back(index_in(table, r));
        std::sort(ids.begin(), ids.end());
        for (auto i : ids) idx.push_back(i);
        cones.push_back(idx);
    }
    return {{"dim", f.ambient_dim()}, {"lattice", "Z^" + std::to_string(f.ambient_dim())}, {"rays", rays}, {"cones", cones}};
}

namespace {

LatticeVector vec_from_json(const json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) fail(ErrorKind::ParseError, "expected a vector of length " + std::to_string(n));
    LatticeVector v;
    for (const auto& x : j) {
        Int y;
        if (x.is_number_integer()) y = Int(std::to_string(x.get<long long>()));
        else if (x.is_string() && y.set_str(x.get<std::string>(), 10) == 0) {
        } else fail(ErrorKind::ParseError, "bad integer " + x.dump());
        v.push_back(y);
    }
    return v;
}

std::vector<Cone> cones_from_indices(const json& lists, const std::vector<LatticeVector>& table, std::size_t n) {
    std::vector<Cone> out;
    for (const auto& c : lists) {
        std::vector<LatticeVector> gens;
        for (const auto& i : c) {
            auto k = i.get<std::size_t>();
            if (k >= table.size()) fail(ErrorKind::ParseError, "ray index " + std::to_string(k) + " out of range");
            gens.push_back(table[k]);
        }
        out.push_back(Cone::generated(n, gens));
    }
    return out;
}

std::vector<LatticeVector> table_from_json(const json& rays, std::size_t n) {
    std::vector<LatticeVector> table;
    for (const auto& r : rays) table.push_back(vec_from_json(r, n));
    return table;
}

}  // namespace

Fan fan_from_json(const json& j) {
    try {
        auto n = j.at("dim").get<std::size_t>();
        auto table = table_from_json(j.at("rays"), n);
        return Fan::face_closure(n, cones_from_indices(j.at("cones"), table, n));
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }
}

json centers_to_json(const std::vector<Cone>& centers, const std::vector<LatticeVector>& table) {
    json out = json::array();
    for (const auto& c : centers) {
        std::vector<std::size_t> ids;
        for (const auto& r : c.rays()) ids.push_back(index_in(table, r));
        std::sort(ids.begin(), ids.end());
        out.push_back(ids);
    }
    return out;
}

Polynomial read_polynomial(const std::string& source, const RunConfig& cfg) {
    std::string s = trimmed(source);
    if (s.empty()) fail(ErrorKind::ParseError, "empty input");
    if (s.front() == '{') {
        json j = json::parse(s, nullptr, false);
        if (j.is_discarded()) fail(ErrorKind::ParseError, "malformed JSON polynomial");
        return polynomial_from_json(j);
    }
    return parse_polynomial(s, cfg.field, cfg.z);
}

Polynomial random_polynomial(std::mt19937_64& rng, const Polynomial& ring) {
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

Polynomial random_z_simple(std::mt19937_64& rng, std::size_t nvars, long h) {
    std::vector<std::string> names = nvars == 2 ? std::vector<std::string>{"x", "z"}
                                                : std::vector<std::string>{"x", "y", "z"};
    const Polynomial ring(Field{}, names, nvars - 1);
    std::uniform_int_distribution<long> expo(0, 5), zdeg(0, h - 1), coef(1, 3), terms(1, 4);
    Exponent top(nvars, 0);
    top.back() = h;
    for (;;) {
        Polynomial p = Polynomial::monomial(ring, top);
        for (long t = terms(rng); t > 0; --t) {
            Exponent e(nvars, 0);
            for (std::size_t i = 0; i + 1 < nvars; ++i) e[i] = expo(rng);
            e.back() = zdeg(rng);
            if (std::all_of(e.begin(), e.end() - 1, [](long x) { return x == 0; })) continue;
            p.add_term(e, coef(rng));
        }
        ZReport r = z_report(p);
        if (r.z_simple && r.weierstrass && r.b == 0 && r.h == h) return p;
    }
}

CommandOutput cmd_analyze(const std::string& source, const RunConfig& cfg) {
    return guarded(cfg, [&]() -> CommandOutput {
        auto start = std::chrono::steady_clock::now();
        Polynomial p = read_polynomial(source, cfg);
        ZReport r = z_report(p);
        PseudoPolyhedron s = newton_polyhedron(p);
        json skeleton = json::array(), removable = json::array();
        for (const auto& v : r.skeleton) skeleton.push_back(vec_json(v));
        for (const auto& f : r.removable)
            removable.push_back({{"dim", f.dim},
                                 {"witness", vec_json(f.witness)},
                                 {"unit", f.unit.get_str()},
                                 {"chi", f.chi.str()}});
        json doc = {{"input", p.str()},
                    {"polynomial", to_json(p)},
                    {"newton", {{"skeleton", skeleton},
                                {"characteristic_number", s.characteristic_number()},
                                {"normal_crossings", s.characteristic_number() == 1}}},
                    {"z", {{"weierstrass", r.weierstrass},
                           {"b", int_json(r.b)},
                           {"h", int_json(r.h)},
                           {"top_vertex", r.top_vertex ? vec_json(*r.top_vertex) : json(nullptr)},
                           {"z_simple", r.z_simple},
                           {"removable", removable}}}};
        if (cfg.timing) doc["timing_ms"] = timing_json(start);
        return {ExitCode::Ok, render(doc, cfg), ""};
    });
}

CommandOutput cmd_usd(const std::string& source, const RunConfig& cfg) {
    return guarded(cfg, [&]() -> CommandOutput {
        auto start = std::chrono::steady_clock::now();
        Polynomial p = read_polynomial(source, cfg);
        ZReport r = z_report(p);
        if (!r.z_simple)
            fail(ErrorKind::NotZSimple, "the Newton polyhedron of " + p.str() +
                                            " is not z-simple; see `analyze` for removable faces and `zremove`");
        TripleContext ctx = orthant_context(newton_polyhedron(p), p.z_index());
        USDResult usd = upward_subdivide(ctx, {.corrupt_gamma = cfg.inject_fault});

        const auto table = usd.final_fan.ray_vectors();
        json levels = json::array();
        for (const auto& l : usd.trace) {
            json gamma = json::array();
            for (std::size_t k = 0; k < l.rays.size(); ++k)
                gamma.push_back({{"ray", vec_json(ray_gen(l.rays[k]))}, {"gamma", l.gamma[k].get_str()}});
            json e = json::array();
            for (const auto& x : l.E) e.push_back(vec_json(ray_gen(x)));
            levels.push_back({{"depth", l.depth},
                              {"H", vec_json(ray_gen(l.H))},
                              {"max_cones", l.max_cones},
                              {"height", l.height.get_str()},
                              {"height_set", qlist_json(l.height_set)},
                              {"gamma", gamma},
                              {"E", e},
                              {"m", l.m},
                              {"mbar", l.mbar},
                              {"sub_heights", qlist_json(l.sub_heights)},
                              {"M", l.M}});
        }
        json enumeration = json::array();
        for (const auto& [g, i] : usd.I) enumeration.push_back({{"ray", vec_json(ray_gen(g))}, {"I", i}});

        bool ok = true;
        json verification = nullptr;
        if (cfg.verify) {
            verification = json::object();
            if (usd.trace.front().height > 0) {
                const auto& top = usd.trace.front();
                auto basic = basic_subdivision(ctx.H, ctx.C, top.E);
                auto soft = verify_height_inequality(ctx, basic, top.mbar);
                verification["height_inequality"] = report_json(soft);
                ok = ok && soft.ok;
                // γ is recomputed from scratch; a trace that disagrees was not built from it.
                bool gamma_ok = characteristic_function(ctx).gamma == top.gamma;
                verification["gamma_audit"] = gamma_ok;
                ok = ok && gamma_ok;
            }
            auto hard = verify_hard_height_inequality(ctx, usd);
            verification["hard_height_inequality"] = report_json(hard);
            ok = ok && hard.ok;
            verification["ok"] = ok;
        }

        json doc = {{"input", p.str()},
                    {"polynomial", to_json(p)},
                    {"newton", {{"b", int_json(r.b)}, {"h", int_json(r.h)}}},
                    {"H", vec_json(ray_gen(ctx.H))},
                    {"initial_fan", fan_to_json(ctx.C)},
                    {"levels", levels},
                    {"M", usd.M},
                    {"rays", fan_to_json(usd.final_fan)["rays"]},
                    {"centers", centers_to_json(usd.centers, table)},
                    {"enumeration", enumeration},
                    {"final_fan", fan_to_json(usd.final_fan)},
                    {"verification", verification}};
        if (cfg.timing) doc["timing_ms"] = timing_json(start);
        return {ok ? ExitCode::Ok : ExitCode::VerificationFailed, render(doc, cfg),
                ok ? "" : "verification failed\n"};
    });
}

CommandOutput cmd_zremove(const std::string& source, const RunConfig& cfg) {
    return guarded(cfg, [&]() -> CommandOutput {
        auto start = std::chrono::steady_clock::now();
        Polynomial p = read_polynomial(source, cfg);
        EliminationResult res = eliminate_removable(p, cfg.max_iter);
        json steps = json::array();
        for (const auto& s : res.steps)
            steps.push_back({{"witness", vec_json(s.witness)},
                             {"chi", s.chi.str()},
                             {"c", vec_json(s.c)},
                             {"weight", int_json(s.weight)}});
        json doc = {{"input", p.str()},
                    {"chi_bar", res.chi_bar.str()},
                    {"result", res.result.str()},
                    {"steps", steps},
                    {"z_simple", z_report(res.result).z_simple}};
        if (cfg.timing) doc["timing_ms"] = timing_json(start);
        return {ExitCode::Ok, render(doc, cfg), ""};
    });
}

CommandOutput cmd_verify(const RunConfig& cfg) {
    return guarded(cfg, [&]() -> CommandOutput {
        auto start = std::chrono::steady_clock::now();
        std::mt19937_64 rng(cfg.seed);
        struct Suite {
            std::size_t checked = 0, failed = 0;
        };
        std::map<std::string, Suite> suites;
        json witness = nullptr;
        auto record = [&](const std::string& suite, bool pass, const std::string& input, const std::string& detail) {
            auto& s = suites[suite];
            ++s.checked;
            if (pass) return;
            ++s.failed;
            if (witness.is_null()) witness = {{"suite", suite}, {"input", input}, {"detail", detail}};
        };
        auto ring_of = [](std::size_t nvars, Field f) {
            std::vector<std::string> names = nvars == 2 ? std::vector<std::string>{"x", "z"}
                                                        : std::vector<std::string>{"x", "y", "z"};
            return Polynomial(f, names, nvars - 1);
        };

        for (std::size_t t = 0; t < cfg.battery; ++t) {
            Field f = t % 2 ? Field::prime(5) : Field::rationals();
            Polynomial ring = ring_of(2 + t % 2, f);
            Polynomial a = random_polynomial(rng, ring), b = random_polynomial(rng, ring);
            std::string pair = "(" + a.str() + ") * (" + b.str() + ") over " + f.str();

            RationalVector w(ring.nvars());
            std::uniform_int_distribution<long> num(0, 4), den(1, 3);
            for (auto& x : w) {
                x = Rational(num(rng), den(rng));
                x.canonicalize();
            }
            auto oa = ord_in(w, a), ob = ord_in(w, b), oab = ord_in(w, a * b);
            bool mult = *oab.ord == *oa.ord + *ob.ord && oab.in == oa.in * ob.in;
            record("ord_in_product", mult, pair, "weight " + to_string(w));
            auto os = ord_in(w, a + b);
            bool sum_ok;
            if (*oa.ord != *ob.ord) {
                const auto& lo = *oa.ord < *ob.ord ? oa : ob;
                sum_ok = *os.ord == *lo.ord && os.in == lo.in;
            } else if (!(oa.in + ob.in).is_zero()) {
                sum_ok = *os.ord == *oa.ord && os.in == oa.in + ob.in;
            } else {
                sum_ok = !os.ord || *os.ord > *oa.ord;
            }
            record("ord_in_sum", sum_ok, pair, "weight " + to_string(w));

            auto ga = newton_polyhedron(a), gb = newton_polyhedron(b), gab = newton_polyhedron(a * b);
            bool mink = gab == minkowski_sum(ga, gb) &&
                        gab.face_cone_decomposition() ==
                            real_intersection({ga.face_cone_decomposition(), gb.face_cone_decomposition()}, ring.nvars());
            record("newton_minkowski", mink, pair, "Γ₊(φψ) ≠ Γ₊(φ) + Γ₊(ψ) or its fan differs");

            Polynomial z = random_z_simple(rng, 2 + t % 2, 2 + static_cast<long>(t % 3));
            TripleContext ctx = orthant_context(newton_polyhedron(z), z.z_index());
            try {
                USDResult usd = upward_subdivide(ctx, {.corrupt_gamma = cfg.inject_fault});
                const auto& top = usd.trace.front();
                auto basic = basic_subdivision(ctx.H, ctx.C, top.E);
                auto soft = verify_height_inequality(ctx, basic, top.mbar);
                bool audit = characteristic_function(ctx).gamma == top.gamma;
                record("height_inequality", soft.ok && audit, z.str(),
                       !audit ? "recorded γ differs from the recomputed characteristic function"
                              : soft.violations.empty() ? "" : soft.violations.front());
                auto hard = verify_hard_height_inequality(ctx, usd);
                record("hard_height_inequality", hard.ok, z.str(), hard.violations.empty() ? "" : hard.violations.front());
            } catch (const Error& e) {
                record("height_inequality", false, z.str(), e.what());
            }
        }

        bool ok = witness.is_null();
        json sj = json::object();
        for (const auto& [name, s] : suites) sj[name] = {{"checked", s.checked}, {"failed", s.failed}};
        json doc = {{"seed", cfg.seed}, {"battery", cfg.battery}, {"suites", sj}, {"ok", ok}, {"witness", witness}};
        if (cfg.inject_fault) doc["fault_injected"] = true;
        if (cfg.timing) doc["timing_ms"] = timing_json(start);
        return {ok ? ExitCode::Ok : ExitCode::VerificationFailed, render(doc, cfg), ok ? "" : "verification failed\n"};
    });
}

CommandOutput cmd_replay(const std::string& trace, const RunConfig& cfg) {
    return guarded(cfg, [&]() -> CommandOutput {
        json j = json::parse(trace, nullptr, false);
        if (j.is_discarded() || !j.is_object()) fail(ErrorKind::ParseError, "malformed trace document");
        try {
            Fan c = fan_from_json(j.at("initial_fan"));
            const std::size_t n = c.ambient_dim();
            auto table = table_from_json(j.at("rays"), n);
            std::vector<Cone> centers = cones_from_indices(j.at("centers"), table, n);
            Fan out = iterated(c, centers);
            bool same = out == fan_from_json(j.at("final_fan"));
            json doc = {{"centers", centers.size()}, {"final_fan", fan_to_json(out)}, {"reproduced", same}};
            return {same ? ExitCode::Ok : ExitCode::VerificationFailed, render(doc, cfg),
                    same ? "" : "replayed fan differs from the recorded one\n"};
        } catch (const json::exception& e) {
            fail(ErrorKind::ParseError, e.what());
        }
    });
}

}  // namespace polyfan
