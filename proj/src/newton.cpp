#include "polyfan/newton.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace polyfan {

// ---------------------------------------------------------------- field

Field Field::prime(unsigned long p) {
    if (p < 2) fail(ErrorKind::ParseError, "field characteristic " + std::to_string(p) + " is not prime");
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) fail(ErrorKind::ParseError, "field characteristic " + std::to_string(p) + " is not prime");
    return Field{p};
}

Rational Field::reduce(const Rational& c) const {
    if (characteristic == 0) return c;
    Int p(characteristic), num = c.get_num() % p, den = c.get_den() % p, inv;
    if (den == 0) fail(ErrorKind::ParseError, c.get_str() + " is undefined in F_" + p.get_str());
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    Int r = num * inv % p;
    if (r < 0) r += p;
    return Rational(r);
}

Rational Field::inverse(const Rational& c) const {
    if (c == 0) fail(ErrorKind::Internal, "division by zero");
    if (characteristic == 0) return 1 / c;
    Int p(characteristic), inv, v = c.get_num();
    mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return Rational(inv);
}

std::string Field::str() const { return characteristic == 0 ? "Q" : "F_" + std::to_string(characteristic); }

// ---------------------------------------------------------------- polynomial

Polynomial::Polynomial(Field f, std::vector<std::string> vars, std::size_t z)
    : field_(f), vars_(std::move(vars)), z_(z) {
    if (z_ >= vars_.size()) fail(ErrorKind::ParseError, "designated variable is not among the variables");
}

Polynomial Polynomial::constant(const Polynomial& like, const Rational& c) {
    return monomial(like, Exponent(like.nvars(), 0), c);
}

Polynomial Polynomial::monomial(const Polynomial& like, const Exponent& e, const Rational& c) {
    Polynomial p(like.field_, like.vars_, like.z_);
    p.add_term(e, c);
    return p;
}

Polynomial Polynomial::variable(const Polynomial& like, std::size_t i) {
    Exponent e(like.nvars(), 0);
    e.at(i) = 1;
    return monomial(like, e);
}

Rational Polynomial::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
    if (e.size() != vars_.size()) fail(ErrorKind::DimensionMismatch, "exponent length");
    for (long v : e)
        if (v < 0) fail(ErrorKind::ParseError, "negative exponent");
    Rational sum = field_.reduce(coefficient(e) + field_.reduce(c));
    if (sum == 0)
        terms_.erase(e);
    else
        terms_[e] = sum;
}

std::vector<LatticeVector> Polynomial::support() const {
    std::vector<LatticeVector> out;
    for (const auto& [e, c] : terms_) {
        LatticeVector v;
        for (long x : e) v.emplace_back(x);
        out.push_back(v);
    }
    return out;
}

void Polynomial::check_compatible(const Polynomial& o) const {
    if (field_ != o.field_ || vars_ != o.vars_ || z_ != o.z_)
        fail(ErrorKind::DimensionMismatch, "polynomials over different rings");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(field_, vars_, z_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponent e(e1.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(field_, vars_, z_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

Polynomial Polynomial::pow(unsigned long k) const {
    Polynomial result = constant(*this, 1), base = *this;
    for (; k; k >>= 1) {
        if (k & 1) result = result * base;
        if (k > 1) base = base * base;
    }
    return result;
}

Polynomial Polynomial::z_coefficient(long d) const {
    Polynomial r(field_, vars_, z_);
    for (const auto& [e, c] : terms_)
        if (e[z_] == d) {
            Exponent f = e;
            f[z_] = 0;
            r.add_term(f, c);
        }
    return r;
}

long Polynomial::z_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[z_]);
    return d;
}

Polynomial Polynomial::divide_monomial(const Exponent& m) const {
    Polynomial r(field_, vars_, z_);
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i] -= m[i];
            if (f[i] < 0) fail(ErrorKind::Internal, "monomial does not divide " + str());
        }
        r.add_term(f, c);
    }
    return r;
}

bool Polynomial::involves_z() const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[z_] != 0; });
}

Polynomial Polynomial::shift_z(const Polynomial& s) const {
    check_compatible(s);
    if (s.involves_z()) fail(ErrorKind::Internal, "shift must not involve z");
    Polynomial zs = variable(*this, z_) + s;
    std::vector<Polynomial> powers{constant(*this, 1)};
    Polynomial r(field_, vars_, z_);
    for (const auto& [e, c] : terms_) {
        while (static_cast<long>(powers.size()) <= e[z_]) powers.push_back(powers.back() * zs);
        Exponent rest = e;
        rest[z_] = 0;
        r = r + monomial(*this, rest, c) * powers[e[z_]];
    }
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_ && a.z_ == b.z_ && a.terms_ == b.terms_;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponent, Rational>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [&](const auto& p, const auto& q) {
        if (p.first[z_] != q.first[z_]) return p.first[z_] > q.first[z_];
        return p.first > q.first;
    });
    std::string out;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const auto& [e, c] = ts[k];
        Rational a = abs(c);
        if (k == 0)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            out += a.get_str();
        else if (a == 1)
            out += mono;
        else
            out += a.get_str() + "*" + mono;
    }
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    enum Kind { Number, Name, Op, End } kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char ch = s[i];
        if (std::isspace(ch)) {
            ++i;
        } else if (std::isdigit(ch)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Number, s.substr(i, j - i)});
            i = j;
        } else if (std::isalpha(ch) || ch == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::Name, s.substr(i, j - i)});
            i = j;
        } else if (std::string("+-*/^()").find(static_cast<char>(ch)) != std::string::npos) {
            out.push_back({Token::Op, std::string(1, static_cast<char>(ch))});
            ++i;
        } else {
            fail(ErrorKind::ParseError, "unexpected character '" + std::string(1, static_cast<char>(ch)) + "' at offset " +
                                            std::to_string(i));
        }
    }
    out.push_back({Token::End, ""});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, Polynomial ring, std::vector<std::string> names)
        : toks_(std::move(toks)), ring_(std::move(ring)), names_(std::move(names)) {}

    Polynomial parse() {
        Polynomial p = expr();
        if (peek().kind != Token::End) fail(ErrorKind::ParseError, "trailing input at '" + peek().text + "'");
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool accept(const std::string& op) {
        if (peek().kind == Token::Op && peek().text == op) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept("+"))
                acc = acc + term();
            else if (accept("-"))
                acc = acc - term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            if (accept("*")) {
                acc = acc * unary();
            } else if (accept("/")) {
                Polynomial d = unary();
                if (d.terms().size() != 1 || d.terms().begin()->first != Exponent(ring_.nvars(), 0))
                    fail(ErrorKind::ParseError, "division by a non-constant");
                acc = acc.scaled(ring_.field().inverse(d.terms().begin()->second));
            } else {
                return acc;
            }
        }
    }

    Polynomial unary() {
        if (accept("-")) return -unary();
        if (accept("+")) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (accept("^")) {
            if (peek().kind != Token::Number) fail(ErrorKind::ParseError, "exponent must be a nonnegative integer");
            unsigned long k = std::stoul(toks_[pos_++].text);
            return base.pow(k);
        }
        return base;
    }

    Polynomial atom() {
        const Token& t = peek();
        if (t.kind == Token::Number) {
            ++pos_;
            return Polynomial::constant(ring_, Rational(Int(t.text)));
        }
        if (t.kind == Token::Name) {
            ++pos_;
            auto it = std::find(names_.begin(), names_.end(), t.text);
            return Polynomial::variable(ring_, static_cast<std::size_t>(it - names_.begin()));
        }
        if (accept("(")) {
            Polynomial p = expr();
            if (!accept(")")) fail(ErrorKind::ParseError, "missing ')'");
            return p;
        }
        fail(ErrorKind::ParseError, t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Polynomial ring_;
    std::vector<std::string> names_;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const Field& field, const std::string& z) {
    auto toks = tokenize(text);
    std::set<std::string> others;
    for (const auto& t : toks)
        if (t.kind == Token::Name && t.text != z) others.insert(t.text);
    if (others.empty()) others.insert(z == "x" ? "y" : "x");
    std::vector<std::string> names(others.begin(), others.end());
    names.push_back(z);
    Polynomial ring(field, names, names.size() - 1);
    return Parser(std::move(toks), ring, names).parse();
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
    try {
        Field f;
        if (j.contains("field")) {
            unsigned long p = j.at("field").value("char", 0ul);
            f = p == 0 ? Field::rationals() : Field::prime(p);
        }
        auto vars = j.at("vars").get<std::vector<std::string>>();
        std::string z = j.value("z", std::string("z"));
        auto it = std::find(vars.begin(), vars.end(), z);
        if (it == vars.end()) fail(ErrorKind::ParseError, "z variable '" + z + "' not in vars");
        if (std::set<std::string>(vars.begin(), vars.end()).size() != vars.size())
            fail(ErrorKind::ParseError, "duplicate variable names");
        Polynomial p(f, vars, static_cast<std::size_t>(it - vars.begin()));
        for (const auto& t : j.at("terms")) {
            Rational c;
            if (c.set_str(t.at("c").get<std::string>(), 10) != 0 || c.get_den() == 0)
                fail(ErrorKind::ParseError, "bad coefficient " + t.at("c").dump());
            c.canonicalize();
            auto e = t.at("e").get<Exponent>();
            if (e.size() != vars.size()) fail(ErrorKind::ParseError, "exponent length mismatch");
            p.add_term(e, c);
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, e.what());
    }
}

nlohmann::json to_json(const Polynomial& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"c", c.get_str()}, {"e", e}});
    return {{"field", {{"char", p.field().characteristic}}},
            {"vars", p.vars()},
            {"z", p.vars()[p.z_index()]},
            {"terms", terms}};
}

// ---------------------------------------------------------------- ord / in / ps

OrdIn ord_in(const RationalVector& omega, const Polynomial& phi) {
    if (omega.size() != phi.nvars()) fail(ErrorKind::DimensionMismatch, "weight length");
    for (const auto& w : omega)
        if (w < 0) fail(ErrorKind::NegativeWeight, "weight " + to_string(omega));
    OrdIn r{std::nullopt, Polynomial(phi.field(), phi.vars(), phi.z_index())};
    auto value = [&](const Exponent& e) {
        Rational s = 0;
        for (std::size_t i = 0; i < e.size(); ++i) s += omega[i] * e[i];
        return s;
    };
    for (const auto& [e, c] : phi.terms()) {
        Rational v = value(e);
        if (!r.ord || v < *r.ord) r.ord = v;
    }
    for (const auto& [e, c] : phi.terms())
        if (value(e) == *r.ord) r.in.add_term(e, c);
    return r;
}

Polynomial partial_sum(const PseudoPolyhedron& face, const Polynomial& phi) {
    Cone hom = face.homogenize();
    Polynomial r(phi.field(), phi.vars(), phi.z_index());
    for (const auto& [e, c] : phi.terms()) {
        LatticeVector h;
        for (long x : e) h.emplace_back(x);
        h.emplace_back(1);
        if (hom.contains(h)) r.add_term(e, c);
    }
    return r;
}

Polynomial partial_sum(const std::vector<LatticeVector>& exponents, const Polynomial& phi) {
    std::set<LatticeVector> keep(exponents.begin(), exponents.end());
    Polynomial r(phi.field(), phi.vars(), phi.z_index());
    for (const auto& [e, c] : phi.terms()) {
        LatticeVector v;
        for (long x : e) v.emplace_back(x);
        if (keep.count(v)) r.add_term(e, c);
    }
    return r;
}

PseudoPolyhedron newton_polyhedron(const Polynomial& phi) {
    if (phi.is_zero()) fail(ErrorKind::ZeroPolynomial, "Newton polyhedron of 0");
    std::vector<RationalVector> pts;
    for (const auto& s : phi.support()) pts.push_back(to_rational(s));
    std::vector<LatticeVector> orthant;
    for (std::size_t i = 0; i < phi.nvars(); ++i) orthant.push_back(unit_vector(phi.nvars(), i));
    return PseudoPolyhedron::construct(pts, orthant);
}

// ---------------------------------------------------------------- z-classification

namespace {

struct WeierstrassData {
    PseudoPolyhedron newton;
    std::vector<LatticeVector> vertices;
    bool weierstrass = false;
    Int b, h;
    LatticeVector top;
};

WeierstrassData classify(const Polynomial& phi) {
    if (phi.is_zero()) fail(ErrorKind::ZeroPolynomial, "classification of 0");
    if (phi.nvars() < 2) fail(ErrorKind::TooFewVariables, "need z and at least one other variable");
    WeierstrassData w;
    w.newton = newton_polyhedron(phi);
    for (const auto& p : w.newton.skeleton()) {
        LatticeVector v;
        for (const auto& q : p) v.push_back(q.get_num());
        w.vertices.push_back(v);
    }
    const std::size_t n = phi.nvars(), z = phi.z_index();
    LatticeVector mins = w.vertices.front();
    for (const auto& v : w.vertices)
        for (std::size_t i = 0; i < n; ++i) mins[i] = std::min(mins[i], v[i]);
    Int top = w.vertices.front()[z];
    for (const auto& v : w.vertices) top = std::max(top, v[z]);
    w.b = mins[z];
    w.h = top - w.b;
    for (const auto& v : w.vertices) {
        bool all = true;
        for (std::size_t i = 0; i < n; ++i)
            if (i != z && v[i] != mins[i]) all = false;
        if (all) {
            w.weierstrass = true;
            w.top = v;
        }
    }
    if (w.weierstrass && w.top[z] != w.b + w.h)
        fail(ErrorKind::Internal, "z-top vertex " + to_string(w.top) + " is not at height b + h");
    return w;
}

Exponent to_exponent(const LatticeVector& v) {
    Exponent e;
    for (const auto& x : v) e.push_back(x.get_si());
    return e;
}

// χ with ps = u·mono·(z + χ)^h, or nullopt.
std::optional<std::pair<Rational, Polynomial>> extract_chi(const Polynomial& q, long h) {
    Polynomial top = q.z_coefficient(h);
    const Exponent zero(q.nvars(), 0);
    if (q.z_degree() != h || !top.is_monomial() || top.terms().begin()->first != zero) return std::nullopt;
    const Field& f = q.field();
    Rational u = top.terms().begin()->second;
    long pd = 1;  // p^δ with h = p^δ·h̄, p ∤ h̄
    if (f.characteristic != 0)
        while (h % (pd * static_cast<long>(f.characteristic)) == 0) pd *= static_cast<long>(f.characteristic);
    long hbar = h / pd;
    Polynomial block = q.z_coefficient(h - pd).scaled(f.inverse(f.reduce(u * hbar)));
    Polynomial chi(f, q.vars(), q.z_index());
    for (const auto& [e, c] : block.terms()) {
        Exponent r = e;
        for (auto& x : r) {
            if (x % pd != 0) return std::nullopt;
            x /= pd;
        }
        chi.add_term(r, c);  // c^{1/p^δ} = c in F_p
    }
    if (chi.is_zero() || chi.coefficient(zero) != 0) return std::nullopt;
    Polynomial expect = (Polynomial::variable(q, q.z_index()) + chi).pow(h).scaled(u);
    if (expect != q) return std::nullopt;
    return std::make_pair(u, chi);
}

std::vector<RemovableFace> removable_of(const WeierstrassData& w, const Polynomial& psi) {
    std::vector<RemovableFace> out;
    Exponent mono = to_exponent(w.top);
    mono[psi.z_index()] = w.b.get_si();
    RationalVector a1 = to_rational(w.top);
    for (const auto& f : w.newton.faces()) {
        std::size_t d = f.face->dim();
        if (d == 0 || !f.face->contains(a1)) continue;
        Polynomial q = partial_sum(*f.face, psi).divide_monomial(mono);
        auto found = extract_chi(q, w.h.get_si());
        if (found) out.push_back({*f.face, f.witness, d, found->first, found->second});
    }
    return out;
}

}  // namespace

bool z_simple_by_slopes(const std::vector<LatticeVector>& vertices, std::size_t z) {
    std::vector<LatticeVector> a = vertices;
    std::sort(a.begin(), a.end(), [&](const LatticeVector& p, const LatticeVector& q) { return p[z] > q[z]; });
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i][z] == a[i + 1][z]) return false;
    if (a.size() < 2) return true;
    const std::size_t n = a.front().size();
    for (std::size_t x = 0; x < n; ++x)
        if (x != z && a[1][x] - a[0][x] < 0) return false;
    for (std::size_t i = 0; i + 2 < a.size(); ++i)
        for (std::size_t x = 0; x < n; ++x) {
            if (x == z) continue;
            Rational lhs(a[i + 1][x] - a[i][x], a[i][z] - a[i + 1][z]);
            Rational rhs(a[i + 2][x] - a[i + 1][x], a[i + 1][z] - a[i + 2][z]);
            lhs.canonicalize();
            rhs.canonicalize();
            if (lhs > rhs) return false;
        }
    return true;
}

ZReport z_report(const Polynomial& phi) {
    WeierstrassData w = classify(phi);
    ZReport r;
    r.weierstrass = w.weierstrass;
    r.b = w.b;
    r.h = w.h;
    r.skeleton = w.vertices;
    if (w.weierstrass) r.top_vertex = w.top;

    bool by_faces = w.weierstrass;
    for (const auto& f : w.newton.faces())
        if (f.face->is_compact() && f.face->dim() > 1) by_faces = false;
    bool by_slopes = z_simple_by_slopes(w.vertices, phi.z_index());
    if (by_faces != by_slopes)
        fail(ErrorKind::Internal, "z-simplicity tests disagree on " + phi.str());
    r.z_simple = by_slopes;

    if (w.weierstrass && w.h > 0) r.removable = removable_of(w, phi);
    return r;
}

std::vector<RemovableFace> z_removable_faces(const Polynomial& psi) {
    WeierstrassData w = classify(psi);
    if (!w.weierstrass) fail(ErrorKind::NotWeierstrass, psi.str());
    if (w.h == 0) fail(ErrorKind::HeightZero, psi.str());
    return removable_of(w, psi);
}

EliminationResult eliminate_removable(const Polynomial& psi, std::size_t max_iter) {
    WeierstrassData w = classify(psi);
    if (!w.weierstrass) fail(ErrorKind::NotWeierstrass, psi.str());
    EliminationResult r{Polynomial(psi.field(), psi.vars(), psi.z_index()), psi, {}};
    if (w.h == 0) return r;
    const std::size_t z = psi.z_index();
    for (;;) {
        // a finite window can lose all of its height, as in (z + χ)^h -> z^h
        if (classify(r.result).h == 0) return r;
        auto faces = z_removable_faces(r.result);
        if (faces.empty()) return r;
        if (r.steps.size() >= max_iter)
            throw IterationCapError("still removable after " + std::to_string(max_iter) + " substitutions", r);
        std::optional<EliminationStep> best;
        for (const auto& f : faces) {
            if (f.dim != 1) continue;
            if (!f.chi.is_monomial()) fail(ErrorKind::Internal, "χ on an edge has several terms: " + f.chi.str());
            LatticeVector c;
            for (long x : f.chi.terms().begin()->first) c.emplace_back(x);
            Int weight = 0;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != z) weight += c[i];
            if (!best || weight < best->weight || (weight == best->weight && c < best->c))
                best = EliminationStep{f.witness, f.chi, c, weight};
        }
        if (!best) fail(ErrorKind::Internal, "removable faces but none of dimension one");
        r.result = r.result.shift_z(-best->chi);
        r.chi_bar = r.chi_bar + best->chi;
        r.steps.push_back(*best);
    }
}

}  // namespace polyfan
