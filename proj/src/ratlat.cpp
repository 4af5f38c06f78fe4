#include "polyfan/ratlat.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "polyfan/error.hpp"

namespace polyfan {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotInDual: return "NotInDual";
        case ErrorKind::NotSimplicial: return "NotSimplicial";
        case ErrorKind::NotAFace: return "NotAFace";
        case ErrorKind::NotFaceClosed: return "NotFaceClosed";
        case ErrorKind::BadIntersection: return "BadIntersection";
        case ErrorKind::Empty: return "Empty";
        case ErrorKind::NotInFan: return "NotInFan";
        case ErrorKind::InvalidCenter: return "InvalidCenter";
        case ErrorKind::LinealityMismatch: return "LinealityMismatch";
        case ErrorKind::BadPrerequisites: return "BadPrerequisites";
        case ErrorKind::BadE: return "BadE";
        case ErrorKind::EmptyX: return "EmptyX";
        case ErrorKind::Unbounded: return "Unbounded";
        case ErrorKind::NegativeWeight: return "NegativeWeight";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::TooFewVariables: return "TooFewVariables";
        case ErrorKind::NotWeierstrass: return "NotWeierstrass";
        case ErrorKind::HeightZero: return "HeightZero";
        case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
        case ErrorKind::NotHSimple: return "NotHSimple";
        case ErrorKind::BadSupport: return "BadSupport";
        case ErrorKind::InvalidContext: return "InvalidContext";
        case ErrorKind::NotAHeight: return "NotAHeight";
        case ErrorKind::InconsistentGamma: return "InconsistentGamma";
        case ErrorKind::HeightNotDecreased: return "HeightNotDecreased";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::NotZSimple: return "NotZSimple";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

LatticeVector zero_lattice(std::size_t n) { return LatticeVector(n, Int(0)); }

LatticeVector unit_vector(std::size_t n, std::size_t i) {
    LatticeVector v(n, Int(0));
    v[i] = 1;
    return v;
}

bool is_zero(const LatticeVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

RationalVector to_rational(const LatticeVector& v) {
    RationalVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}

static Int content(const LatticeVector& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

LatticeVector primitive(const LatticeVector& v) {
    Int g = content(v);
    if (g == 0) fail(ErrorKind::ZeroVector, "primitive of the zero vector");
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(r[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
    return r;
}

Int lcm_of_denominators(const RationalVector& v) {
    Int l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

LatticeVector scale_to_primitive(const RationalVector& v) {
    Int l = lcm_of_denominators(v);
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational t = v[i] * l;
        r[i] = t.get_num();
    }
    if (is_zero(r)) return r;
    return primitive(r);
}

Int dot(const LatticeVector& a, const LatticeVector& b) {
    if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "dot");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const LatticeVector& a, const RationalVector& b) {
    if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "dot");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const RationalVector& a, const LatticeVector& b) { return dot(b, a); }

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "dot");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

LatticeVector sub(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

LatticeVector neg(const LatticeVector& a) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

LatticeVector scale(const Int& k, const LatticeVector& a) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RationalVector scale(const Rational& k, const RationalVector& a) {
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, LatticeVector(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.empty()) return {};
    std::size_t inner = b.size();
    std::size_t cols = b.empty() ? 0 : b.front().size();
    IntegerMatrix r(a.size(), LatticeVector(cols, Int(0)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != inner) fail(ErrorKind::DimensionMismatch, "multiply");
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
    return r;
}

Int determinant(const IntegerMatrix& m) {
    std::size_t n = m.size();
    RationalMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = to_rational(m[i]);
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det.get_num();
}

namespace {

// Row/column operations on the working matrix, mirrored into the transforms.
struct SmithWork {
    IntegerMatrix d, left, right;
    std::size_t rows, cols;

    void swap_rows(std::size_t i, std::size_t j) {
        std::swap(d[i], d[j]);
        std::swap(left[i], left[j]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (auto& row : d) std::swap(row[i], row[j]);
        for (auto& row : right) std::swap(row[i], row[j]);
    }
    void add_row(std::size_t dst, std::size_t src, const Int& k) {  // row_dst += k row_src
        for (std::size_t j = 0; j < cols; ++j) d[dst][j] += k * d[src][j];
        for (std::size_t j = 0; j < rows; ++j) left[dst][j] += k * left[src][j];
    }
    void add_col(std::size_t dst, std::size_t src, const Int& k) {
        for (std::size_t i = 0; i < rows; ++i) d[i][dst] += k * d[i][src];
        for (std::size_t i = 0; i < cols; ++i) right[i][dst] += k * right[i][src];
    }
    void negate_row(std::size_t i) {
        for (auto& x : d[i]) x = -x;
        for (auto& x : left[i]) x = -x;
    }
};

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& m, std::size_t cols) {
    SmithWork w{m, identity(m.size()), identity(cols), m.size(), cols};
    for (const auto& row : m)
        if (row.size() != cols) fail(ErrorKind::DimensionMismatch, "smith_normal_form");
    std::size_t lim = std::min(w.rows, w.cols);
    std::vector<Int> divisors;
    for (std::size_t t = 0; t < lim; ++t) {
        for (;;) {
            // Bring the smallest nonzero entry of the trailing block to the pivot.
            std::size_t bi = w.rows, bj = w.cols;
            for (std::size_t i = t; i < w.rows; ++i)
                for (std::size_t j = t; j < w.cols; ++j)
                    if (w.d[i][j] != 0 && (bi == w.rows || abs(w.d[i][j]) < abs(w.d[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == w.rows) goto done;
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < w.rows; ++i) {
                if (w.d[i][t] == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), w.d[i][t].get_mpz_t(), w.d[t][t].get_mpz_t());
                w.add_row(i, t, -q);
                if (w.d[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < w.cols; ++j) {
                if (w.d[t][j] == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), w.d[t][j].get_mpz_t(), w.d[t][t].get_mpz_t());
                w.add_col(j, t, -q);
                if (w.d[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Enforce divisibility of the rest of the block by the pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < w.rows && divides; ++i)
                for (std::size_t j = t + 1; j < w.cols; ++j)
                    if (w.d[i][j] % w.d[t][t] != 0) {
                        w.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (w.d[t][t] < 0) w.negate_row(t);
        divisors.push_back(w.d[t][t]);
    }
done:
    return SmithForm{divisors, w.left, w.right, w.d};
}

RationalMatrix rref(RationalMatrix a) {
    std::size_t rows = a.size();
    if (rows == 0) return a;
    std::size_t cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    a.resize(r);
    return a;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).size(); }

std::size_t rank(const IntegerMatrix& m) {
    RationalMatrix a;
    a.reserve(m.size());
    for (const auto& row : m) a.push_back(to_rational(row));
    return rank(a);
}

IntegerMatrix canonical_row_basis(const IntegerMatrix& rows, std::size_t n) {
    RationalMatrix a;
    for (const auto& row : rows) {
        if (row.size() != n) fail(ErrorKind::DimensionMismatch, "canonical_row_basis");
        a.push_back(to_rational(row));
    }
    IntegerMatrix out;
    for (const auto& row : rref(a)) out.push_back(scale_to_primitive(row));
    return out;
}

IntegerMatrix kernel(const IntegerMatrix& m, std::size_t n) {
    RationalMatrix a;
    for (const auto& row : m) a.push_back(to_rational(row));
    RationalMatrix r = rref(a);
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(n, false);
    for (const auto& row : r) {
        std::size_t c = 0;
        while (row[c] == 0) ++c;
        pivot_col.push_back(c);
        is_pivot[c] = true;
    }
    IntegerMatrix basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(n, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < r.size(); ++i) v[pivot_col[i]] = -r[i][f];
        basis.push_back(scale_to_primitive(v));
    }
    return canonical_row_basis(basis, n);
}

IntegerMatrix integer_kernel(const IntegerMatrix& m, std::size_t n) {
    if (m.empty()) {
        IntegerMatrix id;
        for (std::size_t i = 0; i < n; ++i) id.push_back(unit_vector(n, i));
        return id;
    }
    SmithForm s = smith_normal_form(m, n);
    IntegerMatrix basis;
    for (std::size_t j = s.divisors.size(); j < n; ++j) {
        LatticeVector col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = s.right[i][j];
        basis.push_back(col);
    }
    return basis;
}

bool spans_saturated_basis(const IntegerMatrix& rows) {
    if (rows.empty()) return true;
    std::size_t n = rows.front().size();
    if (rank(rows) != rows.size()) return false;
    SmithForm s = smith_normal_form(rows, n);
    return std::all_of(s.divisors.begin(), s.divisors.end(), [](const Int& d) { return d == 1; });
}

std::optional<RationalVector> solve_rational(const RationalMatrix& a, const RationalVector& b) {
    if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "solve_rational");
    std::size_t cols = a.empty() ? 0 : a.front().size();
    RationalMatrix aug;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != cols) fail(ErrorKind::DimensionMismatch, "solve_rational");
        RationalVector row = a[i];
        row.push_back(b[i]);
        aug.push_back(row);
    }
    RationalMatrix r = rref(aug);
    RationalVector x(cols, Rational(0));
    for (const auto& row : r) {
        std::size_t c = 0;
        while (c <= cols && row[c] == 0) ++c;
        if (c == cols) return std::nullopt;  // 0 = nonzero
        x[c] = row[cols];
    }
    return x;
}

RationalVector project_out(const RationalVector& v, const IntegerMatrix& basis) {
    if (basis.empty()) return v;
    std::size_t k = basis.size();
    RationalMatrix gram(k, RationalVector(k));
    RationalVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = Rational(dot(basis[i], basis[j]));
        rhs[i] = dot(basis[i], v);
    }
    auto c = solve_rational(gram, rhs);
    if (!c) fail(ErrorKind::Internal, "project_out: dependent basis");
    RationalVector r = v;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[j] -= (*c)[i] * basis[i][j];
    return r;
}

std::string to_string(const LatticeVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

std::string to_string(const RationalVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

}  // namespace polyfan
