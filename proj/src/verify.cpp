#include "zdense/verify.hpp"

#include "zdense/errors.hpp"
#include "zdense/linalg.hpp"

#include <boost/sort/spreadsort/integer_sort.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>

namespace zdense {

namespace {

constexpr unsigned kParseDigits = 60;

double to_double(const Real& x) { return x.convert_to<double>(); }
cplx to_cplx(const BigComplex& z) { return {to_double(z.re), to_double(z.im)}; }

json complex_to_json(const BigComplex& z, unsigned digits) {
    return json::array({to_decimal(z.re, digits), to_decimal(z.im, digits)});
}

BigComplex complex_from_json(const json& j) {
    try {
        return BigComplex(Real(j.at(0).get<std::string>()), Real(j.at(1).get<std::string>()));
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad complex number: ") + e.what());
    }
}

std::vector<BigComplex> vector_from_json(const json& j) {
    std::vector<BigComplex> v;
    for (const auto& z : j) v.push_back(complex_from_json(z));
    return v;
}

std::string letter_name(const std::vector<std::string>& names, int letter) {
    const std::string& base = names[static_cast<std::size_t>(letter / 2)];
    return letter % 2 == 0 ? base : base + "^-1";
}

std::string word_string(const std::vector<std::string>& names, const std::vector<int>& word) {
    if (word.empty()) return "1";
    std::string s;
    for (int l : word) {
        if (!s.empty()) s += ' ';
        s += letter_name(names, l);
    }
    return s;
}

long long checked_mul(long long a, long long b, bool& overflow) {
    long long r = 0;
    if (__builtin_mul_overflow(a, b, &r)) overflow = true;
    return r;
}

long long checked_add(long long a, long long b, bool& overflow) {
    long long r = 0;
    if (__builtin_add_overflow(a, b, &r)) overflow = true;
    return r;
}

IntMat2 mul_checked(const IntMat2& x, const IntMat2& y, bool& overflow) {
    return {checked_add(checked_mul(x[0], y[0], overflow), checked_mul(x[1], y[2], overflow), overflow),
            checked_add(checked_mul(x[0], y[1], overflow), checked_mul(x[1], y[3], overflow), overflow),
            checked_add(checked_mul(x[2], y[0], overflow), checked_mul(x[3], y[2], overflow), overflow),
            checked_add(checked_mul(x[2], y[1], overflow), checked_mul(x[3], y[3], overflow), overflow)};
}

std::string mat_string(const IntMat2& m) {
    return "[[" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "],[" +
           std::to_string(m[2]) + "," + std::to_string(m[3]) + "]]";
}

// ---------------------------------------------------------------------------
// Ping-pong helpers
// ---------------------------------------------------------------------------

struct Interval {
    Rational lo, hi;  // lo < hi
};

std::string interval_string(const Interval& iv, bool open) {
    auto r = [](const Rational& q) {
        return boost::multiprecision::denominator(q) == 1 ? boost::multiprecision::numerator(q).str()
                                                         : format_rational(q);
    };
    return std::string(open ? "(" : "[") + r(iv.lo) + ", " + r(iv.hi) + (open ? ")" : "]");
}

/// Isometric intervals of g and g^-1 for c != 0 plus the tangency point when
/// they touch.
struct FordSet {
    Interval of_g, of_inv;
    std::optional<Rational> tangent;
};

FordSet ford_set(const IntMat2& m) {
    const Rational a(m[0]), c(m[2]), d(m[3]);
    const Rational r = Rational(1) / abs(c);
    FordSet f;
    f.of_g = {-d / c - r, -d / c + r};
    f.of_inv = {a / c - r, a / c + r};
    if (f.of_g.hi == f.of_inv.lo) f.tangent = f.of_g.hi;
    if (f.of_inv.hi == f.of_g.lo) f.tangent = f.of_inv.hi;
    return f;
}

bool open_meets_closed(const Interval& open, const Interval& closed) {
    return !(open.hi <= closed.lo || closed.hi <= open.lo);
}

bool point_in_closed(const Rational& p, const Interval& closed) {
    return closed.lo <= p && p <= closed.hi;
}

IntMat2 positive_trace(IntMat2 m) {
    if (m[0] + m[3] < 0)
        for (auto& x : m) x = -x;
    return m;
}

// ---------------------------------------------------------------------------
// Generic element arithmetic for word enumeration
// ---------------------------------------------------------------------------

struct Elem {
    std::vector<cplx> lin;  // diagonal (affine) or 4 matrix entries
    std::vector<cplx> t;
};

struct Algebra {
    bool matrix = false;
    int dim = 0;

    Elem identity() const {
        Elem e;
        if (matrix) {
            e.lin = {1.0, 0.0, 0.0, 1.0};
        } else {
            e.lin.assign(static_cast<std::size_t>(dim), 1.0);
        }
        e.t.assign(static_cast<std::size_t>(dim), 0.0);
        return e;
    }

    std::vector<cplx> apply(const Elem& g, const std::vector<cplx>& v) const {
        std::vector<cplx> out(v.size());
        if (matrix) {
            out[0] = g.lin[0] * v[0] + g.lin[1] * v[1];
            out[1] = g.lin[2] * v[0] + g.lin[3] * v[1];
        } else {
            for (std::size_t i = 0; i < v.size(); ++i) out[i] = g.lin[i] * v[i];
        }
        return out;
    }

    // (L, t)(M, s) = (LM, t + L s)
    Elem mul(const Elem& g, const Elem& h) const {
        Elem r;
        if (matrix) {
            const auto& x = g.lin;
            const auto& y = h.lin;
            r.lin = {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                     x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
        } else {
            r.lin.resize(g.lin.size());
            for (std::size_t i = 0; i < g.lin.size(); ++i) r.lin[i] = g.lin[i] * h.lin[i];
        }
        if (!g.t.empty()) {
            r.t = apply(g, h.t);
            for (std::size_t i = 0; i < r.t.size(); ++i) r.t[i] += g.t[i];
        }
        return r;
    }

    Elem inverse(const Elem& g) const {
        Elem r;
        if (matrix) {
            const auto& x = g.lin;
            const cplx det = x[0] * x[3] - x[1] * x[2];
            r.lin = {x[3] / det, -x[1] / det, -x[2] / det, x[0] / det};
        } else {
            for (const auto& z : g.lin) r.lin.push_back(1.0 / z);
        }
        if (!g.t.empty()) {
            r.t = apply(r, g.t);
            for (auto& z : r.t) z = -z;
        }
        return r;
    }

    double distance(const Elem& g) const {
        double lin = 0;
        if (matrix) {
            // operator norm of g - I
            const cplx a = g.lin[0] - 1.0, b = g.lin[1], c = g.lin[2], d = g.lin[3] - 1.0;
            const double fro = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
            const double det = std::abs(a * d - b * c);
            const double disc = std::max(0.0, fro * fro - 4 * det * det);
            lin = std::sqrt((fro + std::sqrt(disc)) / 2);
        } else {
            for (const auto& z : g.lin) lin = std::max(lin, std::abs(z - 1.0));
        }
        double tn = 0;
        for (const auto& z : g.t) tn += std::norm(z);
        return std::max(lin, std::sqrt(tn));
    }
};

std::int64_t round_coordinate(double x) {
    if (std::fabs(x) < 1e6) return std::llround(x * 1e12);
    int e = 0;
    const double m = std::frexp(x, &e);
    const auto q = static_cast<std::int64_t>(std::llround(m * 1099511627776.0));  // 2^40
    return static_cast<std::int64_t>(0x4000000000000000LL) ^ (q << 12) ^ e;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Key {
    std::uint64_t a = 0, b = 0;
    bool operator==(const Key&) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key& k) const { return static_cast<std::size_t>(k.a ^ (k.b * 31)); }
};

Key element_key(const Elem& g) {
    Key k{0x12345678ULL, 0x9abcdef0ULL};
    auto feed = [&](double x) {
        const auto q = static_cast<std::uint64_t>(round_coordinate(x));
        k.a = splitmix(k.a ^ q);
        k.b = splitmix(k.b + q * 0x100000001b3ULL);
    };
    for (const auto& z : g.lin) {
        feed(z.real());
        feed(z.imag());
    }
    for (const auto& z : g.t) {
        feed(z.real());
        feed(z.imag());
    }
    return k;
}

std::vector<Elem> letters_of(const GeneratorSet& gens, const Algebra& alg) {
    std::vector<Elem> letters;
    auto push = [&](Elem e) {
        letters.push_back(e);
        letters.push_back(alg.inverse(e));
    };
    if (gens.kind == GeneratorSet::Kind::Affine) {
        for (const auto& a : gens.affine) {
            Elem e;
            for (const auto& z : a.diag) e.lin.push_back(to_cplx(z));
            for (const auto& z : a.translation) e.t.push_back(to_cplx(z));
            push(std::move(e));
        }
    } else {
        for (const auto& m : gens.matrices) {
            Elem e;
            for (const auto& z : m.m) e.lin.push_back(to_cplx(z));
            if (m.translation.empty()) {
                e.t.assign(static_cast<std::size_t>(gens.dim), 0.0);
            } else {
                for (const auto& z : m.translation) e.t.push_back(to_cplx(z));
            }
            push(std::move(e));
        }
    }
    return letters;
}

// Exact integer matrices modulo 2^64 (wrapping arithmetic) for hashing.
struct WrapMat {
    std::uint64_t a, b, c, d;
};

WrapMat wrap_mul(const WrapMat& x, const WrapMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

std::uint64_t wrap_hash(const WrapMat& m) {
    return splitmix(splitmix(splitmix(splitmix(m.a) ^ m.b) ^ m.c) ^ m.d);
}

WrapMat to_wrap(const IntMat2& m) {
    return {static_cast<std::uint64_t>(m[0]), static_cast<std::uint64_t>(m[1]),
            static_cast<std::uint64_t>(m[2]), static_cast<std::uint64_t>(m[3])};
}

using BigMat = std::array<Integer, 4>;

BigMat big_mul(const BigMat& x, const BigMat& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

/// Calls visit(hash, encoded word) for every reduced word of length <= max_len
/// (including the empty word). Words are encoded 4 bits per letter above a
/// 4-bit length.
template <class Visit>
class WordWalker {
public:
    WordWalker(const std::vector<WrapMat>& letters, int max_len, Visit& visit)
        : letters_(letters), max_len_(max_len), visit_(visit),
          stack_(static_cast<std::size_t>(max_len) + 1), word_(static_cast<std::size_t>(max_len) + 1, -2) {}

    void run() {
        stack_[0] = {1, 0, 0, 1};
        visit_(wrap_hash(stack_[0]), 0);
        if (max_len_ > 0) rec(0, 0);
    }

private:
    void rec(int depth, std::uint64_t code) {
        const int n = static_cast<int>(letters_.size());
        const auto d = static_cast<std::size_t>(depth);
        const int forbidden = depth > 0 ? (word_[d - 1] ^ 1) : -1;
        for (int l = 0; l < n; ++l) {
            if (l == forbidden) continue;
            word_[d] = l;
            stack_[d + 1] = wrap_mul(stack_[d], letters_[static_cast<std::size_t>(l)]);
            const std::uint64_t c = code | (static_cast<std::uint64_t>(l) << (4 + 4 * depth));
            visit_(wrap_hash(stack_[d + 1]), c | static_cast<std::uint64_t>(depth + 1));
            if (depth + 1 < max_len_) rec(depth + 1, c);
        }
    }

    const std::vector<WrapMat>& letters_;
    int max_len_;
    Visit& visit_;
    std::vector<WrapMat> stack_;
    std::vector<int> word_;
};

template <class Visit>
void for_each_word_hash(const std::vector<WrapMat>& letters, int max_len, Visit visit) {
    WordWalker<Visit>(letters, max_len, visit).run();
}

std::vector<int> decode_word(std::uint64_t code) {
    std::vector<int> w;
    const int len = static_cast<int>(code & 15);
    for (int i = 0; i < len; ++i) w.push_back(static_cast<int>((code >> (4 + 4 * i)) & 15));
    return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// GeneratorSet
// ---------------------------------------------------------------------------

std::vector<std::string> GeneratorSet::names() const {
    std::vector<std::string> out;
    if (kind == Kind::Affine) {
        for (const auto& a : affine) out.push_back(a.name);
    } else {
        for (const auto& m : matrices) out.push_back(m.name);
    }
    return out;
}

GeneratorSet make_affine_set(int dim) {
    GeneratorSet g;
    g.kind = GeneratorSet::Kind::Affine;
    g.dim = dim;
    return g;
}

MatrixElement make_int_matrix(const std::string& name, const IntMat2& m) {
    MatrixElement e;
    e.name = name;
    for (std::size_t i = 0; i < 4; ++i) e.m[i] = BigComplex(Real(m[i]));
    e.exact = m;
    return e;
}

json generator_set_to_json(const GeneratorSet& gens, unsigned digits) {
    json doc;
    doc["kind"] = gens.kind == GeneratorSet::Kind::Affine ? "Affine" : "Matrix2x2";
    doc["dim"] = gens.dim;
    json elems = json::array();
    if (gens.kind == GeneratorSet::Kind::Affine) {
        for (const auto& a : gens.affine) {
            json e;
            e["name"] = a.name;
            e["diag"] = json::array();
            for (const auto& z : a.diag) e["diag"].push_back(complex_to_json(z, digits));
            e["translation"] = json::array();
            for (const auto& z : a.translation) e["translation"].push_back(complex_to_json(z, digits));
            elems.push_back(std::move(e));
        }
    } else {
        for (const auto& m : gens.matrices) {
            json e;
            e["name"] = m.name;
            e["matrix"] = json::array({json::array({complex_to_json(m.m[0], digits),
                                                    complex_to_json(m.m[1], digits)}),
                                       json::array({complex_to_json(m.m[2], digits),
                                                    complex_to_json(m.m[3], digits)})});
            if (m.exact) {
                const auto& x = *m.exact;
                e["exact"] = json::array({json::array({x[0], x[1]}), json::array({x[2], x[3]})});
            }
            if (!m.translation.empty()) {
                e["translation"] = json::array();
                for (const auto& z : m.translation)
                    e["translation"].push_back(complex_to_json(z, digits));
            }
            elems.push_back(std::move(e));
        }
    }
    doc["elements"] = std::move(elems);
    return doc;
}

GeneratorSet generator_set_from_json(const json& doc) {
    validate_against_schema(generator_set_schema(), doc, "generator set");
    PrecisionScope scope(kParseDigits);
    GeneratorSet g;
    g.kind = doc.at("kind") == "Affine" ? GeneratorSet::Kind::Affine : GeneratorSet::Kind::Matrix2x2;
    g.dim = doc.at("dim").get<int>();
    const auto dim = static_cast<std::size_t>(g.dim);
    const Real tol("1e-9");
    for (const auto& e : doc.at("elements")) {
        const std::string name = e.at("name").get<std::string>();
        if (g.kind == GeneratorSet::Kind::Affine) {
            AffineElement a;
            a.name = name;
            a.diag = e.contains("diag") ? vector_from_json(e["diag"])
                                        : std::vector<BigComplex>(dim, BigComplex(Real(1)));
            a.translation = e.contains("translation")
                                ? vector_from_json(e["translation"])
                                : std::vector<BigComplex>(dim, BigComplex(Real(0)));
            if (a.diag.size() != dim || a.translation.size() != dim) {
                throw ShapeMismatch("element '" + name + "' does not have dimension " +
                                    std::to_string(g.dim));
            }
            for (const auto& z : a.diag) {
                if (z.abs() == 0) throw ParseError("element '" + name + "' has a zero diagonal entry");
            }
            g.affine.push_back(std::move(a));
        } else {
            MatrixElement m;
            m.name = name;
            if (e.contains("exact")) {
                const auto& x = e["exact"];
                m.exact = IntMat2{x[0][0].get<long long>(), x[0][1].get<long long>(),
                                  x[1][0].get<long long>(), x[1][1].get<long long>()};
            }
            if (e.contains("matrix")) {
                const auto& x = e["matrix"];
                m.m = {complex_from_json(x[0][0]), complex_from_json(x[0][1]),
                       complex_from_json(x[1][0]), complex_from_json(x[1][1])};
            } else if (m.exact) {
                for (std::size_t i = 0; i < 4; ++i) m.m[i] = BigComplex(Real((*m.exact)[i]));
            } else {
                throw ParseError("element '" + name + "' has neither matrix nor exact");
            }
            if (e.contains("translation")) m.translation = vector_from_json(e["translation"]);
            if (!m.translation.empty() && m.translation.size() != dim) {
                throw ShapeMismatch("element '" + name + "' translation has wrong length");
            }
            if (m.exact) {
                const auto& x = *m.exact;
                if (x[0] * x[3] - x[1] * x[2] != 1) {
                    throw ParseError("element '" + name + "' exact matrix does not have det 1");
                }
                for (std::size_t i = 0; i < 4; ++i) {
                    if ((m.m[i] - BigComplex(Real(x[i]))).abs() > tol) {
                        throw ParseError("element '" + name + "' matrix disagrees with its exact entries");
                    }
                }
            }
            const BigComplex det = m.m[0] * m.m[3] - m.m[1] * m.m[2];
            if ((det - BigComplex(Real(1))).abs() > tol) {
                throw ParseError("element '" + name + "' does not have det 1");
            }
            g.matrices.push_back(std::move(m));
        }
    }
    if (g.kind == GeneratorSet::Kind::Matrix2x2 && g.dim != 0 && g.dim != 2) {
        throw ShapeMismatch("matrix generator sets act on C^2 (dim 0 or 2)");
    }
    return g;
}

// ---------------------------------------------------------------------------
// Integer matrices and ping-pong
// ---------------------------------------------------------------------------

IntMat2 int_mul(const IntMat2& x, const IntMat2& y) {
    bool overflow = false;
    IntMat2 r = mul_checked(x, y, overflow);
    if (overflow) throw Error("integer overflow in 2x2 product");
    return r;
}

IntMat2 int_inverse(const IntMat2& x) { return {x[3], -x[1], -x[2], x[0]}; }

IntMat2 int_pow(const IntMat2& x, long e) {
    IntMat2 base = e < 0 ? int_inverse(x) : x;
    IntMat2 r{1, 0, 0, 1};
    for (long k = std::labs(e); k > 0; k >>= 1) {
        if (k & 1) r = int_mul(r, base);
        if (k > 1) base = int_mul(base, base);
    }
    return r;
}

PingPongCertificate pingpong_certificate(const IntMat2& a_in, const IntMat2& b_in) {
    PingPongCertificate cert;
    for (const auto* m : {&a_in, &b_in}) {
        if ((*m)[0] * (*m)[3] - (*m)[1] * (*m)[2] != 1) {
            cert.reason = "matrix " + mat_string(*m) + " is not in SL_2(Z)";
            return cert;
        }
    }
    const IntMat2 a = positive_trace(a_in);
    const IntMat2 b = positive_trace(b_in);
    const char* label[2] = {"A", "B"};
    const IntMat2* mats[2] = {&a, &b};
    for (int i = 0; i < 2; ++i) {
        const IntMat2& m = *mats[i];
        if (m == IntMat2{1, 0, 0, 1}) {
            cert.reason = std::string(label[i]) + " acts trivially on the projective line";
            return cert;
        }
        if (m[0] + m[3] < 2) {
            cert.reason = std::string(label[i]) + " is elliptic (|trace| < 2)";
            return cert;
        }
    }
    if (a[2] == 0 && b[2] == 0) {
        cert.reason = "both generators fix infinity";
        return cert;
    }
    if (a[2] == 0 || b[2] == 0) {
        const bool a_is_translation = a[2] == 0;
        const IntMat2& t = a_is_translation ? a : b;
        const IntMat2& h = a_is_translation ? b : a;
        const std::string tl = a_is_translation ? "A" : "B";
        const std::string hl = a_is_translation ? "B" : "A";
        // t acts as x -> x + s with a = d = 1 after normalization.
        const Rational s = abs(Rational(t[1]));
        const FordSet f = ford_set(h);
        const Rational lo = std::min(f.of_g.lo, f.of_inv.lo);
        const Rational hi = std::max(f.of_g.hi, f.of_inv.hi);
        if (hi - lo > s) {
            cert.reason = "isometric intervals of " + hl + " span " + interval_string({lo, hi}, false) +
                          ", longer than the translation length of " + tl;
            return cert;
        }
        cert.certified = true;
        cert.reason = "translation ping-pong";
        cert.regions.push_back({tl + "^±n", "complement of " + interval_string({lo, lo + s}, false)});
        std::string hr = interval_string(f.of_g, true) + " u " + interval_string(f.of_inv, true);
        if (f.tangent) {
            hr = interval_string(f.of_g, true) + " u " + interval_string(f.of_inv, true) + " u {" +
                 (boost::multiprecision::denominator(*f.tangent) == 1
                      ? boost::multiprecision::numerator(*f.tangent).str()
                      : format_rational(*f.tangent)) +
                 "}";
        }
        cert.regions.push_back({hl + "^±n", hr});
        return cert;
    }
    const FordSet fa = ford_set(a);
    const FordSet fb = ford_set(b);
    for (const auto* p : {&fa.of_g, &fa.of_inv}) {
        for (const auto* q : {&fb.of_g, &fb.of_inv}) {
            if (open_meets_closed(*p, *q)) {
                cert.reason = "isometric intervals " + interval_string(*p, false) + " and " +
                              interval_string(*q, false) + " overlap";
                return cert;
            }
        }
    }
    if (fa.tangent && (point_in_closed(*fa.tangent, fb.of_g) || point_in_closed(*fa.tangent, fb.of_inv))) {
        cert.reason = "fixed point of A lies in an isometric interval of B";
        return cert;
    }
    if (fb.tangent && (point_in_closed(*fb.tangent, fa.of_g) || point_in_closed(*fb.tangent, fa.of_inv))) {
        cert.reason = "fixed point of B lies in an isometric interval of A";
        return cert;
    }
    cert.certified = true;
    cert.reason = "isometric interval ping-pong";
    cert.regions.push_back({"A", interval_string(fa.of_inv, true)});
    cert.regions.push_back({"A^-1", interval_string(fa.of_g, true)});
    cert.regions.push_back({"B", interval_string(fb.of_inv, true)});
    cert.regions.push_back({"B^-1", interval_string(fb.of_g, true)});
    return cert;
}

PingPongCertificate pingpong_certificate(const MatrixElement& a, const MatrixElement& b) {
    if (!a.exact || !b.exact) {
        PingPongCertificate cert;
        cert.reason = "exact integer matrices required";
        return cert;
    }
    return pingpong_certificate(*a.exact, *b.exact);
}

WordSearchResult exact_identity_word_search(const IntMat2& a, const IntMat2& b, int max_len) {
    WordSearchResult res;
    const IntMat2 letters[4] = {a, int_inverse(a), b, int_inverse(b)};
    const std::vector<std::string> names = {"A", "B"};
    std::vector<int> word;
    std::function<void(const IntMat2&)> rec = [&](const IntMat2& cur) {
        if (res.identity_word || static_cast<int>(word.size()) >= max_len) return;
        for (int l = 0; l < 4; ++l) {
            if (!word.empty() && (l ^ 1) == word.back()) continue;
            bool overflow = false;
            IntMat2 next = mul_checked(cur, letters[l], overflow);
            word.push_back(l);
            ++res.words_checked;
            if (overflow) {
                res.overflow = true;
            } else if (next == IntMat2{1, 0, 0, 1}) {
                res.identity_word = word_string(names, word);
            } else {
                rec(next);
            }
            word.pop_back();
            if (res.identity_word) return;
        }
    };
    rec({1, 0, 0, 1});
    return res;
}

// ---------------------------------------------------------------------------
// Lift
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> lift_projection_words(std::size_t count,
                                                    const std::vector<long>& twist_exponents) {
    std::vector<std::vector<int>> words;
    for (std::size_t i = 0; i < count; ++i) {
        long n = 1;
        if (i >= 2 && i - 2 < twist_exponents.size()) n = twist_exponents[i - 2];
        std::vector<int> w(i, 2);
        for (long k = 0; k < n; ++k) w.push_back(0);
        for (std::size_t k = 0; k < i; ++k) w.push_back(3);
        words.push_back(std::move(w));
    }
    return words;
}

GeneratorSet lift_discrete_dense(const GeneratorSet& free_gens,
                                 const std::vector<std::vector<cplx>>& kernel_sample,
                                 const std::vector<long>& twist_exponents) {
    if (free_gens.kind != GeneratorSet::Kind::Matrix2x2 || free_gens.matrices.size() < 2) {
        throw ShapeMismatch("lift needs a pair of 2x2 matrices");
    }
    if (kernel_sample.empty()) return free_gens;
    const auto& ea = free_gens.matrices[0];
    const auto& eb = free_gens.matrices[1];
    if (!ea.exact || !eb.exact) throw ShapeMismatch("lift needs exact integer matrices");
    if (!pingpong_certificate(*ea.exact, *eb.exact).certified) {
        throw Error("free generators are not certified by ping-pong");
    }
    for (const auto& v : kernel_sample) {
        if (v.size() != 2) throw ShapeMismatch("kernel sample vectors must lie in C^2");
    }
    if (complex_rank(kernel_sample) < 2) {
        throw SpanDeficient("kernel sample spans a proper subspace of C^2");
    }
    if (!twist_exponents.empty() && twist_exponents.size() != kernel_sample.size()) {
        throw ShapeMismatch("one twist exponent per kernel sample vector");
    }
    for (long n : twist_exponents) {
        if (n < 1) throw Error("twist exponents must be >= 1");
    }
    const IntMat2 A = *ea.exact;
    const IntMat2 B = *eb.exact;
    const auto words = lift_projection_words(kernel_sample.size() + 2, twist_exponents);
    GeneratorSet out;
    out.kind = GeneratorSet::Kind::Matrix2x2;
    out.dim = 2;
    for (std::size_t i = 0; i < words.size(); ++i) {
        IntMat2 m{1, 0, 0, 1};
        for (int l : words[i]) {
            const IntMat2 letter = l == 0 ? A : l == 1 ? int_inverse(A) : l == 2 ? B : int_inverse(B);
            m = int_mul(m, letter);
        }
        MatrixElement e = make_int_matrix("b" + std::to_string(i), m);
        e.translation.assign(2, BigComplex(Real(0)));
        if (i >= 2) {
            const auto& s = kernel_sample[i - 2];
            // c_i s_i = (M, 0)(I, s) = (M, M s)
            for (int r = 0; r < 2; ++r) {
                cplx v = static_cast<double>(m[2 * r]) * s[0] + static_cast<double>(m[2 * r + 1]) * s[1];
                e.translation[static_cast<std::size_t>(r)] = BigComplex(Real(v.real()), Real(v.imag()));
            }
        }
        out.matrices.push_back(std::move(e));
    }
    return out;
}

FreeBasisReport stallings_free_basis(const std::vector<std::vector<int>>& words) {
    // Vertex 0 is the base point. adj[v][letter] for letters A, A^-1, B, B^-1.
    std::vector<std::array<int, 4>> adj(1, {-1, -1, -1, -1});
    std::vector<int> parent(1, 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    auto new_vertex = [&]() {
        adj.push_back({-1, -1, -1, -1});
        parent.push_back(static_cast<int>(parent.size()));
        return static_cast<int>(adj.size()) - 1;
    };
    std::vector<std::pair<int, int>> pending;
    auto half_edge = [&](int u, int l, int w) {
        int& slot = adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(l)];
        if (slot < 0) {
            slot = w;
        } else if (find(slot) != find(w)) {
            pending.emplace_back(slot, w);
        }
    };
    auto add_edge = [&](int u, int l, int w) {
        half_edge(u, l, w);
        half_edge(w, l ^ 1, u);
    };
    FreeBasisReport rep;
    rep.generators = words.size();
    for (const auto& w : words) {
        if (w.empty()) continue;
        int cur = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const int next = i + 1 == w.size() ? 0 : new_vertex();
            add_edge(cur, w[i], next);
            cur = next;
        }
    }
    while (!pending.empty()) {
        auto [x, y] = pending.back();
        pending.pop_back();
        x = find(x);
        y = find(y);
        if (x == y) continue;
        if (y < x) std::swap(x, y);
        parent[static_cast<std::size_t>(y)] = x;
        for (int l = 0; l < 4; ++l) {
            const int t = adj[static_cast<std::size_t>(y)][static_cast<std::size_t>(l)];
            if (t < 0) continue;
            int& slot = adj[static_cast<std::size_t>(x)][static_cast<std::size_t>(l)];
            if (slot < 0) {
                slot = t;
            } else if (find(slot) != find(t)) {
                pending.emplace_back(slot, t);
            }
        }
    }
    std::set<std::tuple<int, int, int>> edges;
    std::set<int> vertices;
    for (std::size_t v = 0; v < adj.size(); ++v) {
        if (find(static_cast<int>(v)) != static_cast<int>(v)) continue;
        vertices.insert(static_cast<int>(v));
        for (int l : {0, 2}) {
            const int t = adj[v][static_cast<std::size_t>(l)];
            if (t >= 0) edges.emplace(static_cast<int>(v), l, find(t));
        }
    }
    rep.vertices = vertices.size();
    rep.edges = edges.size();
    rep.rank = rep.edges + 1 - rep.vertices;
    rep.free_basis = rep.rank == rep.generators;
    return rep;
}

InjectivityReport projection_injectivity(const GeneratorSet& lifted, int max_len) {
    if (lifted.kind != GeneratorSet::Kind::Matrix2x2) {
        throw ShapeMismatch("projection injectivity needs matrix generators");
    }
    if (lifted.matrices.size() > 8) throw ShapeMismatch("at most 8 generators (4-bit letters)");
    if (max_len > 15) throw ShapeMismatch("word length above 15 does not fit the encoding");
    std::vector<WrapMat> letters;
    std::vector<BigMat> exact_letters;
    for (const auto& m : lifted.matrices) {
        if (!m.exact) throw ShapeMismatch("element '" + m.name + "' has no exact linear part");
        for (const IntMat2& x : {*m.exact, int_inverse(*m.exact)}) {
            letters.push_back(to_wrap(x));
            exact_letters.push_back({Integer(x[0]), Integer(x[1]), Integer(x[2]), Integer(x[3])});
        }
    }
    InjectivityReport rep;
    rep.max_len = max_len;
    const std::size_t k = letters.size();
    std::size_t total = 1, layer = 1;
    for (int l = 1; l <= max_len; ++l) {
        layer *= (l == 1 ? k : k - 1);
        total += layer;
    }
    rep.words = total;
    // Hash-partitioned passes keep the memory footprint near 512 MiB.
    constexpr std::size_t kBudget = std::size_t{64} << 20;  // hashes per pass
    const std::uint64_t passes = std::max<std::uint64_t>(1, (total + kBudget - 1) / kBudget);
    std::unordered_set<std::uint64_t> duplicated;
    std::vector<std::uint64_t> hashes;
    for (std::uint64_t pass = 0; pass < passes; ++pass) {
        hashes.clear();
        hashes.reserve(static_cast<std::size_t>(total / passes + total / (8 * passes) + 16));
        for_each_word_hash(letters, max_len, [&](std::uint64_t h, std::uint64_t) {
            if (h % passes == pass) hashes.push_back(h);
        });
        boost::sort::spreadsort::integer_sort(hashes.begin(), hashes.end());
        for (std::size_t i = 1; i < hashes.size(); ++i) {
            if (hashes[i] == hashes[i - 1]) duplicated.insert(hashes[i]);
        }
    }
    std::vector<std::uint64_t>().swap(hashes);
    if (duplicated.empty()) return rep;
    std::map<std::uint64_t, std::vector<std::uint64_t>> groups;
    for_each_word_hash(letters, max_len, [&](std::uint64_t h, std::uint64_t code) {
        if (duplicated.count(h)) groups[h].push_back(code);
    });
    const auto names = lifted.names();
    auto evaluate = [&](const std::vector<int>& w) {
        BigMat m{Integer(1), Integer(0), Integer(0), Integer(1)};
        for (int l : w) m = big_mul(m, exact_letters[static_cast<std::size_t>(l)]);
        return m;
    };
    for (const auto& [h, codes] : groups) {
        std::vector<BigMat> values;
        for (auto code : codes) values.push_back(evaluate(decode_word(code)));
        for (std::size_t i = 0; i < codes.size(); ++i) {
            for (std::size_t j = i + 1; j < codes.size(); ++j) {
                if (values[i] == values[j]) {
                    if (!rep.clash) {
                        rep.clash = std::make_pair(word_string(names, decode_word(codes[i])),
                                                   word_string(names, decode_word(codes[j])));
                    }
                } else {
                    ++rep.hash_collisions;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Discreteness margin
// ---------------------------------------------------------------------------

MarginReport discreteness_margin(const GeneratorSet& gens, int max_len, double radius,
                                 std::size_t cap) {
    if (max_len < 1) throw Error("word length must be >= 1");
    if (!(radius > 0)) throw Error("ball radius must be positive");
    MarginReport rep;
    rep.word_length = max_len;
    rep.ball_radius = radius;
    rep.cap = cap;
    Algebra alg;
    alg.matrix = gens.kind == GeneratorSet::Kind::Matrix2x2;
    alg.dim = gens.dim;
    const std::vector<Elem> letters = letters_of(gens, alg);
    const auto names = gens.names();
    const Key identity_key = element_key(alg.identity());

    struct Node {
        Elem e;
        std::vector<int> word;
    };
    std::unordered_set<Key, KeyHash> seen;
    seen.insert(identity_key);
    std::vector<Node> frontier{{alg.identity(), {}}};
    std::size_t words = 0;
    auto consider = [&](const Node& node) {
        const double d = alg.distance(node.e);
        if (d > radius) return;
        ++rep.in_ball;
        if (d < rep.min_distance) {
            rep.min_distance = d;
            rep.attained_word = word_string(names, node.word);
        }
    };
    for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<Node> next;
        for (const Node& node : frontier) {
            for (int l = 0; l < static_cast<int>(letters.size()); ++l) {
                if (!node.word.empty() && (l ^ 1) == node.word.back()) continue;
                if (++words > cap) {
                    throw ExplosionGuard("word enumeration exceeded the cap of " + std::to_string(cap));
                }
                Node child{alg.mul(node.e, letters[static_cast<std::size_t>(l)]), node.word};
                child.word.push_back(l);
                const Key key = element_key(child.e);
                if (key == identity_key && len == 1) {
                    // A generator equal to the identity.
                    ++rep.in_ball;
                    if (rep.min_distance > 0) {
                        rep.min_distance = 0;
                        rep.attained_word = word_string(names, child.word);
                    }
                    continue;
                }
                if (!seen.insert(key).second) continue;
                consider(child);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    rep.element_count = seen.size() - 1;
    return rep;
}

// ---------------------------------------------------------------------------
// Independence and density
// ---------------------------------------------------------------------------

IndependenceResult multiplicative_independence(const std::vector<BigComplex>& values,
                                               long exponent_bound) {
    for (const auto& z : values) {
        if (z.abs() == 0) throw Error("multiplicative independence needs nonzero values");
    }
    IndependenceResult res;
    res.bound = exponent_bound;
    res.relation = find_multiplicative_relation({values}, exponent_bound, Real("1e-20"));
    res.independent = !res.relation.has_value();
    return res;
}

namespace {

void density_affine(const GeneratorSet& gens, const SolvableData& s, long exponent_bound,
                    DensityReport& rep) {
    const int dim = gens.dim;
    if (!s.unipotent.is_abelian()) {
        throw ShapeMismatch("affine generators model a vector group; the group spec has brackets");
    }
    if (s.unipotent.dim() != dim) {
        throw ShapeMismatch("generator dimension " + std::to_string(dim) +
                            " differs from the group spec's unipotent dimension " +
                            std::to_string(s.unipotent.dim()));
    }
    const int rank = s.torus.split_rank;
    // (a) torus: every relation among the diagonal characters must vanish on
    // the torus, i.e. lie in the left kernel of the weight matrix.
    Matrix<Rational> w(static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(rank)));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < rank; ++j) {
            const auto& row = s.action.weights;
            if (static_cast<std::size_t>(i) < row.size() && static_cast<std::size_t>(j) < row[static_cast<std::size_t>(i)].size())
                w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    const Matrix<Rational> kernel = rank == 0 ? Matrix<Rational>{} : left_kernel(w);
    const bool kernel_is_everything = rank == 0 || static_cast<int>(kernel.size()) == dim;
    if (kernel_is_everything || dim == 0) {
        rep.torus_ok = true;
        rep.notes.push_back("torus: the torus acts trivially; nothing to check");
    } else {
        std::vector<std::vector<BigComplex>> samples;
        for (const auto& a : gens.affine) samples.push_back(a.diag);
        auto in_kernel = [&](const std::vector<long>& n) {
            if (kernel.empty()) return false;
            std::vector<Rational> v;
            for (long x : n) v.emplace_back(x);
            return in_row_space(kernel, v);
        };
        auto rel = samples.empty() ? std::optional<MultiplicativeRelation>(MultiplicativeRelation{})
                                   : find_multiplicative_relation(samples, exponent_bound,
                                                                  Real("1e-20"), 12, in_kernel);
        rep.torus_ok = !rel.has_value();
        if (rel) {
            std::string v;
            for (long x : rel->exponents) v += (v.empty() ? "" : ",") + std::to_string(x);
            rep.notes.push_back(samples.empty() ? "torus: no generators"
                                                : "torus: relation (" + v + ") of order " +
                                                      std::to_string(rel->torsion_order) +
                                                      " is not a weight relation");
        } else {
            rep.notes.push_back("torus: no relation outside the weight relations with |n_i| <= " +
                                std::to_string(exponent_bound));
        }
    }
    // (b) translations, commutators, and their orbits under the diagonal parts.
    std::vector<std::vector<cplx>> diag, trans;
    for (const auto& a : gens.affine) {
        std::vector<cplx> d, t;
        for (const auto& z : a.diag) d.push_back(to_cplx(z));
        for (const auto& z : a.translation) t.push_back(to_cplx(z));
        diag.push_back(std::move(d));
        trans.push_back(std::move(t));
    }
    auto is_one = [](const std::vector<cplx>& d) {
        return std::all_of(d.begin(), d.end(), [](cplx z) { return std::abs(z - 1.0) < 1e-12; });
    };
    std::vector<std::vector<cplx>> acc;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (is_one(diag[i])) acc.push_back(trans[i]);
    }
    for (std::size_t i = 0; i < diag.size(); ++i) {
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            // [g, h] = (I, (I - D_h) t_g - (I - D_g) t_h)
            std::vector<cplx> c(static_cast<std::size_t>(dim));
            for (std::size_t k = 0; k < c.size(); ++k)
                c[k] = (1.0 - diag[j][k]) * trans[i][k] - (1.0 - diag[i][k]) * trans[j][k];
            acc.push_back(std::move(c));
        }
    }
    auto nonzero = [](const std::vector<cplx>& v) {
        return std::any_of(v.begin(), v.end(), [](cplx z) { return std::abs(z) > 1e-12; });
    };
    acc.erase(std::remove_if(acc.begin(), acc.end(), [&](const auto& v) { return !nonzero(v); }),
              acc.end());
    for (int round = 0; round < dim && !acc.empty(); ++round) {
        const std::size_t before = complex_rank(acc);
        const std::size_t n = acc.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& d : diag) {
                if (is_one(d)) continue;
                std::vector<cplx> v(acc[i].size());
                for (std::size_t k = 0; k < v.size(); ++k) v[k] = d[k] * acc[i][k];
                acc.push_back(std::move(v));
            }
        }
        if (complex_rank(acc) == before) break;
    }
    rep.translation_rank = acc.empty() ? 0 : complex_rank(acc);
    rep.translation_ok = static_cast<int>(rep.translation_rank) == dim;
    rep.notes.push_back("translations: complex rank " + std::to_string(rep.translation_rank) +
                        " of " + std::to_string(dim));
    // (c) full support on the coordinate weight lines.
    std::vector<cplx> combo(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
        // Coefficients 1, 2, ... avoid accidental cancellation for at most
        // acc.size() + 1 choices per coordinate.
        for (double c = 1;; c += 1) {
            bool cancels = false;
            for (std::size_t k = 0; k < combo.size(); ++k) {
                if (std::abs(combo[k]) > 1e-12 && std::abs(combo[k] + c * acc[i][k]) <= 1e-12) cancels = true;
            }
            if (!cancels) {
                for (std::size_t k = 0; k < combo.size(); ++k) combo[k] += c * acc[i][k];
                break;
            }
        }
    }
    rep.support_ok = dim == 0 || std::all_of(combo.begin(), combo.end(),
                                             [](cplx z) { return std::abs(z) > 1e-12; });
    std::size_t zeros = 0;
    for (auto z : combo) zeros += std::abs(z) <= 1e-12 ? 1 : 0;
    rep.notes.push_back(rep.support_ok ? "support: an accumulated translation meets every weight line"
                                       : "support: " + std::to_string(zeros) +
                                             " weight line(s) missed by every translation");
}

void density_matrix(const GeneratorSet& gens, const GroupSpec& spec, DensityReport& rep) {
    int radical_dim = 0;
    if (const auto* levi = std::get_if<LeviData>(&spec.variant)) {
        radical_dim = levi->radical.unipotent.dim();
        if (!levi->semisimple.isotropic) {
            throw ShapeMismatch("matrix generators need an isotropic semisimple part");
        }
    } else if (!std::holds_alternative<SemisimpleData>(spec.variant)) {
        throw ShapeMismatch("matrix generators need a Semisimple or Levi spec");
    }
    if (radical_dim != gens.dim) {
        throw ShapeMismatch("generator translation dimension " + std::to_string(gens.dim) +
                            " differs from the group spec's radical dimension " + std::to_string(radical_dim));
    }
    // (a) a certified free pair is not virtually solvable, hence Zariski-dense in SL_2.
    rep.torus_ok = false;
    for (std::size_t i = 0; i < gens.matrices.size() && !rep.torus_ok; ++i) {
        for (std::size_t j = i + 1; j < gens.matrices.size() && !rep.torus_ok; ++j) {
            if (pingpong_certificate(gens.matrices[i], gens.matrices[j]).certified) {
                rep.torus_ok = true;
                rep.notes.push_back("linear part: " + gens.matrices[i].name + ", " +
                                    gens.matrices[j].name + " certified free by ping-pong");
            }
        }
    }
    if (!rep.torus_ok) rep.notes.push_back("linear part: no pair certified free");
    // (b) translations are not a coboundary t_i = (I - M_i) v.
    if (gens.dim == 0) {
        rep.translation_ok = true;
        rep.notes.push_back("translations: no vector part");
    } else {
        Matrix<cplx> a, ab;
        for (const auto& m : gens.matrices) {
            const cplx x[4] = {to_cplx(m.m[0]), to_cplx(m.m[1]), to_cplx(m.m[2]), to_cplx(m.m[3])};
            cplx t[2] = {0.0, 0.0};
            if (!m.translation.empty()) {
                t[0] = to_cplx(m.translation[0]);
                t[1] = to_cplx(m.translation[1]);
            }
            a.push_back({1.0 - x[0], -x[1]});
            a.push_back({-x[2], 1.0 - x[3]});
            ab.push_back({1.0 - x[0], -x[1], t[0]});
            ab.push_back({-x[2], 1.0 - x[3], t[1]});
        }
        const std::size_t ra = complex_rank(a), rab = complex_rank(ab);
        rep.translation_rank = rab > ra ? 2 : 0;
        rep.translation_ok = rab > ra;
        rep.notes.push_back(rep.translation_ok ? "translations: cocycle is not a coboundary"
                                               : "translations: cocycle is a coboundary (conjugate into SL_2)");
    }
    rep.support_ok = true;
    rep.notes.push_back("support: C^2 is an irreducible SL_2-module");
}

}  // namespace

DensityReport density_check(const GeneratorSet& gens, const GroupSpec& spec, long exponent_bound) {
    DensityReport rep;
    rep.exponent_bound = exponent_bound;
    if (gens.kind == GeneratorSet::Kind::Affine) {
        const SolvableData* s = spec.solvable_part();
        if (s == nullptr) throw ShapeMismatch("affine generators need a Solvable spec");
        density_affine(gens, *s, exponent_bound, rep);
    } else {
        density_matrix(gens, spec, rep);
    }
    return rep;
}

}  // namespace zdense
