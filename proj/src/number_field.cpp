#include "zdense/number_field.hpp"

#include "zdense/errors.hpp"
#include "zdense/fp_poly.hpp"
#include "zdense/linalg.hpp"
#include "zdense/relation.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace zdense {

namespace bmp = boost::multiprecision;

// ---------------------------------------------------------------------------
// IntPoly
// ---------------------------------------------------------------------------

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty polynomial");
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if ((ch == '+' || ch == '-') && i > 0 && s[i - 1] != '^') {
            terms.push_back(cur);
            cur.clear();
        }
        cur.push_back(ch);
    }
    terms.push_back(cur);
    std::map<int, Integer> acc;
    auto bad = [&](const std::string& t) {
        return ParseError("cannot parse term '" + t + "' in polynomial '" + text + "'");
    };
    auto is_int = [](const std::string& t) {
        return !t.empty() && std::all_of(t.begin(), t.end(),
                                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    for (std::string t : terms) {
        if (t.empty()) throw bad(t);
        int sign = 1;
        if (t[0] == '+' || t[0] == '-') {
            sign = t[0] == '-' ? -1 : 1;
            t = t.substr(1);
        }
        auto xpos = t.find('x');
        Integer coeff;
        int exp = 0;
        if (xpos == std::string::npos) {
            if (!is_int(t)) throw bad(t);
            coeff = Integer(t);
        } else {
            std::string c = t.substr(0, xpos);
            if (!c.empty() && c.back() == '*') c.pop_back();
            if (c.empty()) {
                coeff = 1;
            } else if (is_int(c)) {
                coeff = Integer(c);
            } else {
                throw bad(t);
            }
            std::string rest = t.substr(xpos + 1);
            if (rest.empty()) {
                exp = 1;
            } else if (rest[0] == '^' && is_int(rest.substr(1))) {
                exp = std::stoi(rest.substr(1));
            } else {
                throw bad(t);
            }
        }
        acc[exp] += sign * coeff;
    }
    int deg = acc.rbegin()->first;
    std::vector<Integer> c(deg + 1, Integer(0));
    for (const auto& [e, v] : acc) c[e] = v;
    IntPoly f(std::move(c));
    if (f.c_.empty()) throw ParseError("zero polynomial");
    return f;
}

IntPoly IntPoly::derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return IntPoly(std::move(d));
}

Rational IntPoly::eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Rational(*it);
    return r;
}

BigComplex IntPoly::eval(const BigComplex& z) const {
    BigComplex r(Real(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + BigComplex(Real(*it));
    return r;
}

Real IntPoly::eval(const Real& x) const {
    Real r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Real(*it);
    return r;
}

Integer IntPoly::max_abs_coeff() const {
    Integer m = 0;
    for (const auto& x : c_) m = std::max(m, Integer(abs(x)));
    return m;
}

std::string IntPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Integer& c = c_[i];
        if (c == 0) continue;
        Integer a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? "-" : "+");
        }
        first = false;
        if (a != 1 || i == 0) os << a;
        if (i >= 1) os << (a != 1 ? "*x" : "x");
        if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers (Sturm sequences)
// ---------------------------------------------------------------------------

namespace {

using QPoly = std::vector<Rational>;

void q_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const IntPoly& f) {
    QPoly q;
    for (const auto& c : f.coeffs()) q.emplace_back(c);
    return q;
}

QPoly q_rem(QPoly a, const QPoly& b) {
    q_trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        Rational f = a.back() / b.back();
        const int shift = static_cast<int>(a.size()) - 1 - db;
        for (int i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        q_trim(a);
    }
    return a;
}

Rational q_eval(const QPoly& p, const Rational& x) {
    Rational r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

std::vector<QPoly> sturm_sequence(const IntPoly& f) {
    std::vector<QPoly> seq{to_q(f), to_q(f.derivative())};
    q_trim(seq[1]);
    while (!seq.back().empty()) {
        QPoly r = q_rem(seq[seq.size() - 2], seq.back());
        for (auto& x : r) x = -x;
        if (r.empty()) break;
        seq.push_back(std::move(r));
    }
    return seq;
}

int sign_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int variations_at(const std::vector<QPoly>& seq, const Rational& x) {
    std::vector<int> signs;
    for (const auto& p : seq) {
        Rational v = q_eval(p, x);
        signs.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
    }
    return sign_changes(signs);
}

int variations_at_infinity(const std::vector<QPoly>& seq, bool positive) {
    std::vector<int> signs;
    for (const auto& p : seq) {
        if (p.empty()) continue;
        int s = p.back() > 0 ? 1 : -1;
        if (!positive && (p.size() - 1) % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return sign_changes(signs);
}

void require_squarefree(const std::vector<QPoly>& seq, const IntPoly& f) {
    if (seq.back().size() > 1) {
        throw NotSquarefree("gcd(f, f') is nonconstant for f = " + f.str());
    }
}

Rational cauchy_bound(const IntPoly& f) {
    Rational m = 0;
    const Integer& lead = f.coeffs().back();
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rational(abs(f[i]), abs(lead)));
    return 1 + m;
}

}  // namespace

Signature signature(const IntPoly& f) {
    if (f.degree() < 1) throw Error("signature needs a nonconstant polynomial");
    auto seq = sturm_sequence(f);
    require_squarefree(seq, f);
    int r1 = variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
    return {r1, (f.degree() - r1) / 2};
}

int sturm_count(const IntPoly& f, const Rational& a, const Rational& b) {
    auto seq = sturm_sequence(f);
    return variations_at(seq, a) - variations_at(seq, b);
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

std::vector<Real> real_roots(const IntPoly& f, unsigned digits) {
    auto seq = sturm_sequence(f);
    require_squarefree(seq, f);
    const Rational bound = cauchy_bound(f);
    std::vector<std::pair<Rational, Rational>> isolated;
    std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int count = variations_at(seq, a) - variations_at(seq, b);
        if (count == 0) continue;
        if (count == 1) {
            isolated.emplace_back(a, b);
            continue;
        }
        Rational mid = (a + b) / 2;
        // Keep endpoints off the roots so each isolated interval has a sign change.
        for (int k = 3; f.eval(mid) == 0; k += 2) mid = a + (b - a) * Rational(k, 2 * k + 1);
        stack.emplace_back(mid, b);
        stack.emplace_back(a, mid);
    }
    std::sort(isolated.begin(), isolated.end());

    PrecisionScope scope(digits + 10);
    const Real eps = pow(Real(10), -static_cast<int>(digits + 5));
    std::vector<Real> out;
    for (auto [a, b] : isolated) {
        if (f.eval(b) == 0) {
            out.emplace_back(Real(b));
            continue;
        }
        Real lo(a), hi(b);
        Real flo = f.eval(lo);
        while (hi - lo > eps) {
            Real mid = (lo + hi) / 2;
            Real fm = f.eval(mid);
            if (fm == 0) {
                lo = hi = mid;
                break;
            }
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        out.push_back((lo + hi) / 2);
    }
    return out;
}

std::vector<BigComplex> EmbeddingData::all_roots() const {
    std::vector<BigComplex> out = roots;
    for (int i = sig.r1; i < static_cast<int>(roots.size()); ++i) out.push_back(roots[i].conj());
    return out;
}

namespace {

std::vector<BigComplex> durand_kerner(const IntPoly& f, unsigned digits) {
    const int d = f.degree();
    const Real lead(f.coeffs().back());
    const Real radius(cauchy_bound(f));
    std::vector<BigComplex> z(d);
    BigComplex seed(Real("0.4"), Real("0.9"));
    for (int k = 0; k < d; ++k) z[k] = pow(seed, k) * BigComplex(radius);
    const Real tol = pow(Real(10), -static_cast<int>(digits));
    for (int iter = 0; iter < 2000; ++iter) {
        Real worst = 0;
        for (int i = 0; i < d; ++i) {
            BigComplex denom(lead);
            for (int j = 0; j < d; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            BigComplex step = f.eval(z[i]) / denom;
            z[i] -= step;
            worst = std::max(worst, step.abs());
        }
        if (worst < tol) break;
    }
    IntPoly df = f.derivative();
    for (auto& r : z)
        for (int k = 0; k < 3; ++k) r -= f.eval(r) / df.eval(r);
    return z;
}

bool roots_certified(const IntPoly& f, const std::vector<BigComplex>& all, unsigned digits) {
    const Real eps = pow(Real(10), -static_cast<int>(digits));
    const Real residual_cap = f.degree() * eps * (1 + Real(f.max_abs_coeff()));
    for (const auto& r : all)
        if (f.eval(r).abs() >= residual_cap) return false;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if ((all[i] - all[j]).abs() <= 10 * eps) return false;
    return true;
}

}  // namespace

EmbeddingData compute_embeddings(const IntPoly& f, unsigned digits) {
    EmbeddingData emb;
    emb.poly = f;
    emb.sig = signature(f);
    emb.digits = digits;
    unsigned working = digits + 20;
    for (int attempt = 0; attempt <= 4; ++attempt, working *= 2) {
        PrecisionScope scope(working);
        emb.roots.clear();
        for (const auto& x : real_roots(f, working)) emb.roots.emplace_back(Real(x), Real(0));
        if (emb.sig.r2 > 0) {
            auto z = durand_kerner(f, working);
            std::sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) {
                return abs(a.im) > abs(b.im);
            });
            std::vector<BigComplex> upper;
            for (int i = 0; i < 2 * emb.sig.r2; ++i)
                if (z[i].im > 0) upper.push_back(z[i]);
            if (static_cast<int>(upper.size()) != emb.sig.r2) continue;
            std::sort(upper.begin(), upper.end(), [](const BigComplex& a, const BigComplex& b) {
                if (a.re != b.re) return a.re < b.re;
                return a.im < b.im;
            });
            for (auto& u : upper) emb.roots.push_back(u);
        }
        emb.working_digits = working;
        emb.doublings = attempt;
        if (roots_certified(f, emb.all_roots(), digits)) return emb;
    }
    throw PrecisionUnreachable("roots of " + f.str() + " not certified to 1e-" +
                               std::to_string(digits) + " after 4 doublings");
}

// ---------------------------------------------------------------------------
// Resultants and Z[theta]
// ---------------------------------------------------------------------------

namespace {

Integer bareiss_det(Matrix<Integer> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

Integer resultant(const IntPoly& f, const IntPoly& g) {
    if (f.coeffs().empty() || g.coeffs().empty()) return 0;
    const int m = f.degree(), n = g.degree();
    if (n == 0) return bmp::pow(g[0], static_cast<unsigned>(m));
    if (m == 0) return bmp::pow(f[0], static_cast<unsigned>(n));
    const int size = m + n;
    Matrix<Integer> s(size, std::vector<Integer>(size, Integer(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
    return bareiss_det(std::move(s));
}

Integer discriminant(const IntPoly& f) {
    const int d = f.degree();
    Integer res = resultant(f, f.derivative());
    Integer disc = res / f.coeffs().back();
    return (d * (d - 1) / 2) % 2 ? Integer(-disc) : disc;
}

Integer field_norm(const ZElem& element, const IntPoly& f) {
    if (!f.is_monic()) throw Error("field_norm needs a monic polynomial");
    return resultant(f, IntPoly(element));
}

ZElem z_one(const IntPoly& f) {
    ZElem e(f.degree(), Integer(0));
    e[0] = 1;
    return e;
}

ZElem z_mul(const ZElem& a, const ZElem& b, const IntPoly& f) {
    const int d = f.degree();
    std::vector<Integer> prod(2 * d, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    }
    for (int k = 2 * d - 1; k >= d; --k) {
        if (prod[k] == 0) continue;
        Integer c = prod[k];
        for (int i = 0; i <= d; ++i) prod[k - d + i] -= c * f[i];
    }
    prod.resize(d);
    return prod;
}

ZElem z_neg(const ZElem& a) {
    ZElem r = a;
    for (auto& x : r) x = -x;
    return r;
}

ZElem z_unit_inverse(const ZElem& u, const IntPoly& f) {
    const int d = f.degree();
    // Columns of the multiplication-by-u matrix are u * theta^j.
    Matrix<Rational> aug(d, std::vector<Rational>(d + 1, Rational(0)));
    ZElem basis = z_one(f);
    for (int j = 0; j < d; ++j) {
        ZElem col = z_mul(u, basis, f);
        for (int i = 0; i < d; ++i) aug[i][j] = Rational(col[i]);
        ZElem theta(d, Integer(0));
        if (d > 1) theta[1] = 1;
        basis = z_mul(basis, theta, f);
    }
    aug[0][d] = 1;
    auto pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != d || pivots.back() == static_cast<std::size_t>(d)) {
        throw Error("element is not invertible");
    }
    ZElem inv(d);
    for (int i = 0; i < d; ++i) {
        const Rational& x = aug[i][d];
        if (bmp::denominator(x) != 1) throw Error("element is not a unit of Z[theta]");
        inv[i] = bmp::numerator(x);
    }
    return inv;
}

ZElem z_pow(const ZElem& a, long e, const IntPoly& f) {
    ZElem base = e < 0 ? z_unit_inverse(a, f) : a;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    ZElem result = z_one(f);
    while (n) {
        if (n & 1) result = z_mul(result, base, f);
        base = z_mul(base, base, f);
        n >>= 1;
    }
    return result;
}

BigComplex embed(const ZElem& element, const BigComplex& root) {
    BigComplex r(Real(0));
    for (auto it = element.rbegin(); it != element.rend(); ++it)
        r = r * root + BigComplex(Real(*it));
    return r;
}

// ---------------------------------------------------------------------------
// Irreducibility, monogenicity
// ---------------------------------------------------------------------------

namespace {

bool near_integer(const Real& x, Integer& out) {
    Real r = round(x);
    if (abs(x - r) > Real("1e-6")) return false;
    mpfr_get_z(out.backend().data(), r.backend().data(), MPFR_RNDN);
    return true;
}

bool divides_exactly(const IntPoly& f, const std::vector<Integer>& monic_factor) {
    // Long division by a monic integer polynomial.
    std::vector<Integer> r = f.coeffs();
    const int df = static_cast<int>(monic_factor.size()) - 1;
    for (int k = static_cast<int>(r.size()) - 1; k >= df; --k) {
        Integer c = r[k];
        if (c == 0) continue;
        for (int i = 0; i <= df; ++i) r[k - df + i] -= c * monic_factor[i];
    }
    for (int i = 0; i < df; ++i)
        if (r[i] != 0) return false;
    return true;
}

}  // namespace

std::optional<bool> is_irreducible(const IntPoly& f, bool trusted) {
    const int d = f.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    if (!f.is_monic()) throw Error("irreducibility test expects a monic polynomial");
    if (f[0] == 0) return false;
    if (d > 4) {
        if (trusted) return true;
        return std::nullopt;
    }
    PrecisionScope scope(40);
    IntPoly g = f;
    // Squarefree check first: repeated factors make the polynomial reducible.
    try {
        signature(f);
    } catch (const NotSquarefree&) {
        return false;
    }
    auto emb = compute_embeddings(f, 20);
    auto roots = emb.all_roots();
    for (const auto& r : roots) {
        Integer n;
        if (abs(r.im) < Real("1e-6") && near_integer(r.re, n) && f.eval(Rational(n)) == 0) return false;
    }
    if (d == 4) {
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j) {
                BigComplex s = roots[i] + roots[j], p = roots[i] * roots[j];
                Integer si, pi;
                if (abs(s.im) > Real("1e-6") || abs(p.im) > Real("1e-6")) continue;
                if (!near_integer(s.re, si) || !near_integer(p.re, pi)) continue;
                if (divides_exactly(f, {pi, -si, Integer(1)})) return false;
            }
    }
    return true;
}

MonogenicCertificate monogenic_certificate(const IntPoly& f) {
    MonogenicCertificate cert;
    cert.discriminant = discriminant(f);
    Integer n = abs(cert.discriminant);
    std::vector<std::pair<Integer, int>> factors;
    for (Integer q = 2; q <= 1000000 && q * q <= n; ++q) {
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (e) factors.emplace_back(q, e);
    }
    if (n > 1) {
        if (bmp::miller_rabin_test(n, 25)) {
            factors.emplace_back(n, 1);
        } else {
            Integer s = bmp::sqrt(n);
            if (s * s == n && bmp::miller_rabin_test(s, 25)) {
                factors.emplace_back(s, 2);
            } else {
                cert.reason = "discriminant cofactor " + n.str() + " not factored";
                return cert;
            }
        }
    }
    for (const auto& [q, e] : factors) {
        if (e < 2) continue;
        if (q > Integer(std::numeric_limits<std::int64_t>::max())) {
            cert.reason = "prime " + q.str() + " too large for the Dedekind test";
            return cert;
        }
        const std::uint64_t p = q.convert_to<std::uint64_t>();
        cert.primes_checked.push_back(q.str());
        std::vector<long long> red;
        for (const auto& c : f.coeffs()) {
            Integer m = c % q;
            if (m < 0) m += q;
            red.push_back(m.convert_to<long long>());
        }
        FpPoly fbar = FpPoly::from_signed(p, red);
        FpPoly g = radical(fbar);
        FpPoly h = FpPoly::divmod(fbar, g).first;
        // Lift g, h with coefficients in [0, p) and form F = (f - g h) / p.
        std::vector<Integer> gh(f.coeffs().size(), Integer(0));
        for (std::size_t i = 0; i < g.coeffs().size(); ++i)
            for (std::size_t j = 0; j < h.coeffs().size(); ++j)
                gh[i + j] += Integer(g.coeffs()[i]) * Integer(h.coeffs()[j]);
        std::vector<long long> F;
        for (std::size_t i = 0; i < gh.size(); ++i) {
            Integer diff = f[i] - gh[i];
            if (diff % q != 0) throw Error("Dedekind lift is not congruent mod p");
            Integer m = (diff / q) % q;
            if (m < 0) m += q;
            F.push_back(m.convert_to<long long>());
        }
        FpPoly Fbar = FpPoly::from_signed(p, F);
        FpPoly common = FpPoly::gcd(FpPoly::gcd(Fbar, g), h);
        if (common.degree() > 0) {
            cert.reason = "Z[theta] is not maximal at p = " + q.str();
            return cert;
        }
    }
    cert.certified = true;
    cert.reason = cert.primes_checked.empty() ? "discriminant is squarefree"
                                              : "Dedekind criterion holds at every square prime";
    return cert;
}

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

std::vector<Real> log_embedding(const ZElem& u, const EmbeddingData& emb) {
    std::vector<Real> out;
    for (std::size_t i = 0; i < emb.roots.size(); ++i) {
        Real l = log(embed(u, emb.roots[i]).abs());
        out.push_back(static_cast<int>(i) < emb.sig.r1 ? l : Real(2 * l));
    }
    return out;
}

bool is_torsion(const ZElem& u, const IntPoly& f, const EmbeddingData& emb) {
    for (const auto& r : emb.roots)
        if (abs(embed(u, r).abs() - 1) > Real("1e-20")) return false;
    // Kronecker: an algebraic integer with all conjugates on the unit circle is
    // a root of unity; confirm exactly.
    ZElem power = u;
    for (int k = 1; k <= 120; ++k) {
        if (power == z_one(f)) return true;
        power = z_mul(power, u, f);
    }
    return false;
}

ZElem normalize_unit(const ZElem& u, const IntPoly& f, const EmbeddingData& emb) {
    ZElem inv = z_unit_inverse(u, f);
    std::vector<ZElem> cands{u, z_neg(u), inv, z_neg(inv)};
    if (emb.sig.r1 > 0) {
        const BigComplex& top = emb.roots[emb.sig.r1 - 1];
        for (const auto& c : cands)
            if (embed(c, top).re > 1) return c;
    } else {
        for (const auto& c : cands)
            if (embed(c, emb.roots[0]).abs() > 1) return c;
    }
    return u;
}

namespace {

Real log_height(const ZElem& u, const EmbeddingData& emb) {
    Real h = 0;
    for (const auto& l : log_embedding(u, emb)) h += abs(l);
    return h;
}

bool lex_less(const ZElem& a, const ZElem& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Candidate {
    ZElem u;
    Real height;
};

/// Greedy selection of `r` independent units in order of (height, coordinates).
std::vector<ZElem> select_independent(std::vector<Candidate> cands, int r,
                                      const EmbeddingData& emb) {
    const Real tie("1e-20");
    std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
        if (abs(a.height - b.height) > tie) return a.height < b.height;
        return lex_less(a.u, b.u);
    });
    std::vector<ZElem> chosen;
    Matrix<Real> logs;
    const Real margin("1e-12");
    for (const auto& c : cands) {
        if (static_cast<int>(chosen.size()) == r) break;
        auto l = log_embedding(c.u, emb);
        l.resize(r);
        Matrix<Real> trial = logs;
        trial.push_back(l);
        if (real_rank(trial, margin) == trial.size()) {
            logs = std::move(trial);
            chosen.push_back(c.u);
        }
    }
    return chosen;
}

void box_candidates(const IntPoly& f, long bound, const EmbeddingData& emb,
                    std::vector<Candidate>& out, std::size_t& scanned, int& torsion_count) {
    const int d = f.degree();
    std::set<ZElem> seen;
    std::vector<long> a(d, -bound);
    while (true) {
        ZElem u(d);
        bool zero = true;
        for (int i = 0; i < d; ++i) {
            u[i] = a[i];
            zero = zero && a[i] == 0;
        }
        if (!zero) {
            ++scanned;
            Integer n = field_norm(u, f);
            if (n == 1 || n == -1) {
                if (is_torsion(u, f, emb)) {
                    ++torsion_count;
                } else {
                    ZElem v = normalize_unit(u, f, emb);
                    if (seen.insert(v).second) out.push_back({v, log_height(v, emb)});
                }
            }
        }
        int i = d - 1;
        while (i >= 0 && a[i] == bound) a[i--] = -bound;
        if (i < 0) break;
        ++a[i];
    }
}

/// Continued fraction of the largest root of x^2 + b x + c.
std::optional<ZElem> quadratic_cf_unit(const IntPoly& f, std::size_t max_terms) {
    const Integer b = f[1], c = f[0];
    const Integer D = b * b - 4 * c;
    const Integer s = bmp::sqrt(D);
    if (s * s == D) return std::nullopt;
    auto floor_div = [](const Integer& n, const Integer& d) {
        Integer q = n / d;
        if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
        return q;
    };
    // theta = (P + sqrt(D)) / Q with Q | D - P^2.
    Integer P = -b, Q = 2;
    Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
    for (std::size_t t = 0; t < max_terms; ++t) {
        Integer a = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
        Integer h_next = a * h_prev + h, k_next = a * k_prev + k;
        h = h_prev;
        k = k_prev;
        h_prev = h_next;
        k_prev = k_next;
        ZElem u{h_prev, -k_prev};
        Integer n = field_norm(u, f);
        if ((n == 1 || n == -1) && k_prev != 0) return u;
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    return std::nullopt;
}

}  // namespace

UnitGroup find_fundamental_units(const IntPoly& f, long coeff_bound,
                                 const std::vector<ZElem>& supplied) {
    if (!f.is_monic()) throw Error("unit search expects a monic polynomial");
    const int d = f.degree();
    PrecisionScope scope(60);
    EmbeddingData emb = compute_embeddings(f, 40);
    UnitGroup ug;
    ug.rank = emb.sig.unit_rank();
    ug.torsion_order = emb.sig.r1 > 0 ? 2 : 0;

    if (ug.torsion_order == 0) {
        std::vector<Candidate> ignored;
        std::size_t scanned = 0;
        int torsion = 0;
        box_candidates(f, std::max(2L, std::min(coeff_bound, 3L)), emb, ignored, scanned, torsion);
        ug.torsion_order = torsion;
    }
    if (ug.rank == 0) {
        ug.method = "none";
        ug.fundamental_certified = true;
        return ug;
    }

    std::vector<ZElem> chosen;
    if (!supplied.empty()) {
        std::vector<Candidate> cands;
        for (const auto& u : supplied) {
            if (static_cast<int>(u.size()) != d) throw ShapeMismatch("unit has wrong length");
            Integer n = field_norm(u, f);
            if (n != 1 && n != -1) throw Error("supplied element has norm " + n.str());
        }
        Matrix<Real> logs;
        for (const auto& u : supplied) {
            auto l = log_embedding(u, emb);
            l.resize(ug.rank);
            logs.push_back(l);
        }
        if (static_cast<int>(real_rank(logs, Real("1e-12"))) < ug.rank) {
            throw RankDeficient("supplied units have log-rank below " + std::to_string(ug.rank));
        }
        for (const auto& u : supplied) cands.push_back({u, Real(static_cast<long>(chosen.size()))});
        // Keep the supplied order; select greedily.
        Matrix<Real> acc;
        for (const auto& u : supplied) {
            auto l = log_embedding(u, emb);
            l.resize(ug.rank);
            Matrix<Real> trial = acc;
            trial.push_back(l);
            if (real_rank(trial, Real("1e-12")) == trial.size()) {
                acc = std::move(trial);
                chosen.push_back(u);
            }
            if (static_cast<int>(chosen.size()) == ug.rank) break;
        }
        ug.method = "supplied";
    } else if (d == 2 || d == 3) {
        std::vector<Candidate> cands;
        int torsion = 0;
        box_candidates(f, coeff_bound, emb, cands, ug.candidates, torsion);
        ug.coeff_bound = coeff_bound;
        ug.method = "box-search";
        if (d == 2) {
            if (auto u = quadratic_cf_unit(f, 100000)) {
                ZElem v = normalize_unit(*u, f, emb);
                if (std::none_of(cands.begin(), cands.end(), [&](const Candidate& c) { return c.u == v; }))
                    cands.push_back({v, log_height(v, emb)});
                ug.method = "continued-fraction";
            }
        }
        chosen = select_independent(std::move(cands), ug.rank, emb);
        if (static_cast<int>(chosen.size()) < ug.rank) {
            throw SearchExhausted("found " + std::to_string(chosen.size()) + " of " +
                                  std::to_string(ug.rank) +
                                  " independent units with coefficient bound " +
                                  std::to_string(coeff_bound));
        }
        ug.fundamental_certified = ug.rank == 1;
    } else {
        throw Error("unit search supports degree 2 and 3; supply units for degree " +
                    std::to_string(d));
    }
    ug.units = chosen;
    for (const auto& u : chosen) ug.norms.push_back(field_norm(u, f));
    return ug;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

TorusClosure torus_closure_dim(const UnitGroup& units, const EmbeddingData& emb,
                               long exponent_bound) {
    if (units.rank == 0 || units.units.empty()) {
        throw Error("torus closure needs a unit group of positive rank");
    }
    const int n = emb.sig.r1 + emb.sig.r2;
    TorusClosure tc;
    tc.exponent_bound = exponent_bound;
    std::vector<std::vector<BigComplex>> samples;
    for (const auto& u : units.units) {
        std::vector<BigComplex> v;
        for (const auto& r : emb.roots) v.push_back(embed(u, r));
        samples.push_back(std::move(v));
    }
    auto rel = find_multiplicative_relation(samples, exponent_bound, Real("1e-20"));
    Matrix<Rational> rows;
    if (rel) {
        tc.relations.push_back({rel->exact, rel->exponents, rel->torsion_order});
        std::vector<Rational> row;
        for (long x : rel->exact) row.emplace_back(x);
        rows.push_back(row);
        tc.m = units.rank;
        tc.flag = "witnessed";
    } else {
        tc.m = units.rank + 1;
        tc.flag = "bound-limited";
    }
    auto basis = nullspace(rows, static_cast<std::size_t>(n));
    // weights[i][j] = j-th basis vector at coordinate i, scaled to integers.
    std::vector<std::vector<long>> cols;
    for (auto& v : basis) {
        Integer l = 1;
        for (const auto& x : v) l = bmp::lcm(l, Integer(bmp::denominator(x)));
        Integer g = 0;
        std::vector<Integer> iv;
        for (const auto& x : v) {
            Integer y = bmp::numerator(x) * (l / bmp::denominator(x));
            iv.push_back(y);
            g = bmp::gcd(g, Integer(abs(y)));
        }
        std::vector<long> col;
        for (const auto& y : iv) col.push_back((y / g).convert_to<long>());
        cols.push_back(col);
    }
    tc.weights.assign(n, std::vector<long>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < n; ++i) tc.weights[i][j] = cols[j][i];
    return tc;
}

ConstructedGroup build_construction(const IntPoly& f, const UnitGroup& units,
                                    const EmbeddingData& emb) {
    ConstructedGroup cg;
    cg.poly = f;
    cg.sig = emb.sig;
    cg.units = units.units;
    const int d = f.degree();
    const int n = emb.sig.r1 + emb.sig.r2;
    if (static_cast<int>(units.units.size()) != units.rank) {
        throw RankDeficient("construction needs exactly r independent units");
    }
    for (const auto& u : units.units) {
        Integer nu = field_norm(u, f);
        if (nu != 1 && nu != -1) throw Error("construction given a non-unit");
        std::vector<BigComplex> diag;
        BigComplex det(Real(1));
        for (int i = 0; i < n; ++i) {
            diag.push_back(embed(u, emb.roots[i]));
            det *= diag.back();
        }
        cg.det_abs.push_back(det.abs());
        cg.torus_gens.push_back(std::move(diag));
    }
    for (int j = 0; j < d; ++j) {
        std::vector<BigComplex> v;
        for (int i = 0; i < n; ++i) v.push_back(pow(emb.roots[i], j));
        cg.lattice_gens.push_back(std::move(v));
    }
    cg.totally_real = emb.sig.r2 == 0;
    if (cg.totally_real) {
        ConstructedGroup::Cocompact cc;
        std::optional<std::size_t> j0;
        for (std::size_t j = 0; j < units.units.size(); ++j)
            if (field_norm(units.units[j], f) == -1 && !j0) j0 = j;
        for (std::size_t j = 0; j < units.units.size(); ++j) {
            const ZElem& u = units.units[j];
            if (field_norm(u, f) == 1) {
                cc.delta_units.push_back(u);
            } else if (j == *j0) {
                cc.delta_units.push_back(z_mul(u, u, f));
            } else {
                cc.delta_units.push_back(z_mul(u, units.units[*j0], f));
            }
        }
        for (const auto& u : cc.delta_units) {
            std::vector<BigComplex> diag;
            BigComplex det(Real(1));
            for (int i = 0; i < n; ++i) {
                diag.push_back(embed(u, emb.roots[i]));
                det *= diag.back();
            }
            cc.delta_det_defect.push_back((det - BigComplex(Real(1))).abs());
            cc.delta_gens.push_back(std::move(diag));
        }
        for (const auto& v : cg.lattice_gens) cc.lattice_gens.push_back(v);
        for (const auto& v : cg.lattice_gens) {
            std::vector<BigComplex> w;
            for (const auto& z : v) w.push_back(z * BigComplex(Real(0), Real(1)));
            cc.lattice_gens.push_back(std::move(w));
        }
        cg.cocompact = std::move(cc);
    }
    if (emb.sig.r1 == 1 && emb.sig.r2 == 1) {
        cg.borel_identification = "Borel group in SL_2(C) x SL_2(C)";
    }
    return cg;
}

}  // namespace zdense
