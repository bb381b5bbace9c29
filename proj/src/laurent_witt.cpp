#include "zdense/laurent_witt.hpp"

#include "zdense/errors.hpp"
#include "zdense/linalg.hpp"
#include "zdense/numeric.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace zdense {

// ---------------------------------------------------------------------------
// FpElem
// ---------------------------------------------------------------------------

FpElem::FpElem(std::uint64_t p_, long long value) : p(p_) {
    const long long pp = static_cast<long long>(p_);
    v = static_cast<std::uint64_t>(((value % pp) + pp) % pp);
}

FpElem operator+(const FpElem& a, const FpElem& b) {
    FpElem r;
    r.p = a.p;
    r.v = (a.v + b.v) % a.p;
    return r;
}

FpElem operator-(const FpElem& a) {
    FpElem r;
    r.p = a.p;
    r.v = (a.p - a.v) % a.p;
    return r;
}

FpElem operator-(const FpElem& a, const FpElem& b) { return a + (-b); }

FpElem operator*(const FpElem& a, const FpElem& b) {
    FpElem r;
    r.p = a.p;
    r.v = mulmod(a.v, b.v, a.p);
    return r;
}

// ---------------------------------------------------------------------------
// TruncatedLaurent
// ---------------------------------------------------------------------------

TruncatedLaurent::TruncatedLaurent(std::uint64_t p, long horizon) : p_(p), horizon_(horizon) {}

TruncatedLaurent::TruncatedLaurent(std::uint64_t p, long horizon,
                                   const std::map<long, long long>& terms)
    : p_(p), horizon_(horizon) {
    if (terms.empty()) return;
    v_min_ = terms.begin()->first;
    long top = terms.rbegin()->first;
    if (top > horizon) throw HorizonUnderflow("term t^" + std::to_string(top) + " beyond horizon");
    c_.assign(static_cast<std::size_t>(horizon - v_min_ + 1), 0);
    for (const auto& [k, c] : terms) c_[k - v_min_] = FpElem(p, c).v;
    normalize();
}

TruncatedLaurent TruncatedLaurent::monomial(std::uint64_t p, long exponent, long horizon,
                                            long long coeff) {
    return TruncatedLaurent(p, horizon, {{exponent, coeff}});
}

void TruncatedLaurent::normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        v_min_ = 0;
        return;
    }
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    v_min_ += static_cast<long>(lead);
}

std::optional<long> TruncatedLaurent::valuation() const {
    if (c_.empty()) return std::nullopt;
    return v_min_;
}

long TruncatedLaurent::effective_valuation() const { return c_.empty() ? horizon_ + 1 : v_min_; }

std::uint64_t TruncatedLaurent::coeff(long k) const {
    if (k > horizon_) {
        throw HorizonUnderflow("coefficient of t^" + std::to_string(k) + " beyond horizon " +
                               std::to_string(horizon_));
    }
    if (c_.empty() || k < v_min_) return 0;
    return c_[k - v_min_];
}

std::map<long, std::uint64_t> TruncatedLaurent::support() const {
    std::map<long, std::uint64_t> out;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) out[v_min_ + static_cast<long>(i)] = c_[i];
    return out;
}

TruncatedLaurent TruncatedLaurent::truncate(long h) const {
    if (h > horizon_) throw HorizonUnderflow("cannot extend horizon");
    TruncatedLaurent r(p_, h);
    if (!c_.empty() && v_min_ <= h) {
        r.v_min_ = v_min_;
        r.c_.assign(c_.begin(), c_.begin() + (h - v_min_ + 1));
        r.normalize();
    }
    return r;
}

TruncatedLaurent TruncatedLaurent::shift(long k) const {
    TruncatedLaurent r = *this;
    r.horizon_ += k;
    if (!r.c_.empty()) r.v_min_ += k;
    return r;
}

TruncatedLaurent TruncatedLaurent::frobenius() const {
    const long p = static_cast<long>(p_);
    TruncatedLaurent r(p_, p * (horizon_ + 1) - 1);
    if (c_.empty()) return r;
    r.v_min_ = v_min_ * p;
    r.c_.assign(static_cast<std::size_t>(r.horizon_ - r.v_min_ + 1), 0);
    // Coefficients are in F_p, so c^p = c.
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * p_] = c_[i];
    return r;
}

TruncatedLaurent TruncatedLaurent::inverse() const {
    if (c_.empty()) throw HorizonUnderflow("series is zero to its horizon; no inverse");
    const long v = v_min_;
    const long len = horizon_ - v + 1;  // known coefficients of the unit part
    std::vector<std::uint64_t> inv(static_cast<std::size_t>(len), 0);
    const std::uint64_t u0inv = invmod(c_[0], p_);
    inv[0] = u0inv;
    for (long n = 1; n < len; ++n) {
        std::uint64_t s = 0;
        for (long i = 1; i <= n; ++i) s = (s + mulmod(c_[i], inv[n - i], p_)) % p_;
        inv[n] = mulmod((p_ - s) % p_, u0inv, p_);
    }
    TruncatedLaurent r(p_, horizon_ - 2 * v);
    r.v_min_ = -v;
    r.c_ = std::move(inv);
    r.normalize();
    return r;
}

TruncatedLaurent TruncatedLaurent::pow(unsigned e) const {
    if (e == 0) return ring_const(*this, 1);
    TruncatedLaurent r = *this;
    for (unsigned i = 1; i < e; ++i) r = r * *this;
    return r;
}

TruncatedLaurent TruncatedLaurent::scale(std::uint64_t c) const {
    TruncatedLaurent r = *this;
    for (auto& x : r.c_) x = mulmod(x, c % p_, p_);
    r.normalize();
    return r;
}

std::string TruncatedLaurent::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : support()) {
        if (!first) os << " + ";
        first = false;
        if (c != 1 || k == 0) os << c;
        if (k != 0) os << (c != 1 ? "*" : "") << "t^" << k;
    }
    if (first) os << "0";
    os << " + O(t^" << horizon_ + 1 << ")";
    return os.str();
}

TruncatedLaurent operator+(const TruncatedLaurent& a, const TruncatedLaurent& b) {
    const long h = std::min(a.horizon_, b.horizon_);
    TruncatedLaurent r(a.p_, h);
    if (a.c_.empty() && b.c_.empty()) return r;
    long lo = std::min(a.effective_valuation(), b.effective_valuation());
    if (lo > h) return r;
    r.v_min_ = lo;
    r.c_.assign(static_cast<std::size_t>(h - lo + 1), 0);
    for (long k = lo; k <= h; ++k) r.c_[k - lo] = (a.coeff(k) + b.coeff(k)) % a.p_;
    r.normalize();
    return r;
}

TruncatedLaurent operator-(const TruncatedLaurent& a) {
    TruncatedLaurent r = a;
    for (auto& x : r.c_) x = (a.p_ - x) % a.p_;
    return r;
}

TruncatedLaurent operator-(const TruncatedLaurent& a, const TruncatedLaurent& b) { return a + (-b); }

TruncatedLaurent operator*(const TruncatedLaurent& a, const TruncatedLaurent& b) {
    const long va = a.effective_valuation(), vb = b.effective_valuation();
    const long h = std::min(a.horizon_ + vb, b.horizon_ + va);
    TruncatedLaurent r(a.p_, h);
    if (a.c_.empty() || b.c_.empty()) return r;
    const long lo = va + vb;
    if (lo > h) return r;
    r.v_min_ = lo;
    r.c_.assign(static_cast<std::size_t>(h - lo + 1), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            long k = lo + static_cast<long>(i + j);
            if (k > h) break;
            r.c_[k - lo] = (r.c_[k - lo] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
        }
    }
    r.normalize();
    return r;
}

bool operator==(const TruncatedLaurent& a, const TruncatedLaurent& b) {
    const long h = std::min(a.horizon_, b.horizon_);
    const long lo = std::min(a.effective_valuation(), b.effective_valuation());
    for (long k = lo; k <= h; ++k)
        if (a.coeff(k) != b.coeff(k)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Witt carry
// ---------------------------------------------------------------------------

std::vector<std::uint64_t> witt_carry_coefficients(std::uint64_t p) {
    std::vector<std::uint64_t> out(p, 0);
    Integer binom = 1;
    for (std::uint64_t i = 1; i < p; ++i) {
        binom = binom * (p - i + 1) / i;
        Integer c = -(binom / p);
        Integer m = c % p;
        if (m < 0) m += p;
        out[i] = static_cast<std::uint64_t>(m);
    }
    return out;
}

CarryIntegrality witt_carry_integrality(std::uint64_t p) {
    CarryIntegrality rep{p, true, {}};
    Integer binom = 1;
    for (std::uint64_t i = 1; i < p; ++i) {
        binom = binom * (p - i + 1) / i;
        if (binom % p != 0) rep.integral = false;
        Rational c(-binom, Integer(p));
        rep.integer_coeffs.push_back(format_rational(c));
    }
    return rep;
}

WittLawReport witt_law_check(std::uint64_t p, std::size_t samples, std::uint64_t seed) {
    WittLawReport rep;
    rep.p = p;
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> dist(0, static_cast<long long>(p) - 1);
    auto draw = [&] { return WittVector2<FpElem>{FpElem(p, dist(rng)), FpElem(p, dist(rng))}; };
    const auto zero = witt_zero(FpElem(p, 0));
    for (std::size_t s = 0; s < samples; ++s) {
        auto a = draw(), b = draw(), c = draw();
        if (!(witt_add(witt_add(a, b, p), c, p) == witt_add(a, witt_add(b, c, p), p)))
            ++rep.associativity_failures;
        if (!(witt_add(a, b, p) == witt_add(b, a, p))) ++rep.commutativity_failures;
        if (!(witt_add(a, witt_neg(a, p), p) == zero)) ++rep.inverse_failures;
        if (!(witt_add(zero, a, p) == a) || !(witt_add(a, zero, p) == a)) ++rep.identity_failures;
        WittVector2<FpElem> expected{FpElem(p, 0), ring_pow(a.x0, static_cast<unsigned>(p))};
        if (!(witt_multiple(a, static_cast<unsigned>(p), p) == expected)) ++rep.p_multiple_failures;
    }
    return rep;
}

std::size_t witt_generated_subgroup_size(const std::vector<WittVector2<FpElem>>& gens,
                                         std::uint64_t p) {
    auto key = [](const WittVector2<FpElem>& w) { return std::make_pair(w.x0.v, w.x1.v); };
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    std::vector<WittVector2<FpElem>> frontier{witt_zero(FpElem(p, 0))};
    seen.insert(key(frontier[0]));
    while (!frontier.empty()) {
        std::vector<WittVector2<FpElem>> next;
        for (const auto& e : frontier)
            for (const auto& g : gens)
                for (const auto& step : {g, witt_neg(g, p)}) {
                    auto n = witt_add(e, step, p);
                    if (seen.insert(key(n)).second) next.push_back(n);
                }
        frontier = std::move(next);
    }
    return seen.size();
}

// ---------------------------------------------------------------------------
// Frobenius cosets in F_p((t))
// ---------------------------------------------------------------------------

std::vector<TruncatedLaurent> ex1_elements(std::uint64_t p, long horizon) {
    const long pl = static_cast<long>(p);
    std::vector<long> ks;
    for (long k = 1; k * pl + 1 <= horizon; ++k) ks.push_back(k);
    std::vector<TruncatedLaurent> out;
    std::vector<long long> digits(ks.size(), 0);
    while (true) {
        std::map<long, long long> terms{{0, 1}, {1, 1}};
        for (std::size_t i = 0; i < ks.size(); ++i)
            if (digits[i]) terms[ks[i] * pl] = digits[i];
        out.emplace_back(p, horizon, terms);
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == pl) digits[i++] = 0;
        if (i == digits.size()) break;
    }
    return out;
}

std::optional<long> non_pth_power_witness(const TruncatedLaurent& x) {
    const long p = static_cast<long>(x.p());
    for (const auto& [k, c] : x.support())
        if (((k % p) + p) % p != 0) return k;
    return std::nullopt;
}

Ex1Report frobenius_cosets_distinct(const std::vector<TruncatedLaurent>& elements,
                                    std::uint64_t p, long horizon) {
    Ex1Report rep{p, horizon};
    rep.elements = elements.size();
    std::vector<TruncatedLaurent> inverses;
    for (const auto& e : elements) inverses.push_back(e.inverse());
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            ++rep.pairs_checked;
            auto w = non_pth_power_witness(elements[i] * inverses[j]);
            if (w) {
                ++rep.pairs_certified;
                rep.witness_exponents.push_back(*w);
            }
        }
    return rep;
}

Ex1Report ex1_frobenius_coset_scan(std::uint64_t p, long horizon) {
    return frobenius_cosets_distinct(ex1_elements(p, horizon), p, horizon);
}

// ---------------------------------------------------------------------------
// x^p - x = t y^p over F_p((t))
// ---------------------------------------------------------------------------

std::vector<std::string> ex3_conditions(std::uint64_t p) {
    // x^p - x - t*y^p = 0, coefficient of t^m with m = k*p + r.
    struct Term {
        int sign;
        std::string text;
    };
    std::vector<std::string> out;
    std::vector<std::uint64_t> disallowed;
    for (std::uint64_t r = 0; r < p; ++r) {
        std::vector<Term> terms;
        const std::string idx = r == 0 ? "kp" : "kp+" + std::to_string(r);
        if (r == 0) terms.push_back({+1, "a_k^p"});       // from x^p
        terms.push_back({-1, "a_{" + idx + "}"});         // from -x
        if (r == 1 % p) terms.push_back({-1, "b_k^p"});   // from -t*y^p
        if (terms.size() == 1) {
            disallowed.push_back(r);
            continue;
        }
        std::string lhs = (terms[0].sign < 0 ? "-" : "") + terms[0].text;
        std::string rhs;
        for (std::size_t i = 1; i < terms.size(); ++i) {
            int s = -terms[i].sign;
            if (!rhs.empty()) rhs += s < 0 ? "-" : "+";
            else if (s < 0) rhs += "-";
            rhs += terms[i].text;
        }
        out.push_back(lhs + "=" + rhs);
    }
    if (!disallowed.empty()) {
        std::string set;
        for (std::uint64_t r = 0; r < p; ++r)
            if (std::find(disallowed.begin(), disallowed.end(), r) == disallowed.end())
                set += (set.empty() ? "" : ",") + std::to_string(r);
        out.push_back("a_k=0 for k mod p not in {" + set + "}");
    }
    return out;
}

namespace {

struct Ex3System {
    long n;
    std::uint64_t p;
    // Variable layout: a_j at j + n, b_k at (2n+1) + k + n.
    [[nodiscard]] std::size_t a(long j) const { return static_cast<std::size_t>(j + n); }
    [[nodiscard]] std::size_t b(long k) const { return static_cast<std::size_t>(2 * n + 1 + k + n); }
    [[nodiscard]] std::size_t vars() const { return static_cast<std::size_t>(2 * (2 * n + 1)); }

    [[nodiscard]] Matrix<std::uint64_t> rows() const {
        const long pl = static_cast<long>(p);
        Matrix<std::uint64_t> m;
        for (long e = -pl * n; e <= n; ++e) {
            std::vector<std::uint64_t> row(vars(), 0);
            bool any = false;
            auto add = [&](std::size_t idx, long long c) {
                row[idx] = (row[idx] + FpElem(p, c).v) % p;
                any = true;
            };
            if (e % pl == 0 && std::abs(e / pl) <= n) add(a(e / pl), 1);  // a^p = a on F_p
            if (std::abs(e) <= n) add(a(e), -1);
            long q = e - 1;
            if (((q % pl) + pl) % pl == 0 && std::abs(q / pl) <= n) add(b(q / pl), -1);
            if (any) m.push_back(std::move(row));
        }
        return m;
    }
};

}  // namespace

Ex3Report ex3_scan(std::uint64_t p, long horizon) {
    Ex3Report rep{p, horizon};
    Ex3System sys{horizon, p};
    auto rows = sys.rows();
    rep.variables = sys.vars();
    rep.equations = rows.size();
    auto basis = nullspace_mod_p(rows, sys.vars(), p);
    rep.solution_dim = basis.size();
    rep.solution_count = Integer(boost::multiprecision::pow(Integer(p), static_cast<unsigned>(basis.size()))).str();
    rep.negative_coefficients_vanish = true;
    rep.residue_pattern_holds = true;
    rep.min_valuation_x = horizon + 1;
    rep.min_valuation_y = horizon + 1;
    const long pl = static_cast<long>(p);
    for (const auto& v : basis) {
        for (long j = -horizon; j <= horizon; ++j) {
            if (v[sys.a(j)]) {
                rep.min_valuation_x = std::min(rep.min_valuation_x, j);
                if (j < 0) rep.negative_coefficients_vanish = false;
                long r = ((j % pl) + pl) % pl;
                if (r != 0 && r != 1) rep.residue_pattern_holds = false;
            }
            if (v[sys.b(j)]) {
                rep.min_valuation_y = std::min(rep.min_valuation_y, j);
                if (j < 0) rep.negative_coefficients_vanish = false;
            }
        }
    }
    rep.conditions = ex3_conditions(p);
    return rep;
}

bool ex3_admits_coefficient(std::uint64_t p, long horizon, long index) {
    Ex3System sys{horizon, p};
    auto rows = sys.rows();
    // Append the constraint a_index = 1 as an augmented column.
    const std::size_t n = sys.vars();
    for (auto& r : rows) r.push_back(0);
    std::vector<std::uint64_t> fix(n + 1, 0);
    fix[sys.a(index)] = 1;
    fix[n] = 1;
    rows.push_back(fix);
    auto pivots = rref_mod_p(rows, p);
    return std::find(pivots.begin(), pivots.end(), n) == pivots.end();
}

bool ex3_member(const TruncatedLaurent& x, const TruncatedLaurent& y) {
    auto lhs = x.frobenius() - x - y.frobenius().shift(1);
    return lhs.is_zero();
}

// ---------------------------------------------------------------------------
// p-power map on G_a x W_2
// ---------------------------------------------------------------------------

Ex4Element ex4_power(const Ex4Element& e, std::uint64_t p) {
    Ex4Element acc{ring_const(e.x, 0), witt_zero(e.x)};
    for (std::uint64_t i = 0; i < p; ++i) {
        acc.x = acc.x + e.x;
        acc.w = witt_add(acc.w, e.w, p);
    }
    return acc;
}

Ex4Report ex4_ppower_scan(std::uint64_t p, long horizon, std::size_t sample_size,
                          std::uint64_t seed) {
    Ex4Report rep{p, horizon, seed};
    std::mt19937_64 rng(seed);
    const long pl = static_cast<long>(p);
    std::uniform_int_distribution<long long> coeff(0, pl - 1);
    std::uniform_int_distribution<long> val(-horizon, horizon);
    // Known coefficients of x reach 2N so that y keeps a usable horizon.
    const long top = 2 * horizon;
    auto random_series = [&](long lo) {
        std::map<long, long long> terms{{lo, 1 + coeff(rng) % (pl - 1)}};
        for (long k = lo + 1; k <= std::min(lo + 4, top); ++k) terms[k] = coeff(rng);
        return TruncatedLaurent(p, top, terms);
    };
    for (std::size_t s = 0; s < sample_size; ++s) {
        TruncatedLaurent x = random_series(val(rng));
        TruncatedLaurent y = (x.frobenius() - x).shift(-1);
        TruncatedLaurent z = random_series(val(rng));
        Ex4Element e{x, {y, z}};
        Ex4Sample sample;
        sample.x_valuation = *x.valuation();
        sample.on_H = (x.frobenius() - x - y.shift(1)).is_zero();
        Ex4Element img = ex4_power(e, p);
        TruncatedLaurent ypow = y.frobenius();
        sample.power_matches = img.x.is_zero() && img.w.x0.is_zero() && img.w.x1 == ypow;
        sample.image_valuation = img.w.x1.valuation();
        if (sample.image_valuation) {
            long v = *sample.image_valuation;
            rep.min_image_valuation = rep.min_image_valuation ? std::min(*rep.min_image_valuation, v) : v;
            rep.max_image_valuation = rep.max_image_valuation ? std::max(*rep.max_image_valuation, v) : v;
        }
        rep.samples.push_back(sample);
    }
    // A = {(0, (0, z))}.
    rep.kernel_contains_A = true;
    for (std::size_t s = 0; s < std::max<std::size_t>(sample_size, 1); ++s) {
        TruncatedLaurent z = random_series(val(rng));
        Ex4Element a{TruncatedLaurent(p, top), {TruncatedLaurent(p, top), z}};
        Ex4Element img = ex4_power(a, p);
        ++rep.A_samples;
        if (!img.x.is_zero() || !img.w.x0.is_zero() || !img.w.x1.is_zero())
            rep.kernel_contains_A = false;
    }
    return rep;
}

}  // namespace zdense
