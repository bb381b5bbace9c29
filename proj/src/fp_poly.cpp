#include "zdense/fp_poly.hpp"

#include "zdense/linalg.hpp"

#include <stdexcept>

namespace zdense {

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= p_;
    trim();
}

FpPoly FpPoly::from_signed(std::uint64_t p, const std::vector<long long>& coeffs) {
    std::vector<std::uint64_t> c;
    const long long pp = static_cast<long long>(p);
    for (long long x : coeffs) c.push_back(static_cast<std::uint64_t>(((x % pp) + pp) % pp));
    return FpPoly(p, std::move(c));
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::derivative() const {
    std::vector<std::uint64_t> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(mulmod(c_[i], i % p_, p_));
    return FpPoly(p_, std::move(d));
}

FpPoly FpPoly::monic() const {
    if (c_.empty()) return *this;
    std::uint64_t inv = invmod(c_.back(), p_);
    std::vector<std::uint64_t> d(c_);
    for (auto& x : d) x = mulmod(x, inv, p_);
    return FpPoly(p_, std::move(d));
}

std::string FpPoly::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (c_[i] != 1 || i == 0) s += std::to_string(c_[i]);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % a.p_;
    return FpPoly(a.p_, std::move(c));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + a.p_ - b[i]) % a.p_;
    return FpPoly(a.p_, std::move(c));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = (c[i + j] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
    return FpPoly(a.p_, std::move(c));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const std::uint64_t p = a.p_;
    std::vector<std::uint64_t> r = a.c_;
    std::vector<std::uint64_t> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0, 0);
    const std::uint64_t inv = invmod(b.c_.back(), p);
    for (int i = static_cast<int>(r.size()) - 1; i >= b.degree(); --i) {
        std::uint64_t f = mulmod(r[i], inv, p);
        if (f == 0) continue;
        const int shift = i - b.degree();
        q[shift] = f;
        for (int j = 0; j <= b.degree(); ++j) r[shift + j] = (r[shift + j] + p - mulmod(f, b.c_[j], p)) % p;
    }
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly FpPoly::pow(const FpPoly& base, unsigned e) {
    FpPoly result(base.p_, {1});
    FpPoly b = base;
    while (e) {
        if (e & 1) result = result * b;
        b = b * b;
        e >>= 1;
    }
    return result;
}

namespace {

/// g(x) with g(x)^p = f(x); requires f' = 0.
FpPoly pth_root(const FpPoly& f) {
    std::vector<std::uint64_t> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += f.p()) c.push_back(f.coeffs()[i]);
    return FpPoly(f.p(), std::move(c));
}

}  // namespace

FpPoly radical(const FpPoly& f) {
    if (f.degree() <= 0) return FpPoly(f.p(), {1});
    FpPoly df = f.derivative();
    if (df.is_zero()) return radical(pth_root(f));
    FpPoly g = FpPoly::gcd(f, df);
    FpPoly part = FpPoly::divmod(f.monic(), g).first;  // product of factors coprime to p-powers
    // Factors of g whose multiplicity is a multiple of p are missed by f/g; recurse.
    FpPoly rest = radical(g);
    return FpPoly::divmod(part * rest, FpPoly::gcd(part, rest)).first.monic();
}

}  // namespace zdense
