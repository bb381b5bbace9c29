#include "zdense/relation.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <numeric>

namespace zdense {

std::vector<std::vector<long>> exponent_shell(std::size_t n, long k) {
    std::vector<std::vector<long>> out;
    std::vector<long> v(n, -k);
    if (n == 0) return out;
    while (true) {
        long maxabs = 0;
        long first = 0;
        for (long x : v) {
            maxabs = std::max(maxabs, std::labs(x));
            if (first == 0) first = x;
        }
        if (maxabs == k && first > 0) out.push_back(v);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (v[i] < k) {
                ++v[i];
                for (std::size_t j = i + 1; j < n; ++j) v[j] = -k;
                break;
            }
            if (i == 0) return out;
        }
    }
}

std::optional<MultiplicativeRelation> find_multiplicative_relation(
    const std::vector<std::vector<BigComplex>>& samples, long bound, const Real& tol,
    int max_torsion, const std::function<bool(const std::vector<long>&)>& ignore) {
    if (samples.empty()) return std::nullopt;
    const std::size_t n = samples.front().size();
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    std::vector<std::vector<Real>> logs, args;
    for (const auto& s : samples) {
        std::vector<Real> l, a;
        for (const auto& z : s) {
            l.push_back(log(z.abs()));
            a.push_back(z.arg() / two_pi);  // in turns
        }
        logs.push_back(std::move(l));
        args.push_back(std::move(a));
    }
    for (long k = 1; k <= bound; ++k) {
        for (const auto& v : exponent_shell(n, k)) {
            int order = 1;
            bool ok = true;
            for (std::size_t s = 0; s < samples.size() && ok; ++s) {
                Real l = 0, a = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (v[i] == 0) continue;
                    l += v[i] * logs[s][i];
                    a += v[i] * args[s][i];
                }
                if (abs(l) > tol) {
                    ok = false;
                    break;
                }
                int found = 0;
                for (int q = 1; q <= max_torsion; ++q) {
                    Real t = a * q;
                    if (abs(t - round(t)) <= tol) {
                        found = q;
                        break;
                    }
                }
                if (!found) {
                    ok = false;
                    break;
                }
                order = std::lcm(order, found);
            }
            if (!ok || (ignore && ignore(v))) continue;
            MultiplicativeRelation rel;
            rel.exponents = v;
            rel.torsion_order = order;
            for (long x : v) rel.exact.push_back(x * order);
            return rel;
        }
    }
    return std::nullopt;
}

}  // namespace zdense
