#include "nlgw/bps.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace nlgw {

namespace {

Rational lookup(const GenusMultipleTable& t, long g, long m, const char* what) {
    auto it = t.find({g, m});
    if (it == t.end())
        throw DomainError(std::string(what) + ": missing entry (g=" + std::to_string(g) + ", m=" + std::to_string(m) + ")");
    return it->second;
}

// Kernel coefficients a_{g,gt}, cached per call site by the caller.
std::map<long, std::vector<Rational>> kernel_rows(long g_max) {
    std::map<long, std::vector<Rational>> rows;
    for (long g = 0; g <= g_max; ++g) rows[g] = sin_kernel_coeffs(g, g_max);
    return rows;
}

}  // namespace

LaurentU sin_kernel(long g, long order) {
    if (g < 0 || order < 0) throw DomainError("sin_kernel: negative genus or order");
    // sin(u/2)/2 = (u/4) h(u^2) with h = sum_n (-1)^n (u/2)^{2n} / (2n+1)!
    // Relative precision in u: 2*order + 1 suffices for u^{2 order - 2}.
    const long rel = 2 * order + 2;
    FracSeries h(1, rel);
    for (long n = 0; 2 * n < rel; ++n) {
        Rational c = Rational(n % 2 ? -1 : 1) / (Rational(factorial(2 * n + 1)) * Rational(Integer(1) << (2 * n)));
        h.set(2 * n, c);
    }
    FracSeries hp = h.pow(2 * g - 2);
    Rational lead = rational_pow(Rational(1, 4), 2 * g - 2);
    return hp.shifted(2 * g - 2) * lead;
}

std::vector<Rational> sin_kernel_coeffs(long g, long order) {
    LaurentU k = sin_kernel(g, order);
    std::vector<Rational> out;
    for (long gt = 0; gt <= order; ++gt) out.push_back(k.coeff(2 * gt - 2));
    return out;
}

Rational rtilde_from_gw(const GenusMultipleTable& R, long g, long m) {
    if (m < 1) throw DomainError("rtilde_from_gw: multiple must be positive");
    Rational s = 0;
    for (long k : divisors(m)) {
        int mu = moebius(k);
        if (mu == 0) continue;
        s += mu * rational_pow(k, 2 * g - 3) * lookup(R, g, m / k, "rtilde_from_gw");
    }
    return s;
}

GenusMultipleTable rtilde_table(const GenusMultipleTable& R, long g_max, long m_max) {
    GenusMultipleTable out;
    for (long g = 0; g <= g_max; ++g)
        for (long m = 1; m <= m_max; ++m) out[{g, m}] = rtilde_from_gw(R, g, m);
    return out;
}

GenusMultipleTable gw_from_rtilde(const GenusMultipleTable& rt, long g_max, long m_max) {
    GenusMultipleTable out;
    for (long g = 0; g <= g_max; ++g)
        for (long m = 1; m <= m_max; ++m) {
            Rational s = 0;
            for (long k : divisors(m)) s += rational_pow(k, 2 * g - 3) * lookup(rt, g, m / k, "gw_from_rtilde");
            out[{g, m}] = s;
        }
    return out;
}

GenusMultipleTable gw_from_gv(const GenusMultipleTable& r, long g_max, long m_max) {
    auto a = kernel_rows(g_max);
    GenusMultipleTable out;
    for (long gt = 0; gt <= g_max; ++gt)
        for (long n = 1; n <= m_max; ++n) {
            Rational s = 0;
            for (long k : divisors(n)) {
                Rational inner = 0;
                for (long g = 0; g <= gt; ++g)
                    if (a[g][gt] != 0) inner += a[g][gt] * lookup(r, g, n / k, "gw_from_gv");
                s += rational_pow(k, 2 * gt - 3) * inner;
            }
            out[{gt, n}] = s;
        }
    return out;
}

GenusMultipleTable gv_from_gw(const GenusMultipleTable& R, long g_max, long m_max) {
    auto a = kernel_rows(g_max);
    GenusMultipleTable r;
    for (long gt = 0; gt <= g_max; ++gt)
        for (long n = 1; n <= m_max; ++n) {
            Rational rest = lookup(R, gt, n, "gv_from_gw");
            for (long k : divisors(n)) {
                const Rational w = rational_pow(k, 2 * gt - 3);
                for (long g = 0; g <= gt; ++g) {
                    if (k == 1 && g == gt) continue;
                    if (a[g][gt] != 0) rest -= w * a[g][gt] * r.at({g, n / k});
                }
            }
            r[{gt, n}] = rest / a[gt][gt];
        }
    return r;
}

Rational rtilde_from_gv(const GenusMultipleTable& r, long gt, long m) {
    auto a = kernel_rows(gt);
    Rational s = 0;
    for (long g = 0; g <= gt; ++g)
        if (a[g][gt] != 0) s += a[g][gt] * lookup(r, g, m, "rtilde_from_gv");
    return s;
}

Rational abelian_fls_transform(const std::map<long, Rational>& primitive, long g, long d, long dprime) {
    if (d < 1 || dprime < 1) throw DomainError("abelian_fls_transform: degrees must be positive");
    Rational s = 0;
    for (long k : divisors(std::gcd(d, dprime))) {
        long n = d * dprime / (k * k);
        auto it = primitive.find(n);
        if (it == primitive.end()) throw DomainError("abelian_fls_transform: missing N(1," + std::to_string(n) + ")");
        s += rational_pow(k, 2 * g + 3) * it->second;
    }
    return s;
}

void write_table_csv(std::ostream& os, const GenusMultipleTable& t) {
    os << "g,m,value\n";
    for (const auto& [key, v] : t) os << key.first << ',' << key.second << ',' << to_string(v) << '\n';
}

GenusMultipleTable read_table_csv(std::istream& is) {
    GenusMultipleTable t;
    std::string line;
    if (!std::getline(is, line) || line.rfind("g,m,value", 0) != 0) throw DomainError("table CSV: expected header g,m,value");
    long lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string g, m, v;
        if (!std::getline(ss, g, ',') || !std::getline(ss, m, ',') || !std::getline(ss, v))
            throw DomainError("table CSV: malformed line " + std::to_string(lineno));
        if (!v.empty() && v.back() == '\r') v.pop_back();
        try {
            t[{std::stol(g), std::stol(m)}] = parse_rational(v);
        } catch (const std::logic_error&) {
            throw DomainError("table CSV: malformed line " + std::to_string(lineno));
        }
    }
    return t;
}

}  // namespace nlgw
