#include "nlgw/qseries.hpp"

#include <algorithm>
#include <numeric>

namespace nlgw {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int moebius(long k) {
    if (k < 1) throw DomainError("moebius: argument must be positive");
    int mu = 1;
    for (long p = 2; p * p <= k; ++p) {
        if (k % p != 0) continue;
        k /= p;
        if (k % p == 0) return 0;
        mu = -mu;
    }
    if (k > 1) mu = -mu;
    return mu;
}

int legendre_chi(long p, long n) {
    if (p < 3 || !is_prime(p)) throw DomainError("legendre_chi: p must be an odd prime");
    long r = ((n % p) + p) % p;
    if (r == 0) return 0;
    // Euler's criterion by square-and-multiply.
    long e = (p - 1) / 2, base = r, acc = 1;
    while (e > 0) {
        if (e & 1) acc = static_cast<long>((static_cast<__int128>(acc) * base) % p);
        base = static_cast<long>((static_cast<__int128>(base) * base) % p);
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

std::vector<long> divisors(long n) {
    if (n < 1) throw DomainError("divisors: argument must be positive");
    std::vector<long> lo, hi;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

long gcd_all(const std::vector<long>& v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, x);
    return g;
}

// ---------------------------------------------------------------------------

long FracSeries::sat_add(long a, long b) {
    if (a >= kExact || b >= kExact) return kExact;
    long s = a + b;
    return s >= kExact ? kExact : s;
}

FracSeries::FracSeries(long grid, long order) : grid_(grid), order_(order) {
    if (grid < 1) throw DomainError("FracSeries: grid must be positive");
    if (order_ > kExact) order_ = kExact;
}

FracSeries FracSeries::constant(const Rational& c, long grid, long order) {
    FracSeries s(grid, order);
    if (0 < order) s.set(0, c);
    return s;
}

FracSeries FracSeries::monomial(long exponent, const Rational& c, long grid, long order) {
    FracSeries s(grid, order);
    s.set(exponent, c);
    return s;
}

Rational FracSeries::coeff(long e) const {
    if (e >= order_)
        throw TruncationError("coefficient at exponent " + std::to_string(e) + "/" + std::to_string(grid_) +
                              " is beyond the truncation order " + std::to_string(order_));
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational FracSeries::coeff_at(const Rational& exponent) const {
    Rational scaled = exponent * grid_;
    if (!is_integer(scaled)) throw DomainError("exponent " + to_string(exponent) + " is off the grid");
    return coeff(to_long(scaled));
}

void FracSeries::set(long e, const Rational& c) {
    if (e >= order_) throw TruncationError("cannot set a coefficient beyond the truncation order");
    if (c == 0)
        coeffs_.erase(e);
    else
        coeffs_[e] = c;
}

void FracSeries::add_to(long e, const Rational& c) {
    if (c == 0) return;
    if (e >= order_) throw TruncationError("cannot set a coefficient beyond the truncation order");
    auto [it, inserted] = coeffs_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

long FracSeries::valuation() const { return coeffs_.empty() ? order_ : coeffs_.begin()->first; }

FracSeries FracSeries::regrid(long new_grid) const {
    if (new_grid % grid_ != 0) throw DomainError("regrid: new grid must be a multiple of the old one");
    long f = new_grid / grid_;
    FracSeries r(new_grid, exact() ? kExact : order_ * f);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e * f, c);
    return r;
}

FracSeries FracSeries::truncated(long order) const {
    FracSeries r(grid_, std::min(order, order_));
    for (const auto& [e, c] : coeffs_) {
        if (e >= r.order_) break;
        r.coeffs_.emplace(e, c);
    }
    return r;
}

FracSeries FracSeries::shifted(long e) const {
    FracSeries r(grid_, exact() ? kExact : order_ + e);
    for (const auto& [x, c] : coeffs_) r.coeffs_.emplace(x + e, c);
    return r;
}

FracSeries FracSeries::substitute_power(long a) const {
    if (a < 1) throw DomainError("substitute_power: exponent must be positive");
    FracSeries r(grid_, exact() ? kExact : order_ * a);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e * a, c);
    return r;
}

FracSeries FracSeries::scaled_exponent_sign() const {
    if (grid_ != 1) throw DomainError("q -> -q needs integral exponents");
    FracSeries r(*this);
    for (auto& [e, c] : r.coeffs_)
        if (e % 2 != 0) c = -c;
    return r;
}

FracSeries FracSeries::operator-() const {
    FracSeries r(*this);
    for (auto& kv : r.coeffs_) kv.second = -kv.second;
    return r;
}

static long lcm_grid(long a, long b) { return std::lcm(a, b); }

FracSeries& FracSeries::operator+=(const FracSeries& o) {
    long g = lcm_grid(grid_, o.grid_);
    if (g != grid_) *this = regrid(g);
    FracSeries b = (o.grid_ == g) ? o : o.regrid(g);
    long ord = std::min(order_, b.order_);
    if (ord < order_) *this = truncated(ord);
    for (const auto& [e, c] : b.coeffs_) {
        if (e >= ord) break;
        add_to(e, c);
    }
    return *this;
}

FracSeries& FracSeries::operator-=(const FracSeries& o) { return *this += -o; }

FracSeries& FracSeries::operator*=(const Rational& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& kv : coeffs_) kv.second *= c;
    return *this;
}

FracSeries operator*(const FracSeries& a0, const FracSeries& b0) {
    long g = std::lcm(a0.grid(), b0.grid());
    FracSeries a = a0.grid() == g ? a0 : a0.regrid(g);
    FracSeries b = b0.grid() == g ? b0 : b0.regrid(g);
    long va = a.valuation(), vb = b.valuation();
    long ord = std::min(FracSeries::sat_add(a.order(), vb), FracSeries::sat_add(b.order(), va));
    FracSeries r(g, ord);
    // Accumulate into a dense buffer when the range is small.
    if (a.is_zero() || b.is_zero()) return r;
    long lo = va + vb;
    long hi = a.coeffs().rbegin()->first + b.coeffs().rbegin()->first;
    if (hi >= ord) hi = ord - 1;
    if (hi < lo) return r;
    std::vector<Rational> acc(static_cast<size_t>(hi - lo + 1));
    std::vector<char> touched(acc.size(), 0);
    for (const auto& [ea, ca] : a.coeffs()) {
        if (ea + vb > hi) break;
        for (const auto& [eb, cb] : b.coeffs()) {
            long e = ea + eb;
            if (e > hi) break;
            size_t i = static_cast<size_t>(e - lo);
            acc[i] += ca * cb;
            touched[i] = 1;
        }
    }
    for (size_t i = 0; i < acc.size(); ++i)
        if (touched[i] && acc[i] != 0) r.coeffs_.emplace(lo + static_cast<long>(i), std::move(acc[i]));
    return r;
}

FracSeries FracSeries::inverse() const {
    if (coeffs_.empty()) throw DomainError("inverse: lowest coefficient unknown or zero");
    long v = valuation();
    if (exact() && coeffs_.size() > 1)
        throw TruncationError("inverse of an untruncated non-monomial series needs an explicit truncation");
    if (exact()) return monomial(-v, Rational(1) / coeffs_.begin()->second, grid_, kExact);
    long prec = order_ - v;  // relative precision in grid steps
    std::vector<Rational> a(static_cast<size_t>(prec));
    for (const auto& [e, c] : coeffs_) a[static_cast<size_t>(e - v)] = c;
    std::vector<Rational> b(static_cast<size_t>(prec));
    Rational inv0 = Rational(1) / a[0];
    b[0] = inv0;
    std::vector<long> nz;  // indices j >= 1 with a_j != 0
    for (long j = 1; j < prec; ++j)
        if (a[static_cast<size_t>(j)] != 0) nz.push_back(j);
    for (long n = 1; n < prec; ++n) {
        Rational s = 0;
        for (long j : nz) {
            if (j > n) break;
            s += a[static_cast<size_t>(j)] * b[static_cast<size_t>(n - j)];
        }
        b[static_cast<size_t>(n)] = -s * inv0;
    }
    FracSeries r(grid_, order_ - 2 * v);
    for (long n = 0; n < prec; ++n)
        if (b[static_cast<size_t>(n)] != 0) r.coeffs_.emplace(n - v, b[static_cast<size_t>(n)]);
    return r;
}

FracSeries FracSeries::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    FracSeries result = constant(1, grid_);
    FracSeries base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

FracSeries FracSeries::exp() const {
    if (valuation() <= 0 && !coeffs_.empty()) throw DomainError("exp: series must have positive valuation");
    if (coeffs_.empty()) return constant(1, grid_, order_);
    if (exact()) throw TruncationError("exp of an untruncated series needs an explicit truncation");
    long n_max = order_;
    std::vector<Rational> a(static_cast<size_t>(n_max));
    for (const auto& [e, c] : coeffs_) a[static_cast<size_t>(e)] = c;
    std::vector<Rational> b(static_cast<size_t>(n_max));
    b[0] = 1;
    for (long n = 1; n < n_max; ++n) {
        Rational s = 0;
        for (long k = 1; k <= n; ++k)
            if (a[static_cast<size_t>(k)] != 0) s += Rational(k) * a[static_cast<size_t>(k)] * b[static_cast<size_t>(n - k)];
        b[static_cast<size_t>(n)] = s / n;
    }
    FracSeries r(grid_, order_);
    for (long n = 0; n < n_max; ++n)
        if (b[static_cast<size_t>(n)] != 0) r.coeffs_.emplace(n, b[static_cast<size_t>(n)]);
    return r;
}

FracSeries FracSeries::compose(const FracSeries& inner) const {
    if (grid_ != 1 || inner.grid_ != 1) throw DomainError("compose: both series must have grid 1");
    long vg = inner.valuation();
    if (inner.is_zero() || vg < 1) throw DomainError("compose: inner series must have positive valuation");
    if (!coeffs_.empty() && coeffs_.begin()->first < 0) throw DomainError("compose: outer series must be a power series");
    long ord = exact() ? kExact : order_ * vg;
    for (const auto& [j, c] : coeffs_)
        if (j >= 1) ord = std::min(ord, sat_add(inner.order_, (j - 1) * vg));
    if (ord >= kExact && !coeffs_.empty() && coeffs_.rbegin()->first > 0 && !inner.exact())
        throw TruncationError("compose: cannot determine result truncation");
    FracSeries r(1, ord);
    FracSeries power = constant(1, 1);
    long last = 0;
    for (const auto& [j, c] : coeffs_) {
        if (j * vg >= ord) break;
        while (last < j) {
            power = (power * inner).truncated(ord);
            ++last;
        }
        for (const auto& [e, pc] : power.coeffs_) {
            if (e >= ord) break;
            r.add_to(e, c * pc);
        }
    }
    return r;
}

bool FracSeries::agrees_with(const FracSeries& o) const {
    long g = std::lcm(grid_, o.grid_);
    FracSeries a = regrid(g), b = o.regrid(g);
    long ord = std::min(a.order_, b.order_);
    auto trunc_eq = [ord](const FracSeries& x, const FracSeries& y) {
        for (const auto& [e, c] : x.coeffs_) {
            if (e >= ord) break;
            auto it = y.coeffs_.find(e);
            if (it == y.coeffs_.end() || it->second != c) return false;
        }
        return true;
    };
    return trunc_eq(a, b) && trunc_eq(b, a);
}

bool operator==(const FracSeries& a, const FracSeries& b) {
    return a.grid() == b.grid() && a.order() == b.order() && a.coeffs() == b.coeffs();
}

nlohmann::json FracSeries::to_json() const {
    nlohmann::json j;
    j["grid"] = grid_;
    if (exact())
        j["order"] = nullptr;
    else
        j["order"] = order_;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : coeffs_) arr.push_back({e, to_string(c)});
    j["coeffs"] = arr;
    return j;
}

FracSeries FracSeries::from_json(const nlohmann::json& j) {
    long grid = j.at("grid").get<long>();
    long order = j.at("order").is_null() ? kExact : j.at("order").get<long>();
    FracSeries s(grid, order);
    for (const auto& item : j.at("coeffs")) s.set(item.at(0).get<long>(), parse_rational(item.at(1).get<std::string>()));
    return s;
}

// ---------------------------------------------------------------------------

namespace {

void require_terms(long terms) {
    if (terms < 1) throw DomainError("truncation must be at least one term");
}

void require_odd_prime(long p) {
    if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
}

// Dense coefficients of prod_{n>=1} (1 - q^n)^e for exponents < terms, by
// Miller's power recurrence applied to Euler's product.
std::vector<Rational> euler_power(long e, long terms) {
    std::vector<Rational> base(static_cast<size_t>(terms));
    // Pentagonal number theorem.
    base[0] = 1;
    for (long k = 1;; ++k) {
        long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
        if (g1 >= terms) break;
        int sgn = (k % 2) ? -1 : 1;
        base[static_cast<size_t>(g1)] += sgn;
        if (g2 < terms) base[static_cast<size_t>(g2)] += sgn;
    }
    std::vector<Rational> out(static_cast<size_t>(terms));
    out[0] = 1;
    for (long n = 1; n < terms; ++n) {
        Rational s = 0;
        for (long k = 1; k <= n; ++k) {
            const Rational& ak = base[static_cast<size_t>(k)];
            if (ak == 0) continue;
            s += Rational((e + 1) * k - n) * ak * out[static_cast<size_t>(n - k)];
        }
        out[static_cast<size_t>(n)] = s / n;
    }
    return out;
}

}  // namespace

FracSeries eta_power_product(const std::vector<std::pair<long, long>>& scales_and_exponents, long terms) {
    require_terms(terms);
    long lead24 = 0;
    for (const auto& [a, e] : scales_and_exponents) {
        if (a < 1) throw DomainError("eta scale must be positive");
        lead24 += a * e;
    }
    long g = std::gcd(24L, std::labs(lead24));
    long grid = lead24 == 0 ? 1 : 24 / g;
    FracSeries prod = FracSeries::constant(1, 1, terms);
    for (const auto& [a, e] : scales_and_exponents) {
        if (e == 0) continue;
        long inner_terms = (terms - 1) / a + 1;
        auto dense = euler_power(e, inner_terms);
        FracSeries f(1, inner_terms);
        for (long n = 0; n < inner_terms; ++n) f.set(n, dense[static_cast<size_t>(n)]);
        prod = (prod * f.substitute_power(a).truncated(terms)).truncated(terms);
    }
    // Multiply by q^{lead24/24}.
    FracSeries r = prod.regrid(grid);
    long lead = lead24 * grid / 24;
    return r.shifted(lead);
}

Rational e1_normalization(long p) {
    require_odd_prime(p);
    if (p % 4 != 3) throw DomainError("weight one Eisenstein series needs an odd character (p = 3 mod 4)");
    // L(0, chi_p) = -(1/p) sum_{a=1}^{p-1} a chi_p(a)
    long s = 0;
    for (long a = 1; a < p; ++a) s += a * legendre_chi(p, a);
    Rational l0(-s, p);
    l0.canonicalize();
    return Rational(2) / l0;
}

FracSeries eisenstein_E1(long p, long terms) {
    require_terms(terms);
    Rational c = e1_normalization(p);
    FracSeries s(1, terms);
    s.set(0, 1);
    for (long n = 1; n < terms; ++n) {
        long acc = 0;
        for (long d : divisors(n)) acc += legendre_chi(p, n / d);
        s.set(n, c * acc);
    }
    return s;
}

FracSeries eisenstein_E3(long p, long terms) {
    require_terms(terms);
    require_odd_prime(p);
    FracSeries s(1, terms);
    for (long n = 1; n < terms; ++n) {
        long acc = 0;
        for (long d : divisors(n)) acc += d * d * legendre_chi(p, n / d);
        s.set(n, acc);
    }
    return s;
}

FracSeries theta(long terms) {
    require_terms(terms);
    FracSeries s(1, terms);
    s.set(0, 1);
    for (long n = 1; n * n < terms; ++n) s.set(n * n, 2);
    return s;
}

FracSeries alpha_series(long terms) {
    require_terms(terms);
    FracSeries s(1, terms);
    for (long n = 1; n < terms; n += 2) {
        long acc = 0;
        for (long d : divisors(n)) acc += d;
        s.set(n, acc);
    }
    return s;
}

FracSeries g2_series(long terms) {
    require_terms(terms);
    FracSeries s(1, terms);
    s.set(0, Rational(-1, 24));
    for (long n = 1; n < terms; ++n) {
        long acc = 0;
        for (long d : divisors(n)) acc += d;
        s.set(n, acc);
    }
    return s;
}

FracSeries delta_series(long terms) { return eta_power_product({{1, 24}}, terms); }

}  // namespace nlgw
