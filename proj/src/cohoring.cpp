#include "nlgw/cohoring.hpp"

#include "nlgw/qseries.hpp"

#include <numeric>
#include <regex>

namespace nlgw {

// ----------------------------------------------------------------- ambients

AmbientSpec AmbientSpec::grassmannian(long k, long n, bool pencil) {
    if (k < 1 || n <= k) throw DomainError("Gr(k,n) needs 1 <= k < n");
    AmbientSpec a;
    a.factor_dims.assign(static_cast<size_t>(k), n - 1);
    a.has_pencil_line = pencil;
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) {
            if (i == j) continue;
            std::vector<long> r(static_cast<size_t>(k), 0);
            r[static_cast<size_t>(i)] = 1;
            r[static_cast<size_t>(j)] = -1;
            a.roots.push_back(r);
        }
    a.weyl_order = to_long(factorial(k));
    return a;
}

AmbientSpec AmbientSpec::projective_product(const std::vector<long>& dims, bool pencil) {
    for (long d : dims)
        if (d < 0) throw DomainError("negative projective dimension");
    AmbientSpec a;
    a.factor_dims = dims;
    a.has_pencil_line = pencil;
    return a;
}

long AmbientSpec::abelian_dimension() const {
    long s = std::accumulate(factor_dims.begin(), factor_dims.end(), 0L);
    return s + (has_pencil_line ? 1 : 0);
}

long AmbientSpec::dimension() const { return abelian_dimension() - static_cast<long>(roots.size()); }

bool AmbientSpec::grassmannian_type() const {
    size_t k = num_factors();
    if (roots.size() != k * (k - 1)) return false;
    for (size_t i = 1; i < k; ++i)
        if (factor_dims[i] != factor_dims[0]) return false;
    std::map<std::pair<size_t, size_t>, int> seen;
    for (const auto& r : roots) {
        if (r.size() != k) return false;
        long plus = -1, minus = -1;
        for (size_t i = 0; i < k; ++i) {
            if (r[i] == 1 && plus < 0) plus = static_cast<long>(i);
            else if (r[i] == -1 && minus < 0) minus = static_cast<long>(i);
            else if (r[i] != 0) return false;
        }
        if (plus < 0 || minus < 0) return false;
        seen[{static_cast<size_t>(plus), static_cast<size_t>(minus)}]++;
    }
    return seen.size() == roots.size();
}

std::vector<int> AmbientSpec::nilpotency() const {
    std::vector<int> caps;
    for (long d : factor_dims) caps.push_back(static_cast<int>(d + 1));
    if (has_pencil_line) caps.push_back(2);
    return caps;
}

bool RingShape::admits(const std::vector<int>& mono) const {
    long deg = 0;
    for (size_t i = 0; i < mono.size(); ++i) {
        if (caps[i] > 0 && mono[i] >= caps[i]) return false;
        deg += mono[i];
    }
    return deg <= degree_cap;
}

RingShape ring_shape(const AmbientSpec& a) {
    RingShape s;
    s.caps = a.nilpotency();
    return s;
}

RingShape lifted_shape(const AmbientSpec& a, long degree_cap) {
    RingShape s;
    s.caps.assign(a.num_factors(), 0);
    if (a.has_pencil_line) s.caps.push_back(2);
    s.degree_cap = degree_cap;
    return s;
}

// ------------------------------------------------------------ ring elements

RingElement::RingElement(RingShape shape) : shape_(std::move(shape)) {}

void RingElement::check_z(long zexp) const {
    if (zexp > shape_.zmax || zexp < -shape_.zmax)
        throw TruncationError("z exponent " + std::to_string(zexp) + " outside the configured window");
}

RingElement RingElement::constant(const RingShape& shape, const Rational& c, long zexp) {
    RingElement r(shape);
    r.add_term(Monomial(shape.caps.size(), 0), zexp, c);
    return r;
}

RingElement RingElement::variable(const RingShape& shape, size_t i) {
    if (i >= shape.caps.size()) throw DomainError("variable index out of range");
    RingElement r(shape);
    Monomial m(shape.caps.size(), 0);
    m[i] = 1;
    r.add_term(m, 0, 1);
    return r;
}

RingElement RingElement::linear(const RingShape& shape, const std::vector<Rational>& c, const Rational& zc,
                                const Rational& c0) {
    if (c.size() != shape.caps.size()) throw DomainError("linear form has the wrong number of coefficients");
    RingElement r(shape);
    Monomial zero(shape.caps.size(), 0);
    r.add_term(zero, 0, c0);
    r.add_term(zero, 1, zc);
    for (size_t i = 0; i < c.size(); ++i) {
        Monomial m = zero;
        m[i] = 1;
        r.add_term(m, 0, c[i]);
    }
    return r;
}

Rational RingElement::coeff(const Monomial& m, long zexp) const {
    auto it = terms_.find(m);
    if (it == terms_.end()) return 0;
    auto jt = it->second.find(zexp);
    return jt == it->second.end() ? Rational(0) : jt->second;
}

void RingElement::add_term(const Monomial& m, long zexp, const Rational& c) {
    if (c == 0) return;
    if (m.size() != shape_.caps.size()) throw DomainError("monomial has the wrong number of variables");
    if (!shape_.admits(m)) return;
    check_z(zexp);
    auto& lz = terms_[m];
    Rational& slot = lz[zexp];
    slot += c;
    if (slot == 0) {
        lz.erase(zexp);
        if (lz.empty()) terms_.erase(m);
    }
}

RingElement& RingElement::operator+=(const RingElement& o) {
    if (!(shape_ == o.shape_)) throw DomainError("ambient mismatch");
    for (const auto& [m, lz] : o.terms_)
        for (const auto& [z, c] : lz) add_term(m, z, c);
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) { return *this += -o; }

RingElement& RingElement::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, lz] : terms_)
        for (auto& [z, v] : lz) v *= c;
    return *this;
}

RingElement RingElement::operator-() const {
    RingElement r = *this;
    r *= -1;
    return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    if (!(a.shape_ == b.shape_)) throw DomainError("ambient mismatch");
    RingElement r(a.shape_);
    Monomial m(a.shape_.caps.size());
    for (const auto& [ma, la] : a.terms_)
        for (const auto& [mb, lb] : b.terms_) {
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            if (!a.shape_.admits(m)) continue;
            for (const auto& [za, ca] : la)
                for (const auto& [zb, cb] : lb) r.add_term(m, za + zb, ca * cb);
        }
    return r;
}

bool operator==(const RingElement& a, const RingElement& b) { return a.shape_ == b.shape_ && a.terms_ == b.terms_; }

RingElement RingElement::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    RingElement result = constant(shape_, 1);
    RingElement base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

RingElement RingElement::inverse() const {
    Monomial zero(shape_.caps.size(), 0);
    auto it = terms_.find(zero);
    if (it == terms_.end() || it->second.size() != 1)
        throw DomainError("element is not a unit: constant part must be a single z-monomial");
    const long a = it->second.begin()->first;
    const Rational c = it->second.begin()->second;
    bool nilpotent = shape_.degree_cap < RingShape::kNoCap;
    if (!nilpotent) {
        nilpotent = true;
        for (int cap : shape_.caps)
            if (cap == 0) nilpotent = false;
    }
    if (!nilpotent) throw DomainError("inverse needs a nilpotent or degree-truncated shape");
    // x = c z^a (1 + N)
    RingElement n_part = *this * RingElement::constant(shape_, 1 / c, -a);
    n_part.add_term(zero, 0, -1);
    RingElement acc = constant(shape_, 1);
    RingElement term = constant(shape_, 1);
    RingElement minus_n = -n_part;
    while (true) {
        term = term * minus_n;
        if (term.is_zero()) break;
        acc += term;
    }
    return acc * RingElement::constant(shape_, 1 / c, -a);
}

RingElement RingElement::z_coeff(long j) const {
    RingElement r(shape_);
    for (const auto& [m, lz] : terms_) {
        auto jt = lz.find(j);
        if (jt != lz.end()) r.add_term(m, 0, jt->second);
    }
    return r;
}

RingElement RingElement::degree_part(long j) const {
    RingElement r(shape_);
    for (const auto& [m, lz] : terms_) {
        long d = std::accumulate(m.begin(), m.end(), 0L);
        if (d == j) r.terms_[m] = lz;
    }
    return r;
}

std::pair<long, long> RingElement::z_range() const {
    if (terms_.empty()) return {0, 0};
    long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
    for (const auto& [m, lz] : terms_) {
        lo = std::min(lo, lz.begin()->first);
        hi = std::max(hi, lz.rbegin()->first);
    }
    return {lo, hi};
}

RingElement RingElement::reshaped(const RingShape& s) const {
    if (s.caps.size() != shape_.caps.size()) throw DomainError("ambient mismatch");
    RingElement r(s);
    for (const auto& [m, lz] : terms_)
        for (const auto& [z, c] : lz) r.add_term(m, z, c);
    return r;
}

RingElement RingElement::swapped(size_t i, size_t j) const {
    RingElement r(shape_);
    for (const auto& [m, lz] : terms_) {
        Monomial mm = m;
        std::swap(mm[i], mm[j]);
        for (const auto& [z, c] : lz) r.add_term(mm, z, c);
    }
    return r;
}

// ---------------------------------------------------------------- division

RingElement vandermonde_divide(const RingElement& numerator, const AmbientSpec& a) {
    const size_t k = a.num_factors();
    if (!a.roots.empty() && !a.grassmannian_type())
        throw DomainError("Vandermonde division needs roots e_i - e_j");
    const RingShape& in = numerator.shape();
    for (size_t i = 0; i < k; ++i)
        if (in.caps[i] != 0) throw DomainError("numerator must be a lifted polynomial representative");
    if (in.degree_cap >= RingShape::kNoCap) throw DomainError("numerator needs a finite degree cap");
    RingElement cur = numerator;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            RingShape next = cur.shape();
            next.degree_cap -= 1;
            RingElement quot(next);
            std::map<Monomial, ZLaurent> rem;
            for (const auto& [m, lz] : cur.terms()) {
                const int e = m[i];
                Monomial q = m;
                for (int t = 0; t < e; ++t) {
                    q[i] = e - 1 - t;
                    q[j] = m[j] + t;
                    for (const auto& [z, c] : lz) quot.add_term(q, z, c);
                }
                Monomial r = m;
                r[i] = 0;
                r[j] = m[j] + e;
                for (const auto& [z, c] : lz) rem[r][z] += c;
            }
            for (const auto& [m, lz] : rem)
                for (const auto& [z, c] : lz)
                    if (c != 0)
                        throw ConsistencyError("nonzero remainder dividing by H_" + std::to_string(i + 1) + " - H_" +
                                               std::to_string(j + 1));
            cur = std::move(quot);
        }
    RingShape out = ring_shape(a);
    out.degree_cap = cur.shape().degree_cap;
    out.zmax = in.zmax;
    return cur.reshaped(out);
}

// ------------------------------------------------------------- integration

static Monomial top_monomial(const AmbientSpec& a) {
    Monomial m;
    for (long d : a.factor_dims) m.push_back(static_cast<int>(d));
    if (a.has_pencil_line) m.push_back(1);
    return m;
}

Rational integrate_abelian(const AmbientSpec& a, const RingElement& x, long zexp) {
    if (x.shape().caps.size() != a.num_vars()) throw DomainError("ambient mismatch");
    return x.coeff(top_monomial(a), zexp);
}

Rational martin_integrate(const AmbientSpec& a, const RingElement& x) {
    const size_t k = a.num_factors();
    if (a.grassmannian_type()) {
        for (size_t i = 0; i + 1 < k; ++i)
            if (!(x.swapped(i, i + 1) == x)) throw DomainError("class is not Weyl-invariant");
    } else if (!a.roots.empty()) {
        throw DomainError("only Grassmannian-type root systems are supported");
    }
    RingShape s = ring_shape(a);
    s.zmax = x.shape().zmax;
    RingElement y = x.reshaped(s);
    for (const auto& r : a.roots) {
        std::vector<Rational> c(a.num_vars(), 0);
        for (size_t i = 0; i < k; ++i) c[i] = r[i];
        y = y * RingElement::linear(s, c, 0);
    }
    return integrate_abelian(a, y) / a.weyl_order;
}

namespace {

struct FixedPoint {
    std::vector<Rational> x;
    Rational weight;  // root factor over the normal Euler class, Weyl factor included
};

std::vector<FixedPoint> fixed_points(const AmbientSpec& a) {
    const size_t k = a.num_factors();
    auto w = [](long l) { return Rational(l * l + 2 * l); };
    std::vector<FixedPoint> pts;
    auto add = [&](const std::vector<long>& idx, const Rational& scale) {
        FixedPoint p;
        Rational den = 1;
        for (size_t i = 0; i < k; ++i) {
            Rational xi = w(idx[i]);
            p.x.push_back(xi);
            for (long l = 0; l <= a.factor_dims[i]; ++l)
                if (l != idx[i]) den *= xi - w(l);
        }
        Rational num = scale;
        for (const auto& r : a.roots) {
            Rational v = 0;
            for (size_t i = 0; i < k; ++i) v += r[i] * p.x[i];
            num *= v;
        }
        if (num == 0) return;
        p.weight = num / den;
        pts.push_back(std::move(p));
    };
    std::vector<long> idx(k, 0);
    if (a.grassmannian_type()) {
        const long n = a.factor_dims.empty() ? 0 : a.factor_dims[0] + 1;
        Rational scale = Rational(to_long(factorial(static_cast<long>(k)))) / a.weyl_order;
        std::function<void(size_t, long)> rec = [&](size_t pos, long start) {
            if (pos == k) {
                add(idx, scale);
                return;
            }
            for (long l = start; l < n; ++l) {
                idx[pos] = l;
                rec(pos + 1, l + 1);
            }
        };
        rec(0, 0);
    } else {
        if (!a.roots.empty()) throw DomainError("only Grassmannian-type root systems are supported");
        Rational scale = Rational(1) / a.weyl_order;
        std::function<void(size_t)> rec = [&](size_t pos) {
            if (pos == k) {
                add(idx, scale);
                return;
            }
            for (long l = 0; l <= a.factor_dims[pos]; ++l) {
                idx[pos] = l;
                rec(pos + 1);
            }
        };
        rec(0);
    }
    return pts;
}

}  // namespace

Rational localize(const AmbientSpec& a, const PointIntegrand& f) {
    const Rational u[2] = {Rational(2), Rational(-3)};
    Rational total = 0;
    for (const auto& p : fixed_points(a)) {
        if (a.has_pencil_line) {
            for (int j = 0; j < 2; ++j) total += f(p.x, u[j]) * p.weight / (u[j] - u[1 - j]);
        } else {
            total += f(p.x, 0) * p.weight;
        }
    }
    return total;
}

// ----------------------------------------------------------------- families

FamilySpec dv_pencil_family() {
    FamilySpec f;
    f.name = "dv-pencil";
    f.ambient = AmbientSpec::grassmannian(6, 10, true);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) {
                std::vector<long> s(7, 0);
                s[a] = s[b] = s[c] = 1;
                s[6] = 1;
                f.bundle_summands.push_back(s);
            }
    f.polarization.assign(6, 1);
    return f;
}

static FamilySpec fano_family(bool pencil) {
    FamilySpec f;
    f.name = pencil ? "fano-pencil" : "fano-fourfold";
    f.ambient = AmbientSpec::grassmannian(2, 6, pencil);
    for (long i1 = 3; i1 >= 0; --i1) {
        std::vector<long> s = {i1, 3 - i1};
        if (pencil) s.push_back(1);
        f.bundle_summands.push_back(s);
    }
    f.polarization = {1, 1};
    return f;
}

FamilySpec fano_pencil_family() { return fano_family(true); }
FamilySpec fano_fourfold_family() { return fano_family(false); }

FamilySpec grassmannian_family(long k, long n, bool pencil) {
    FamilySpec f;
    f.name = "gr(" + std::to_string(k) + "," + std::to_string(n) + ")" + (pencil ? "xP1" : "");
    f.ambient = AmbientSpec::grassmannian(k, n, pencil);
    f.polarization.assign(static_cast<size_t>(k), 1);
    return f;
}

FamilySpec family_by_name(const std::string& name) {
    if (name == "dv-pencil") return dv_pencil_family();
    if (name == "fano-pencil") return fano_pencil_family();
    if (name == "fano-fourfold") return fano_fourfold_family();
    static const std::regex gr(R"(gr\((\d+),(\d+)\)(xP1)?)");
    std::smatch m;
    if (std::regex_match(name, m, gr)) return grassmannian_family(std::stol(m[1]), std::stol(m[2]), m[3].matched);
    throw DomainError("unknown family '" + name + "'");
}

// ------------------------------------------------------- characteristic classes

namespace {

Rational form_value(const std::vector<long>& form, const std::vector<Rational>& x, const Rational& h, bool pencil) {
    Rational v = 0;
    for (size_t i = 0; i < x.size(); ++i) v += form[i] * x[i];
    if (pencil && form.size() > x.size()) v += form[x.size()] * h;
    return v;
}

void check_summands(const FamilySpec& fam) {
    for (const auto& s : fam.bundle_summands) {
        if (s.size() != fam.ambient.num_vars()) throw DomainError("summand has the wrong number of coefficients");
        bool nonzero = false;
        for (long c : s) nonzero = nonzero || c != 0;
        if (!nonzero) throw DomainError("trivial summand: total Chern class is fine but the Euler class vanishes");
    }
    if (fam.dimension() < 0) throw DomainError("bundle rank exceeds the ambient dimension");
}

// Multiplicative characteristic class of a line bundle with first Chern
// value v, as a series in t: sum_m coeffs[m] (v t)^m.
FracSeries line_series(const std::vector<Rational>& coeffs, const Rational& v, long order) {
    FracSeries s(1, order);
    Rational pw = 1;
    for (long m = 0; m < order && m < static_cast<long>(coeffs.size()); ++m) {
        s.set(m, coeffs[static_cast<size_t>(m)] * pw);
        pw *= v;
    }
    return s;
}

using ClassCoeffs = std::vector<Rational>;

// Top-degree integral of e(E) * [prod over ambient line bundles / prod over
// roots and bundle summands] for a multiplicative class given by coeffs.
Rational characteristic_integral(const FamilySpec& fam, const ClassCoeffs& cls, bool with_pencil_tangent) {
    check_summands(fam);
    const long top = fam.dimension();
    const long order = top + 1;
    const AmbientSpec& a = fam.ambient;
    const bool pencil = a.has_pencil_line;
    return localize(a, [&](const std::vector<Rational>& x, const Rational& h) -> Rational {
        FracSeries c = FracSeries::constant(1, 1, order);
        for (size_t i = 0; i < x.size(); ++i) c = c * line_series(cls, x[i], order).pow(a.factor_dims[i] + 1);
        FracSeries den = FracSeries::constant(1, 1, order);
        for (const auto& r : a.roots) {
            Rational v = 0;
            for (size_t i = 0; i < x.size(); ++i) v += r[i] * x[i];
            den = den * line_series(cls, v, order);
        }
        if (pencil && with_pencil_tangent) c = c * line_series(cls, h, order).pow(2);
        Rational euler = 1;
        for (const auto& s : fam.bundle_summands) {
            Rational v = form_value(s, x, h, pencil);
            euler *= v;
            den = den * line_series(cls, v, order);
        }
        c = c * den.inverse();
        return c.coeff(top) * euler;
    });
}

}  // namespace

Rational euler_characteristic(const FamilySpec& fam) {
    // c(L) = 1 + c_1(L)
    ClassCoeffs chern = {1, 1};
    const long order = fam.dimension() + 1;
    chern.resize(static_cast<size_t>(std::max<long>(order, 2)), 0);
    return characteristic_integral(fam, chern, true);
}

Rational grr_hodge_degree(const FamilySpec& fam) {
    if (!fam.ambient.has_pencil_line) throw DomainError("the Hodge degree needs a pencil family");
    const long order = fam.dimension() + 1;
    // td(y) = y / (1 - e^{-y})
    FracSeries s(1, order);
    for (long m = 0; m < order; ++m) s.set(m, Rational(m % 2 ? -1 : 1) / Rational(factorial(m + 1)));
    FracSeries td = s.inverse();
    ClassCoeffs coeffs;
    for (long m = 0; m < order; ++m) coeffs.push_back(td.coeff(m));
    // T_pi = T_ambient - T_{P^1} - E: the pencil tangent term is left out.
    return characteristic_integral(fam, coeffs, false);
}

SingularFibers singular_fiber_count(const Rational& e_total, const Rational& e_smooth, const Rational& e_singular) {
    if (e_smooth == e_singular) throw DomainError("smooth and singular Euler numbers coincide");
    SingularFibers r;
    r.delta = (2 * e_smooth - e_total) / (e_smooth - e_singular);
    r.integral = is_integer(r.delta);
    return r;
}

}  // namespace nlgw
