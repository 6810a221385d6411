#include "nlgw/mirror.hpp"

#include "nlgw/dense.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace nlgw {

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NLGW_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// ------------------------------------------------------------ sparse factors

static std::vector<Rational> unit_coeffs(size_t n, size_t i, const Rational& c = 1) {
    std::vector<Rational> v(n, 0);
    v[i] = c;
    return v;
}

RingElement toric_factor(const AmbientSpec& a, const std::vector<long>& multidegree, const RingShape& shape) {
    const size_t k = a.num_factors();
    if (multidegree.size() != k && multidegree.size() != a.num_vars())
        throw DomainError("multidegree has the wrong length");
    RingElement r = RingElement::constant(shape, 1);
    const size_t nv = a.num_vars();
    for (size_t i = 0; i < multidegree.size(); ++i) {
        const long deg = multidegree[i];
        if (deg < 0) throw DomainError("negative degrees are not supported by the toric factor");
        const long n = i < k ? a.factor_dims[i] + 1 : 2;
        for (long kk = 1; kk <= deg; ++kk) {
            RingElement f = RingElement::linear(shape, unit_coeffs(nv, i), kk);
            r = r * f.inverse().pow(n);
        }
    }
    return r;
}

RingElement twist_factor(const std::vector<std::vector<long>>& summands, const std::vector<long>& multidegree,
                         const RingShape& shape) {
    RingElement r = RingElement::constant(shape, 1);
    const size_t nv = shape.caps.size();
    for (const auto& s : summands) {
        if (s.size() != nv) throw DomainError("summand has the wrong number of coefficients");
        long pairing = 0;
        for (size_t i = 0; i < multidegree.size() && i < s.size(); ++i) pairing += s[i] * multidegree[i];
        if (pairing < 0) throw DomainError("negative pairing with a twisting summand");
        std::vector<Rational> c(s.begin(), s.end());
        for (long kk = 1; kk <= pairing; ++kk) r = r * RingElement::linear(shape, c, kk);
    }
    return r;
}

RingElement root_factor_numerator(const AmbientSpec& a, const std::vector<long>& composition,
                                  const RingShape& shape) {
    const size_t k = a.num_factors();
    if (composition.size() < k) throw DomainError("composition has the wrong length");
    const size_t nv = a.num_vars();
    long sign_exp = 0;
    RingElement r = RingElement::constant(shape, 1);
    if (a.roots.empty()) return r;
    if (!a.grassmannian_type()) throw DomainError("only Grassmannian-type root systems are supported");
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            std::vector<Rational> c(nv, 0);
            c[i] = 1;
            c[j] = -1;
            long shift = composition[i] - composition[j];
            sign_exp += shift;
            r = r * RingElement::linear(shape, c, shift);
        }
    return (sign_exp % 2 == 0) ? r : -r;
}

static void check_homogeneous(const RingElement& x) {
    for (const auto& [m, lz] : x.terms()) {
        long deg = std::accumulate(m.begin(), m.end(), 0L);
        for (const auto& [z, c] : lz)
            if (z != -deg) throw ConsistencyError("I-function coefficient is not homogeneous of degree 0");
    }
}

static void compositions(long d, size_t k, std::vector<long>& cur, const std::function<void()>& f) {
    if (cur.size() + 1 == k) {
        cur.push_back(d);
        f();
        cur.pop_back();
        return;
    }
    for (long a = d; a >= 0; --a) {
        cur.push_back(a);
        compositions(d - a, k, cur, f);
        cur.pop_back();
    }
}

RingElement assemble_I_fiber_sparse(const FamilySpec& fam, long d, long class_cap) {
    if (d < 0) throw DomainError("degree must be non-negative");
    const AmbientSpec& a = fam.ambient;
    const size_t k = a.num_factors();
    const long vdeg = a.roots.empty() ? 0 : static_cast<long>(k * (k - 1) / 2);
    RingShape lift = lifted_shape(a, class_cap + vdeg);
    lift.zmax = 1L << 20;
    RingElement total(lift);
    std::vector<long> cur;
    compositions(d, k, cur, [&]() {
        std::vector<long> md = cur;
        if (a.has_pencil_line) md.push_back(0);
        total += root_factor_numerator(a, cur, lift) * toric_factor(a, md, lift) *
                 twist_factor(fam.bundle_summands, md, lift);
    });
    RingElement q = vandermonde_divide(total, a);
    check_homogeneous(q);
    RingShape out = ring_shape(a);
    out.degree_cap = class_cap;
    return q.reshaped(out);
}

// ------------------------------------------------------------- dense engine

namespace {

void partitions(long d, size_t k, long max_part, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
    if (d == 0) {
        std::vector<long> p = cur;
        p.resize(k, 0);
        out.push_back(p);
        return;
    }
    if (cur.size() == k) return;
    for (long a = std::min(d, max_part); a >= 1; --a) {
        cur.push_back(a);
        partitions(d - a, k, a, cur, out);
        cur.pop_back();
    }
}

// prod_{kk=1}^{mu} (x + kk)^{-n} up to x^cap, as (integer series, denominator).
std::pair<std::vector<Integer>, Integer> toric_series(long mu, long n, int cap) {
    std::vector<Rational> s(static_cast<size_t>(cap) + 1, 0);
    s[0] = 1;
    for (long kk = 1; kk <= mu; ++kk) {
        std::vector<Rational> inv(s.size());
        Rational pw = Rational(1, kk);
        for (size_t j = 0; j < inv.size(); ++j) {
            inv[j] = (j % 2 ? -pw : pw);
            pw /= kk;
        }
        for (long rep = 0; rep < n; ++rep) {
            std::vector<Rational> t(s.size(), 0);
            for (size_t i = 0; i < s.size(); ++i) {
                if (s[i] == 0) continue;
                for (size_t j = 0; i + j < s.size(); ++j) t[i + j] += s[i] * inv[j];
            }
            s.swap(t);
        }
    }
    Integer den = 1;
    for (const auto& c : s) den = lcm(den, Integer(c.get_den()));
    std::vector<Integer> out;
    for (const auto& c : s) out.push_back(Integer(c * den));
    return {out, den};
}

void check_summand_symmetry(const FamilySpec& fam) {
    const size_t k = fam.ambient.num_factors();
    std::multiset<std::vector<long>> base(fam.bundle_summands.begin(), fam.bundle_summands.end());
    for (size_t i = 0; i + 1 < k; ++i) {
        std::multiset<std::vector<long>> sw;
        for (auto s : fam.bundle_summands) {
            std::swap(s[i], s[i + 1]);
            sw.insert(s);
        }
        if (sw != base) throw DomainError("bundle summands are not Weyl-symmetric");
    }
}

}  // namespace

RingElement assemble_I_fiber(const FamilySpec& fam, long d, long class_cap, unsigned workers, AssembleStats* stats) {
    if (d < 0) throw DomainError("degree must be non-negative");
    if (class_cap < 0) throw DomainError("class cap must be non-negative");
    const AmbientSpec& a = fam.ambient;
    const size_t k = a.num_factors();
    if (!a.roots.empty() && !a.grassmannian_type()) throw DomainError("only Grassmannian-type root systems are supported");
    if (a.roots.empty() && k > 1) {
        // Products of projective spaces have no Weyl symmetry; use the sparse path.
        return assemble_I_fiber_sparse(fam, d, class_cap);
    }
    check_summand_symmetry(fam);
    const bool pencil = a.has_pencil_line;
    const long vdeg = static_cast<long>(k * (k - 1) / 2);
    const int cap = static_cast<int>(class_cap + vdeg);
    const long n = a.factor_dims[0] + 1;
    GradedIndex index(static_cast<int>(k), cap);

    std::vector<std::vector<long>> parts;
    std::vector<long> cur;
    partitions(d, k, d, cur, parts);

    std::map<long, std::pair<std::vector<Integer>, Integer>> toric;
    for (const auto& lam : parts)
        for (long mu : lam)
            if (!toric.count(mu)) toric[mu] = toric_series(mu, n, cap);
    std::vector<Integer> orbit_den;
    Integer total_den = 1;
    for (const auto& lam : parts) {
        Integer dl = 1;
        for (long mu : lam) dl *= toric[mu].second;
        orbit_den.push_back(dl);
        total_den = lcm(total_den, dl);
    }
    const int base_sign = ((static_cast<long>(k) - 1) * d) % 2 ? -1 : 1;

    std::atomic<size_t> next{0};
    std::atomic<size_t> arrangements{0};
    std::mutex merge;
    DensePoly total(index, cap);
    auto work = [&]() {
        DensePoly local(index, cap);
        DensePoly term(index, cap);
        while (true) {
            size_t t = next.fetch_add(1);
            if (t >= parts.size()) break;
            const auto& lam = parts[t];
            term.set_constant(Integer(total_den / orbit_den[t]) * base_sign);
            for (size_t i = 0; i < k; ++i)
                for (size_t j = i + 1; j < k; ++j) {
                    std::vector<long> c(k, 0);
                    c[i] = 1;
                    c[j] = -1;
                    term.mul_linear(c, 0, lam[i] - lam[j]);
                }
            for (size_t i = 0; i < k; ++i)
                if (lam[i] > 0) term.mul_series(static_cast<int>(i), toric[lam[i]].first);
            for (const auto& s : fam.bundle_summands) {
                long pairing = 0;
                for (size_t i = 0; i < k; ++i) pairing += s[i] * lam[i];
                if (pairing < 0) throw DomainError("negative pairing with a twisting summand");
                std::vector<long> c(s.begin(), s.begin() + static_cast<long>(k));
                long ch = pencil ? s[k] : 0;
                for (long kk = 1; kk <= pairing; ++kk) term.mul_linear(c, ch, kk);
            }
            // Distinct arrangements mu of lam: mu_i = lam_{sigma(i)}.
            std::vector<long> mu(lam.rbegin(), lam.rend());
            do {
                std::vector<int> sigma(k);
                std::vector<bool> used(k, false);
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = 0; j < k; ++j)
                        if (!used[j] && lam[j] == mu[i]) {
                            used[j] = true;
                            sigma[i] = static_cast<int>(j);
                            break;
                        }
                int inversions = 0;
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = i + 1; j < k; ++j)
                        if (sigma[i] > sigma[j]) ++inversions;
                // Variable j of the representative becomes H_{sigma^{-1}(j)}.
                std::vector<int> perm(k);
                for (size_t i = 0; i < k; ++i) perm[static_cast<size_t>(sigma[i])] = static_cast<int>(i);
                local.add_permuted(term, perm, inversions % 2 ? -1 : 1);
                arrangements.fetch_add(1);
            } while (std::next_permutation(mu.begin(), mu.end()));
        }
        std::lock_guard<std::mutex> lock(merge);
        total.add(local);
    };
    unsigned nthreads = std::min<unsigned>(worker_count(workers), static_cast<unsigned>(parts.size()));
    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        std::exception_ptr err;
        std::mutex err_lock;
        for (unsigned t = 0; t < nthreads; ++t)
            threads.emplace_back([&]() {
                try {
                    work();
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_lock);
                    if (!err) err = std::current_exception();
                }
            });
        for (auto& th : threads) th.join();
        if (err) std::rethrow_exception(err);
    }
    size_t divisions = 0;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            total.divide_difference(static_cast<int>(i), static_cast<int>(j));
            ++divisions;
        }
    if (stats) {
        stats->orbits = parts.size();
        stats->compositions = arrangements.load();
        stats->divisions = divisions;
    }
    RingShape out = ring_shape(a);
    out.degree_cap = class_cap;
    RingElement r(out);
    Monomial m(a.num_vars(), 0);
    for (int hp = 0; hp <= (pencil ? 1 : 0); ++hp) {
        const auto& p = total.part(hp);
        for (size_t e = 0; e < index.end_of_degree(static_cast<int>(class_cap) - hp); ++e) {
            if (p[e] == 0) continue;
            const int* mm = index.mono(e);
            for (size_t i = 0; i < k; ++i) m[i] = mm[i];
            if (pencil) m[k] = hp;
            r.add_term(m, -(index.degree(e) + hp), Rational(p[e]) / total_den);
        }
    }
    return r;
}

IFunction compute_I(const FamilySpec& fam, long d_max, long class_cap, unsigned workers, const ProgressFn& progress) {
    IFunction I;
    I.family = fam;
    I.class_cap = class_cap;
    for (long d = 0; d <= d_max; ++d) {
        if (progress) progress(d, "assemble");
        I.per_degree.emplace(d, assemble_I_fiber(fam, d, class_cap, workers));
        if (progress) progress(d, "done");
    }
    return I;
}

// ----------------------------------------------------------------- mirror map

static const RingElement& degree_term(const IFunction& I, long d) {
    auto it = I.per_degree.find(d);
    if (it == I.per_degree.end()) throw TruncationError("I-function not assembled at degree " + std::to_string(d));
    return it->second;
}

MirrorMapData mirror_map(const IFunction& I, long d_max) {
    const AmbientSpec& a = I.family.ambient;
    const size_t k = a.num_factors();
    if (I.class_cap < 1) throw DomainError("mirror map needs classes of degree 1");
    MirrorMapData m{FracSeries(1, d_max + 1), FracSeries(1, d_max + 1), FracSeries(1, d_max + 1)};
    for (long d = 0; d <= d_max; ++d) {
        const RingElement& x = degree_term(I, d);
        if (x.z_range().second > 0) throw ConsistencyError("positive z-power in the I-function");
        Monomial zero(a.num_vars(), 0);
        m.f0.set(d, x.coeff(zero, 0));
        RingElement c1 = x.z_coeff(-1);
        Rational h1 = 0;
        for (size_t i = 0; i < k; ++i) {
            Monomial e = zero;
            e[i] = 1;
            Rational c = c1.coeff(e);
            if (i == 0) h1 = c;
            else if (c != h1) throw ConsistencyError("I_1 is not a multiple of the polarization");
        }
        m.f1.set(d, h1);
        if (a.has_pencil_line) {
            Monomial e = zero;
            e[k] = 1;
            m.f2.set(d, c1.coeff(e));
        }
    }
    if (m.f0.coeff(0) != 1) throw ConsistencyError("I_0 does not start with 1");
    return m;
}

FracSeries mirror_inverse(const FracSeries& g, long d_max) {
    if (g.coeff(0) != 0) throw DomainError("f1/f0 must vanish at q = 0");
    const long order = d_max + 1;
    FracSeries q = FracSeries::monomial(1, 1, 1, order);
    for (long it = 0; it <= d_max; ++it) {
        FracSeries gq = g.truncated(order).compose(q).truncated(order);
        q = FracSeries::monomial(1, 1, 1, order) * (-gq).exp();
        q = q.truncated(order);
    }
    // Round trip Q = q exp(g(q)).
    FracSeries back = (q * g.truncated(order).compose(q).truncated(order).exp()).truncated(order);
    if (!(back == FracSeries::monomial(1, 1, 1, order))) throw ConsistencyError("mirror map inversion failed");
    return q;
}

FracSeries invert_mirror_variable(const FracSeries& s, const FracSeries& g, long d_max) {
    FracSeries q = mirror_inverse(g, d_max);
    return s.truncated(d_max + 1).compose(q).truncated(d_max + 1);
}

// ------------------------------------------------------------- invariants

namespace {

using SeriesClass = std::map<Monomial, FracSeries>;

SeriesClass class_mul(const SeriesClass& a, const SeriesClass& b, const RingShape& shape, long order) {
    SeriesClass r;
    Monomial m;
    for (const auto& [ma, sa] : a)
        for (const auto& [mb, sb] : b) {
            m.resize(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            if (!shape.admits(m)) continue;
            FracSeries p = (sa * sb).truncated(order);
            auto it = r.find(m);
            if (it == r.end()) r.emplace(m, p);
            else it->second += p;
        }
    for (auto it = r.begin(); it != r.end();) {
        if (it->second.is_zero()) it = r.erase(it);
        else ++it;
    }
    return r;
}

}  // namespace

Insertion polarization_power(const FamilySpec& fam, long power) {
    Insertion ins;
    ins.form.assign(fam.ambient.num_vars(), 0);
    for (size_t i = 0; i < fam.polarization.size(); ++i) ins.form[i] = fam.polarization[i];
    ins.power = power;
    return ins;
}

JFunction j_function(const IFunction& I, long d_max) {
    const AmbientSpec& a = I.family.ambient;
    const long order = d_max + 1;
    const long cap = I.class_cap;
    RingShape shape = ring_shape(a);
    shape.degree_cap = cap;
    MirrorMapData mm = mirror_map(I, d_max);
    FracSeries inv0 = mm.f0.inverse().truncated(order);
    FracSeries g = (mm.f1 * inv0).truncated(order);
    FracSeries gh = (mm.f2 * inv0).truncated(order);

    // I / I_0 by class monomial (z^{-deg} is implicit).
    SeriesClass ibar;
    for (long d = 0; d <= d_max; ++d)
        for (const auto& [m, lz] : degree_term(I, d).terms())
            for (const auto& [z, c] : lz) {
                auto it = ibar.find(m);
                if (it == ibar.end()) it = ibar.emplace(m, FracSeries(1, order)).first;
                it->second.add_to(d, c);
            }
    for (auto& [m, s] : ibar) s = (s * inv0).truncated(order);

    // exp(-t), t = g H + gh h
    SeriesClass minus_t;
    const size_t k = a.num_factors();
    for (size_t i = 0; i < k; ++i) {
        Monomial e(a.num_vars(), 0);
        e[i] = 1;
        minus_t.emplace(e, -g * Rational(I.family.polarization[i]));
    }
    if (a.has_pencil_line) {
        Monomial e(a.num_vars(), 0);
        e[k] = 1;
        minus_t.emplace(e, -gh);
    }
    SeriesClass expo;
    expo.emplace(Monomial(a.num_vars(), 0), FracSeries::constant(1, 1, order));
    SeriesClass power = expo;
    for (long j = 1; j <= cap; ++j) {
        power = class_mul(power, minus_t, shape, order);
        for (auto& [m, s] : power) {
            FracSeries add = s * (Rational(1) / Rational(factorial(j)));
            auto it = expo.find(m);
            if (it == expo.end()) expo.emplace(m, add);
            else it->second += add;
        }
    }
    SeriesClass j = class_mul(expo, ibar, shape, order);

    FracSeries qQ = mirror_inverse(g, d_max);
    JFunction out;
    out.d_max = d_max;
    out.component.resize(static_cast<size_t>(cap) + 1);
    for (const auto& [m, s] : j) {
        long deg = std::accumulate(m.begin(), m.end(), 0L);
        FracSeries sQ = s.compose(qQ).truncated(order);
        if (!sQ.is_zero()) out.component[static_cast<size_t>(deg)].emplace(m, sQ);
    }
    // Mirror-theorem shape: J = 1 + O(z^{-2}).
    Monomial zero(a.num_vars(), 0);
    for (const auto& [m, s] : out.component[0])
        if (!(m == zero) || !(s == FracSeries::constant(1, 1, order)))
            throw ConsistencyError("J-function z^0 part differs from 1");
    if (cap >= 1 && !out.component[1].empty()) throw ConsistencyError("J-function has a z^{-1} term");
    return out;
}

std::map<long, InvariantValue> family_invariants(const IFunction& I, const Insertion& ins, long d_max, long k) {
    if (k < 0) throw DomainError("psi power must be non-negative");
    const FamilySpec& fam = I.family;
    const long j = 2 + k;
    std::map<long, InvariantValue> out;
    if (ins.power + j != fam.dimension()) {
        for (long d = 1; d <= d_max; ++d) out[d] = InvariantValue{0, true};
        return out;
    }
    if (j > I.class_cap) throw DomainError("I-function class cap too small for this psi power");
    JFunction J = j_function(I, d_max);
    const AmbientSpec& a = fam.ambient;
    const bool pencil = a.has_pencil_line;
    const size_t nf = a.num_factors();
    FracSeries total(1, d_max + 1);
    for (const auto& [m, s] : J.component[static_cast<size_t>(j)]) {
        Rational val = localize(a, [&](const std::vector<Rational>& x, const Rational& h) -> Rational {
            Rational v = 1;
            for (size_t i = 0; i < nf; ++i)
                for (int e = 0; e < m[i]; ++e) v *= x[i];
            if (pencil && m[nf]) v *= h;
            Rational lin = 0;
            for (size_t i = 0; i < nf; ++i) lin += ins.form[i] * x[i];
            if (pencil && ins.form.size() > nf) lin += ins.form[nf] * h;
            for (long e = 0; e < ins.power; ++e) v *= lin;
            for (const auto& sm : fam.bundle_summands) {
                Rational ev = 0;
                for (size_t i = 0; i < nf; ++i) ev += sm[i] * x[i];
                if (pencil) ev += sm[nf] * h;
                v *= ev;
            }
            return v;
        });
        if (val != 0) total += s * val;
    }
    for (long d = 1; d <= d_max; ++d) out[d] = InvariantValue{total.coeff(d), false};
    return out;
}

InvariantValue family_invariant(const IFunction& I, const Insertion& ins, long d, long k) {
    return family_invariants(I, ins, d, k).at(d);
}

// ------------------------------------------------------------- multiple covers

static Rational sign_weight(long d, long e, const std::function<long(long)>& r, long k, long w) {
    Rational v = rational_pow(Rational(k), w);
    if ((r(d) + r(e)) % 2 != 0) v = -v;
    return v;
}

std::map<long, Rational> mc_subtract_family(const std::map<long, Rational>& values,
                                            const std::function<long(long)>& residue_of, long weight_exponent) {
    std::map<long, Rational> out;
    for (const auto& [d, v] : values) {
        if (d < 1) continue;
        Rational acc = 0;
        for (long k : divisors(d)) {
            int mu = moebius(k);
            if (mu == 0) continue;
            auto it = values.find(d / k);
            if (it == values.end()) throw DomainError("missing value at degree " + std::to_string(d / k));
            acc += mu * sign_weight(d, d / k, residue_of, k, weight_exponent) * it->second;
        }
        out[d] = acc;
    }
    return out;
}

std::map<long, Rational> mc_assemble_family(const std::map<long, Rational>& values,
                                            const std::function<long(long)>& residue_of, long weight_exponent) {
    std::map<long, Rational> out;
    for (const auto& [d, v] : values) {
        if (d < 1) continue;
        Rational acc = 0;
        for (long k : divisors(d)) {
            auto it = values.find(d / k);
            if (it == values.end()) throw DomainError("missing value at degree " + std::to_string(d / k));
            acc += sign_weight(d, d / k, residue_of, k, weight_exponent) * it->second;
        }
        out[d] = acc;
    }
    return out;
}

}  // namespace nlgw
