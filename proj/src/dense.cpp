#include "nlgw/dense.hpp"

#include <functional>

namespace nlgw {

uint64_t GradedIndex::key(const int* m, int k) {
    uint64_t r = 0;
    for (int i = 0; i < k; ++i) r = (r << 6) | static_cast<uint64_t>(m[i]);
    return r;
}

GradedIndex::GradedIndex(int k, int cap) : k_(k), cap_(cap) {
    if (k < 1 || k > 10 || cap < 0 || cap > 63) throw DomainError("graded index out of supported range");
    std::vector<int> m(static_cast<size_t>(k), 0);
    for (int d = 0; d <= cap; ++d) {
        degree_start_.push_back(degree_.size());
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == k - 1) {
                m[static_cast<size_t>(pos)] = left;
                rank_[key(m.data(), k)] = degree_.size();
                monos_.insert(monos_.end(), m.begin(), m.end());
                degree_.push_back(d);
                return;
            }
            for (int e = left; e >= 0; --e) {
                m[static_cast<size_t>(pos)] = e;
                rec(pos + 1, left - e);
            }
        };
        rec(0, d);
    }
    const size_t n = degree_.size();
    up_.assign(n * static_cast<size_t>(k), -1);
    down_.assign(n * static_cast<size_t>(k), -1);
    std::vector<int> t(static_cast<size_t>(k));
    for (size_t idx = 0; idx < n; ++idx) {
        const int* mm = mono(idx);
        for (int i = 0; i < k; ++i) {
            t.assign(mm, mm + k);
            if (degree_[idx] < cap) {
                t[static_cast<size_t>(i)]++;
                up_[idx * static_cast<size_t>(k) + static_cast<size_t>(i)] = index_of(t.data());
                t[static_cast<size_t>(i)]--;
            }
            if (mm[i] > 0) {
                t[static_cast<size_t>(i)]--;
                down_[idx * static_cast<size_t>(k) + static_cast<size_t>(i)] = index_of(t.data());
            }
        }
    }
}

long GradedIndex::index_of(const int* m) const {
    int d = 0;
    for (int i = 0; i < k_; ++i) {
        if (m[i] < 0) return -1;
        d += m[i];
    }
    if (d > cap_) return -1;
    return static_cast<long>(rank_.at(key(m, k_)));
}

DensePoly::DensePoly(const GradedIndex& idx, int cap) : idx_(&idx), cap_(cap), p0_(idx.size()), p1_(idx.size()) {
    if (cap > idx.cap()) throw DomainError("cap exceeds the index");
}

void DensePoly::set_constant(const Integer& c) {
    for (auto& v : p0_) v = 0;
    for (auto& v : p1_) v = 0;
    p0_[0] = c;
}

static inline void addmul_si(Integer& acc, const Integer& v, long c) {
    if (c >= 0) mpz_addmul_ui(acc.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(c));
    else mpz_submul_ui(acc.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(-c));
}

void DensePoly::mul_linear(const std::vector<long>& c, long ch, long c0) {
    const int k = idx_->k();
    Integer acc;
    // h part first: it reads the old h-free part.
    for (size_t e = idx_->end_of_degree(cap_ - 1); e-- > 0;) {
        acc = 0;
        addmul_si(acc, p1_[e], c0);
        for (int i = 0; i < k; ++i) {
            if (c[static_cast<size_t>(i)] == 0) continue;
            long dn = idx_->down(e, i);
            if (dn >= 0) addmul_si(acc, p1_[static_cast<size_t>(dn)], c[static_cast<size_t>(i)]);
        }
        if (ch) addmul_si(acc, p0_[e], ch);
        p1_[e].swap(acc);
    }
    for (size_t e = idx_->end_of_degree(cap_); e-- > 0;) {
        acc = 0;
        addmul_si(acc, p0_[e], c0);
        for (int i = 0; i < k; ++i) {
            if (c[static_cast<size_t>(i)] == 0) continue;
            long dn = idx_->down(e, i);
            if (dn >= 0) addmul_si(acc, p0_[static_cast<size_t>(dn)], c[static_cast<size_t>(i)]);
        }
        p0_[e].swap(acc);
    }
}

void DensePoly::mul_series(int i, const std::vector<Integer>& s) {
    Integer acc;
    for (int hp = 1; hp >= 0; --hp) {
        auto& p = part(hp);
        for (size_t e = idx_->end_of_degree(cap_ - hp); e-- > 0;) {
            acc = 0;
            long src = static_cast<long>(e);
            for (size_t j = 0; j < s.size() && src >= 0; ++j) {
                if (s[j] != 0) mpz_addmul(acc.get_mpz_t(), s[j].get_mpz_t(), p[static_cast<size_t>(src)].get_mpz_t());
                src = idx_->down(static_cast<size_t>(src), i);
            }
            p[e].swap(acc);
        }
    }
}

void DensePoly::scale(const Integer& c) {
    for (auto& v : p0_) v *= c;
    for (auto& v : p1_) v *= c;
}

void DensePoly::add(const DensePoly& src) {
    for (size_t e = 0; e < p0_.size(); ++e) {
        p0_[e] += src.p0_[e];
        p1_[e] += src.p1_[e];
    }
}

void DensePoly::add_permuted(const DensePoly& src, const std::vector<int>& perm, int sign) {
    const int k = idx_->k();
    std::vector<int> t(static_cast<size_t>(k));
    for (size_t e = 0; e < idx_->end_of_degree(cap_); ++e) {
        const bool z0 = src.p0_[e] == 0, z1 = src.p1_[e] == 0;
        if (z0 && z1) continue;
        const int* m = idx_->mono(e);
        for (int i = 0; i < k; ++i) t[static_cast<size_t>(perm[static_cast<size_t>(i)])] = m[i];
        size_t f = static_cast<size_t>(idx_->index_of(t.data()));
        if (sign > 0) {
            if (!z0) p0_[f] += src.p0_[e];
            if (!z1) p1_[f] += src.p1_[e];
        } else {
            if (!z0) p0_[f] -= src.p0_[e];
            if (!z1) p1_[f] -= src.p1_[e];
        }
    }
}

void DensePoly::divide_difference(int i, int j) {
    if (cap_ < 1) throw DomainError("nothing left to divide");
    for (int hp = 0; hp <= 1; ++hp) {
        auto& p = part(hp);
        const int pcap = cap_ - hp;
        std::vector<Integer> q(p.size());
        // q[m] = sum_{t >= 0} p[m x_i^{1+t} / x_j^t]
        for (size_t e = 0; e < idx_->end_of_degree(pcap - 1); ++e) {
            long u = idx_->up(e, i);
            Integer acc = 0;
            while (u >= 0) {
                acc += p[static_cast<size_t>(u)];
                long dn = idx_->down(static_cast<size_t>(u), j);
                if (dn < 0) break;
                u = idx_->up(static_cast<size_t>(dn), i);
            }
            q[e] = std::move(acc);
        }
        // (x_i - x_j) q must reproduce p in all degrees <= pcap.
        for (size_t e = 0; e < idx_->end_of_degree(pcap); ++e) {
            Integer v = 0;
            long a = idx_->down(e, i), b = idx_->down(e, j);
            if (a >= 0) v += q[static_cast<size_t>(a)];
            if (b >= 0) v -= q[static_cast<size_t>(b)];
            if (v != p[e])
                throw ConsistencyError("nonzero remainder dividing by x_" + std::to_string(i + 1) + " - x_" +
                                       std::to_string(j + 1));
        }
        p.swap(q);
    }
    --cap_;
}

}  // namespace nlgw
