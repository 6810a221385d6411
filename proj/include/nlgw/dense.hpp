#pragma once

#include "nlgw/rational.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace nlgw {

// Monomials in k variables of total degree <= cap, ordered by degree, with
// multiply/divide-by-variable tables.
class GradedIndex {
public:
    GradedIndex(int k, int cap);

    int k() const { return k_; }
    int cap() const { return cap_; }
    size_t size() const { return degree_.size(); }
    int degree(size_t idx) const { return degree_[idx]; }
    const int* mono(size_t idx) const { return &monos_[idx * static_cast<size_t>(k_)]; }
    // Index of m * x_i, or -1 when the degree would exceed cap.
    long up(size_t idx, int i) const { return up_[idx * static_cast<size_t>(k_) + static_cast<size_t>(i)]; }
    // Index of m / x_i, or -1 when x_i does not divide m.
    long down(size_t idx, int i) const { return down_[idx * static_cast<size_t>(k_) + static_cast<size_t>(i)]; }
    long index_of(const int* m) const;
    // First index of degree > d.
    size_t end_of_degree(int d) const { return d >= cap_ ? size() : degree_start_[static_cast<size_t>(d) + 1]; }

private:
    int k_, cap_;
    std::vector<int> monos_, degree_;
    std::vector<long> up_, down_;
    std::vector<size_t> degree_start_;
    std::unordered_map<uint64_t, size_t> rank_;
    static uint64_t key(const int* m, int k);
};

// Integer polynomial in x_1..x_k and a nilpotent h (h^2 = 0), truncated at
// total degree <= cap (h counts 1). cap may be lowered below the index cap.
class DensePoly {
public:
    DensePoly(const GradedIndex& idx, int cap);

    const GradedIndex& index() const { return *idx_; }
    int cap() const { return cap_; }
    std::vector<Integer>& part(int hpow) { return hpow ? p1_ : p0_; }
    const std::vector<Integer>& part(int hpow) const { return hpow ? p1_ : p0_; }

    void set_constant(const Integer& c);
    // Multiply by c0 + sum_i c_i x_i + ch h, in place.
    void mul_linear(const std::vector<long>& c, long ch, long c0);
    // Multiply by sum_j s_j x_i^j, in place (s_0 may be anything).
    void mul_series(int i, const std::vector<Integer>& s);
    void scale(const Integer& c);
    // this += sign * (src with x_i replaced by x_{perm[i]}), i.e. exponent of
    // x_{perm[i]} in the image is the exponent of x_i in src.
    void add_permuted(const DensePoly& src, const std::vector<int>& perm, int sign);
    void add(const DensePoly& src);
    // Exact division by (x_i - x_j); lowers cap by one. Throws
    // ConsistencyError when (x_i - x_j) times the quotient differs from this.
    void divide_difference(int i, int j);

private:
    const GradedIndex* idx_;
    int cap_;
    std::vector<Integer> p0_, p1_;
};

}  // namespace nlgw
