#include "nlgw/linalg.hpp"

namespace nlgw {

Echelon rref(RMatrix m) {
    Echelon out;
    if (m.empty()) return out;
    size_t ncols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < m.size(); ++c) {
        size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (size_t j = c; j < ncols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < ncols; ++j)
                if (m[r][j] != 0) m[i][j] -= f * m[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

size_t rank(const RMatrix& m) { return rref(m).pivots.size(); }

Rational determinant(RMatrix m) {
    size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw DomainError("determinant: matrix is not square");
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational inv = Rational(1) / m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

std::vector<RVector> nullspace(const RMatrix& m, size_t ncols) {
    Echelon e = rref(m);
    std::vector<char> is_pivot(ncols, 0);
    for (size_t c : e.pivots) is_pivot[c] = 1;
    std::vector<RVector> basis;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RVector v(ncols);
        v[f] = 1;
        for (size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

RMatrix transpose(const RMatrix& m) {
    if (m.empty()) return {};
    RMatrix t(m[0].size(), RVector(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

SolveResult solve(const RMatrix& a, const RVector& b, size_t ncols) {
    if (a.size() != b.size()) throw DomainError("solve: dimension mismatch");
    RMatrix aug = a;
    for (size_t i = 0; i < aug.size(); ++i) {
        aug[i].resize(ncols);
        aug[i].push_back(b[i]);
    }
    Echelon e = rref(aug);
    SolveResult res;
    res.consistent = e.pivots.empty() || e.pivots.back() != ncols;
    res.rank = e.pivots.size() - (res.consistent ? 0 : 1);
    res.unique = res.consistent && res.rank == ncols;
    if (res.consistent) {
        res.x.assign(ncols, 0);
        for (size_t i = 0; i < e.rows.size(); ++i) res.x[e.pivots[i]] = e.rows[i][ncols];
    }
    return res;
}

}  // namespace nlgw
